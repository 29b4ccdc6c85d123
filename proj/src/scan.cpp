#include "oda/scan.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <map>
#include <mutex>
#include <random>
#include <thread>

namespace oda {

namespace {

struct Instance {
  ToricLineBundle l1, l2;
};

std::vector<Instance> family(const JobSpec& job) {
  if (job.samples > 0 && !job.seed) throw Error("a seed is required for sampled families");
  std::vector<Instance> all;
  for (const auto& f : smooth_surface_family(job.max_picard)) {
    auto fr = picard_frame(std::make_shared<const Fan>(f));
    auto bs = nef_bundles(fr, job.max_coeff);
    for (const auto& a : bs)
      for (const auto& b : bs) all.push_back({a, b});
  }
  if (job.samples == 0 || job.samples >= all.size()) return all;
  std::mt19937_64 rng(*job.seed);
  std::vector<Instance> out;
  std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
  for (std::size_t i = 0; i < job.samples; ++i) out.push_back(all[pick(rng)]);
  return out;
}

}  // namespace

std::uint64_t fan_hash(const Fan& f) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : io::to_json(canonical(f)).dump()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

io::json run_instance(const std::string& command, const ToricLineBundle& l1, const ToricLineBundle& l2) {
  io::json rec;
  char hash[17];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(fan_hash(*l1.fan)));
  io::json inst;
  inst["command"] = command;
  inst["fan_hash"] = hash;
  inst["fan"] = io::to_json(*l1.fan);
  inst["l1"] = io::to_json(l1)["coeffs"];
  inst["l2"] = io::to_json(l2)["coeffs"];
  rec["instance"] = inst;
  try {
    if (command == "phi" || command == "psi") {
      auto p1 = polytope_of(l1), p2 = polytope_of(l2);
      if (!p1 || !p2) throw Error("empty polytope");
      if (command == "phi") rec["report"] = io::to_json(phi_cokernel(*p1, *p2), false);
      else rec["report"] = io::to_json(psi_check(*p1, *p2));
    } else if (command == "order") {
      rec["report"] = io::to_json(order_report(l1, l2));
    } else {
      throw Error("unknown scan command \"" + command + "\"");
    }
  } catch (const std::exception& e) {
    rec.erase("report");
    rec["error"] = e.what();
  }
  return rec;
}

io::json replay(const io::json& record) {
  const auto& inst = record.at("instance");
  io::json b1{{"fan", inst.at("fan")}, {"coeffs", inst.at("l1")}};
  io::json b2{{"fan", inst.at("fan")}, {"coeffs", inst.at("l2")}};
  auto l1 = io::bundle_from(b1, "/instance");
  auto l2 = io::bundle_from(b2, "/instance");
  l2.fan = l1.fan;
  return run_instance(inst.at("command").get<std::string>(), l1, l2);
}

ScanSummary run(const JobSpec& job, const std::function<void(const io::json&)>& emit) {
  auto inst = family(job);
  ScanSummary sum;
  sum.instances = inst.size();
  std::mutex mu;
  std::map<std::size_t, io::json> pending;
  std::size_t next_out = 0;
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    while (true) {
      std::size_t i = next++;
      if (i >= inst.size()) return;
      auto t0 = std::chrono::steady_clock::now();
      auto rec = run_instance(job.command, inst[i].l1, inst[i].l2);
      rec["micros"] = std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - t0).count();
      std::lock_guard<std::mutex> lock(mu);
      if (rec.contains("error")) {
        ++sum.errors;
      } else {
        const auto& r = rec["report"];
        if ((r.contains("dim_coker") && r["dim_coker"] != 0) || (r.contains("covered") && !r["covered"]) ||
            (r.contains("prec_c") && r["prec"] && !r["prec_c"]))
          ++sum.findings;
      }
      if (!job.sorted) {
        emit(rec);
        continue;
      }
      pending.emplace(i, std::move(rec));
      while (!pending.empty() && pending.begin()->first == next_out) {
        emit(pending.begin()->second);
        pending.erase(pending.begin());
        ++next_out;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < std::max(1u, job.jobs); ++k) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return sum;
}

}  // namespace oda
