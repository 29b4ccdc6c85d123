// Batch runs over families of line-bundle pairs, one JSON record per instance.
#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "oda/io.hpp"

namespace oda {

struct JobSpec {
  std::string command = "phi";  // phi, psi or order
  int max_picard = 2;            // smooth-surface family: fans of Picard rank <= max_picard
  long max_coeff = 2;            // nef bundles with Picard coordinates in 0..max_coeff
  std::size_t samples = 0;       // 0: every pair; otherwise a seeded sample of pairs
  std::optional<std::uint64_t> seed;
  unsigned jobs = 1;
  bool sorted = false;  // emit in instance order instead of completion order
};

struct ScanSummary {
  std::size_t instances = 0, errors = 0, findings = 0;  // findings: nonzero cokernels or uncovered pairs
};

// 64-bit FNV-1a of the canonical fan's JSON text
std::uint64_t fan_hash(const Fan& f);

// Record without timing: {"instance": {...}, "report": {...}} or {"instance": ..., "error": "..."}.
io::json run_instance(const std::string& command, const ToricLineBundle& l1, const ToricLineBundle& l2);
// Recomputes a record from its instance descriptor.
io::json replay(const io::json& record);

// Calls emit once per instance, never concurrently; each record gains a "micros" field.
ScanSummary run(const JobSpec& job, const std::function<void(const io::json&)>& emit);

}  // namespace oda
