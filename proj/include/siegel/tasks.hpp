#pragma once

// Task dispatch behind the command-line tool: each task reads a ProblemFile
// and produces the "results" object of a report.

#include "siegel/io.hpp"
#include "siegel/search.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace siegel::io {

struct RunConfig {
  unsigned precision_bits = 64;  // fractional bits of reported bounds
  std::size_t budget = 10'000'000;
  unsigned threads = 1;
  std::size_t points_cap = 1000;  // longest point list written to a report
  std::uint64_t seed = 42;

  Json to_json() const;
  SearchOptions search_options() const;
};

/// Names accepted by run_task.
const std::vector<std::string>& task_names();

/// Runs the named task. Throws MalformedInput for missing or invalid fields,
/// BudgetExceeded, InstanceTooLarge and TheoremViolation as raised below.
Json run_task(const std::string& task, const ProblemFile& p, const RunConfig& cfg);

/// Wraps results into a report; timing is kept apart from everything else.
ReportFile make_report(const ProblemFile& p, const RunConfig& cfg, Json results, double seconds);

Json certificate_json(const Certificate& c);
/// Restores the fields verify_certificate reads.
Certificate certificate_from(const Json& j, const FieldDescriptor& field);

struct CorpusSpec {
  FieldDescriptor field = FieldDescriptor::rationals();
  std::size_t n_min = 2, n_max = 4;
  std::size_t w_min = 2, w_max = 4;
  std::size_t count = 20;
  long magnitude = 5;
  std::size_t max_avoid = 3;
};

/// Seeded search instances. Entries are drawn as rng() % (2m + 1) - m from
/// std::mt19937_64(seed); dimension draws use the same generator. Every
/// instance satisfies the search hypotheses and, for W, the lattice checks.
/// Throws std::invalid_argument for an unsatisfiable spec.
std::vector<ProblemFile> gen_corpus(std::uint64_t seed, const CorpusSpec& spec);

struct VerifyOutcome {
  bool ok = false;
  Json details;
};

/// Rechecks a search, extend, nonvanish-forms or probe report: digest,
/// certificate soundness at doubled precision and the task-specific bound.
VerifyOutcome verify_report(const ReportFile& r, const RunConfig& cfg);

}  // namespace siegel::io
