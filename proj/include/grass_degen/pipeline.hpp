#pragma once

// End-to-end driver: valuation -> initial forms -> cone -> fingerprint ->
// orbits -> verification, with a deterministic parallel map over sequences.

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "grass_degen/classification.hpp"
#include "grass_degen/cone_solver.hpp"
#include "grass_degen/errors.hpp"
#include "grass_degen/initial_forms.hpp"
#include "grass_degen/linear_algebra.hpp"
#include "grass_degen/sequences.hpp"
#include "grass_degen/valuation.hpp"
#include "grass_degen/verification.hpp"

namespace grass_degen {

inline constexpr const char* kVersion = "0.3.0";

/// Settings read from a key=value file. Lines starting with '#' are ignored.
struct RunConfig {
  SolverConfig solver;
  int n_min = 4;
  int n_max = 8;
  std::optional<unsigned> jobs;
};

inline RunConfig parse_config(std::istream& in) {
  RunConfig config;
  std::string line;
  int line_number = 0;
  auto trim = [](std::string s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return std::string();
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
  };
  while (std::getline(in, line)) {
    ++line_number;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("config line " + std::to_string(line_number) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    long long number = 0;
    try {
      std::size_t used = 0;
      number = std::stoll(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
    } catch (const std::exception&) {
      throw ParseError("config line " + std::to_string(line_number) + ": '" + value + "' is not an integer");
    }
    if (number < 1) throw ParseError("config line " + std::to_string(line_number) + ": value must be positive");
    if (key == "box_initial") {
      config.solver.initial_box = number;
    } else if (key == "box_max") {
      config.solver.max_box = number;
    } else if (key == "n_max") {
      config.n_max = static_cast<int>(number);
    } else if (key == "jobs") {
      config.jobs = static_cast<unsigned>(number);
    } else {
      throw ParseError("config line " + std::to_string(line_number) + ": unknown key '" + key + "'");
    }
  }
  if (config.n_max < config.n_min) throw ParseError("n_max must be at least 4");
  return config;
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file " + path);
  return parse_config(in);
}

/// --jobs, then GRASS_DEGEN_JOBS, then the core count.
inline unsigned resolve_jobs(std::optional<unsigned> requested) {
  if (requested && *requested > 0) return *requested;
  if (const char* env = std::getenv("GRASS_DEGEN_JOBS")) {
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && value > 0) return static_cast<unsigned>(value);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/**
 * Calls work(i) for i in [0, count) on up to `jobs` threads. The first
 * exception thrown by any call is rethrown after all threads stop.
 */
template <class Work>
void parallel_for(std::size_t count, unsigned jobs, Work&& work) {
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto run = [&] {
    while (!failed) {
      const std::size_t i = next++;
      if (i >= count) return;
      try {
        work(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed = true;
      }
    }
  };
  if (jobs == 1) {
    run();
  } else {
    std::vector<std::thread> threads;
    for (unsigned k = 0; k < jobs; ++k) threads.emplace_back(run);
    for (auto& t : threads) t.join();
  }
  if (error) std::rethrow_exception(error);
}

/// Everything computed for one sequence.
struct SequenceRecord {
  IteratedSequence sequence;
  SequenceLabel label;
  WeightingMatrix matrix;
  InequalitySet inequalities;
  Projection projection;
  WeightVector weights;
  std::size_t matrix_rank = 0;
  /// Every relation has a two-term initial form.
  bool all_binomial = false;
  /// In_w(R) equals In_M(R) for every relation.
  bool weights_agree = false;
  /// Index into PipelineResult::classification fingerprints.
  std::size_t ideal = 0;
};

struct PipelineOptions {
  int n = 6;
  /// Run on this one sequence instead of all of S_{3,n}.
  std::optional<IteratedSequence> single;
  bool verify = true;
  unsigned jobs = 1;
  SolverConfig solver;
};

struct StageTiming {
  std::string stage;
  double seconds = 0;
};

struct PipelineResult {
  int n = 0;
  std::vector<SequenceRecord> records;
  std::optional<Classification> classification;
  /// Labels whose sequences produced more than one fingerprint.
  std::vector<SequenceLabel> inconsistent_labels;
  std::optional<ReferenceRanks> reference;
  std::vector<VerificationReport> verification;
  std::vector<LatticeCertificate> lattices;
  std::vector<StageTiming> timings;

  std::size_t sequence_count() const noexcept { return records.size(); }
  std::size_t ideal_count() const { return classification ? classification->fingerprints().size() : 0; }

  /// Orbit cardinalities in ascending order.
  std::vector<std::size_t> orbit_sizes() const {
    std::vector<std::size_t> sizes;
    if (classification) {
      for (const auto& orbit : classification->orbits()) sizes.push_back(orbit.cardinality());
    }
    std::sort(sizes.begin(), sizes.end());
    return sizes;
  }

  /// `sequences=… ideals=… orbits=[…]`
  std::string summary() const {
    std::string out = "sequences=" + std::to_string(sequence_count()) + " ideals=" + std::to_string(ideal_count());
    out += " orbits=[";
    const auto sizes = orbit_sizes();
    for (std::size_t i = 0; i < sizes.size(); ++i) out += (i ? "," : "") + std::to_string(sizes[i]);
    return out + "]";
  }

  /// True when some verification check disagrees with the Plücker ideal.
  bool verification_failed() const {
    if (!reference) return false;
    for (const auto& report : verification) {
      if (report.rank2 != reference->rank2 || report.rank3 != reference->rank3 || !report.snf_ok) return true;
    }
    return false;
  }
};

namespace detail {

struct SequenceWork {
  std::optional<SequenceRecord> record;
  std::optional<IdealFingerprint> fingerprint;
};

inline SequenceWork process_sequence(const IteratedSequence& sequence, const std::vector<PluckerRelation>& relations,
                                     const SolverConfig& solver) {
  const int n = sequence.n();
  WeightingMatrix matrix = weighting_matrix(sequence);
  std::vector<InitialForm> forms;
  forms.reserve(relations.size());
  bool binomial = true;
  for (const auto& relation : relations) {
    forms.push_back(initial_form(matrix, relation));
    binomial = binomial && forms.back().is_binomial;
  }
  InequalitySet inequalities = inequality_set(matrix, relations);
  Projection projection;
  try {
    projection = strict_interior_point(inequalities, matrix.column_count(), solver);
  } catch (const Infeasible& e) {
    throw Infeasible(std::string(e.what()) + " for sequence " + sequence.to_string());
  }
  WeightVector weights = weight_vector(projection, matrix);
  bool agree = true;
  for (std::size_t k = 0; k < relations.size() && agree; ++k) {
    agree = initial_form(weights, relations[k]).initial_terms == forms[k].initial_terms;
  }

  std::vector<std::vector<std::int64_t>> dense;
  for (const auto& row : matrix.rows()) dense.emplace_back(row.coords().begin(), row.coords().end());
  const std::size_t rank = exact_rank(dense);

  SequenceWork out;
  if (binomial) out.fingerprint = fingerprint(n, forms);
  out.record = SequenceRecord{sequence,        label_of(sequence), std::move(matrix), std::move(inequalities),
                              std::move(projection), std::move(weights), rank,          binomial,
                              agree,           0};
  return out;
}

class Stopwatch {
 public:
  double lap() {
    const auto now = std::chrono::steady_clock::now();
    const double seconds = std::chrono::duration<double>(now - last_).count();
    last_ = now;
    return seconds;
  }

 private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

}  // namespace detail

/**
 * Runs every stage. Throws Infeasible when a cone has no interior point and
 * Error when an initial form is not binomial, since both contradict the
 * underlying theory.
 */
inline PipelineResult run_pipeline(const PipelineOptions& options) {
  PipelineResult result;
  result.n = options.n;
  detail::Stopwatch clock;

  std::vector<IteratedSequence> sequences =
      options.single ? std::vector<IteratedSequence>{*options.single} : enumerate_sequences(options.n);
  if (options.single && options.single->n() != options.n) {
    throw InvalidSize("sequence is over n = " + std::to_string(options.single->n()) + ", expected " +
                      std::to_string(options.n));
  }
  const auto relations = all_relations(options.n);
  result.timings.push_back({"enumerate", clock.lap()});

  std::vector<detail::SequenceWork> work(sequences.size());
  parallel_for(sequences.size(), options.jobs,
               [&](std::size_t i) { work[i] = detail::process_sequence(sequences[i], relations, options.solver); });
  result.timings.push_back({"sequences", clock.lap()});

  std::vector<std::pair<SequenceLabel, IdealFingerprint>> entries;
  std::map<SequenceLabel, IdealFingerprint> first_seen;
  std::set<SequenceLabel> inconsistent;
  for (auto& item : work) {
    if (!item.fingerprint) throw Error("non-binomial initial form for sequence " + item.record->sequence.to_string());
    const SequenceLabel& label = item.record->label;
    auto [hit, inserted] = first_seen.emplace(label, *item.fingerprint);
    if (!inserted && !(hit->second == *item.fingerprint)) inconsistent.insert(label);
    entries.emplace_back(label, std::move(*item.fingerprint));
    result.records.push_back(std::move(*item.record));
  }
  result.inconsistent_labels.assign(inconsistent.begin(), inconsistent.end());
  work.clear();

  result.classification.emplace(options.n, entries);
  std::map<IdealFingerprint, std::size_t> index;
  for (std::size_t i = 0; i < result.classification->fingerprints().size(); ++i) {
    index.emplace(result.classification->fingerprints()[i], i);
  }
  for (std::size_t i = 0; i < entries.size(); ++i) result.records[i].ideal = index.at(entries[i].second);
  result.timings.push_back({"classify", clock.lap()});

  if (options.verify) {
    result.reference = plucker_reference_ranks(options.n);
    const auto& fps = result.classification->fingerprints();
    result.verification.resize(fps.size());
    result.lattices.resize(fps.size());
    parallel_for(fps.size(), options.jobs, [&](std::size_t i) {
      result.verification[i] = verify_fingerprint(fps[i]);
      result.lattices[i] = lattice_saturation(fps[i]);
    });
    result.timings.push_back({"verify", clock.lap()});
  }
  return result;
}

}  // namespace grass_degen
