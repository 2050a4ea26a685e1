// grass-degen: enumerate iterated sequences for Gr(3,n), compute their
// initial ideals, classify them under the signed S_n action and check them.
//
// Exit codes: 0 success, 1 internal invariant violated, 2 usage error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "grass_degen/report.hpp"

namespace gd = grass_degen;

namespace {

constexpr int kOk = 0;
constexpr int kInvariant = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string config_path;
  std::optional<unsigned> jobs;
};

gd::RunConfig load(const Common& common) {
  gd::RunConfig config;
  if (!common.config_path.empty()) {
    try {
      config = gd::load_config(common.config_path);
    } catch (const gd::Error& e) {
      throw UsageError(e.what());
    }
  }
  if (common.jobs) config.jobs = common.jobs;
  return config;
}

void check_n(int n, const gd::RunConfig& config, int floor) {
  if (n < floor || n > config.n_max) {
    throw UsageError("n must lie in [" + std::to_string(floor) + ", " + std::to_string(config.n_max) + "], got " +
                     std::to_string(n));
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string command_line(int argc, char** argv) {
  std::string out;
  for (int i = 1; i < argc; ++i) out += (i > 1 ? " " : "") + std::string(argv[i]);
  return out;
}

/// Prints every failed per-sequence check; returns true when all hold.
bool report_invariants(const gd::PipelineResult& result) {
  bool ok = true;
  for (const auto& r : result.records) {
    if (!r.all_binomial) {
      std::cerr << "non-binomial initial form: " << r.sequence.to_string() << '\n';
      ok = false;
    }
    if (!r.weights_agree) {
      std::cerr << "weight vector initial forms differ: " << r.sequence.to_string() << '\n';
      ok = false;
    }
    if (r.matrix_rank != r.matrix.column_count()) {
      std::cerr << "weighting matrix rank " << r.matrix_rank << ": " << r.sequence.to_string() << '\n';
      ok = false;
    }
  }
  for (const auto& label : result.inconsistent_labels) {
    std::cerr << "label fiber with several ideals: " << label.to_string() << '\n';
    ok = false;
  }
  if (result.verification_failed()) {
    std::cerr << "verification against the Plücker ideal failed\n";
    ok = false;
  }
  return ok;
}

int run_enumerate(int n, const std::string& out_path, const Common& common) {
  const auto config = load(common);
  check_n(n, config, 4);
  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) throw UsageError("cannot write " + out_path);
  }
  std::ostream& out = out_path.empty() ? std::cout : file;
  std::uint64_t count = 0;
  gd::for_each_sequence(n, [&](const gd::IteratedSequence& s) {
    out << s.to_string() << '\n';
    ++count;
  });
  std::cerr << "count=" << count << '\n';
  return count == gd::sequence_count(n) ? kOk : kInvariant;
}

int run_pipeline(int n, const std::string& seq, bool skip_verify, const std::string& out_dir, const Common& common,
                 const std::string& command) {
  const auto config = load(common);
  check_n(n, config, 5);
  gd::PipelineOptions options;
  options.n = n;
  options.verify = !skip_verify;
  options.jobs = gd::resolve_jobs(config.jobs);
  options.solver = config.solver;
  if (!seq.empty()) {
    try {
      options.single = gd::IteratedSequence::parse(seq);
    } catch (const gd::Error& e) {
      throw UsageError(e.what());
    }
    if (options.single->n() != n) throw UsageError("--seq is over a different n");
  }

  const auto result = gd::run_pipeline(options);
  gd::ManifestInput manifest{command, {{"seq", seq}}};
  if (!common.config_path.empty()) manifest.inputs.emplace_back("config", read_file(common.config_path));
  if (!out_dir.empty()) gd::write_reports(result, out_dir, manifest);
  std::cout << result.summary() << '\n';
  return report_invariants(result) ? kOk : kInvariant;
}

int run_orbit_of(const std::string& text, const Common& common) {
  const auto config = load(common);
  std::optional<gd::SequenceLabel> label;
  try {
    label = gd::SequenceLabel::parse(text, 6);
  } catch (const gd::Error& e) {
    throw UsageError(e.what());
  }
  gd::PipelineOptions options;
  options.n = 6;
  options.verify = false;
  options.jobs = gd::resolve_jobs(config.jobs);
  options.solver = config.solver;
  const auto result = gd::run_pipeline(options);
  const auto& c = *result.classification;
  const auto& orbit = c.label_orbit_membership(*label);
  std::string pattern = "other";
  switch (gd::label_pattern(*label)) {
    case gd::LabelPattern::FirstMatchesLast:
      pattern = "i1=j2";
      break;
    case gd::LabelPattern::SecondMatchesLast:
      pattern = "i2=j2";
      break;
    case gd::LabelPattern::Other:
      break;
  }
  std::cout << "label=" << label->to_string() << " ideal=" << c.fingerprint_of(*label) << " orbit=" << orbit.id
            << " size=" << orbit.cardinality() << " class=" << c.symbolic_class(orbit) << " pattern=" << pattern
            << '\n';
  return kOk;
}

int run_verify(int n, const std::string& out_dir, const Common& common) {
  const auto config = load(common);
  check_n(n, config, 5);
  gd::PipelineOptions options;
  options.n = n;
  options.jobs = gd::resolve_jobs(config.jobs);
  options.solver = config.solver;
  const auto result = gd::run_pipeline(options);
  std::size_t passed = 0;
  for (const auto& v : result.verification) {
    passed += v.rank2 == result.reference->rank2 && v.rank3 == result.reference->rank3 && v.snf_ok;
  }
  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    gd::write_json(std::filesystem::path(out_dir) / "verify.json", gd::verify_json(result));
  }
  std::cout << "reference rank2=" << result.reference->rank2 << " rank3=" << result.reference->rank3
            << " passed=" << passed << "/" << result.verification.size() << '\n';
  return passed == result.verification.size() ? kOk : kInvariant;
}

gd::InequalitySet read_inequalities(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  std::vector<std::vector<int>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<int> row;
    std::stringstream fields(line);
    std::string field;
    while (std::getline(fields, field, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stoi(field, &used));
        if (field.find_first_not_of(" \t\r", used) != std::string::npos) throw std::invalid_argument(field);
      } catch (const std::exception&) {
        throw UsageError(path + ": '" + field + "' is not an integer");
      }
    }
    if (!rows.empty() && row.size() != rows.front().size()) throw UsageError(path + ": rows differ in length");
    rows.push_back(std::move(row));
  }
  gd::InequalitySet out(rows.empty() ? 0 : rows.front().size());
  for (auto& row : rows) {
    try {
      out.add(std::move(row));
    } catch (const gd::Error& e) {
      throw UsageError(path + ": " + e.what());
    }
  }
  return out;
}

int run_solve(const std::string& seq, const std::string& inequality_path, const Common& common) {
  const auto config = load(common);
  if (seq.empty() && inequality_path.empty()) throw UsageError("solve needs a sequence or --inequalities");
  std::optional<gd::IteratedSequence> sequence;
  if (!seq.empty()) {
    try {
      sequence = gd::IteratedSequence::parse(seq);
    } catch (const gd::Error& e) {
      throw UsageError(e.what());
    }
  }
  std::optional<gd::WeightingMatrix> matrix;
  if (sequence) matrix = gd::weighting_matrix(*sequence);
  const auto inequalities =
      inequality_path.empty() ? gd::inequality_set(*sequence, *matrix) : read_inequalities(inequality_path);
  const std::size_t dim = matrix ? matrix->column_count() : inequalities.dimension();
  if (!inequalities.empty() && inequalities.dimension() != dim) throw UsageError("inequalities do not match the sequence");
  const auto e = gd::strict_interior_point(inequalities, dim, config.solver);
  gd::Json out = {{"inequalities", inequalities.size()}, {"e", e.e}};
  if (sequence) {
    out["sequence"] = sequence->to_string();
    out["w"] = gd::to_json(gd::weight_vector(e, *matrix));
  }
  std::cout << out.dump() << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Toric degenerations of Gr(3,n) from iterated sequences"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--config", common.config_path, "key=value file (box_initial, box_max, n_max, jobs)");

  int n = 6;
  std::string out_path, seq, label;
  bool skip_verify = false;
  unsigned jobs = 0;

  auto* enumerate = app.add_subcommand("enumerate", "Print every iterated sequence, one per line");
  enumerate->add_option("-n", n, "Grassmannian Gr(3,n)")->required();
  enumerate->add_option("-o,--out", out_path, "Write to a file instead of stdout");

  auto* pipeline = app.add_subcommand("pipeline", "Run the full computation and write reports");
  pipeline->add_option("-n", n, "Grassmannian Gr(3,n)")->required();
  pipeline->add_option("--seq", seq, "Single serialized sequence, e.g. 6:[1,2,3|1,2,3|1,2,3]");
  pipeline->add_flag("--skip-verify", skip_verify, "Skip graded-rank and lattice checks");
  pipeline->add_option("--jobs", jobs, "Worker threads (default: GRASS_DEGEN_JOBS or core count)");
  pipeline->add_option("-o,--out", out_path, "Report directory");

  auto* orbit_of = app.add_subcommand("orbit-of", "Orbit of the ideal attached to a Gr(3,6) label");
  orbit_of->add_option("label", label, "Label such as (1,3;2,1)")->required();
  orbit_of->add_option("--jobs", jobs, "Worker threads");

  auto* verify = app.add_subcommand("verify", "Graded-rank and lattice checks for every ideal");
  verify->add_option("-n", n, "Grassmannian Gr(3,n)")->required();
  verify->add_option("--jobs", jobs, "Worker threads");
  verify->add_option("-o,--out", out_path, "Directory for verify.json");

  std::string inequality_path;
  auto* solve = app.add_subcommand("solve", "Strictly interior projection for a sequence or an inequality CSV");
  solve->add_option("seq", seq, "Serialized sequence; adds the weight vector to the output");
  solve->add_option("--inequalities", inequality_path, "CSV with one inequality row per line, no header");

  auto* version = app.add_subcommand("version", "Print the version");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  if (jobs > 0) common.jobs = jobs;
  const std::string command = command_line(argc, argv);

  try {
    if (*enumerate) return run_enumerate(n, out_path, common);
    if (*pipeline) return run_pipeline(n, seq, skip_verify, out_path, common, command);
    if (*orbit_of) return run_orbit_of(label, common);
    if (*verify) return run_verify(n, out_path, common);
    if (*solve) return run_solve(seq, inequality_path, common);
    if (*version) {
      std::cout << "grass-degen " << gd::kVersion << '\n';
      return kOk;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n' << app.help();
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvariant;
  }
  return kUsage;
}
