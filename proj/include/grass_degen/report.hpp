#pragma once

// JSON and CSV output for pipeline results. Objects use sorted keys and
// arrays follow enumeration order, so identical runs give identical files.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "grass_degen/pipeline.hpp"

namespace grass_degen {

using Json = nlohmann::json;

inline Json to_json(const Binomial& b) {
  return {{"lead", {b.lead.first.to_string(), b.lead.second.to_string()}},
          {"trail", {b.trail.first.to_string(), b.trail.second.to_string()}},
          {"sign", b.sign}};
}

inline Json to_json(const IdealFingerprint& f) {
  Json generators = Json::array();
  for (const auto& b : f.generators()) generators.push_back(to_json(b));
  return generators;
}

inline Json to_json(const WeightVector& w) {
  Json out = Json::object();
  for (std::size_t i = 0; i < w.values().size(); ++i) out[w.variables().at(i).to_string()] = w.values()[i];
  return out;
}

inline Json weights_json(const PipelineResult& result) {
  Json sequences = Json::array();
  for (const auto& r : result.records) {
    sequences.push_back({{"sequence", r.sequence.to_string()},
                         {"label", r.label.to_string()},
                         {"e", r.projection.e},
                         {"w", to_json(r.weights)},
                         {"ideal", r.ideal}});
  }
  return {{"n", result.n}, {"sequences", sequences}};
}

inline Json fingerprints_json(const PipelineResult& result) {
  const auto& c = *result.classification;
  std::vector<std::size_t> sequence_counts(c.fingerprints().size(), 0);
  for (const auto& r : result.records) ++sequence_counts[r.ideal];
  Json ideals = Json::array();
  for (std::size_t i = 0; i < c.fingerprints().size(); ++i) {
    Json labels = Json::array();
    for (const auto& label : c.labels()[i]) labels.push_back(label.to_string());
    ideals.push_back({{"id", i},
                      {"labels", labels},
                      {"sequences", sequence_counts[i]},
                      {"orbit", c.orbit_of_fingerprint(i)},
                      {"generators", to_json(c.fingerprints()[i])}});
  }
  Json inconsistent = Json::array();
  for (const auto& label : result.inconsistent_labels) inconsistent.push_back(label.to_string());
  return {{"n", result.n}, {"ideals", ideals}, {"inconsistent_labels", inconsistent}};
}

inline Json orbits_json(const PipelineResult& result) {
  const auto& c = *result.classification;
  Json orbits = Json::array();
  for (const auto& orbit : c.orbits()) {
    Json labels = Json::array();
    for (const auto& label : orbit.labels) labels.push_back(label.to_string());
    orbits.push_back({{"id", orbit.id},
                      {"size", orbit.cardinality()},
                      {"members", orbit.members},
                      {"labels", labels},
                      {"external_images", orbit.external_images},
                      {"class", c.symbolic_class(orbit)}});
  }
  return {{"n", result.n}, {"orbits", orbits}, {"sizes", result.orbit_sizes()}};
}

inline Json verify_json(const PipelineResult& result) {
  Json ideals = Json::array();
  for (std::size_t i = 0; i < result.verification.size(); ++i) {
    const auto& v = result.verification[i];
    Json factors = Json::array();
    for (const auto& d : result.lattices[i].invariant_factors) factors.push_back(d.str());
    ideals.push_back({{"id", i},
                      {"rank2", v.rank2},
                      {"rank3", v.rank3},
                      {"snf_ok", v.snf_ok},
                      {"pure_difference", v.pure_difference},
                      {"invariant_factors", factors},
                      {"not_pure_difference", result.lattices[i].not_pure_difference.size()}});
  }
  Json reference = Json::object();
  if (result.reference) reference = {{"rank2", result.reference->rank2}, {"rank3", result.reference->rank3}};
  return {{"n", result.n}, {"reference", reference}, {"ideals", ideals}, {"passed", !result.verification_failed()}};
}

inline void write_json(const std::filesystem::path& path, const Json& value) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << value.dump(1) << '\n';
}

/// 64-bit FNV-1a, printed as 16 hex digits.
inline std::string fnv1a_hex(const std::string& data) {
  std::uint64_t hash = 14695981039346656037ULL;
  for (unsigned char c : data) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  char buffer[17];
  std::snprintf(buffer, sizeof buffer, "%016llx", static_cast<unsigned long long>(hash));
  return buffer;
}

struct ManifestInput {
  std::string command;
  /// name -> contents, hashed into the manifest.
  std::vector<std::pair<std::string, std::string>> inputs;
};

/**
 * Writes matrices/, inequalities/, the JSON reports and manifest.json into
 * dir. Returns the written paths relative to dir, sorted.
 */
inline std::vector<std::string> write_reports(const PipelineResult& result, const std::filesystem::path& dir,
                                              const ManifestInput& manifest) {
  namespace fs = std::filesystem;
  fs::create_directories(dir / "matrices");
  fs::create_directories(dir / "inequalities");
  std::vector<std::string> written;
  for (std::size_t i = 0; i < result.records.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "%05zu.csv", i);
    {
      std::ofstream out(dir / "matrices" / name);
      result.records[i].matrix.write_csv(out);
    }
    {
      std::ofstream out(dir / "inequalities" / name);
      result.records[i].inequalities.write_csv(out);
    }
  }
  written.push_back("inequalities/");
  written.push_back("matrices/");

  write_json(dir / "weights.json", weights_json(result));
  write_json(dir / "fingerprints.json", fingerprints_json(result));
  write_json(dir / "orbits.json", orbits_json(result));
  written.insert(written.end(), {"fingerprints.json", "orbits.json", "weights.json"});
  if (!result.verification.empty()) {
    write_json(dir / "verify.json", verify_json(result));
    written.push_back("verify.json");
  }
  written.push_back("manifest.json");
  std::sort(written.begin(), written.end());

  Json hashes = Json::object();
  for (const auto& [name, contents] : manifest.inputs) hashes[name] = fnv1a_hex(contents);
  Json timings = Json::object();
  for (const auto& t : result.timings) timings[t.stage] = t.seconds;
  write_json(dir / "manifest.json", {{"n", result.n},
                                     {"command", manifest.command},
                                     {"version", kVersion},
                                     {"inputs", hashes},
                                     {"timings", timings},
                                     {"outputs", written},
                                     {"summary", result.summary()}});
  return written;
}

}  // namespace grass_degen
