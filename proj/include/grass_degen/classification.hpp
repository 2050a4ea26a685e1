#pragma once

// Canonical fingerprints of binomial initial ideals, the signed action of the
// symmetric group on Plücker variables, and orbit classification.

#include <algorithm>
#include <compare>
#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "grass_degen/combinatorics.hpp"
#include "grass_degen/errors.hpp"
#include "grass_degen/initial_forms.hpp"
#include "grass_degen/sequences.hpp"

namespace grass_degen {

/// lead + sign · trail, with lead < trail in the monomial order.
struct Binomial {
  Monomial lead;
  Monomial trail;
  int sign = -1;

  friend bool operator==(const Binomial&, const Binomial&) = default;
  friend std::strong_ordering operator<=>(const Binomial& a, const Binomial& b) noexcept {
    if (auto c = a.lead <=> b.lead; c != 0) return c;
    if (auto c = a.trail <=> b.trail; c != 0) return c;
    return a.sign <=> b.sign;
  }
};

/// Scales c_a·m_a + c_b·m_b so the smaller monomial has coefficient +1.
inline Binomial canonical_binomial(const SignedTerm& a, const SignedTerm& b) {
  if (a.factors == b.factors) throw Error("binomial with two equal monomials");
  const SignedTerm& lead = a.factors < b.factors ? a : b;
  const SignedTerm& trail = a.factors < b.factors ? b : a;
  return {lead.factors, trail.factors, lead.sign * trail.sign};
}

/// Sorted, duplicate-free list of canonical binomial generators.
class IdealFingerprint {
 public:
  IdealFingerprint() = default;
  IdealFingerprint(int n, std::vector<Binomial> generators) : n_(n), generators_(std::move(generators)) {
    std::sort(generators_.begin(), generators_.end());
    generators_.erase(std::unique(generators_.begin(), generators_.end()), generators_.end());
  }

  int n() const noexcept { return n_; }
  std::size_t size() const noexcept { return generators_.size(); }
  const std::vector<Binomial>& generators() const noexcept { return generators_; }

  bool contains(const Binomial& b) const { return std::binary_search(generators_.begin(), generators_.end(), b); }

  friend bool operator==(const IdealFingerprint&, const IdealFingerprint&) = default;
  friend auto operator<=>(const IdealFingerprint& a, const IdealFingerprint& b) {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    return std::lexicographical_compare_three_way(a.generators_.begin(), a.generators_.end(), b.generators_.begin(),
                                                  b.generators_.end());
  }

 private:
  int n_ = 0;
  std::vector<Binomial> generators_;
};

inline IdealFingerprint fingerprint(int n, const std::vector<InitialForm>& forms) {
  std::vector<Binomial> generators;
  generators.reserve(forms.size());
  for (const auto& form : forms) {
    if (form.initial_terms.size() != 2) {
      throw Error("initial form of R_{" + form.relation.I.to_string() + "," + form.relation.J.to_string() + "} has " +
                  std::to_string(form.initial_terms.size()) + " terms");
    }
    generators.push_back(canonical_binomial(form.initial_terms[0], form.initial_terms[1]));
  }
  return IdealFingerprint(n, std::move(generators));
}

/// Fingerprint of In_{M}(I_{3,n}) from the initial forms of the given relations.
inline IdealFingerprint fingerprint(const WeightingMatrix& matrix, const std::vector<PluckerRelation>& relations) {
  std::vector<InitialForm> forms;
  forms.reserve(relations.size());
  for (const auto& relation : relations) forms.push_back(initial_form(matrix, relation));
  return fingerprint(matrix.n(), forms);
}

/**
 * A permutation of [n] together with its signed action on Plücker variables:
 * g.p_K = ±p_{g(K)}. Groups are formed by composing simple transpositions
 * s_i = (i i+1); s_i fixes p_K with sign -1 when K contains both i and i+1
 * and relabels it otherwise.
 */
class SignedPermutation {
 public:
  /// Identity on Gr(3,n).
  explicit SignedPermutation(int n) : n_(n), variables_(shared_variable_index(n)) {
    perm_.resize(n + 1);
    std::iota(perm_.begin(), perm_.end(), 0);
    image_.resize(variables_->size());
    std::iota(image_.begin(), image_.end(), 0);
    sign_.assign(variables_->size(), 1);
  }

  static SignedPermutation transposition(int i, int n) {
    if (i < 1 || i >= n) throw InvalidIndex("s_" + std::to_string(i) + " is not a simple transposition of S_" + std::to_string(n));
    SignedPermutation s(n);
    std::swap(s.perm_[i], s.perm_[i + 1]);
    for (std::size_t v = 0; v < s.variables_->size(); ++v) {
      const MultiIndex& K = s.variables_->at(v);
      if (K.contains(i) && K.contains(i + 1)) {
        s.sign_[v] = -1;
        continue;
      }
      std::vector<int> moved = K.entries();
      for (int& x : moved) x = s.perm_[x];
      std::sort(moved.begin(), moved.end());
      s.image_[v] = s.variables_->index_of(MultiIndex(moved, n));
    }
    s.word_ = {i};
    return s;
  }

  int n() const noexcept { return n_; }
  int operator()(int point) const { return perm_.at(point); }
  const std::vector<int>& permutation() const noexcept { return perm_; }
  /// Generators s_i, leftmost applied last.
  const std::vector<int>& word() const noexcept { return word_; }

  /// Image of variable v as (sign, variable).
  std::pair<int, int> act(std::size_t v) const { return {sign_[v], image_[v]}; }

  /// (a ∘ b): apply b, then a.
  friend SignedPermutation compose(const SignedPermutation& a, const SignedPermutation& b) {
    SignedPermutation out(a.n_);
    for (int x = 1; x <= a.n_; ++x) out.perm_[x] = a.perm_[b.perm_[x]];
    for (std::size_t v = 0; v < out.image_.size(); ++v) {
      out.image_[v] = a.image_[b.image_[v]];
      out.sign_[v] = b.sign_[v] * a.sign_[b.image_[v]];
    }
    out.word_ = a.word_;
    out.word_.insert(out.word_.end(), b.word_.begin(), b.word_.end());
    return out;
  }

  SignedTerm apply(const SignedTerm& term) const {
    const auto [sa, va] = act(variables_->index_of(term.factors.first));
    const auto [sb, vb] = act(variables_->index_of(term.factors.second));
    return {term.sign * sa * sb, Monomial(variables_->at(va), variables_->at(vb))};
  }

  Binomial apply(const Binomial& b) const {
    return canonical_binomial(apply(SignedTerm{1, b.lead}), apply(SignedTerm{b.sign, b.trail}));
  }

  IdealFingerprint apply(const IdealFingerprint& f) const {
    std::vector<Binomial> out;
    out.reserve(f.size());
    for (const auto& b : f.generators()) out.push_back(apply(b));
    return IdealFingerprint(f.n(), std::move(out));
  }

  /// Same signed map on variables (the word may differ).
  bool same_action(const SignedPermutation& other) const { return image_ == other.image_ && sign_ == other.sign_; }

 private:
  int n_;
  std::shared_ptr<const VariableIndex> variables_;
  std::vector<int> perm_;
  std::vector<int> image_;
  std::vector<int> sign_;
  std::vector<int> word_;
};

inline IdealFingerprint apply_transposition(int i, const IdealFingerprint& f) {
  return SignedPermutation::transposition(i, f.n()).apply(f);
}

/**
 * All n! elements of S_n by breadth-first search over the Cayley graph with
 * generators s_1 .. s_{n-1}; each element carries a shortest word.
 */
inline std::vector<SignedPermutation> group_elements(int n) {
  std::vector<SignedPermutation> generators;
  for (int i = 1; i < n; ++i) generators.push_back(SignedPermutation::transposition(i, n));
  std::vector<SignedPermutation> elements{SignedPermutation(n)};
  std::set<std::vector<int>> seen{elements.front().permutation()};
  for (std::size_t head = 0; head < elements.size(); ++head) {
    for (const auto& s : generators) {
      SignedPermutation next = compose(s, elements[head]);
      if (seen.insert(next.permutation()).second) elements.push_back(std::move(next));
    }
  }
  return elements;
}

struct OrbitReport {
  std::size_t id = 0;
  /// Indices into the classified fingerprint list, ascending.
  std::vector<std::size_t> members;
  /// Labels of the sequences producing each member, when known.
  std::vector<SequenceLabel> labels;
  /// Distinct images of members under G that are not in the input set.
  std::size_t external_images = 0;

  std::size_t cardinality() const noexcept { return members.size(); }
};

/**
 * Groups fingerprints that some group element maps onto each other. Orbits
 * are numbered by their smallest member.
 */
inline std::vector<OrbitReport> compute_orbits(const std::vector<IdealFingerprint>& fingerprints, int n) {
  std::map<IdealFingerprint, std::size_t> position;
  for (std::size_t i = 0; i < fingerprints.size(); ++i) {
    if (fingerprints[i].n() != n) throw DimensionError("fingerprint over a different n");
    position.emplace(fingerprints[i], i);
  }
  std::vector<std::size_t> parent(fingerprints.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };

  std::vector<std::set<IdealFingerprint>> outside(fingerprints.size());
  const auto group = group_elements(n);
  for (std::size_t i = 0; i < fingerprints.size(); ++i) {
    for (const auto& g : group) {
      IdealFingerprint image = g.apply(fingerprints[i]);
      auto hit = position.find(image);
      if (hit == position.end()) {
        outside[i].insert(std::move(image));
        continue;
      }
      const std::size_t a = find(i), b = find(hit->second);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }

  std::map<std::size_t, OrbitReport> by_root;
  for (std::size_t i = 0; i < fingerprints.size(); ++i) by_root[find(i)].members.push_back(i);
  std::vector<OrbitReport> orbits;
  for (auto& [root, report] : by_root) {
    std::set<IdealFingerprint> external;
    for (std::size_t member : report.members) external.insert(outside[member].begin(), outside[member].end());
    report.external_images = external.size();
    report.id = orbits.size();
    orbits.push_back(std::move(report));
  }
  return orbits;
}

/// Label shapes (k,s1;s2,k) and (s1,k;s2,k) that describe two of the Gr(3,6) orbits.
enum class LabelPattern { FirstMatchesLast, SecondMatchesLast, Other };

inline LabelPattern label_pattern(const SequenceLabel& label) {
  if (label.n() != 6) throw Unsupported("label patterns are defined for n = 6");
  const auto [i1, i2] = label.pairs()[0];
  const auto [j1, j2] = label.pairs()[1];
  (void)j1;
  if (i1 == j2) return LabelPattern::FirstMatchesLast;
  if (i2 == j2) return LabelPattern::SecondMatchesLast;
  return LabelPattern::Other;
}

/**
 * Fingerprints of all sequences, grouped by fingerprint, with their labels and
 * G-orbits.
 */
class Classification {
 public:
  Classification(int n, const std::vector<std::pair<SequenceLabel, IdealFingerprint>>& entries) : n_(n) {
    std::map<IdealFingerprint, std::set<SequenceLabel>> grouped;
    for (const auto& [label, fp] : entries) grouped[fp].insert(label);
    for (auto& [fp, labels] : grouped) {
      const std::size_t index = fingerprints_.size();
      fingerprints_.push_back(fp);
      labels_.emplace_back(labels.begin(), labels.end());
      for (const auto& label : labels) by_label_[label.to_string()] = index;
    }
    orbits_ = compute_orbits(fingerprints_, n);
    orbit_of_fingerprint_.resize(fingerprints_.size());
    for (auto& orbit : orbits_) {
      for (std::size_t member : orbit.members) {
        orbit_of_fingerprint_[member] = orbit.id;
        orbit.labels.insert(orbit.labels.end(), labels_[member].begin(), labels_[member].end());
      }
      std::sort(orbit.labels.begin(), orbit.labels.end());
    }
  }

  int n() const noexcept { return n_; }
  const std::vector<IdealFingerprint>& fingerprints() const noexcept { return fingerprints_; }
  const std::vector<std::vector<SequenceLabel>>& labels() const noexcept { return labels_; }
  const std::vector<OrbitReport>& orbits() const noexcept { return orbits_; }
  std::size_t orbit_of_fingerprint(std::size_t index) const { return orbit_of_fingerprint_.at(index); }

  std::size_t fingerprint_of(const SequenceLabel& label) const {
    auto hit = by_label_.find(label.to_string());
    if (hit == by_label_.end()) throw NotFound("no fingerprint recorded for label " + label.to_string());
    return hit->second;
  }

  /// Orbit containing the fingerprint of a label.
  const OrbitReport& label_orbit_membership(const SequenceLabel& label) const {
    return orbits_[orbit_of_fingerprint_[fingerprint_of(label)]];
  }

  /**
   * Symbolic class of an orbit for n = 6: "O2" when its labels are exactly the
   * labels (k,s1;s2,k), "O3" for (s1,k;s2,k); of the remaining orbits the one
   * with 48 members is "O1" and the rest "O4". Empty for other n.
   */
  std::string symbolic_class(const OrbitReport& orbit) const {
    if (n_ != 6) return {};
    auto matches = [&](const OrbitReport& o, LabelPattern pattern) {
      std::size_t hits = 0;
      for (const auto& label : o.labels) hits += label_pattern(label) == pattern ? 1 : 0;
      return hits == o.labels.size() && hits == pattern_count(pattern);
    };
    if (matches(orbit, LabelPattern::FirstMatchesLast)) return "O2";
    if (matches(orbit, LabelPattern::SecondMatchesLast)) return "O3";
    return orbit.cardinality() == 48 ? "O1" : "O4";
  }

 private:
  std::size_t pattern_count(LabelPattern pattern) const {
    std::size_t count = 0;
    for (const auto& labels : labels_) {
      for (const auto& label : labels) count += label_pattern(label) == pattern ? 1 : 0;
    }
    return count;
  }

  int n_;
  std::vector<IdealFingerprint> fingerprints_;
  std::vector<std::vector<SequenceLabel>> labels_;
  std::map<std::string, std::size_t> by_label_;
  std::vector<OrbitReport> orbits_;
  std::vector<std::size_t> orbit_of_fingerprint_;
};

}  // namespace grass_degen
