#pragma once

// Multi-indices, degree-2 monomials in Plücker variables, and the quadratic
// Plücker relations R_{I,J} of Gr(3,n).

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "grass_degen/errors.hpp"

namespace grass_degen {

/**
 * A strictly increasing tuple of indices in [n] = {1, ..., n}.
 *
 * Arity is at most four; this covers the pairs I, the triples labelling
 * Plücker variables and the quadruples J used by the relations.
 */
class MultiIndex {
 public:
  static constexpr int kMaxArity = 4;

  MultiIndex() = default;

  MultiIndex(std::initializer_list<int> entries, int n)
      : MultiIndex(std::span<const int>(entries.begin(), entries.size()), n) {}

  MultiIndex(std::span<const int> entries, int n) : arity_(static_cast<int>(entries.size())), n_(n) {
    if (arity_ > kMaxArity) {
      throw InvalidIndex("multi-index arity " + std::to_string(arity_) + " exceeds " +
                         std::to_string(kMaxArity));
    }
    int previous = 0;
    for (int pos = 0; pos < arity_; ++pos) {
      const int value = entries[pos];
      if (value < 1 || value > n) {
        throw InvalidIndex("index " + std::to_string(value) + " outside [1," + std::to_string(n) + "]");
      }
      if (value <= previous) {
        throw InvalidIndex("multi-index entries must be strictly increasing");
      }
      entries_[pos] = static_cast<std::int8_t>(value);
      previous = value;
    }
  }

  int arity() const noexcept { return arity_; }
  int n() const noexcept { return n_; }
  int operator[](int pos) const noexcept { return entries_[pos]; }

  std::vector<int> entries() const { return {entries_.begin(), entries_.begin() + arity_}; }

  bool contains(int value) const noexcept {
    return std::find(entries_.begin(), entries_.begin() + arity_, value) != entries_.begin() + arity_;
  }

  int sum() const noexcept {
    int total = 0;
    for (int pos = 0; pos < arity_; ++pos) total += entries_[pos];
    return total;
  }

  /// "123" for n < 10; comma separated otherwise so the text stays unambiguous.
  std::string to_string() const {
    std::string out;
    for (int pos = 0; pos < arity_; ++pos) {
      if (n_ >= 10 && pos > 0) out += ',';
      out += std::to_string(entries_[pos]);
    }
    return out;
  }

  /// Inverse of to_string for a known ambient size.
  static MultiIndex parse(const std::string& text, int n) {
    std::vector<int> values;
    if (n < 10) {
      for (char c : text) {
        if (c < '0' || c > '9') throw ParseError("bad multi-index '" + text + "'");
        values.push_back(c - '0');
      }
    } else {
      std::size_t start = 0;
      while (start <= text.size()) {
        const std::size_t comma = std::min(text.find(',', start), text.size());
        try {
          values.push_back(std::stoi(text.substr(start, comma - start)));
        } catch (const std::exception&) {
          throw ParseError("bad multi-index '" + text + "'");
        }
        start = comma + 1;
      }
    }
    try {
      return MultiIndex(values, n);
    } catch (const InvalidIndex& err) {
      throw ParseError(err.what());
    }
  }

  friend bool operator==(const MultiIndex& a, const MultiIndex& b) noexcept {
    return a.n_ == b.n_ && (a <=> b) == 0;
  }

  /// Lexicographic on the entries; a proper prefix sorts first.
  friend std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b) noexcept {
    return std::lexicographical_compare_three_way(a.entries_.begin(), a.entries_.begin() + a.arity_,
                                                  b.entries_.begin(), b.entries_.begin() + b.arity_);
  }

 private:
  std::array<std::int8_t, kMaxArity> entries_{};
  int arity_ = 0;
  int n_ = 0;
};

/// I ∪ j, inserted in sorted position; nullopt stands for p_{I∪j} = 0 when j ∈ I.
inline std::optional<MultiIndex> insert_index(const MultiIndex& index, int j) {
  if (j < 1 || j > index.n()) {
    throw InvalidIndex("index " + std::to_string(j) + " outside [1," + std::to_string(index.n()) + "]");
  }
  if (index.contains(j)) return std::nullopt;
  std::vector<int> values = index.entries();
  values.insert(std::upper_bound(values.begin(), values.end(), j), j);
  return MultiIndex(values, index.n());
}

/// J ∖ j.
inline MultiIndex remove_index(const MultiIndex& index, int j) {
  if (!index.contains(j)) {
    throw InvalidIndex("index " + std::to_string(j) + " not in " + index.to_string());
  }
  std::vector<int> values = index.entries();
  values.erase(std::find(values.begin(), values.end(), j));
  return MultiIndex(values, index.n());
}

inline std::int64_t binomial_coefficient(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::int64_t result = 1;
  for (int i = 1; i <= k; ++i) result = result * (n - k + i) / i;
  return result;
}

/// All k-subsets of [n] in lexicographic order.
inline std::vector<MultiIndex> all_multi_indices(int k, int n) {
  std::vector<MultiIndex> out;
  if (k < 0 || k > n || k > MultiIndex::kMaxArity) return out;
  std::vector<int> current(k);
  for (int i = 0; i < k; ++i) current[i] = i + 1;
  while (true) {
    out.emplace_back(current, n);
    int pos = k - 1;
    while (pos >= 0 && current[pos] == n - k + pos + 1) --pos;
    if (pos < 0) break;
    ++current[pos];
    for (int i = pos + 1; i < k; ++i) current[i] = current[i - 1] + 1;
  }
  return out;
}

/**
 * Dense numbering of the Plücker variables p_K, K ∈ I_{3,n}, in lex order.
 */
class VariableIndex {
 public:
  explicit VariableIndex(int n) : n_(n), triples_(all_multi_indices(3, n)), lookup_((n + 1) * (n + 1) * (n + 1), -1) {
    for (std::size_t i = 0; i < triples_.size(); ++i) lookup_[key(triples_[i])] = static_cast<int>(i);
  }

  int n() const noexcept { return n_; }
  std::size_t size() const noexcept { return triples_.size(); }
  const MultiIndex& at(std::size_t i) const { return triples_.at(i); }
  const std::vector<MultiIndex>& triples() const noexcept { return triples_; }

  int index_of(const MultiIndex& triple) const {
    if (triple.arity() != 3 || triple.n() != n_) throw InvalidIndex("not a Plücker variable of Gr(3," + std::to_string(n_) + ")");
    return lookup_[key(triple)];
  }

 private:
  std::size_t key(const MultiIndex& t) const noexcept {
    return (static_cast<std::size_t>(t[0]) * (n_ + 1) + t[1]) * (n_ + 1) + t[2];
  }

  int n_;
  std::vector<MultiIndex> triples_;
  std::vector<int> lookup_;
};

/// One immutable VariableIndex per n, shared process-wide.
inline std::shared_ptr<const VariableIndex> shared_variable_index(int n) {
  static std::mutex guard;
  static std::map<int, std::shared_ptr<const VariableIndex>> cache;
  std::lock_guard lock(guard);
  auto& slot = cache[n];
  if (!slot) slot = std::make_shared<const VariableIndex>(n);
  return slot;
}

/// p_A · p_B with A ≤ B.
struct Monomial {
  MultiIndex first;
  MultiIndex second;

  Monomial() = default;
  Monomial(const MultiIndex& a, const MultiIndex& b) : first(std::min(a, b)), second(std::max(a, b)) {}

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) noexcept {
    if (auto c = a.first <=> b.first; c != 0) return c;
    return a.second <=> b.second;
  }
};

struct SignedTerm {
  int sign = 1;
  Monomial factors;

  friend bool operator==(const SignedTerm&, const SignedTerm&) = default;
};

struct PluckerRelation {
  MultiIndex I;
  MultiIndex J;
  std::vector<SignedTerm> terms;
};

/**
 * R_{I,J} = Σ_{j∈J} (-1)^{#{i∈I : i<j} + #{j'∈J : j<j'}} p_{I∪j} p_{J∖j}.
 *
 * Returns nullopt when |I ∩ J| ≥ 2: the two surviving summands cancel.
 */
inline std::optional<PluckerRelation> plucker_relation(const MultiIndex& I, const MultiIndex& J) {
  if (I.arity() != 2 || J.arity() != 4) throw InvalidIndex("Plücker relation needs |I| = 2 and |J| = 4");
  if (I.n() != J.n()) throw InvalidIndex("I and J live in different ambient sizes");

  int common = 0;
  for (int pos = 0; pos < 4; ++pos) common += I.contains(J[pos]) ? 1 : 0;
  if (common >= 2) return std::nullopt;

  PluckerRelation relation{I, J, {}};
  for (int pos = 0; pos < 4; ++pos) {
    const int j = J[pos];
    const auto with_j = insert_index(I, j);
    if (!with_j) continue;
    const int below = (I[0] < j ? 1 : 0) + (I[1] < j ? 1 : 0);
    const int above = 3 - pos;
    relation.terms.push_back({(below + above) % 2 == 0 ? 1 : -1, Monomial(*with_j, remove_index(J, j))});
  }
  return relation;
}

/// Every nonzero R_{I,J} for Gr(3,n), in lexicographic (I, J) order.
inline std::vector<PluckerRelation> all_relations(int n) {
  if (n < 4) throw InvalidSize("Plücker relations need n >= 4, got " + std::to_string(n));
  std::vector<PluckerRelation> out;
  const auto pairs = all_multi_indices(2, n);
  const auto quads = all_multi_indices(4, n);
  for (const auto& I : pairs) {
    for (const auto& J : quads) {
      if (auto relation = plucker_relation(I, J)) out.push_back(std::move(*relation));
    }
  }
  return out;
}

}  // namespace grass_degen
