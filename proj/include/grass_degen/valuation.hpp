#pragma once

// Lowest-term valuations of Plücker coordinates for an iterated sequence and
// the weighting matrix that stacks them.

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <memory>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "grass_degen/combinatorics.hpp"
#include "grass_degen/errors.hpp"
#include "grass_degen/sequences.hpp"

namespace grass_degen {

/// Exponent vector in Z^{3(n-3)}, compared lexicographically.
class ValuationVector {
 public:
  ValuationVector() = default;
  explicit ValuationVector(std::size_t length) : coords_(length, 0) {}
  explicit ValuationVector(std::vector<int> coords) : coords_(std::move(coords)) {}

  std::size_t size() const noexcept { return coords_.size(); }
  int operator[](std::size_t i) const { return coords_[i]; }
  int& operator[](std::size_t i) { return coords_[i]; }
  const std::vector<int>& coords() const noexcept { return coords_; }

  int triad_sum(std::size_t t) const { return coords_.at(3 * t) + coords_.at(3 * t + 1) + coords_.at(3 * t + 2); }

  friend ValuationVector operator+(const ValuationVector& a, const ValuationVector& b) {
    if (a.size() != b.size()) throw DimensionError("valuation vectors differ in length");
    ValuationVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out.coords_[i] = a.coords_[i] + b.coords_[i];
    return out;
  }

  friend ValuationVector operator-(const ValuationVector& a, const ValuationVector& b) {
    if (a.size() != b.size()) throw DimensionError("valuation vectors differ in length");
    ValuationVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out.coords_[i] = a.coords_[i] - b.coords_[i];
    return out;
  }

  friend bool operator==(const ValuationVector&, const ValuationVector&) = default;
  friend auto operator<=>(const ValuationVector&, const ValuationVector&) = default;

 private:
  std::vector<int> coords_;
};

/// Ht(eps_i - eps_j) = j - i.
inline int height(int i, int j) {
  if (i >= j) throw InvalidRoot("eps_" + std::to_string(i) + " - eps_" + std::to_string(j) + " is not a positive root");
  return j - i;
}

/// Ψ_S(m) = Σ m_l Ht(β_l).
inline std::int64_t psi(const IteratedSequence& sequence, std::span<const int> exponents) {
  if (exponents.size() != sequence.dimension()) {
    throw DimensionError("exponent vector has length " + std::to_string(exponents.size()) + ", expected " +
                         std::to_string(sequence.dimension()));
  }
  std::int64_t total = 0;
  for (std::size_t pos = 0; pos < exponents.size(); ++pos) {
    const std::size_t t = pos / 3;
    total += static_cast<std::int64_t>(exponents[pos]) * height(sequence.level(t)[pos % 3], sequence.top_index(t));
  }
  return total;
}

inline std::int64_t psi(const IteratedSequence& sequence, const ValuationVector& m) { return psi(sequence, m.coords()); }

namespace detail {

inline void check_triple(const IteratedSequence& sequence, const MultiIndex& index) {
  if (index.arity() != 3) throw InvalidIndex("Plücker coordinate needs a 3-element multi-index");
  if (index.n() != sequence.n()) throw DimensionError("multi-index and sequence have different n");
}

}  // namespace detail

/**
 * v_S(p_I) by greedy descent through the levels.
 *
 * At level t with top index n - t: when the top index is in the current
 * multi-index, the first root of the level whose lower index is absent fires;
 * its position gets a unit and the top index is replaced by that lower index.
 * Choosing the earliest admissible position at each level makes the result the
 * lexicographic maximum of the pullback support.
 */
inline ValuationVector compute_valuation(const IteratedSequence& sequence, const MultiIndex& index) {
  detail::check_triple(sequence, index);
  ValuationVector m(sequence.dimension());
  std::array<int, 3> current{index[0], index[1], index[2]};
  for (std::size_t t = 0; t < sequence.level_count(); ++t) {
    const int top = sequence.top_index(t);
    auto slot = std::find(current.begin(), current.end(), top);
    if (slot == current.end()) continue;
    const Triple& roots = sequence.level(t);
    for (int j = 0; j < 3; ++j) {
      if (std::find(current.begin(), current.end(), roots[j]) == current.end()) {
        m[3 * t + j] += 1;
        *slot = roots[j];
        break;
      }
    }
  }
  return m;
}

using SupportSet = std::set<ValuationVector>;

namespace detail {

inline void expand_support(const IteratedSequence& sequence, std::size_t t, std::array<int, 3> current,
                           ValuationVector& prefix, SupportSet& out) {
  if (t == sequence.level_count()) {
    out.insert(prefix);
    return;
  }
  const int top = sequence.top_index(t);
  auto slot = std::find(current.begin(), current.end(), top);
  if (slot == current.end()) {
    expand_support(sequence, t + 1, current, prefix, out);
    return;
  }
  const Triple& roots = sequence.level(t);
  for (int j = 0; j < 3; ++j) {
    if (std::find(current.begin(), current.end(), roots[j]) != current.end()) continue;
    auto next = current;
    next[slot - current.begin()] = roots[j];
    prefix[3 * t + j] += 1;
    expand_support(sequence, t + 1, next, prefix, out);
    prefix[3 * t + j] -= 1;
  }
}

}  // namespace detail

/**
 * Exponent support of the pullback of p_I along the birational
 * parametrization, coefficients dropped. Expanded by recursion on the top
 * index: every admissible root of a level whose top index occurs in I spawns
 * one branch.
 */
inline SupportSet pullback_support(const IteratedSequence& sequence, const MultiIndex& index) {
  detail::check_triple(sequence, index);
  SupportSet out;
  ValuationVector prefix(sequence.dimension());
  detail::expand_support(sequence, 0, {index[0], index[1], index[2]}, prefix, out);
  return out;
}

/**
 * M_S: one valuation row per Plücker variable, rows in lex order of I_{3,n}.
 */
class WeightingMatrix {
 public:
  WeightingMatrix(std::shared_ptr<const VariableIndex> variables, std::vector<ValuationVector> rows)
      : variables_(std::move(variables)), rows_(std::move(rows)) {
    if (rows_.size() != variables_->size()) throw DimensionError("weighting matrix needs one row per variable");
  }

  int n() const noexcept { return variables_->n(); }
  std::size_t row_count() const noexcept { return rows_.size(); }
  std::size_t column_count() const noexcept { return rows_.empty() ? 0 : rows_.front().size(); }
  const VariableIndex& variables() const noexcept { return *variables_; }
  const std::shared_ptr<const VariableIndex>& variables_ptr() const noexcept { return variables_; }
  const std::vector<ValuationVector>& rows() const noexcept { return rows_; }
  const ValuationVector& row(std::size_t i) const { return rows_.at(i); }
  const ValuationVector& row(const MultiIndex& triple) const { return rows_[variables_->index_of(triple)]; }

  /// v_S(p_A p_B) = v_S(p_A) + v_S(p_B).
  ValuationVector of(const Monomial& monomial) const { return row(monomial.first) + row(monomial.second); }

  /// Header line, then "123,0,0,...".
  void write_csv(std::ostream& out) const {
    out << "plucker";
    for (std::size_t c = 0; c < column_count(); ++c) out << ",v" << (c + 1);
    out << '\n';
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      out << variables_->at(i).to_string();
      for (int value : rows_[i].coords()) out << ',' << value;
      out << '\n';
    }
  }

 private:
  std::shared_ptr<const VariableIndex> variables_;
  std::vector<ValuationVector> rows_;
};

inline WeightingMatrix weighting_matrix(const IteratedSequence& sequence) {
  auto variables = shared_variable_index(sequence.n());
  std::vector<ValuationVector> rows;
  rows.reserve(variables->size());
  for (const auto& triple : variables->triples()) rows.push_back(compute_valuation(sequence, triple));
  return WeightingMatrix(std::move(variables), std::move(rows));
}

}  // namespace grass_degen
