#pragma once

// Initial forms of Plücker relations with respect to a weighting matrix, and
// the strict inequalities an order-preserving projection has to satisfy.

#include <compare>
#include <numeric>
#include <ostream>
#include <set>
#include <vector>

#include "grass_degen/combinatorics.hpp"
#include "grass_degen/sequences.hpp"
#include "grass_degen/valuation.hpp"

namespace grass_degen {

struct TermValuation {
  SignedTerm term;
  ValuationVector vector;
  std::int64_t psi = 0;
};

struct InitialForm {
  PluckerRelation relation;
  std::vector<SignedTerm> initial_terms;
  bool is_binomial = false;
};

/**
 * The Ψ_S-weighted reverse lexicographic order: a ≺ b iff Ψ_S(a) < Ψ_S(b),
 * or the Ψ values tie and a is lexicographically larger.
 */
inline std::strong_ordering order_compare(const IteratedSequence& sequence, const ValuationVector& a,
                                          const ValuationVector& b) {
  if (a.size() != b.size()) throw DimensionError("cannot compare vectors of different length");
  const auto pa = psi(sequence, a);
  const auto pb = psi(sequence, b);
  if (pa != pb) return pa <=> pb;
  return b <=> a;
}

inline std::vector<TermValuation> term_valuations(const IteratedSequence& sequence, const WeightingMatrix& matrix,
                                                  const PluckerRelation& relation) {
  std::vector<TermValuation> out;
  out.reserve(relation.terms.size());
  for (const auto& term : relation.terms) {
    ValuationVector v = matrix.of(term.factors);
    const auto weight = psi(sequence, v);
    out.push_back({term, std::move(v), weight});
  }
  return out;
}

/**
 * In_{M_S}(R): the terms whose valuation is lexicographically largest.
 *
 * All terms of a relation share one Ψ value, so the ≺-minimum is the
 * lex-maximum and Ψ need not be evaluated.
 */
inline InitialForm initial_form(const WeightingMatrix& matrix, const PluckerRelation& relation) {
  std::vector<ValuationVector> values;
  values.reserve(relation.terms.size());
  for (const auto& term : relation.terms) values.push_back(matrix.of(term.factors));
  const ValuationVector& best = *std::max_element(values.begin(), values.end());
  InitialForm form{relation, {}, false};
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] == best) form.initial_terms.push_back(relation.terms[i]);
  }
  form.is_binomial = form.initial_terms.size() == 2;
  return form;
}

/// Same result computed with the full ≺ comparator; used to cross-check the lex shortcut.
inline InitialForm initial_form_by_order(const IteratedSequence& sequence, const WeightingMatrix& matrix,
                                         const PluckerRelation& relation) {
  const auto valued = term_valuations(sequence, matrix, relation);
  std::size_t best = 0;
  for (std::size_t i = 1; i < valued.size(); ++i) {
    if (order_compare(sequence, valued[i].vector, valued[best].vector) < 0) best = i;
  }
  InitialForm form{relation, {}, false};
  for (const auto& tv : valued) {
    if (order_compare(sequence, tv.vector, valued[best].vector) == 0) form.initial_terms.push_back(tv.term);
  }
  form.is_binomial = form.initial_terms.size() == 2;
  return form;
}

/**
 * Directions d = v(non-initial term) - v(initial term), content reduced and
 * deduplicated. An order-preserving projection e must have e·d > 0 for all d.
 */
class InequalitySet {
 public:
  InequalitySet() = default;
  explicit InequalitySet(std::size_t dimension) : dimension_(dimension) {}

  std::size_t dimension() const noexcept { return dimension_; }
  std::size_t size() const noexcept { return diffs_.size(); }
  bool empty() const noexcept { return diffs_.empty(); }
  const std::set<std::vector<int>>& diffs() const noexcept { return diffs_; }

  void add(std::vector<int> d) {
    if (d.size() != dimension_) throw DimensionError("inequality of wrong length");
    int content = 0;
    for (int x : d) content = std::gcd(content, x);
    if (content == 0) throw DimensionError("zero inequality direction");
    for (int& x : d) x /= content;
    diffs_.insert(std::move(d));
  }

  /// One row per inequality, comma separated, no header.
  void write_csv(std::ostream& out) const {
    for (const auto& d : diffs_) {
      for (std::size_t i = 0; i < d.size(); ++i) out << (i ? "," : "") << d[i];
      out << '\n';
    }
  }

 private:
  std::size_t dimension_ = 0;
  std::set<std::vector<int>> diffs_;
};

inline InequalitySet inequality_set(const WeightingMatrix& matrix, const std::vector<PluckerRelation>& relations) {
  InequalitySet out(matrix.column_count());
  for (const auto& relation : relations) {
    std::vector<ValuationVector> values;
    for (const auto& term : relation.terms) values.push_back(matrix.of(term.factors));
    const ValuationVector best = *std::max_element(values.begin(), values.end());
    for (const auto& v : values) {
      if (v != best) out.add((v - best).coords());
    }
  }
  return out;
}

inline InequalitySet inequality_set(const IteratedSequence& sequence, const WeightingMatrix& matrix) {
  return inequality_set(matrix, all_relations(sequence.n()));
}

}  // namespace grass_degen
