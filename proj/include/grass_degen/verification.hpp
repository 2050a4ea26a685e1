#pragma once

// Evidence that a binomial initial ideal is a flat toric degeneration:
// graded dimensions in low degree match the Plücker ideal, and the exponent
// lattice of the binomials is saturated.

#include <cstdint>
#include <string>
#include <vector>

#include "grass_degen/classification.hpp"
#include "grass_degen/combinatorics.hpp"
#include "grass_degen/errors.hpp"
#include "grass_degen/linear_algebra.hpp"

namespace grass_degen {

/// Σ coefficient · p_A p_B.
struct QuadraticForm {
  std::vector<std::pair<std::int64_t, Monomial>> terms;
};

inline QuadraticForm to_form(const PluckerRelation& relation) {
  QuadraticForm out;
  for (const auto& term : relation.terms) out.terms.emplace_back(term.sign, term.factors);
  return out;
}

inline QuadraticForm to_form(const Binomial& binomial) {
  return {{{1, binomial.lead}, {binomial.sign, binomial.trail}}};
}

template <class Range>
std::vector<QuadraticForm> to_forms(const Range& items) {
  std::vector<QuadraticForm> out;
  for (const auto& item : items) out.push_back(to_form(item));
  return out;
}

struct GradedPieceRank {
  int degree = 0;
  std::size_t rank = 0;
  /// Number of degree-d monomials in the C(n,3) variables.
  std::size_t monomials = 0;
};

namespace detail {

/// Column numbering of degree-d monomials x_{v1}..x_{vd}, v1 <= ... <= vd.
class MonomialColumns {
 public:
  MonomialColumns(std::size_t variables, int degree) : variables_(variables), degree_(degree) {
    std::size_t cells = 1;
    for (int k = 0; k < degree; ++k) cells *= variables;
    table_.assign(cells, UINT32_MAX);
    std::vector<std::size_t> current(degree, 0);
    std::uint32_t next = 0;
    while (true) {
      table_[flat(current)] = next++;
      int pos = degree - 1;
      while (pos >= 0 && current[pos] + 1 == variables) --pos;
      if (pos < 0) break;
      ++current[pos];
      for (int k = pos + 1; k < degree; ++k) current[k] = current[pos];
    }
    count_ = next;
  }

  std::size_t count() const noexcept { return count_; }

  std::uint32_t column(std::vector<std::size_t> vars) const {
    std::sort(vars.begin(), vars.end());
    return table_[flat(vars)];
  }

 private:
  std::size_t flat(const std::vector<std::size_t>& vars) const {
    std::size_t index = 0;
    for (auto v : vars) index = index * variables_ + v;
    return index;
  }

  std::size_t variables_;
  int degree_;
  std::vector<std::uint32_t> table_;
  std::size_t count_ = 0;
};

}  // namespace detail

/**
 * Dimension of the degree-d part of the ideal generated by quadrics: the
 * exact rank of the Macaulay matrix whose rows are generator × monomial of
 * degree d - 2.
 */
inline GradedPieceRank graded_rank(const std::vector<QuadraticForm>& generators, int degree, int n) {
  if (degree != 2 && degree != 3) throw Unsupported("graded ranks are implemented for degrees 2 and 3");
  const auto variables = shared_variable_index(n);
  const std::size_t count = variables->size();
  detail::MonomialColumns columns(count, degree);

  std::vector<SparseRow<std::int64_t>> rows;
  const std::size_t multipliers = degree == 2 ? 1 : count;
  rows.reserve(generators.size() * multipliers);
  for (std::size_t extra = 0; extra < multipliers; ++extra) {
    for (const auto& g : generators) {
      std::map<std::uint32_t, std::int64_t> row;
      for (const auto& [coefficient, m] : g.terms) {
        std::vector<std::size_t> vars{static_cast<std::size_t>(variables->index_of(m.first)),
                                      static_cast<std::size_t>(variables->index_of(m.second))};
        if (degree == 3) vars.push_back(extra);
        row[columns.column(vars)] += coefficient;
      }
      SparseRow<std::int64_t> sparse;
      for (const auto& [col, value] : row) {
        if (value != 0) sparse.emplace_back(col, value);
      }
      rows.push_back(std::move(sparse));
    }
  }
  return {degree, exact_rank(rows, columns.count()), columns.count()};
}

struct LatticeCertificate {
  /// Rows a - b in Z^{C(n,3)}, one per generator p^a ± p^b.
  std::vector<std::vector<std::int64_t>> basis;
  std::vector<BigInt> invariant_factors;
  /// Every invariant factor equals 1.
  bool saturated = false;
  /// Every generator has the form p^a - p^b.
  bool pure_difference = false;
  /// Generators of the form p^a + p^b, by index.
  std::vector<std::size_t> not_pure_difference;
};

/**
 * Smith normal form of the exponent-difference lattice of the generators.
 * Saturation (all invariant factors 1) is necessary for the lattice ideal to
 * be prime. Generators p^a + p^b are listed in not_pure_difference rather
 * than rejected.
 */
inline LatticeCertificate lattice_saturation(const IdealFingerprint& fingerprint) {
  const auto variables = shared_variable_index(fingerprint.n());
  LatticeCertificate out;
  for (std::size_t k = 0; k < fingerprint.size(); ++k) {
    const Binomial& b = fingerprint.generators()[k];
    std::vector<std::int64_t> row(variables->size(), 0);
    row[variables->index_of(b.lead.first)] += 1;
    row[variables->index_of(b.lead.second)] += 1;
    row[variables->index_of(b.trail.first)] -= 1;
    row[variables->index_of(b.trail.second)] -= 1;
    out.basis.push_back(std::move(row));
    if (b.sign != -1) out.not_pure_difference.push_back(k);
  }
  out.invariant_factors = smith_invariant_factors(out.basis);
  out.saturated = std::all_of(out.invariant_factors.begin(), out.invariant_factors.end(),
                              [](const BigInt& d) { return d == 1; });
  out.pure_difference = out.not_pure_difference.empty();
  return out;
}

struct VerificationReport {
  std::size_t rank2 = 0;
  std::size_t rank3 = 0;
  bool snf_ok = false;
  bool pure_difference = false;
};

inline VerificationReport verify_fingerprint(const IdealFingerprint& fingerprint) {
  const auto forms = to_forms(fingerprint.generators());
  const auto lattice = lattice_saturation(fingerprint);
  return {graded_rank(forms, 2, fingerprint.n()).rank, graded_rank(forms, 3, fingerprint.n()).rank, lattice.saturated,
          lattice.pure_difference};
}

/// Degree 2 and 3 ranks of the Plücker ideal itself.
struct ReferenceRanks {
  std::size_t rank2 = 0;
  std::size_t rank3 = 0;
};

inline ReferenceRanks plucker_reference_ranks(int n) {
  const auto forms = to_forms(all_relations(n));
  return {graded_rank(forms, 2, n).rank, graded_rank(forms, 3, n).rank};
}

}  // namespace grass_degen
