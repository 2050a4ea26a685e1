#pragma once

// Order-preserving projections: an integer point strictly inside the cone
// {e : e·d > 0 for all d}, found with an exact rational simplex, and the
// scalar weight vector w_S = e·M_S it induces.

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "grass_degen/errors.hpp"
#include "grass_degen/initial_forms.hpp"
#include "grass_degen/linear_algebra.hpp"
#include "grass_degen/valuation.hpp"

namespace grass_degen {

struct SolverConfig {
  /// Half-width of the first box -B <= e_i <= B.
  std::int64_t initial_box = 1;
  /// Largest box tried before declaring the cone empty; the box doubles in between.
  std::int64_t max_box = 1 << 16;
};

struct Projection {
  std::vector<std::int64_t> e;
};

/**
 * Exact simplex over Q for: maximize c·x subject to every row value staying
 * nonnegative, with the structural variables unrestricted in sign.
 *
 * Dictionary form. Row r reads  basic_r = beta_r + Σ_j A_rj · nonbasic_j.
 * The origin must be feasible (all beta_r >= 0). Structural (free)
 * variables are numbered first, so smallest-index entering and leaving
 * choices (Bland's rule) bring them into the basis as soon as they improve
 * the objective; a basic free variable never leaves.
 */
class DictionarySimplex {
 public:
  enum class Status { Optimal, Unbounded };

  DictionarySimplex(std::size_t free_count, std::vector<std::vector<Rational>> rows, std::vector<Rational> offsets,
                    std::vector<Rational> objective)
      : free_count_(free_count), a_(std::move(rows)), beta_(std::move(offsets)), c_(std::move(objective)) {
    const std::size_t m = a_.size();
    if (beta_.size() != m) throw DimensionError("simplex offsets do not match rows");
    for (const auto& row : a_) {
      if (row.size() != free_count_) throw DimensionError("simplex row has wrong width");
    }
    if (c_.size() != free_count_) throw DimensionError("simplex objective has wrong width");
    for (const auto& b : beta_) {
      if (b < 0) throw DimensionError("simplex origin must be feasible");
    }
    nonbasic_.resize(free_count_);
    for (std::size_t j = 0; j < free_count_; ++j) nonbasic_[j] = j;
    basic_.resize(m);
    for (std::size_t r = 0; r < m; ++r) basic_[r] = free_count_ + r;
  }

  Status solve() {
    while (true) {
      // Entering variable: smallest index whose move can raise the objective.
      std::optional<std::size_t> entering;
      int direction = 0;
      for (std::size_t j = 0; j < nonbasic_.size(); ++j) {
        const int sign = c_[j] > 0 ? 1 : (c_[j] < 0 && is_free(nonbasic_[j]) ? -1 : 0);
        if (sign != 0 && (!entering || nonbasic_[j] < nonbasic_[*entering])) {
          entering = j;
          direction = sign;
        }
      }
      if (!entering) return Status::Optimal;

      std::optional<std::size_t> leaving;
      Rational best_ratio;
      for (std::size_t r = 0; r < basic_.size(); ++r) {
        if (is_free(basic_[r])) continue;
        const Rational rate = a_[r][*entering] * direction;
        if (rate >= 0) continue;
        const Rational ratio = beta_[r] / -rate;
        if (!leaving || ratio < best_ratio || (ratio == best_ratio && basic_[r] < basic_[*leaving])) {
          leaving = r;
          best_ratio = ratio;
        }
      }
      if (!leaving) return Status::Unbounded;
      pivot(*leaving, *entering);
      ++pivots_;
    }
  }

  Rational objective_value() const { return z_; }
  std::size_t pivot_count() const noexcept { return pivots_; }

  /// Current value of a structural variable.
  Rational value(std::size_t variable) const {
    for (std::size_t r = 0; r < basic_.size(); ++r) {
      if (basic_[r] == variable) return beta_[r];
    }
    return 0;
  }

 private:
  bool is_free(std::size_t variable) const noexcept { return variable < free_count_; }

  void pivot(std::size_t r, std::size_t j) {
    const Rational p = a_[r][j];
    // Solve row r for the entering variable: N_j = (x_B - beta_r - Σ_{k≠j} A_rk N_k) / p.
    std::vector<Rational>& row = a_[r];
    const Rational inv = 1 / p;
    beta_[r] = -beta_[r] * inv;
    for (std::size_t k = 0; k < row.size(); ++k) row[k] = (k == j) ? inv : -row[k] * inv;

    for (std::size_t q = 0; q < a_.size(); ++q) {
      if (q == r) continue;
      const Rational factor = a_[q][j];
      if (factor == 0) continue;
      beta_[q] += factor * beta_[r];
      for (std::size_t k = 0; k < row.size(); ++k) {
        a_[q][k] = (k == j) ? factor * row[k] : a_[q][k] + factor * row[k];
      }
    }
    const Rational factor = c_[j];
    if (factor != 0) {
      z_ += factor * beta_[r];
      for (std::size_t k = 0; k < row.size(); ++k) c_[k] = (k == j) ? factor * row[k] : c_[k] + factor * row[k];
    }
    std::swap(basic_[r], nonbasic_[j]);
  }

  std::size_t free_count_;
  std::vector<std::vector<Rational>> a_;
  std::vector<Rational> beta_;
  std::vector<Rational> c_;
  Rational z_ = 0;
  std::vector<std::size_t> basic_;
  std::vector<std::size_t> nonbasic_;
  std::size_t pivots_ = 0;
};

namespace detail {

/// max t  s.t.  d·e - t >= 0 for all d,  B - e_i >= 0,  B + e_i >= 0.
struct SlackSolution {
  Rational slack;
  std::vector<Rational> e;
};

inline SlackSolution maximize_slack(const InequalitySet& inequalities, std::size_t dim, std::int64_t box) {
  const std::size_t width = dim + 1;  // e_1..e_dim, t
  std::vector<std::vector<Rational>> rows;
  std::vector<Rational> offsets;
  for (const auto& d : inequalities.diffs()) {
    std::vector<Rational> row(width);
    for (std::size_t i = 0; i < dim; ++i) row[i] = d[i];
    row[dim] = -1;
    rows.push_back(std::move(row));
    offsets.emplace_back(0);
  }
  for (std::size_t i = 0; i < dim; ++i) {
    for (int sign : {-1, 1}) {
      std::vector<Rational> row(width);
      row[i] = sign;
      rows.push_back(std::move(row));
      offsets.emplace_back(box);
    }
  }
  std::vector<Rational> objective(width);
  objective[dim] = 1;

  DictionarySimplex simplex(width, std::move(rows), std::move(offsets), std::move(objective));
  if (simplex.solve() != DictionarySimplex::Status::Optimal) {
    throw Error("slack LP unbounded despite the box constraints");
  }
  SlackSolution out{simplex.value(dim), {}};
  for (std::size_t i = 0; i < dim; ++i) out.e.push_back(simplex.value(i));
  return out;
}

}  // namespace detail

/**
 * Integer e with e·d >= 1 for every d, normalized to content 1.
 *
 * Solves the slack LP in growing boxes; the first positive optimum is scaled
 * by 1/t, cleared of denominators and divided by its gcd. Throws Infeasible
 * when the optimum stays at 0 for every box up to config.max_box.
 */
inline Projection strict_interior_point(const InequalitySet& inequalities, std::size_t dim,
                                        const SolverConfig& config = {}) {
  if (inequalities.dimension() != dim && !inequalities.empty()) {
    throw DimensionError("inequalities have dimension " + std::to_string(inequalities.dimension()) + ", expected " +
                         std::to_string(dim));
  }
  if (inequalities.empty()) return {std::vector<std::int64_t>(dim, 1)};

  for (std::int64_t box = std::max<std::int64_t>(config.initial_box, 1); box <= config.max_box; box *= 2) {
    const auto solution = detail::maximize_slack(inequalities, dim, box);
    if (solution.slack <= 0) continue;

    BigInt lcm = 1;
    std::vector<Rational> scaled;
    for (const auto& value : solution.e) {
      scaled.push_back(value / solution.slack);
      lcm = boost::multiprecision::lcm(lcm, denominator(scaled.back()));
    }
    BigInt content = 0;
    std::vector<BigInt> integral;
    for (const auto& value : scaled) {
      integral.push_back(numerator(value) * (lcm / denominator(value)));
      content = gcd(content, integral.back());
    }
    Projection out;
    for (auto& value : integral) {
      if (content > 1) value /= content;
      if (abs(value) > std::numeric_limits<std::int64_t>::max()) throw ArithmeticOverflow();
      out.e.push_back(static_cast<std::int64_t>(value));
    }
    for (const auto& d : inequalities.diffs()) {
      std::int64_t dot = 0;
      for (std::size_t i = 0; i < dim; ++i) dot += out.e[i] * d[i];
      if (dot < 1) throw Error("internal: projection violates an inequality after scaling");
    }
    return out;
  }
  throw Infeasible("no strictly interior point in any box up to " + std::to_string(config.max_box));
}

/// w_S = e·M_S, one entry per Plücker variable in lex order.
class WeightVector {
 public:
  WeightVector(std::shared_ptr<const VariableIndex> variables, std::vector<std::int64_t> w)
      : variables_(std::move(variables)), w_(std::move(w)) {}

  const std::vector<std::int64_t>& values() const noexcept { return w_; }
  const VariableIndex& variables() const noexcept { return *variables_; }
  std::int64_t operator[](const MultiIndex& triple) const { return w_[variables_->index_of(triple)]; }
  std::int64_t of(const Monomial& m) const { return (*this)[m.first] + (*this)[m.second]; }

  friend bool operator==(const WeightVector& a, const WeightVector& b) { return a.w_ == b.w_; }

 private:
  std::shared_ptr<const VariableIndex> variables_;
  std::vector<std::int64_t> w_;
};

inline WeightVector weight_vector(const Projection& projection, const WeightingMatrix& matrix) {
  if (projection.e.size() != matrix.column_count()) {
    throw DimensionError("projection has length " + std::to_string(projection.e.size()) + ", matrix has " +
                         std::to_string(matrix.column_count()) + " columns");
  }
  std::vector<std::int64_t> w;
  w.reserve(matrix.row_count());
  for (const auto& row : matrix.rows()) {
    std::int64_t value = 0;
    for (std::size_t i = 0; i < row.size(); ++i) value += projection.e[i] * row[i];
    w.push_back(value);
  }
  return WeightVector(matrix.variables_ptr(), std::move(w));
}

/// In_w(R): terms minimizing w_A + w_B.
inline InitialForm initial_form(const WeightVector& weights, const PluckerRelation& relation) {
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  for (const auto& term : relation.terms) best = std::min(best, weights.of(term.factors));
  InitialForm form{relation, {}, false};
  for (const auto& term : relation.terms) {
    if (weights.of(term.factors) == best) form.initial_terms.push_back(term);
  }
  form.is_binomial = form.initial_terms.size() == 2;
  return form;
}

}  // namespace grass_degen
