#pragma once

// Exact integer linear algebra: rank by fraction-free sparse elimination and
// Smith normal form invariant factors.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace grass_degen {

using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int, boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational, boost::multiprecision::et_off>;

/// Raised by CheckedInt when a result leaves the int64 range.
class ArithmeticOverflow : public std::overflow_error {
 public:
  ArithmeticOverflow() : std::overflow_error("int64 overflow") {}
};

/// int64 that throws instead of wrapping.
class CheckedInt {
 public:
  constexpr CheckedInt() = default;
  constexpr CheckedInt(std::int64_t value) : value_(value) {}  // NOLINT(google-explicit-constructor)

  constexpr std::int64_t value() const noexcept { return value_; }

  friend CheckedInt operator+(CheckedInt a, CheckedInt b) {
    std::int64_t out;
    if (__builtin_add_overflow(a.value_, b.value_, &out)) throw ArithmeticOverflow();
    return out;
  }
  friend CheckedInt operator-(CheckedInt a, CheckedInt b) {
    std::int64_t out;
    if (__builtin_sub_overflow(a.value_, b.value_, &out)) throw ArithmeticOverflow();
    return out;
  }
  friend CheckedInt operator*(CheckedInt a, CheckedInt b) {
    std::int64_t out;
    if (__builtin_mul_overflow(a.value_, b.value_, &out)) throw ArithmeticOverflow();
    return out;
  }
  friend CheckedInt operator/(CheckedInt a, CheckedInt b) {
    if (a.value_ == INT64_MIN && b.value_ == -1) throw ArithmeticOverflow();
    return a.value_ / b.value_;
  }
  friend CheckedInt operator%(CheckedInt a, CheckedInt b) { return a.value_ % b.value_; }
  CheckedInt operator-() const {
    if (value_ == INT64_MIN) throw ArithmeticOverflow();
    return -value_;
  }
  friend bool operator==(CheckedInt, CheckedInt) = default;
  friend auto operator<=>(CheckedInt, CheckedInt) = default;

 private:
  std::int64_t value_ = 0;
};

inline CheckedInt abs(CheckedInt a) { return a < 0 ? -a : a; }
inline CheckedInt gcd(CheckedInt a, CheckedInt b) {
  if (a.value() == INT64_MIN || b.value() == INT64_MIN) throw ArithmeticOverflow();
  return std::gcd(a.value(), b.value());
}

/// Sparse row: (column, nonzero coefficient) sorted by column.
template <class Coeff>
using SparseRow = std::vector<std::pair<std::uint32_t, Coeff>>;

/**
 * Incremental row echelon form without back substitution.
 *
 * Each stored row has a distinct leading column, a positive leading
 * coefficient, and content 1. Reducing an incoming row by a pivot uses the
 * fraction-free update row <- a*row - b*pivot with a, b divided by gcd, then
 * strips the row content, so no rationals appear.
 */
template <class Coeff>
class SparseEchelon {
 public:
  std::size_t rank() const noexcept { return pivots_.size(); }

  /// Returns true when the row was independent of the stored rows.
  bool insert(SparseRow<Coeff> row) {
    normalize(row);
    while (!row.empty()) {
      auto pivot = pivots_.find(row.front().first);
      if (pivot == pivots_.end()) {
        pivots_.emplace(row.front().first, std::move(row));
        return true;
      }
      row = eliminate(row, pivot->second);
      normalize(row);
    }
    return false;
  }

 private:
  static void normalize(SparseRow<Coeff>& row) {
    if (row.empty()) return;
    Coeff content = 0;
    for (const auto& entry : row) {
      content = gcd(content, entry.second);
      if (content == 1) break;
    }
    if (row.front().second < 0) content = -content;
    if (content != 1) {
      for (auto& entry : row) entry.second = entry.second / content;
    }
  }

  static SparseRow<Coeff> eliminate(const SparseRow<Coeff>& row, const SparseRow<Coeff>& pivot) {
    Coeff a = pivot.front().second;
    Coeff b = row.front().second;
    const Coeff g = gcd(a, b);
    a = a / g;
    b = b / g;
    SparseRow<Coeff> out;
    out.reserve(row.size() + pivot.size());
    std::size_t i = 1, j = 1;
    while (i < row.size() || j < pivot.size()) {
      if (j == pivot.size() || (i < row.size() && row[i].first < pivot[j].first)) {
        out.emplace_back(row[i].first, a * row[i].second);
        ++i;
      } else if (i == row.size() || pivot[j].first < row[i].first) {
        out.emplace_back(pivot[j].first, -(b * pivot[j].second));
        ++j;
      } else {
        Coeff value = a * row[i].second - b * pivot[j].second;
        if (value != 0) out.emplace_back(row[i].first, value);
        ++i;
        ++j;
      }
    }
    return out;
  }

  std::map<std::uint32_t, SparseRow<Coeff>> pivots_;
};

namespace detail {

template <class Coeff>
std::size_t sparse_rank_as(const std::vector<SparseRow<std::int64_t>>& rows, std::size_t columns) {
  SparseEchelon<Coeff> echelon;
  for (const auto& source : rows) {
    SparseRow<Coeff> row;
    row.reserve(source.size());
    for (const auto& [col, value] : source) {
      if (value != 0) row.emplace_back(col, Coeff(value));
    }
    std::sort(row.begin(), row.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    echelon.insert(std::move(row));
    if (echelon.rank() == columns) break;
  }
  return echelon.rank();
}

}  // namespace detail

/**
 * Exact rank over Q of an integer matrix given by sparse rows.
 *
 * Runs in checked int64 first and repeats in GMP integers if any
 * intermediate value overflows. Stops as soon as the rank reaches the column
 * count.
 */
inline std::size_t exact_rank(const std::vector<SparseRow<std::int64_t>>& rows, std::size_t columns) {
  try {
    return detail::sparse_rank_as<CheckedInt>(rows, columns);
  } catch (const ArithmeticOverflow&) {
    return detail::sparse_rank_as<BigInt>(rows, columns);
  }
}

/// Dense convenience overload.
inline std::size_t exact_rank(const std::vector<std::vector<std::int64_t>>& dense) {
  std::vector<SparseRow<std::int64_t>> rows;
  std::size_t columns = 0;
  for (const auto& source : dense) {
    columns = std::max(columns, source.size());
    SparseRow<std::int64_t> row;
    for (std::size_t c = 0; c < source.size(); ++c) {
      if (source[c] != 0) row.emplace_back(static_cast<std::uint32_t>(c), source[c]);
    }
    rows.push_back(std::move(row));
  }
  return exact_rank(rows, columns);
}

/**
 * Nonzero invariant factors d_1 | d_2 | ... of an integer matrix, all
 * positive, via the Smith normal form.
 */
inline std::vector<BigInt> smith_invariant_factors(const std::vector<std::vector<std::int64_t>>& input) {
  const std::size_t rows = input.size();
  const std::size_t cols = rows == 0 ? 0 : input.front().size();
  std::vector<std::vector<BigInt>> a(rows, std::vector<BigInt>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) a[r][c] = input[r].at(c);
  }

  std::vector<BigInt> factors;
  std::size_t pivot = 0;
  while (pivot < rows && pivot < cols) {
    // Smallest nonzero |entry| of the trailing block goes to (pivot, pivot).
    std::size_t best_r = rows, best_c = cols;
    for (std::size_t r = pivot; r < rows; ++r) {
      for (std::size_t c = pivot; c < cols; ++c) {
        if (a[r][c] != 0 && (best_r == rows || abs(a[r][c]) < abs(a[best_r][best_c]))) {
          best_r = r;
          best_c = c;
        }
      }
    }
    if (best_r == rows) break;
    std::swap(a[pivot], a[best_r]);
    for (auto& row : a) std::swap(row[pivot], row[best_c]);

    bool clean = false;
    while (!clean) {
      clean = true;
      for (std::size_t r = pivot + 1; r < rows; ++r) {
        if (a[r][pivot] == 0) continue;
        const BigInt q = a[r][pivot] / a[pivot][pivot];
        for (std::size_t c = pivot; c < cols; ++c) a[r][c] -= q * a[pivot][c];
        if (a[r][pivot] != 0) {
          std::swap(a[pivot], a[r]);
          clean = false;
        }
      }
      for (std::size_t c = pivot + 1; c < cols; ++c) {
        if (a[pivot][c] == 0) continue;
        const BigInt q = a[pivot][c] / a[pivot][pivot];
        for (std::size_t r = pivot; r < rows; ++r) a[r][c] -= q * a[r][pivot];
        if (a[pivot][c] != 0) {
          for (auto& row : a) std::swap(row[pivot], row[c]);
          clean = false;
        }
      }
      if (!clean) continue;
      // Divisibility: fold any entry not divisible by the pivot into the pivot row.
      for (std::size_t r = pivot + 1; r < rows && clean; ++r) {
        for (std::size_t c = pivot + 1; c < cols; ++c) {
          if (a[r][c] % a[pivot][pivot] != 0) {
            for (std::size_t k = pivot; k < cols; ++k) a[pivot][k] += a[r][k];
            clean = false;
            break;
          }
        }
      }
    }
    factors.push_back(abs(a[pivot][pivot]));
    ++pivot;
  }
  return factors;
}

}  // namespace grass_degen
