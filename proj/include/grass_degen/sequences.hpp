#pragma once

// Iterated birational sequences for Gr(3,n).
//
// A sequence is stored top-down: level t (t = 0 .. n-4) holds the ordered
// triple (i_1, i_2, i_3) of the roots eps_{i_j} - eps_{n-t}. The last level
// (top index 4) is the PBW base, a permutation of (1, 2, 3). Position
// 3t + j - 1 of an exponent vector belongs to the j-th root of level t.

#include <array>
#include <cctype>
#include <compare>
#include <cstdint>
#include <functional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "grass_degen/errors.hpp"

namespace grass_degen {

using Triple = std::array<int, 3>;

/// Ordered triples of pairwise distinct entries of [m], lexicographic.
inline std::vector<Triple> ordered_triples(int m) {
  std::vector<Triple> out;
  for (int a = 1; a <= m; ++a)
    for (int b = 1; b <= m; ++b)
      for (int c = 1; c <= m; ++c)
        if (a != b && b != c && a != c) out.push_back({a, b, c});
  return out;
}

class IteratedSequence {
 public:
  IteratedSequence() = default;

  IteratedSequence(int n, std::vector<Triple> levels) : n_(n), levels_(std::move(levels)) {
    if (n < 4) throw InvalidSize("iterated sequences need n >= 4, got " + std::to_string(n));
    if (levels_.size() != static_cast<std::size_t>(n - 3)) {
      throw InvalidSize("expected " + std::to_string(n - 3) + " levels, got " + std::to_string(levels_.size()));
    }
    for (std::size_t t = 0; t < levels_.size(); ++t) {
      const int bound = top_index(t) - 1;
      const Triple& triple = levels_[t];
      for (int j = 0; j < 3; ++j) {
        if (triple[j] < 1 || triple[j] > bound) {
          throw InvalidIndex("level " + std::to_string(t) + " entry " + std::to_string(triple[j]) +
                             " outside [1," + std::to_string(bound) + "]");
        }
      }
      if (triple[0] == triple[1] || triple[1] == triple[2] || triple[0] == triple[2]) {
        throw InvalidIndex("level " + std::to_string(t) + " entries must be pairwise distinct");
      }
    }
  }

  /// Every level equal to (1, 2, 3).
  static IteratedSequence standard(int n) {
    if (n < 4) throw InvalidSize("iterated sequences need n >= 4, got " + std::to_string(n));
    return IteratedSequence(n, std::vector<Triple>(n - 3, Triple{1, 2, 3}));
  }

  int n() const noexcept { return n_; }
  std::size_t level_count() const noexcept { return levels_.size(); }
  std::size_t dimension() const noexcept { return 3 * levels_.size(); }
  int top_index(std::size_t t) const noexcept { return n_ - static_cast<int>(t); }
  const Triple& level(std::size_t t) const { return levels_.at(t); }
  std::span<const Triple> levels() const noexcept { return levels_; }
  const Triple& base_perm() const { return levels_.back(); }

  /// Ht(eps_i - eps_top) of the root at an exponent position.
  int root_height(std::size_t position) const {
    const std::size_t t = position / 3;
    return top_index(t) - levels_.at(t)[position % 3];
  }

  /// Text form "6:[1,2,3|3,4,1|2,1,3]".
  std::string to_string() const {
    std::string out = std::to_string(n_) + ":[";
    for (std::size_t t = 0; t < levels_.size(); ++t) {
      if (t > 0) out += '|';
      out += std::to_string(levels_[t][0]) + ',' + std::to_string(levels_[t][1]) + ',' +
             std::to_string(levels_[t][2]);
    }
    return out + ']';
  }

  static IteratedSequence parse(std::string_view text) {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos || text.size() < colon + 3 || text[colon + 1] != '[' || text.back() != ']') {
      throw ParseError("malformed sequence '" + std::string(text) + "'");
    }
    const int n = parse_int(text.substr(0, colon), text);
    std::vector<Triple> levels;
    std::string_view body = text.substr(colon + 2, text.size() - colon - 3);
    while (true) {
      const auto bar = body.find('|');
      std::string_view chunk = body.substr(0, bar);
      Triple triple{};
      for (int j = 0; j < 3; ++j) {
        const auto comma = chunk.find(',');
        if ((j < 2) == (comma == std::string_view::npos)) throw ParseError("malformed sequence '" + std::string(text) + "'");
        triple[j] = parse_int(chunk.substr(0, comma), text);
        if (j < 2) chunk = chunk.substr(comma + 1);
      }
      levels.push_back(triple);
      if (bar == std::string_view::npos) break;
      body = body.substr(bar + 1);
    }
    try {
      return IteratedSequence(n, std::move(levels));
    } catch (const ParseError&) {
      throw;
    } catch (const Error& err) {
      throw ParseError("invalid sequence '" + std::string(text) + "': " + err.what());
    }
  }

  friend bool operator==(const IteratedSequence&, const IteratedSequence&) = default;
  friend auto operator<=>(const IteratedSequence&, const IteratedSequence&) = default;

 private:
  static int parse_int(std::string_view digits, std::string_view whole) {
    if (digits.empty() || digits.size() > 4) throw ParseError("malformed sequence '" + std::string(whole) + "'");
    int value = 0;
    for (char c : digits) {
      if (!std::isdigit(static_cast<unsigned char>(c))) throw ParseError("malformed sequence '" + std::string(whole) + "'");
      value = value * 10 + (c - '0');
    }
    return value;
  }

  int n_ = 0;
  std::vector<Triple> levels_;
};

/// First two indices of every non-base level.
class SequenceLabel {
 public:
  SequenceLabel() = default;
  SequenceLabel(int n, std::vector<std::pair<int, int>> pairs) : n_(n), pairs_(std::move(pairs)) {
    if (n < 5) throw InvalidSize("labels need n >= 5, got " + std::to_string(n));
    if (pairs_.size() != static_cast<std::size_t>(n - 4)) throw InvalidSize("label has wrong number of levels");
    for (std::size_t t = 0; t < pairs_.size(); ++t) {
      const int bound = n - static_cast<int>(t) - 1;
      const auto [a, b] = pairs_[t];
      if (a < 1 || a > bound || b < 1 || b > bound || a == b) {
        throw InvalidIndex("label pair " + std::to_string(t) + " out of range");
      }
    }
  }

  int n() const noexcept { return n_; }
  const std::vector<std::pair<int, int>>& pairs() const noexcept { return pairs_; }

  /// "(1,2;3,4)".
  std::string to_string() const {
    std::string out = "(";
    for (std::size_t t = 0; t < pairs_.size(); ++t) {
      if (t > 0) out += ';';
      out += std::to_string(pairs_[t].first) + ',' + std::to_string(pairs_[t].second);
    }
    return out + ')';
  }

  static SequenceLabel parse(std::string_view text, int n) {
    if (text.size() < 2 || text.front() != '(' || text.back() != ')') throw ParseError("malformed label '" + std::string(text) + "'");
    std::vector<std::pair<int, int>> pairs;
    std::vector<int> numbers;
    int value = -1;
    char expected_sep = ',';
    for (std::size_t i = 1; i < text.size(); ++i) {
      const char c = text[i];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        value = (value < 0 ? 0 : value * 10) + (c - '0');
        if (value > 999) throw ParseError("malformed label '" + std::string(text) + "'");
        continue;
      }
      if (value < 0) throw ParseError("malformed label '" + std::string(text) + "'");
      const bool closing = (i + 1 == text.size());
      if (!closing && c != expected_sep) throw ParseError("malformed label '" + std::string(text) + "'");
      numbers.push_back(value);
      value = -1;
      if (numbers.size() == 2) {
        if (!closing && c != ';') throw ParseError("malformed label '" + std::string(text) + "'");
        pairs.emplace_back(numbers[0], numbers[1]);
        numbers.clear();
        expected_sep = ',';
      } else {
        if (closing) throw ParseError("malformed label '" + std::string(text) + "'");
        expected_sep = ';';
      }
    }
    try {
      return SequenceLabel(n, std::move(pairs));
    } catch (const Error& err) {
      throw ParseError("invalid label '" + std::string(text) + "': " + err.what());
    }
  }

  friend bool operator==(const SequenceLabel&, const SequenceLabel&) = default;
  friend auto operator<=>(const SequenceLabel&, const SequenceLabel&) = default;

 private:
  int n_ = 0;
  std::vector<std::pair<int, int>> pairs_;
};

/// #S_{3,n} = Π_{l=0}^{n-4} (n-l-1)(n-l-2)(n-l-3).
inline std::uint64_t sequence_count(int n) {
  if (n < 4) throw InvalidSize("iterated sequences need n >= 4, got " + std::to_string(n));
  std::uint64_t count = 1;
  for (int top = n; top >= 4; --top) count *= static_cast<std::uint64_t>(top - 1) * (top - 2) * (top - 3);
  return count;
}

/**
 * The sequence at a position of the enumeration order, which is lexicographic
 * over (level-0 triple, level-1 triple, ..., base permutation).
 */
inline IteratedSequence sequence_at(int n, std::uint64_t position) {
  const std::uint64_t total = sequence_count(n);
  if (position >= total) throw InvalidIndex("sequence position out of range");
  std::vector<Triple> levels(n - 3);
  for (int t = n - 4; t >= 0; --t) {
    const auto choices = ordered_triples(n - t - 1);
    levels[t] = choices[position % choices.size()];
    position /= choices.size();
  }
  return IteratedSequence(n, std::move(levels));
}

/// Calls visit(S) for every iterated sequence of Gr(3,n), in enumeration order.
inline void for_each_sequence(int n, const std::function<void(const IteratedSequence&)>& visit) {
  if (n < 4) throw InvalidSize("iterated sequences need n >= 4, got " + std::to_string(n));
  std::vector<std::vector<Triple>> choices;
  for (int top = n; top >= 4; --top) choices.push_back(ordered_triples(top - 1));
  std::vector<std::size_t> digits(choices.size(), 0);
  std::vector<Triple> levels(choices.size());
  while (true) {
    for (std::size_t t = 0; t < choices.size(); ++t) levels[t] = choices[t][digits[t]];
    visit(IteratedSequence(n, levels));
    std::size_t t = choices.size();
    while (t > 0) {
      --t;
      if (++digits[t] < choices[t].size()) break;
      digits[t] = 0;
      if (t == 0) return;
    }
  }
}

inline std::vector<IteratedSequence> enumerate_sequences(int n) {
  std::vector<IteratedSequence> out;
  out.reserve(sequence_count(n));
  for_each_sequence(n, [&](const IteratedSequence& s) { out.push_back(s); });
  return out;
}

inline SequenceLabel label_of(const IteratedSequence& sequence) {
  std::vector<std::pair<int, int>> pairs;
  for (std::size_t t = 0; t + 1 < sequence.level_count(); ++t) {
    pairs.emplace_back(sequence.level(t)[0], sequence.level(t)[1]);
  }
  return SequenceLabel(sequence.n(), std::move(pairs));
}

/// All labels for Gr(3,n), lexicographic.
inline std::vector<SequenceLabel> enumerate_labels(int n) {
  if (n < 5) throw InvalidSize("labels need n >= 5, got " + std::to_string(n));
  std::vector<std::vector<std::pair<int, int>>> partial{{}};
  for (int top = n; top >= 5; --top) {
    std::vector<std::vector<std::pair<int, int>>> next;
    for (const auto& prefix : partial) {
      for (int a = 1; a < top; ++a) {
        for (int b = 1; b < top; ++b) {
          if (a == b) continue;
          auto extended = prefix;
          extended.emplace_back(a, b);
          next.push_back(std::move(extended));
        }
      }
    }
    partial = std::move(next);
  }
  std::vector<SequenceLabel> out;
  for (auto& pairs : partial) out.emplace_back(n, std::move(pairs));
  return out;
}

/// Size of the label space, Π_{l=0}^{n-5} (n-l-1)(n-l-2).
inline std::uint64_t count_labels(int n) {
  if (n < 5) throw InvalidSize("labels need n >= 5, got " + std::to_string(n));
  std::uint64_t count = 1;
  for (int top = n; top >= 5; --top) count *= static_cast<std::uint64_t>(top - 1) * (top - 2);
  return count;
}

/**
 * The smallest sequence carrying a label: each third index is the least
 * admissible value and the base is the identity permutation.
 */
inline IteratedSequence representative(const SequenceLabel& label) {
  std::vector<Triple> levels;
  for (const auto& [a, b] : label.pairs()) {
    int c = 1;
    while (c == a || c == b) ++c;
    levels.push_back({a, b, c});
  }
  levels.push_back({1, 2, 3});
  return IteratedSequence(label.n(), std::move(levels));
}

}  // namespace grass_degen
