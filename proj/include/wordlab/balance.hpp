#pragma once

#include "word.hpp"

namespace wordlab {

/// Raised when cyclic-shift machinery is asked for a word whose ones count
/// and length are not coprime (the shifts would not be pairwise distinct).
class orbit_degenerate : public std::invalid_argument {
 public:
  explicit orbit_degenerate(const std::string& what)
      : std::invalid_argument(what) {}
};

namespace detail {

inline void require_binary(const FiniteWord& w, const char* who) {
  for (Letter a : w.letters())
    if (a > 1)
      throw std::invalid_argument(std::string(who) + " needs a binary word");
}

[[nodiscard]] inline std::size_t ones_count(const FiniteWord& w) {
  std::size_t p = 0;
  for (Letter a : w.letters()) p += a;
  return p;
}

// Balance of the cyclic word: every pair of equal-length factors read around
// the circle has ones counts within k of each other.
[[nodiscard]] inline bool cyclically_balanced(const FiniteWord& w,
                                              std::size_t k) {
  const std::size_t q = w.size();
  const auto& a = w.letters();
  for (std::size_t n = 1; n < q; ++n) {
    std::size_t sum = 0;
    for (std::size_t i = 0; i < n; ++i) sum += a[i];
    std::size_t lo = sum, hi = sum;
    for (std::size_t s = 1; s < q; ++s) {
      sum += a[(s + n - 1) % q];
      sum -= a[s - 1];
      lo = std::min(lo, sum);
      hi = std::max(hi, sum);
      if (hi - lo > k) return false;
    }
  }
  return true;
}

}  // namespace detail

// ===== orbits ================================================================

/// The cyclic-shift orbit of a binary word with coprime (ones, length),
/// sorted lexicographically.
struct Orbit {
  std::size_t ones;
  std::size_t length;
  std::vector<FiniteWord> elements;
};

[[nodiscard]] inline Orbit conjugates(const FiniteWord& w) {
  detail::require_binary(w, "conjugates");
  const std::size_t q = w.size();
  if (q == 0) throw std::invalid_argument("conjugates of the empty word");
  const std::size_t p = detail::ones_count(w);
  if (p < 1 || p >= q || std::gcd(p, q) != 1)
    throw orbit_degenerate(
        "orbit degenerate: ones count and length must be coprime with "
        "0 < ones < length");
  std::vector<FiniteWord> shifts;
  shifts.reserve(q);
  for (std::size_t s = 0; s < q; ++s) {
    std::vector<Letter> rot(q);
    for (std::size_t i = 0; i < q; ++i) rot[i] = w[(s + i) % q];
    shifts.emplace_back(std::move(rot), 2);
  }
  std::sort(shifts.begin(), shifts.end());
  return Orbit{p, q, std::move(shifts)};
}

// ===== lexicographic arrays ==================================================

/// q x q matrix whose rows are the cyclic shifts of one orbit word in
/// lexicographic order.
struct LexArray {
  std::size_t ones;
  std::size_t length;
  std::vector<FiniteWord> rows;

  [[nodiscard]] Letter at(std::size_t i, std::size_t j) const {
    return rows[i][j];
  }

  /// Letters-only grid, one row per line, every line newline-terminated.
  [[nodiscard]] std::string grid() const {
    std::string out;
    out.reserve(rows.size() * (length + 1));
    for (const FiniteWord& row : rows) {
      out += row.text();
      out.push_back('\n');
    }
    return out;
  }
};

[[nodiscard]] inline LexArray lex_array(const FiniteWord& w) {
  Orbit orbit = conjugates(w);
  return LexArray{orbit.ones, orbit.length, std::move(orbit.elements)};
}

/// The array of the balanced orbit in closed form: column j is the j p-fold
/// shift of u = 0^(q-p) 1^p, i.e. entry (i, j) = u[(i + j p) mod q].
[[nodiscard]] inline LexArray balanced_orbit_array(std::size_t p,
                                                   std::size_t q) {
  if (p < 1 || p >= q)
    throw std::invalid_argument("balanced orbit array needs 1 <= p < q");
  if (std::gcd(p, q) != 1)
    throw orbit_degenerate("orbit degenerate: gcd(p, q) must be 1");
  std::vector<Letter> u(q, 0);
  for (std::size_t i = q - p; i < q; ++i) u[i] = 1;
  std::vector<FiniteWord> rows;
  rows.reserve(q);
  for (std::size_t i = 0; i < q; ++i) {
    std::vector<Letter> row(q);
    for (std::size_t j = 0; j < q; ++j) row[j] = u[(i + j * p) % q];
    rows.emplace_back(std::move(row), 2);
  }
  return LexArray{p, q, std::move(rows)};
}

/// Checks the shift identity a(i, m) = a(i + q - p, m + 1), indices mod q.
[[nodiscard]] inline bool column_shift_check(const LexArray& a) {
  const std::size_t q = a.length;
  const std::size_t p = a.ones;
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t m = 0; m < q; ++m)
      if (a.at(i, m) != a.at((i + q - p) % q, (m + 1) % q)) return false;
  return true;
}

// ===== balance tests =========================================================

/// Balance test through the sorted-orbit characterisation: the word is
/// balanced exactly when the ones counts of the column prefixes never
/// decrease down the rows. Words outside the coprime regime (unary or
/// gcd(ones, length) > 1) fall back to the direct cyclic-factor scan.
[[nodiscard]] inline bool is_balanced_jz(const FiniteWord& w) {
  detail::require_binary(w, "is_balanced_jz");
  const std::size_t q = w.size();
  const std::size_t p = detail::ones_count(w);
  if (q < 2 || p < 1 || p >= q || std::gcd(p, q) != 1)
    return detail::cyclically_balanced(w, 1);
  LexArray a = lex_array(w);
  std::vector<std::size_t> prev(q, 0);
  std::vector<std::size_t> cur(q, 0);
  for (std::size_t i = 0; i < q; ++i) {
    std::size_t sum = 0;
    for (std::size_t j = 0; j < q; ++j) {
      sum += a.at(i, j);
      cur[j] = sum;
    }
    if (i > 0)
      for (std::size_t j = 0; j < q; ++j)
        if (cur[j] < prev[j]) return false;
    std::swap(prev, cur);
  }
  return true;
}

/// Linear k-balance of a finite word: all equal-length factors (windows of
/// the word itself) have ones counts within k. Window extrema per length.
[[nodiscard]] inline bool is_k_balanced(const FiniteWord& u, std::size_t k) {
  detail::require_binary(u, "is_k_balanced");
  if (k < 1) throw std::invalid_argument("balance order k must be >= 1");
  const auto& a = u.letters();
  const std::size_t n = u.size();
  for (std::size_t len = 1; len < n; ++len) {
    std::size_t sum = 0;
    for (std::size_t i = 0; i < len; ++i) sum += a[i];
    std::size_t lo = sum, hi = sum;
    for (std::size_t i = len; i < n; ++i) {
      sum += a[i];
      sum -= a[i - len];
      lo = std::min(lo, sum);
      hi = std::max(hi, sum);
      if (hi - lo > k) return false;
    }
  }
  return true;
}

}  // namespace wordlab
