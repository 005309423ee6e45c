#pragma once

#include <map>
#include <optional>

#include "source.hpp"

namespace wordlab {

/// Raised when a return computation needs at least two occurrences and the
/// prefix does not provide them.
class insufficient_occurrences : public std::runtime_error {
 public:
  explicit insufficient_occurrences(const std::string& what)
      : std::runtime_error(what) {}
};

/// Message used uniformly when a stabilization budget runs out before the
/// target class occurs twice.
inline constexpr std::string_view kNeverRecursMessage =
    "class never recurs within budget";

struct Occurrence {
  std::size_t position;
  std::size_t length;
};

enum class MatchMode { exact, abelian };

// ===== abelian class ids =====================================================

/// Identifies an abelian equivalence class: all words of the given length
/// sharing the given Parikh vector.
struct AbelianClassId {
  std::size_t length;
  ParikhVector vector;

  [[nodiscard]] static AbelianClassId of(const FiniteWord& v) {
    return {v.size(), parikh(v)};
  }

  [[nodiscard]] bool operator==(const AbelianClassId&) const = default;
  [[nodiscard]] auto operator<=>(const AbelianClassId& other) const {
    if (auto c = length <=> other.length; c != 0) return c;
    return vector <=> other.vector;
  }
};

// ===== occurrences ===========================================================

/// Window positions where `target` occurs in `prefix`, either letter-exact or
/// up to abelian equivalence. Positions are strictly increasing and windows
/// may overlap.
[[nodiscard]] inline std::vector<Occurrence> occurrences(
    const FiniteWord& prefix, const FiniteWord& target, MatchMode mode) {
  if (target.empty())
    throw std::invalid_argument("occurrences of the empty word are undefined");
  std::vector<Occurrence> out;
  const std::size_t n = prefix.size();
  const std::size_t m = target.size();
  if (m > n) return out;
  const auto& w = prefix.letters();
  if (mode == MatchMode::exact) {
    const auto& t = target.letters();
    for (std::size_t i = 0; i + m <= n; ++i)
      if (std::equal(t.begin(), t.end(), w.begin() + static_cast<std::ptrdiff_t>(i)))
        out.push_back({i, m});
    return out;
  }
  // Sliding window: track per-letter surplus of the window over the target
  // and the number of letters where the surplus is non-zero.
  std::array<std::int64_t, kMaxAlphabet> surplus{};
  for (Letter a : target.letters()) surplus[a] -= 1;
  for (std::size_t i = 0; i < m; ++i) surplus[w[i]] += 1;
  std::size_t off = 0;
  for (std::int64_t d : surplus) off += (d != 0);
  auto bump = [&](Letter a, std::int64_t delta) {
    off -= (surplus[a] != 0);
    surplus[a] += delta;
    off += (surplus[a] != 0);
  };
  for (std::size_t i = 0;; ++i) {
    if (off == 0) out.push_back({i, m});
    if (i + m == n) break;
    bump(w[i], -1);
    bump(w[i + m], +1);
  }
  return out;
}

// ===== classical return words ================================================

/// Distinct segments between consecutive exact occurrences of v, ordered by
/// (length, lexicographic). The segment after the last occurrence is a
/// partial return and is discarded.
[[nodiscard]] inline std::vector<FiniteWord> return_words(
    const FiniteWord& prefix, const FiniteWord& v) {
  auto occ = occurrences(prefix, v, MatchMode::exact);
  if (occ.size() < 2)
    throw insufficient_occurrences(
        "fewer than two exact occurrences in the prefix");
  std::set<FiniteWord> distinct;
  for (std::size_t i = 0; i + 1 < occ.size(); ++i)
    distinct.insert(prefix.subword(occ[i].position,
                                   occ[i + 1].position - occ[i].position));
  std::vector<FiniteWord> out(distinct.begin(), distinct.end());
  std::sort(out.begin(), out.end(), shorter_then_lex);
  return out;
}

// ===== abelian returns =======================================================

struct ReturnClass {
  AbelianClassId id;
  FiniteWord representative;  // lexicographically least observed member
};

/// Abelian-return classes of one target class, ordered by
/// (length, representative).
struct ReturnSet {
  AbelianClassId target;
  std::vector<ReturnClass> classes;
  std::size_t occurrence_count = 0;

  [[nodiscard]] std::vector<AbelianClassId> class_ids() const {
    std::vector<AbelianClassId> ids;
    ids.reserve(classes.size());
    for (const ReturnClass& c : classes) ids.push_back(c.id);
    std::sort(ids.begin(), ids.end());
    return ids;
  }

  [[nodiscard]] bool same_classes(const ReturnSet& other) const {
    return class_ids() == other.class_ids();
  }
};

namespace detail {

[[nodiscard]] inline ParikhVector segment_parikh(const std::vector<Letter>& w,
                                                 std::size_t pos,
                                                 std::size_t len,
                                                 std::size_t alphabet) {
  ParikhVector v(alphabet);
  for (std::size_t i = pos; i < pos + len; ++i) v.add(w[i]);
  return v;
}

// Segments between consecutive abelian occurrences of v, shifted right by
// `shift` letters, grouped into abelian classes with lexicographically least
// representatives.
[[nodiscard]] inline ReturnSet build_return_set(const FiniteWord& prefix,
                                                const FiniteWord& v,
                                                std::size_t shift) {
  auto occ = occurrences(prefix, v, MatchMode::abelian);
  if (occ.size() < 2)
    throw insufficient_occurrences(
        "fewer than two abelian occurrences in the prefix");
  const auto& w = prefix.letters();
  // id -> (pos, len) of the least representative seen so far
  std::map<AbelianClassId, std::pair<std::size_t, std::size_t>> reps;
  for (std::size_t i = 0; i + 1 < occ.size(); ++i) {
    std::size_t pos = occ[i].position + shift;
    std::size_t len = occ[i + 1].position - occ[i].position;
    AbelianClassId id{len,
                      segment_parikh(w, pos, len, prefix.alphabet_size())};
    auto [it, inserted] = reps.try_emplace(std::move(id), pos, len);
    if (!inserted) {
      auto [old_pos, old_len] = it->second;
      if (std::lexicographical_compare(
              w.begin() + static_cast<std::ptrdiff_t>(pos),
              w.begin() + static_cast<std::ptrdiff_t>(pos + len),
              w.begin() + static_cast<std::ptrdiff_t>(old_pos),
              w.begin() + static_cast<std::ptrdiff_t>(old_pos + old_len)))
        it->second = {pos, len};
    }
  }
  ReturnSet out{AbelianClassId::of(v), {}, occ.size()};
  out.classes.reserve(reps.size());
  for (const auto& [id, span] : reps)
    out.classes.push_back({id, prefix.subword(span.first, span.second)});
  std::sort(out.classes.begin(), out.classes.end(),
            [](const ReturnClass& x, const ReturnClass& y) {
              if (x.id.length != y.id.length) return x.id.length < y.id.length;
              return x.representative < y.representative;
            });
  return out;
}

}  // namespace detail

/// Abelian returns of the class of v in the prefix: segments from each
/// abelian occurrence to the next, up to abelian equivalence. The partial
/// segment after the last occurrence is discarded.
[[nodiscard]] inline ReturnSet abelian_returns(const FiniteWord& prefix,
                                               const FiniteWord& v) {
  return detail::build_return_set(prefix, v, 0);
}

/// Right variant: the window is shifted past the occurrence, i.e. the segment
/// for occurrences n(i), n(i+1) is prefix[n(i)+|v| .. n(i+1)+|v|). The partial
/// segment before the first occurrence never enters.
[[nodiscard]] inline ReturnSet right_abelian_returns(const FiniteWord& prefix,
                                                     const FiniteWord& v) {
  return detail::build_return_set(prefix, v, v.size());
}

// ===== stabilization =========================================================

struct StabilizationPolicy {
  std::size_t initial;
  std::size_t growth;
  std::size_t cap;
};

/// Doubling defaults: start at max(4096, 64 |v|), grow x2, stop at 2^20.
[[nodiscard]] inline StabilizationPolicy default_policy(
    std::size_t factor_length) {
  return {std::max<std::size_t>(4096, 64 * factor_length), 2,
          std::size_t{1} << 20};
}

struct StabilizationReport {
  std::size_t prefix_used = 0;
  bool stable = false;
  // (prefix length, class count) per growth step; count 0 means the target
  // class had fewer than two occurrences at that length.
  std::vector<std::pair<std::size_t, std::size_t>> history;
};

struct StabilizedReturns {
  // Absent when the class never occurred twice within the budget.
  std::optional<ReturnSet> returns;
  StabilizationReport report;
};

enum class ReturnSide { left, right };

/// Recomputes the abelian returns of v on growing prefixes of `source` until
/// the class set is identical on two consecutive steps (stable) or the cap is
/// reached. The last computed set is returned either way.
[[nodiscard]] inline StabilizedReturns stabilized_abelian_returns(
    const WordSource& source, const FiniteWord& v,
    const StabilizationPolicy& policy, ReturnSide side = ReturnSide::left) {
  if (policy.initial < 1 || policy.growth < 2 || policy.cap < policy.initial)
    throw std::invalid_argument(
        "stabilization policy needs initial >= 1, growth >= 2, cap >= "
        "initial");
  StabilizedReturns out;
  std::optional<std::vector<AbelianClassId>> prev_ids;
  std::size_t len = std::min(policy.initial, policy.cap);
  for (;;) {
    FiniteWord prefix = source.prefix(len);
    std::optional<ReturnSet> rs;
    try {
      rs = side == ReturnSide::left ? abelian_returns(prefix, v)
                                    : right_abelian_returns(prefix, v);
    } catch (const insufficient_occurrences&) {
    }
    out.report.history.emplace_back(len, rs ? rs->classes.size() : 0);
    out.report.prefix_used = len;
    if (rs) {
      std::vector<AbelianClassId> ids = rs->class_ids();
      out.returns = std::move(rs);
      if (prev_ids && *prev_ids == ids) {
        out.report.stable = true;
        break;
      }
      prev_ids = std::move(ids);
    }
    if (len >= policy.cap) break;
    len = len > policy.cap / policy.growth ? policy.cap : len * policy.growth;
  }
  return out;
}

// ===== abelian trace =========================================================

/// Sequence of abelian class ids of the sliding length-n window.
class AbelianTrace {
 public:
  AbelianTrace(const FiniteWord& prefix, std::size_t n) : window_(n) {
    if (n < 1 || n > prefix.size())
      throw std::invalid_argument("trace window must satisfy 1 <= n <= |prefix|");
    const auto& w = prefix.letters();
    ParikhVector v(prefix.alphabet_size());
    for (std::size_t i = 0; i < n; ++i) v.add(w[i]);
    std::map<AbelianClassId, std::uint32_t> seen;
    indices_.reserve(prefix.size() - n + 1);
    for (std::size_t i = 0;; ++i) {
      AbelianClassId id{n, v};
      auto [it, inserted] =
          seen.try_emplace(id, static_cast<std::uint32_t>(classes_.size()));
      if (inserted) classes_.push_back(std::move(id));
      indices_.push_back(it->second);
      if (i + n == prefix.size()) break;
      v.remove(w[i]);
      v.add(w[i + n]);
    }
  }

  [[nodiscard]] std::size_t window() const { return window_; }
  [[nodiscard]] std::size_t size() const { return indices_.size(); }
  /// Distinct ids in order of first appearance.
  [[nodiscard]] const std::vector<AbelianClassId>& classes() const {
    return classes_;
  }
  [[nodiscard]] const std::vector<std::uint32_t>& indices() const {
    return indices_;
  }
  [[nodiscard]] const AbelianClassId& id_at(std::size_t k) const {
    return classes_[indices_[k]];
  }
  [[nodiscard]] std::size_t distinct_count() const { return classes_.size(); }

 private:
  std::size_t window_;
  std::vector<AbelianClassId> classes_;
  std::vector<std::uint32_t> indices_;
};

[[nodiscard]] inline AbelianTrace abelian_trace(const FiniteWord& prefix,
                                                std::size_t n) {
  return AbelianTrace(prefix, n);
}

}  // namespace wordlab
