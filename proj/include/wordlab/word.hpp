#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace wordlab {

// ===== alphabet ==============================================================

using Letter = std::uint8_t;

inline constexpr std::size_t kMaxAlphabet = 16;

[[nodiscard]] inline char letter_to_char(Letter a) {
  return a < 10 ? static_cast<char>('0' + a)
                : static_cast<char>('a' + (a - 10));
}

[[nodiscard]] inline bool is_letter_char(char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
}

[[nodiscard]] inline Letter char_to_letter(char c) {
  if (c >= '0' && c <= '9') return static_cast<Letter>(c - '0');
  if (c >= 'a' && c <= 'f') return static_cast<Letter>(10 + (c - 'a'));
  throw std::invalid_argument(std::string("invalid letter character '") + c +
                              "'");
}

// ===== FiniteWord ============================================================

/// A finite word over the alphabet {0, ..., alphabetSize-1}.
///
/// Letters render as the characters 0-9a-f, so words over alphabets of size
/// up to 16 have an unambiguous one-character-per-letter text form.
class FiniteWord {
 public:
  FiniteWord() = default;

  FiniteWord(std::vector<Letter> letters, std::size_t alphabet_size)
      : letters_(std::move(letters)) {
    if (alphabet_size < 1 || alphabet_size > kMaxAlphabet)
      throw std::invalid_argument("alphabet size must be in [1, 16]");
    alphabet_size_ = static_cast<std::uint8_t>(alphabet_size);
    for (Letter a : letters_)
      if (a >= alphabet_size_)
        throw std::invalid_argument("letter out of alphabet range");
  }

  /// Parses "0110", "012", ... (letters 0-9a-f). With alphabet_size == 0 the
  /// alphabet is inferred as max(2, largest letter + 1).
  [[nodiscard]] static FiniteWord from_text(std::string_view text,
                                            std::size_t alphabet_size = 0) {
    std::vector<Letter> letters;
    letters.reserve(text.size());
    Letter top = 0;
    for (char c : text) {
      Letter a = char_to_letter(c);
      top = std::max(top, a);
      letters.push_back(a);
    }
    if (alphabet_size == 0)
      alphabet_size = std::max<std::size_t>(2, std::size_t{top} + 1);
    return FiniteWord(std::move(letters), alphabet_size);
  }

  [[nodiscard]] std::size_t size() const { return letters_.size(); }
  [[nodiscard]] bool empty() const { return letters_.empty(); }
  [[nodiscard]] std::size_t alphabet_size() const { return alphabet_size_; }
  [[nodiscard]] Letter operator[](std::size_t i) const { return letters_[i]; }
  [[nodiscard]] const std::vector<Letter>& letters() const { return letters_; }

  [[nodiscard]] FiniteWord subword(std::size_t pos, std::size_t len) const {
    if (pos > size() || len > size() - pos)
      throw std::out_of_range("subword out of range");
    return FiniteWord(
        std::vector<Letter>(letters_.begin() + static_cast<std::ptrdiff_t>(pos),
                            letters_.begin() +
                                static_cast<std::ptrdiff_t>(pos + len)),
        alphabet_size_);
  }

  [[nodiscard]] FiniteWord prefix(std::size_t len) const {
    return subword(0, len);
  }

  [[nodiscard]] FiniteWord operator+(const FiniteWord& other) const {
    std::vector<Letter> joined = letters_;
    joined.insert(joined.end(), other.letters_.begin(), other.letters_.end());
    return FiniteWord(std::move(joined),
                      std::max(alphabet_size(), other.alphabet_size()));
  }

  [[nodiscard]] std::string text() const {
    std::string out;
    out.reserve(size());
    for (Letter a : letters_) out.push_back(letter_to_char(a));
    return out;
  }

  // Letter-sequence comparison; the alphabet tag does not participate.
  [[nodiscard]] bool operator==(const FiniteWord& other) const {
    return letters_ == other.letters_;
  }
  [[nodiscard]] auto operator<=>(const FiniteWord& other) const {
    return letters_ <=> other.letters_;
  }

 private:
  std::vector<Letter> letters_;
  std::uint8_t alphabet_size_ = 2;
};

/// Orders by (length, lexicographic), the ordering used for class
/// representatives and report output.
[[nodiscard]] inline bool shorter_then_lex(const FiniteWord& a,
                                           const FiniteWord& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

// ===== ParikhVector ==========================================================

/// Letter-count vector of a finite word.
class ParikhVector {
 public:
  explicit ParikhVector(std::size_t alphabet_size) {
    if (alphabet_size < 1 || alphabet_size > kMaxAlphabet)
      throw std::invalid_argument("alphabet size must be in [1, 16]");
    alphabet_size_ = static_cast<std::uint8_t>(alphabet_size);
  }

  [[nodiscard]] std::size_t alphabet_size() const { return alphabet_size_; }

  [[nodiscard]] std::uint32_t count(Letter a) const { return counts_[a]; }

  void add(Letter a, std::uint32_t k = 1) {
    if (a >= alphabet_size_)
      throw std::invalid_argument("letter out of alphabet range");
    counts_[a] += k;
    total_ += k;
  }

  void remove(Letter a, std::uint32_t k = 1) {
    if (a >= alphabet_size_ || counts_[a] < k)
      throw std::invalid_argument("cannot remove letters that are not counted");
    counts_[a] -= k;
    total_ -= k;
  }

  /// Total letter count, i.e. the length of any word with this vector.
  [[nodiscard]] std::uint64_t sum() const { return total_; }

  [[nodiscard]] ParikhVector operator+(const ParikhVector& other) const {
    ParikhVector out(std::max(alphabet_size(), other.alphabet_size()));
    for (std::size_t a = 0; a < kMaxAlphabet; ++a)
      out.counts_[a] = counts_[a] + other.counts_[a];
    out.total_ = total_ + other.total_;
    return out;
  }

  // Counts-only comparison: vectors over nested alphabets compare by the
  // padded count arrays.
  [[nodiscard]] bool operator==(const ParikhVector& other) const {
    return counts_ == other.counts_;
  }
  [[nodiscard]] auto operator<=>(const ParikhVector& other) const {
    return counts_ <=> other.counts_;
  }

 private:
  std::array<std::uint32_t, kMaxAlphabet> counts_{};
  std::uint64_t total_ = 0;
  std::uint8_t alphabet_size_ = 2;
};

[[nodiscard]] inline ParikhVector parikh(const FiniteWord& u) {
  ParikhVector v(u.alphabet_size());
  for (Letter a : u.letters()) v.add(a);
  return v;
}

/// Two words are abelian equivalent when their Parikh vectors coincide.
[[nodiscard]] inline bool abelian_equiv(const FiniteWord& u,
                                        const FiniteWord& v) {
  if (u.size() != v.size()) return false;
  return parikh(u) == parikh(v);
}

// ===== Morphism ==============================================================

/// A substitution a -> image(a) on {0, ..., k-1}; every image is non-empty
/// and drawn from the same alphabet.
class Morphism {
 public:
  explicit Morphism(std::vector<FiniteWord> images)
      : images_(std::move(images)) {
    if (images_.empty() || images_.size() > kMaxAlphabet)
      throw std::invalid_argument("morphism needs 1 to 16 images");
    for (const FiniteWord& img : images_) {
      if (img.empty())
        throw std::invalid_argument("morphism images must be non-empty");
      for (Letter a : img.letters())
        if (a >= images_.size())
          throw std::invalid_argument("morphism image letter out of range");
    }
  }

  /// Parses the rule list form "0>01,1>10". Every letter 0..k-1 must get
  /// exactly one rule, k being the number of rules.
  [[nodiscard]] static Morphism from_text(std::string_view text) {
    std::vector<std::pair<Letter, std::string>> rules;
    std::size_t pos = 0;
    while (pos < text.size()) {
      std::size_t end = text.find(',', pos);
      if (end == std::string_view::npos) end = text.size();
      std::string_view rule = text.substr(pos, end - pos);
      std::size_t arrow = rule.find('>');
      if (arrow != 1 || rule.size() < 3)
        throw std::invalid_argument("morphism rule must look like 0>01");
      rules.emplace_back(char_to_letter(rule[0]), std::string(rule.substr(2)));
      pos = end + 1;
    }
    std::vector<FiniteWord> images(rules.size(), FiniteWord{});
    std::vector<bool> seen(rules.size(), false);
    for (const auto& [a, img] : rules) {
      if (a >= rules.size() || seen[a])
        throw std::invalid_argument(
            "morphism rules must cover each letter 0..k-1 exactly once");
      seen[a] = true;
      images[a] = FiniteWord::from_text(img, rules.size());
    }
    return Morphism(std::move(images));
  }

  [[nodiscard]] std::size_t alphabet_size() const { return images_.size(); }

  [[nodiscard]] const FiniteWord& image(Letter a) const {
    if (a >= images_.size())
      throw std::invalid_argument("letter out of alphabet range");
    return images_[a];
  }

  /// True when iterating from `seed` yields an infinite fixed point:
  /// image(seed) starts with seed and is at least two letters long.
  [[nodiscard]] bool prolongable_from(Letter seed) const {
    if (seed >= images_.size()) return false;
    const FiniteWord& img = images_[seed];
    return img.size() >= 2 && img[0] == seed;
  }

  [[nodiscard]] std::string text() const {
    std::string out;
    for (std::size_t a = 0; a < images_.size(); ++a) {
      if (a) out.push_back(',');
      out.push_back(letter_to_char(static_cast<Letter>(a)));
      out.push_back('>');
      out += images_[a].text();
    }
    return out;
  }

 private:
  std::vector<FiniteWord> images_;
};

[[nodiscard]] inline FiniteWord apply_morphism(const Morphism& m,
                                               const FiniteWord& u) {
  std::vector<Letter> out;
  std::size_t total = 0;
  for (Letter a : u.letters()) total += m.image(a).size();
  out.reserve(total);
  for (Letter a : u.letters()) {
    const auto& img = m.image(a).letters();
    out.insert(out.end(), img.begin(), img.end());
  }
  return FiniteWord(std::move(out), m.alphabet_size());
}

// ===== mechanical words ======================================================

/// Lower mechanical word of slope p/q with zero intercept:
/// letter i = floor((i+1)p/q) - floor(ip/q), for i = 0..q-1.
[[nodiscard]] inline FiniteWord mechanical_word(std::size_t p, std::size_t q) {
  if (p < 1 || p >= q)
    throw std::invalid_argument("mechanical word needs 1 <= p < q");
  if (std::gcd(p, q) != 1)
    throw std::invalid_argument("mechanical word needs gcd(p, q) = 1");
  std::vector<Letter> letters(q);
  for (std::size_t i = 0; i < q; ++i) {
    std::uint64_t hi = (static_cast<std::uint64_t>(i) + 1) * p / q;
    std::uint64_t lo = static_cast<std::uint64_t>(i) * p / q;
    letters[i] = static_cast<Letter>(hi - lo);
  }
  return FiniteWord(std::move(letters), 2);
}

// ===== run spectrum ==========================================================

/// Per-letter sets of maximal run lengths, counting interior runs only: a run
/// touching either end of the word is truncated by the window and is skipped.
[[nodiscard]] inline std::vector<std::set<std::size_t>> run_spectrum(
    const FiniteWord& u) {
  if (u.empty()) throw std::invalid_argument("run spectrum of empty word");
  std::vector<std::set<std::size_t>> spectrum(u.alphabet_size());
  std::size_t start = 0;
  for (std::size_t i = 1; i <= u.size(); ++i) {
    if (i == u.size() || u[i] != u[start]) {
      if (start > 0 && i < u.size()) spectrum[u[start]].insert(i - start);
      start = i;
    }
  }
  return spectrum;
}

}  // namespace wordlab
