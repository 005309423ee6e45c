#pragma once

#include <charconv>
#include <memory>
#include <optional>
#include <variant>

#include "word.hpp"

namespace wordlab {

/// Descriptor parsing failure; `offset` is the byte position in the original
/// descriptor string.
class parse_error : public std::invalid_argument {
 public:
  parse_error(const std::string& what, std::size_t offset)
      : std::invalid_argument(what + " at byte " + std::to_string(offset)),
        offset_(offset) {}
  [[nodiscard]] std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// ===== WordSource ============================================================

/// A deterministic generator of one infinite word, queried through prefixes.
///
/// Kinds and their canonical descriptors:
///   periodic:01                                   u^omega
///   morphic:0>01,1>10:seed=0                      fixed point of a substitution
///   cf:1,1,1                                      standard word from partial
///                                                 quotients (the list repeats
///                                                 its last entry forever; a
///                                                 trailing ... is accepted)
///   choice:110010|110100:selector=<descriptor>    piece concatenation driven
///                                                 by a selector word
class WordSource {
 public:
  struct Periodic {
    FiniteWord period;
  };
  struct Morphic {
    Morphism morphism;
    Letter seed;
  };
  struct SturmianCF {
    std::vector<std::uint64_t> quotients;
  };
  struct Choice {
    std::vector<FiniteWord> pieces;
    std::shared_ptr<const WordSource> selector;
  };

  [[nodiscard]] static WordSource periodic(FiniteWord period) {
    if (period.empty())
      throw std::invalid_argument("periodic source needs a non-empty period");
    return WordSource(Periodic{std::move(period)});
  }

  [[nodiscard]] static WordSource morphic(Morphism morphism, Letter seed) {
    if (!morphism.prolongable_from(seed))
      throw std::invalid_argument(
          "morphic source needs image(seed) to start with seed and have "
          "length >= 2");
    return WordSource(Morphic{std::move(morphism), seed});
  }

  [[nodiscard]] static WordSource sturmian_cf(
      std::vector<std::uint64_t> quotients) {
    if (quotients.empty())
      throw std::invalid_argument("cf source needs at least one quotient");
    for (std::uint64_t d : quotients)
      if (d < 1)
        throw std::invalid_argument("cf partial quotients must be positive");
    return WordSource(SturmianCF{std::move(quotients)});
  }

  [[nodiscard]] static WordSource choice(std::vector<FiniteWord> pieces,
                                         WordSource selector) {
    if (pieces.empty() || pieces.size() > kMaxAlphabet)
      throw std::invalid_argument("choice source needs 1 to 16 pieces");
    std::size_t alphabet = 2;
    for (const FiniteWord& piece : pieces) {
      if (piece.empty())
        throw std::invalid_argument("choice pieces must be non-empty");
      alphabet = std::max(alphabet, piece.alphabet_size());
    }
    for (FiniteWord& piece : pieces)
      piece = FiniteWord(piece.letters(), alphabet);
    if (selector.alphabet_size() != pieces.size())
      throw std::invalid_argument(
          "choice selector alphabet size must equal the number of pieces");
    return WordSource(Choice{
        std::move(pieces), std::make_shared<WordSource>(std::move(selector))});
  }

  [[nodiscard]] std::size_t alphabet_size() const {
    return std::visit(
        [](const auto& k) -> std::size_t {
          using T = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<T, Periodic>)
            return k.period.alphabet_size();
          else if constexpr (std::is_same_v<T, Morphic>)
            return k.morphism.alphabet_size();
          else if constexpr (std::is_same_v<T, SturmianCF>)
            return 2;
          else
            return k.pieces.front().alphabet_size();
        },
        kind_);
  }

  /// First n letters of the generated infinite word. prefix(m) is always a
  /// prefix of prefix(n) for m <= n.
  [[nodiscard]] FiniteWord prefix(std::size_t n) const {
    return std::visit([n](const auto& k) { return generate(k, n); }, kind_);
  }

  [[nodiscard]] std::string descriptor() const {
    return std::visit(
        [](const auto& k) -> std::string {
          using T = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<T, Periodic>) {
            return "periodic:" + k.period.text();
          } else if constexpr (std::is_same_v<T, Morphic>) {
            return "morphic:" + k.morphism.text() +
                   ":seed=" + std::string(1, letter_to_char(k.seed));
          } else if constexpr (std::is_same_v<T, SturmianCF>) {
            std::string out = "cf:";
            for (std::size_t i = 0; i < k.quotients.size(); ++i) {
              if (i) out.push_back(',');
              out += std::to_string(k.quotients[i]);
            }
            return out;
          } else {
            std::string out = "choice:";
            for (std::size_t i = 0; i < k.pieces.size(); ++i) {
              if (i) out.push_back('|');
              out += k.pieces[i].text();
            }
            return out + ":selector=" + k.selector->descriptor();
          }
        },
        kind_);
  }

  [[nodiscard]] static WordSource parse(std::string_view text) {
    return parse_at(text, 0);
  }

  [[nodiscard]] const std::variant<Periodic, Morphic, SturmianCF, Choice>&
  kind() const {
    return kind_;
  }

 private:
  explicit WordSource(std::variant<Periodic, Morphic, SturmianCF, Choice> kind)
      : kind_(std::move(kind)) {}

  [[nodiscard]] static FiniteWord generate(const Periodic& k, std::size_t n) {
    std::vector<Letter> out;
    out.reserve(n);
    const auto& period = k.period.letters();
    while (out.size() < n) {
      std::size_t take = std::min(period.size(), n - out.size());
      out.insert(out.end(), period.begin(),
                 period.begin() + static_cast<std::ptrdiff_t>(take));
    }
    return FiniteWord(std::move(out), k.period.alphabet_size());
  }

  [[nodiscard]] static FiniteWord generate(const Morphic& k, std::size_t n) {
    // Stream the fixed point: seed the buffer with image(seed), then keep
    // appending the image of the next unexpanded letter. Each step appends at
    // least one letter, so the expansion index never catches up.
    std::vector<Letter> out = k.morphism.image(k.seed).letters();
    std::size_t next = 1;
    while (out.size() < n) {
      const auto& img = k.morphism.image(out[next]).letters();
      out.insert(out.end(), img.begin(), img.end());
      ++next;
    }
    out.resize(n);
    return FiniteWord(std::move(out), k.morphism.alphabet_size());
  }

  [[nodiscard]] static FiniteWord generate(const SturmianCF& k,
                                           std::size_t n) {
    // t(-1) = 1, t(0) = 0, t(m) = t(m-1)^d(m) t(m-2); exhausting the quotient
    // list repeats its last entry.
    std::vector<Letter> prev = {1};
    std::vector<Letter> cur = {0};
    std::size_t qi = 0;
    while (cur.size() < n) {
      std::uint64_t d = k.quotients[std::min(qi, k.quotients.size() - 1)];
      std::vector<Letter> next;
      next.reserve(cur.size() * d + prev.size());
      for (std::uint64_t r = 0; r < d; ++r)
        next.insert(next.end(), cur.begin(), cur.end());
      next.insert(next.end(), prev.begin(), prev.end());
      prev = std::move(cur);
      cur = std::move(next);
      ++qi;
    }
    cur.resize(n);
    return FiniteWord(std::move(cur), 2);
  }

  [[nodiscard]] static FiniteWord generate(const Choice& k, std::size_t n) {
    if (n == 0) return FiniteWord({}, k.pieces.front().alphabet_size());
    std::size_t min_len = k.pieces.front().size();
    for (const FiniteWord& piece : k.pieces)
      min_len = std::min(min_len, piece.size());
    FiniteWord sel = k.selector->prefix(n / min_len + 1);
    std::vector<Letter> out;
    out.reserve(n);
    for (std::size_t i = 0; out.size() < n; ++i) {
      const auto& piece = k.pieces[sel[i]].letters();
      out.insert(out.end(), piece.begin(), piece.end());
    }
    out.resize(n);
    return FiniteWord(std::move(out), k.pieces.front().alphabet_size());
  }

  // --- descriptor parsing ---

  [[nodiscard]] static WordSource parse_at(std::string_view text,
                                           std::size_t base) {
    auto starts_with = [&](std::string_view head) {
      return text.substr(0, head.size()) == head;
    };
    try {
      if (starts_with("periodic:"))
        return periodic(parse_word(text, 9, text.size(), base));
      if (starts_with("morphic:")) return parse_morphic(text, base);
      if (starts_with("cf:")) return parse_cf(text, base);
      if (starts_with("choice:")) return parse_choice(text, base);
    } catch (const parse_error&) {
      throw;
    } catch (const std::invalid_argument& e) {
      throw parse_error(e.what(), base);
    }
    throw parse_error(
        "unknown source kind (expected periodic:, morphic:, cf: or choice:)",
        base);
  }

  [[nodiscard]] static FiniteWord parse_word(std::string_view text,
                                             std::size_t from, std::size_t to,
                                             std::size_t base,
                                             std::size_t alphabet = 0) {
    if (from >= to) throw parse_error("expected a non-empty word", base + from);
    for (std::size_t i = from; i < to; ++i)
      if (!is_letter_char(text[i]))
        throw parse_error("invalid letter character", base + i);
    return FiniteWord::from_text(text.substr(from, to - from), alphabet);
  }

  [[nodiscard]] static WordSource parse_morphic(std::string_view text,
                                                std::size_t base) {
    constexpr std::string_view kSeed = ":seed=";
    std::size_t seed_pos = text.find(kSeed, 8);
    if (seed_pos == std::string_view::npos)
      throw parse_error("morphic descriptor needs :seed=<letter>",
                        base + text.size());
    std::size_t seed_at = seed_pos + kSeed.size();
    if (seed_at + 1 != text.size() || !is_letter_char(text[seed_at]))
      throw parse_error("seed must be a single letter", base + seed_at);
    Morphism m = [&] {
      try {
        return Morphism::from_text(text.substr(8, seed_pos - 8));
      } catch (const std::invalid_argument& e) {
        throw parse_error(e.what(), base + 8);
      }
    }();
    return morphic(std::move(m), char_to_letter(text[seed_at]));
  }

  [[nodiscard]] static WordSource parse_cf(std::string_view text,
                                           std::size_t base) {
    std::vector<std::uint64_t> quotients;
    std::size_t pos = 3;
    while (pos < text.size()) {
      std::size_t end = text.find(',', pos);
      if (end == std::string_view::npos) end = text.size();
      std::string_view token = text.substr(pos, end - pos);
      if (token == "..." || token == "…") {
        if (quotients.empty() || end != text.size())
          throw parse_error("ellipsis may only close a quotient list",
                            base + pos);
        break;
      }
      std::uint64_t value = 0;
      const char* first = token.data();
      const char* last = token.data() + token.size();
      auto [ptr, ec] = std::from_chars(first, last, value);
      if (ec != std::errc{} || ptr != last)
        throw parse_error("expected a positive integer quotient", base + pos);
      if (value < 1)
        throw parse_error("cf partial quotients must be positive", base + pos);
      quotients.push_back(value);
      pos = end + 1;
    }
    if (quotients.empty())
      throw parse_error("cf source needs at least one quotient", base + 3);
    return sturmian_cf(std::move(quotients));
  }

  [[nodiscard]] static WordSource parse_choice(std::string_view text,
                                               std::size_t base) {
    constexpr std::string_view kSelector = ":selector=";
    std::size_t sel_pos = text.find(kSelector, 7);
    if (sel_pos == std::string_view::npos)
      throw parse_error("choice descriptor needs :selector=<descriptor>",
                        base + text.size());
    std::vector<FiniteWord> pieces;
    std::size_t pos = 7;
    while (pos <= sel_pos) {
      std::size_t end = text.find('|', pos);
      if (end == std::string_view::npos || end > sel_pos) end = sel_pos;
      pieces.push_back(parse_word(text, pos, end, base));
      pos = end + 1;
    }
    std::size_t sel_at = sel_pos + kSelector.size();
    WordSource selector = parse_at(text.substr(sel_at), base + sel_at);
    try {
      return choice(std::move(pieces), std::move(selector));
    } catch (const std::invalid_argument& e) {
      throw parse_error(e.what(), base + 7);
    }
  }

  std::variant<Periodic, Morphic, SturmianCF, Choice> kind_;
};

[[nodiscard]] inline FiniteWord source_prefix(const WordSource& source,
                                              std::size_t n) {
  return source.prefix(n);
}

}  // namespace wordlab
