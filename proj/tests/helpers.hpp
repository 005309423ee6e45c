#pragma once

#include <random>
#include <string>

#include "wordlab/source.hpp"

namespace testutil {

inline wordlab::FiniteWord W(std::string_view text,
                             std::size_t alphabet = 0) {
  return wordlab::FiniteWord::from_text(text, alphabet);
}

inline wordlab::WordSource tm() {
  return wordlab::WordSource::parse("morphic:0>01,1>10:seed=0");
}

inline wordlab::WordSource fib() { return wordlab::WordSource::parse("cf:1"); }

inline wordlab::WordSource cf21() {
  return wordlab::WordSource::parse("cf:2,1");
}

inline wordlab::WordSource period24() {
  return wordlab::WordSource::parse("periodic:001101001011001100110011");
}

inline wordlab::WordSource choice_tm() {
  return wordlab::WordSource::parse(
      "choice:110010|110100:selector=morphic:0>01,1>10:seed=0");
}

inline wordlab::FiniteWord random_word(std::mt19937& rng, std::size_t min_len,
                                       std::size_t max_len,
                                       std::size_t alphabet = 2) {
  std::uniform_int_distribution<std::size_t> len_dist(min_len, max_len);
  std::uniform_int_distribution<int> letter_dist(
      0, static_cast<int>(alphabet) - 1);
  std::vector<wordlab::Letter> letters(len_dist(rng));
  for (auto& a : letters)
    a = static_cast<wordlab::Letter>(letter_dist(rng));
  return wordlab::FiniteWord(std::move(letters), alphabet);
}

}  // namespace testutil
