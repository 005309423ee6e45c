#include <catch2/catch_amalgamated.hpp>

#include <numeric>
#include <random>

#include "helpers.hpp"
#include "oracles.hpp"
#include "wordlab/balance.hpp"

using namespace wordlab;
using testutil::W;

namespace {

constexpr const char* kGrid37 =
    "0010101\n"
    "0100101\n"
    "0101001\n"
    "0101010\n"
    "1001010\n"
    "1010010\n"
    "1010100\n";

FiniteWord from_bits(unsigned bits, std::size_t len) {
  std::vector<Letter> letters(len);
  for (std::size_t i = 0; i < len; ++i)
    letters[i] = static_cast<Letter>((bits >> (len - 1 - i)) & 1u);
  return FiniteWord(std::move(letters), 2);
}

}  // namespace

TEST_CASE("conjugates lists the sorted orbit") {
  Orbit orbit = conjugates(W("0101001"));
  CHECK(orbit.ones == 3);
  CHECK(orbit.length == 7);
  REQUIRE(orbit.elements.size() == 7);
  std::string flat;
  for (const FiniteWord& e : orbit.elements) flat += e.text() + "\n";
  CHECK(flat == kGrid37);

  Orbit pair = conjugates(W("01"));
  REQUIRE(pair.elements.size() == 2);
  CHECK(pair.elements[0].text() == "01");
  CHECK(pair.elements[1].text() == "10");

  Orbit five = conjugates(W("00101"));
  CHECK(five.elements.size() == 5);
  CHECK(five.elements.front().text() == "00101");
}

TEST_CASE("conjugates rejects degenerate inputs") {
  CHECK_THROWS_AS(conjugates(W("0011")), orbit_degenerate);
  CHECK_THROWS_AS(conjugates(W("0101")), orbit_degenerate);
  CHECK_THROWS_AS(conjugates(W("0000")), orbit_degenerate);
  CHECK_THROWS_AS(conjugates(W("11")), orbit_degenerate);
  CHECK_THROWS_AS(conjugates(FiniteWord{}), std::invalid_argument);
  CHECK_THROWS_AS(conjugates(W("012")), std::invalid_argument);
}

TEST_CASE("lex_array reproduces the 3/7 matrix") {
  LexArray a = lex_array(W("0101001"));
  CHECK(a.ones == 3);
  CHECK(a.length == 7);
  CHECK(a.grid() == kGrid37);
  CHECK(a.at(0, 2) == 1);
  CHECK(a.at(3, 0) == 0);
  CHECK(balanced_orbit_array(3, 7).grid() == kGrid37);
  CHECK(column_shift_check(a));
}

TEST_CASE("sorted orbit equals the closed-form array for balanced words") {
  for (std::size_t q = 2; q <= 30; ++q) {
    for (std::size_t p = 1; p < q; ++p) {
      if (std::gcd(p, q) != 1) continue;
      LexArray sorted = lex_array(mechanical_word(p, q));
      LexArray closed = balanced_orbit_array(p, q);
      CHECK(sorted.grid() == closed.grid());
      CHECK(column_shift_check(closed));
      for (std::size_t i = 0; i < q; ++i) {
        CHECK(detail::ones_count(sorted.rows[i]) == p);
        if (i) CHECK(sorted.rows[i - 1] < sorted.rows[i]);
      }
    }
  }
}

TEST_CASE("column shift identity fails off the balanced orbit") {
  CHECK_FALSE(column_shift_check(lex_array(W("0011010"))));
}

TEST_CASE("balanced_orbit_array validates its arguments") {
  CHECK_THROWS_AS(balanced_orbit_array(2, 4), orbit_degenerate);
  CHECK_THROWS_AS(balanced_orbit_array(0, 5), std::invalid_argument);
  CHECK_THROWS_AS(balanced_orbit_array(5, 5), std::invalid_argument);
}

TEST_CASE("is_balanced_jz on reference words") {
  CHECK(is_balanced_jz(W("0101001")));
  CHECK(is_balanced_jz(W("0010101")));
  CHECK_FALSE(is_balanced_jz(W("0011")));
  // balance is judged around the circle: 10001 fails via the window 1..00011..
  CHECK_FALSE(is_balanced_jz(W("10001")));
  // non-coprime and unary words take the direct cyclic scan
  CHECK(is_balanced_jz(W("010101")));
  CHECK(is_balanced_jz(W("000")));
  CHECK(is_balanced_jz(W("0")));
  CHECK(is_balanced_jz(FiniteWord{}));
  CHECK_THROWS_AS(is_balanced_jz(W("020")), std::invalid_argument);
}

TEST_CASE("is_balanced_jz matches the cyclic oracle exhaustively") {
  for (std::size_t len = 1; len <= 11; ++len) {
    for (unsigned bits = 0; bits < (1u << len); ++bits) {
      FiniteWord w = from_bits(bits, len);
      bool got = is_balanced_jz(w);
      bool want = oracle::cyclic_balanced(w.text(), 1);
      if (got != want) {
        CAPTURE(w.text());
        REQUIRE(got == want);
      }
    }
  }
}

TEST_CASE("is_k_balanced on reference prefixes") {
  CHECK(is_k_balanced(testutil::fib().prefix(1024), 1));
  FiniteWord tm = testutil::tm().prefix(256);
  CHECK_FALSE(is_k_balanced(tm, 1));
  CHECK(is_k_balanced(tm, 2));
  CHECK_THROWS_AS(is_k_balanced(tm, 0), std::invalid_argument);
  CHECK_THROWS_AS(is_k_balanced(W("012"), 1), std::invalid_argument);
}

TEST_CASE("is_k_balanced matches the pairwise oracle") {
  std::mt19937 rng(7401);
  for (int i = 0; i < 80; ++i) {
    FiniteWord w = testutil::random_word(rng, 1, 64);
    for (std::size_t k : {std::size_t{1}, std::size_t{2}}) {
      CHECK(is_k_balanced(w, k) ==
            oracle::linear_balanced(w.text(), static_cast<int>(k)));
    }
  }
}
