#include "doctest.h"

#include <vector>

#include "csakit/errors.hpp"
#include "csakit/word.hpp"
#include "oracles.hpp"

using namespace csakit;

namespace {
Word W(std::initializer_list<int> s) { return Word::from_signed(s); }
}  // namespace

TEST_CASE("free reduction cancels adjacent inverse pairs") {
  // x y^-1 ... written as raw letters
  const std::vector<Letter> raw{Letter(0, false), Letter(0, true), Letter(1, false)};
  CHECK(free_reduce(raw, 2) == W({2}));
  CHECK(free_reduce(std::vector<Letter>{}, 3).empty());
  const std::vector<Letter> raw2{Letter(0, false), Letter(1, false), Letter(1, true), Letter(0, false)};
  CHECK(free_reduce(raw2, 2) == Word::generator(0, 2));
}

TEST_CASE("free reduction rejects out-of-range generators") {
  const std::vector<Letter> raw{Letter(3, false)};
  CHECK_THROWS_AS(free_reduce(raw, 3), MalformedInput);
}

TEST_CASE("free reduction is idempotent on random raw sequences") {
  oracle::Rng rng(11);
  std::uniform_int_distribution<std::uint32_t> code(0, 5);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Letter> raw;
    for (int i = 0; i < 12; ++i) raw.push_back(Letter::from_code(code(rng)));
    const Word once = free_reduce(raw, 3);
    CHECK(free_reduce(once.letters(), 3) == once);
    for (std::size_t i = 0; i + 1 < once.length(); ++i) CHECK(once[i] != once[i + 1].inverse());
  }
}

TEST_CASE("cyclic reduction reconstructs the input") {
  const auto r = cyclic_reduce(W({1, 2, -1}));
  CHECK(r.core == W({2}));
  CHECK(r.conjugator == W({1}));

  CHECK(cyclic_reduce(W({2})).core == W({2}));
  CHECK(cyclic_reduce(W({2})).conjugator.empty());

  const Word c = W({1, 2, -1, -2});
  CHECK(cyclic_reduce(c).core == c);
  CHECK(cyclic_reduce(c).conjugator.empty());

  oracle::Rng rng(5);
  for (int i = 0; i < 300; ++i) {
    const Word w = oracle::random_word(rng, 3, 10);
    const auto red = cyclic_reduce(w);
    CHECK(red.conjugator * red.core * red.conjugator.inverse() == w);
    if (red.core.length() >= 2) CHECK(red.core.front() != red.core.back().inverse());
  }
}

TEST_CASE("cyclic words are conjugacy invariants") {
  oracle::Rng rng(6);
  for (int i = 0; i < 200; ++i) {
    const Word w = oracle::random_word(rng, 3, 8, 1);
    const Word g = oracle::random_word(rng, 3, 5);
    CHECK(CyclicWord(w) == CyclicWord(conjugate(w, g)));
  }
  CHECK_FALSE(CyclicWord(W({1, 2})) == CyclicWord(W({1, -2})));
  CHECK(CyclicWord(W({2, 1})).canonical() == W({1, 2}));
}

TEST_CASE("proper powers") {
  CHECK(is_proper_power(W({1, 1})));
  CHECK(is_proper_power(W({-2, 1, 2, 1, 2, 2})));  // y^-1 (x y)^2 y
  CHECK_FALSE(is_proper_power(W({2, 1, 2, 1, -2})));
  CHECK_FALSE(is_proper_power(W({1, 2, -1})));
  CHECK_FALSE(is_proper_power(W({1, 2, 1, -2})));
  CHECK(is_proper_power(W({1, 2, 1, 2, 1, 2})));
  CHECK_THROWS_AS(is_proper_power(Word()), InvalidArgument);
}

TEST_CASE("word arithmetic") {
  const Word a = W({1, 2});
  CHECK(a.pow(3).length() == 6);
  CHECK(a.pow(-2) == a.inverse() * a.inverse());
  CHECK((a * a.inverse()).empty());
  CHECK(commutator(W({1}), W({2})) == W({-1, -2, 1, 2}));
  CHECK(conjugate(W({1}), W({2})) == W({-2, 1, 2}));
  CHECK(W({1, -2, 3}).exponent_sum(1) == -1);
  CHECK(W({1, 3}).min_rank() == 3);
  CHECK(W({1, 2}).shifted(2) == W({3, 4}));
  const std::vector<Word> images{W({2}), W({1, 1})};
  CHECK(W({1, -2}).substitute(images) == W({2, -1, -1}));
}

TEST_CASE("shortlex order puts generators before their inverses") {
  CHECK(shortlex_less(W({1}), W({-1})));
  CHECK(shortlex_less(W({-1}), W({2})));
  CHECK(shortlex_less(W({9}), W({1, 1})));
  CHECK_FALSE(shortlex_less(W({1, 2}), W({1, 2})));
}

TEST_CASE("formatting groups powers") {
  CHECK(format_word(Word()) == "1");
  CHECK(format_word(W({1, 1, -2})) == "x1^2 x2^-1");
  const std::vector<std::string> names{"x", "t"};
  CHECK(format_word(W({-2, 1, 2}), names) == "t^-1 x t");
}
