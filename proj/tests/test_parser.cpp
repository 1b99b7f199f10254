#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "csakit/cli/parser.hpp"
#include "csakit/errors.hpp"
#include "csakit/hnn.hpp"
#include "oracles.hpp"

using namespace csakit;
using namespace csakit::cli;

namespace {

Word W(std::initializer_list<int> s) { return Word::from_signed(s); }

std::vector<Word> vec(std::span<const Word> s) { return {s.begin(), s.end()}; }

std::string read(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Group kind plus canonical relators, for comparing two parses.
std::string fingerprint(const Document& d) {
  std::string s;
  for (const GroupEntry& g : d.groups()) {
    s += g.name + ":" + group_kind(g.spec) + ":" + g.presentation.canonical() + ";";
    for (const std::string& n : g.names) s += n + ",";
    s += "\n";
  }
  for (const GogEntry& g : d.gogs()) s += g.name + ":" + std::to_string(g.graph.edges().size()) + "\n";
  return s;
}

void check_round_trip(const std::string& text) {
  const Document d1 = parse(text);
  const std::string p1 = d1.print();
  const Document d2 = parse(p1);
  CHECK(d2.print() == p1);
  CHECK(fingerprint(d2) == fingerprint(d1));
}

}  // namespace

TEST_CASE("presentation examples") {
  {
    const GroupEntry g = parse_group_expression("< x, t | t^-1 x t = x^2 >");
    const auto* h = std::get_if<HnnPresentation>(&g.spec);
    REQUIRE(h);
    CHECK(h->base_rank() == 1);
    CHECK(vec(h->a_generators()) == std::vector<Word>{W({1})});
    CHECK(vec(h->b_generators()) == std::vector<Word>{W({1, 1})});
    CHECK(g.names == std::vector<std::string>{"x", "t"});
  }
  {
    const GroupEntry g = parse_group_expression("< x, y | x^2 >");
    const auto* c = std::get_if<CyclicFreeProductSpec>(&g.spec);
    REQUIRE(c);
    CHECK(c->orders == std::vector<unsigned long>{2, 0});
  }
  {
    const GroupEntry g = parse_group_expression("< x >");
    const auto* f = std::get_if<FreeGroupSpec>(&g.spec);
    REQUIRE(f);
    CHECK(f->rank == 1);
  }
  {
    // Stable letter not named t, written in the other orientation.
    const GroupEntry g = parse_group_expression("<a, b, s | s a s^-1 = b>");
    const auto* h = std::get_if<HnnPresentation>(&g.spec);
    REQUIRE(h);
    CHECK(g.names.back() == "s");
    const Word t = Word::generator(2);
    CHECK(is_trivial(t * W({1}) * t.inverse() * W({-2}), g.spec));
    CHECK_FALSE(is_trivial(t.inverse() * W({1}) * t * W({-2}), g.spec));
  }
  {
    const GroupEntry g = parse_group_expression("fbc()");
    CHECK(std::holds_alternative<FreeByCyclicSpec>(g.spec));
    CHECK(g.names == std::vector<std::string>{"x", "y", "d"});
  }
}

TEST_CASE("words") {
  const std::vector<std::string> n{"x1", "x2", "t"};
  CHECK(parse_word("t^-1 x1 t", n) == W({-3, 1, 3}));
  CHECK(parse_word("1", n).empty());
  CHECK(parse_word("x1^3x2", n) == W({1, 1, 1, 2}));
  CHECK(parse_word("  x1 ^ -2  ", n) == W({-1, -1}));
  CHECK(parse_word_list("x1, x2 t", n) == std::vector<Word>{W({1}), W({2, 3})});
  CHECK(parse_word_list("", n).empty());
  CHECK_THROWS_AS(parse_word("x3", n), MalformedInput);
  CHECK_THROWS_AS(parse_word("x1 ^", n), ParseError);
}

TEST_CASE("syntax errors carry positions") {
  auto position_of = [](const std::string& text) -> std::pair<std::size_t, std::size_t> {
    try {
      parse(text);
    } catch (const ParseError& e) {
      return {e.line(), e.column()};
    }
    return {0, 0};
  };
  CHECK(position_of("group G = < x, | x >") == std::pair<std::size_t, std::size_t>{1, 16});
  CHECK(position_of("group G = < x >\ngroup H = < y | y^ >") == std::pair<std::size_t, std::size_t>{2, 20});
  CHECK(position_of("groop G = < x >") == std::pair<std::size_t, std::size_t>{1, 1});
  CHECK(position_of("group G = < x $ >") == std::pair<std::size_t, std::size_t>{1, 15});
  CHECK(position_of("# c\n\n  sub A = { x y") == std::pair<std::size_t, std::size_t>{3, 16});
}

TEST_CASE("unknown names and arity") {
  CHECK_THROWS_AS(parse("group G = < x | y >"), MalformedInput);
  CHECK_THROWS_AS(parse("group G = hnn(F; A -> B)"), MalformedInput);
  CHECK_THROWS_AS(parse("group F = < x >\nsub A = { x }\ngroup G = hnn(F; A -> B)"), MalformedInput);
  CHECK_THROWS_AS(parse("group F = < x, y >\nsub A = { x }\nsub B = { x, y }\ngroup G = hnn(F; A -> B)"),
                  MalformedInput);
  CHECK_THROWS_AS(parse("group F = < x, x >"), MalformedInput);
  CHECK_THROWS_AS(parse("group F = < x >\ngroup F = < y >"), MalformedInput);
  CHECK_THROWS_AS(parse("group L = < a >\ngroup R = < a >\nsub P = { a }\ngroup G = amalgam(L, R; P ~ P)"),
                  MalformedInput);
  CHECK_THROWS_AS(parse("gog T { vertex v = < a >; edge e : v -> w via a -> a; }"), MalformedInput);
  // Two relators with stable letters: outside the supported classes.
  CHECK_THROWS_AS(parse("group G = < x, y | x y x^-1 y^-1 x^2, y^3 x^2 >"), MalformedInput);
  const Document d = parse("group F = < x >");
  CHECK_THROWS_AS(d.group("G"), MalformedInput);
  CHECK_THROWS_AS(d.subgroup("A"), MalformedInput);
}

TEST_CASE("hnn via words") {
  const Document d = parse(
      "group F = < a, b >\nsub A = { a, b }\nsub B = { b, a }\n"
      "group G = hnn(F; A -> B via a b -> b a, b -> a)");
  const auto& h = std::get<HnnPresentation>(d.group("G").spec);
  CHECK(vec(h.a_generators()) == std::vector<Word>{W({1, 2}), W({2})});
  CHECK_THROWS_AS(parse("group F = < a, b >\nsub A = { a }\nsub B = { b }\n"
                        "group G = hnn(F; A -> B via a^2 -> b)"),
                  MalformedInput);
  // Stable letter renamed when t is taken.
  const Document e = parse("group F = < t, u >\nsub A = { t }\ngroup G = hnn(F; A -> A)");
  CHECK(e.group("G").names.back() == "t1");
}

TEST_CASE("round trip on bundled fixtures") {
  std::size_t n = 0;
  for (const auto& f : std::filesystem::directory_iterator(CSAKIT_FIXTURES_DIR)) {
    if (f.path().extension() != ".pres") continue;
    CAPTURE(f.path().string());
    check_round_trip(read(f.path()));
    ++n;
  }
  CHECK(n >= 12);
}

TEST_CASE("round trip on fuzzed presentations") {
  oracle::Rng rng(97);
  const std::vector<std::string> pool{"a", "b", "c", "x", "y", "z1", "z2", "g"};
  auto pick = [&](std::size_t k) { return std::uniform_int_distribution<std::size_t>(0, k - 1)(rng); };
  auto symbolic = [&](const Word& w, const std::vector<std::string>& names) {
    std::string s;
    for (std::size_t i = 0; i < w.length();) {
      std::size_t j = i;
      while (j < w.length() && w[j] == w[i]) ++j;
      if (!s.empty()) s += " ";
      s += names[w[i].generator()];
      const long e = static_cast<long>(j - i) * (w[i].inverted() ? -1 : 1);
      if (e != 1 || pick(4) == 0) s += "^" + std::to_string(e);
      i = j;
    }
    return s.empty() ? std::string("1") : s;
  };
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::string> names = pool;
    std::shuffle(names.begin(), names.end(), rng);
    names.resize(1 + pick(3));
    std::string text;
    const int kind = static_cast<int>(pick(4));
    const std::string gens = [&] {
      std::string s;
      for (const std::string& n : names) s += (s.empty() ? "" : ", ") + n;
      return s;
    }();
    if (kind == 0) {
      text = "group G = < " + gens + " >\n";
    } else if (kind == 1) {
      std::string rels;
      for (std::size_t i = 0; i < names.size(); ++i)
        if (pick(2)) rels += (rels.empty() ? "" : ", ") + names[i] + "^" + std::to_string(2 + pick(4));
      text = "group G = < " + gens + (rels.empty() ? "" : " | " + rels) + " >\n";
    } else if (kind == 2) {
      const Word u = oracle::random_word(rng, names.size(), 3, 1);
      const Word v = oracle::random_word(rng, names.size(), 3, 1);
      text = "group G = < " + gens + ", t | t^-1 " + symbolic(u, names) + " t = " + symbolic(v, names) + " >\n";
    } else {
      const Word u = oracle::random_word(rng, names.size(), 3, 1);
      const Word v = oracle::random_word(rng, names.size(), 3, 1);
      text = "# fuzz\ngroup F = < " + gens + " >\nsub A = { " + symbolic(u, names) + " }\nsub B = { " +
             symbolic(v, names) + " }\ngroup G = hnn(F; A -> B)\ngroup H = G\n";
      text += "gog T { vertex p = F; vertex q = < k1, k2 >; edge e : p -> q via " + symbolic(u, names) +
              " -> k1 k2; }\n";
    }
    CAPTURE(text);
    check_round_trip(text);
  }
}
