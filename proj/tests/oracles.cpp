#include "oracles.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "csakit/freegroup.hpp"

namespace csakit::oracle {

Word random_word(Rng& rng, std::size_t rank, std::size_t max_length, std::size_t min_length) {
  std::uniform_int_distribution<std::size_t> len(min_length, max_length);
  std::uniform_int_distribution<std::uint32_t> code(0, static_cast<std::uint32_t>(2 * rank - 1));
  const std::size_t n = len(rng);
  std::vector<Letter> raw;
  while (raw.size() < n) {
    const Letter l = Letter::from_code(code(rng));
    if (!raw.empty() && raw.back() == l.inverse()) continue;
    raw.push_back(l);
  }
  return Word(raw);
}

std::vector<Word> ball(std::size_t rank, std::size_t radius) {
  std::vector<Word> out{Word()};
  std::size_t level_begin = 0;
  for (std::size_t r = 1; r <= radius; ++r) {
    const std::size_t level_end = out.size();
    for (std::size_t i = level_begin; i < level_end; ++i) {
      for (std::uint32_t c = 0; c < 2 * rank; ++c) {
        const Letter l = Letter::from_code(c);
        const Word& w = out[i];
        if (!w.empty() && w.back() == l.inverse()) continue;
        Word next = w;
        next *= l;
        out.push_back(std::move(next));
      }
    }
    level_begin = level_end;
  }
  return out;
}

std::string key(const Word& w) {
  std::string s;
  s.reserve(w.length());
  for (Letter l : w.letters()) s.push_back(static_cast<char>(l.code() + 1));
  return s;
}

bool ProductSet::contains(const Word& w) const { return keys.count(key(w)) != 0; }

ProductSet bounded_products(const std::vector<Word>& gens, std::size_t factors) {
  std::vector<Word> steps;
  for (const Word& g : gens) {
    steps.push_back(g);
    steps.push_back(g.inverse());
  }
  ProductSet set;
  set.keys.insert(key(Word()));
  set.words.push_back(Word());
  std::vector<Word> frontier{Word()};
  for (std::size_t k = 0; k < factors; ++k) {
    std::vector<Word> next;
    for (const Word& w : frontier) {
      for (const Word& s : steps) {
        Word p = w * s;
        if (set.keys.insert(key(p)).second) {
          set.words.push_back(p);
          next.push_back(std::move(p));
        }
      }
    }
    frontier = std::move(next);
  }
  return set;
}

namespace {

std::vector<Word> with_inverses(const std::vector<Word>& u) {
  std::vector<Word> out;
  for (const Word& w : u) {
    out.push_back(w);
    out.push_back(w.inverse());
  }
  return out;
}

std::size_t total_length(const std::vector<Word>& u) {
  std::size_t n = 0;
  for (const Word& w : u) n += w.length();
  return n;
}

// Drops trivial words and words equal to an earlier word or its inverse.
std::vector<Word> tidy(std::vector<Word> u) {
  std::vector<Word> out;
  for (Word& w : u) {
    if (w.empty()) continue;
    const bool dup = std::any_of(out.begin(), out.end(), [&](const Word& x) { return x == w || x == w.inverse(); });
    if (!dup) out.push_back(std::move(w));
  }
  return out;
}

// All sets reached by one replacement u_i -> u_i u_j^e or u_j^e u_i (j != i).
std::vector<std::vector<Word>> neighbours(const std::vector<Word>& u) {
  std::vector<std::vector<Word>> out;
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < u.size(); ++j) {
      if (i == j) continue;
      for (const Word& v : {u[j], u[j].inverse()}) {
        for (const Word& r : {u[i] * v, v * u[i]}) {
          std::vector<Word> next = u;
          next[i] = r;
          out.push_back(std::move(next));
        }
      }
    }
  return out;
}

std::string set_key(std::vector<Word> u) {
  // Canonical up to order and inversion of each element.
  std::vector<std::string> ks;
  for (const Word& w : u) ks.push_back(std::min(key(w), key(w.inverse())));
  std::sort(ks.begin(), ks.end());
  std::string s;
  for (const std::string& k : ks) s += k + '|';
  return s;
}

}  // namespace

bool is_nielsen_reduced(const std::vector<Word>& u) {
  const std::vector<Word> x = with_inverses(u);
  for (const Word& a : x)
    if (a.empty()) return false;
  for (const Word& a : x)
    for (const Word& b : x) {
      if (a == b.inverse()) continue;
      const std::size_t ab = (a * b).length();
      if (ab < a.length() || ab < b.length()) return false;
      for (const Word& c : x) {
        if (b == c.inverse()) continue;
        if ((a * b * c).length() + b.length() <= a.length() + c.length()) return false;
      }
    }
  return true;
}

NielsenBasis nielsen_reduce(const std::vector<Word>& gens) {
  std::vector<Word> u = tidy(gens);
  // N1 by strict descent of the total length.
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& next : neighbours(u)) {
      std::vector<Word> t = tidy(next);
      if (total_length(t) < total_length(u)) {
        u = std::move(t);
        changed = true;
        break;
      }
    }
  }
  if (is_nielsen_reduced(u)) return {u, true};
  // Breadth-first over sets of the same total length or less.
  const std::size_t bound = total_length(u);
  std::deque<std::vector<Word>> queue{u};
  std::map<std::string, bool> seen{{set_key(u), true}};
  while (!queue.empty() && seen.size() < 200000) {
    const std::vector<Word> cur = queue.front();
    queue.pop_front();
    for (const auto& next : neighbours(cur)) {
      std::vector<Word> t = tidy(next);
      if (total_length(t) > bound) continue;
      if (!seen.emplace(set_key(t), true).second) continue;
      if (is_nielsen_reduced(t)) return {t, true};
      queue.push_back(std::move(t));
    }
  }
  return {u, false};
}

namespace {

bool peel(const Word& w, const std::vector<Word>& x, std::size_t depth) {
  if (w.empty()) return true;
  if (depth == 0) return false;
  for (const Word& a : x) {
    const std::size_t half = (a.length() + 1) / 2;
    if (w.length() < half) continue;
    bool prefix = true;
    for (std::size_t i = 0; i < half && prefix; ++i) prefix = w[i] == a[i];
    if (prefix && peel(a.inverse() * w, x, depth - 1)) return true;
  }
  return false;
}

}  // namespace

bool nielsen_member(const Word& w, const NielsenBasis& b) {
  return peel(w, with_inverses(b.basis), w.length());
}

namespace {

struct Syllable {
  bool right;
  Word word;  // right syllables use unshifted right-factor indices
};

}  // namespace

bool AmalgamOracle::is_trivial(const Word& w) const {
  const CoreGraph a = fold(a_gens, left_rank);
  const CoreGraph b = fold(b_gens, right_rank);

  std::vector<Syllable> syl;
  for (Letter l : w.letters()) {
    const bool right = l.generator() >= left_rank;
    const Letter local = right ? Letter(l.generator() - static_cast<Generator>(left_rank), l.inverted()) : l;
    if (syl.empty() || syl.back().right != right) syl.push_back({right, Word()});
    syl.back().word *= local;
  }

  auto normalize = [&] {
    std::vector<Syllable> out;
    for (Syllable& s : syl) {
      if (s.word.empty()) continue;
      if (!out.empty() && out.back().right == s.right)
        out.back().word *= s.word;
      else
        out.push_back(std::move(s));
      if (out.back().word.empty()) out.pop_back();
    }
    syl = std::move(out);
  };

  normalize();
  // Each flip merges two syllables, so the loop stops; a lone syllable is trivial iff empty.
  for (bool changed = true; changed && syl.size() > 1;) {
    changed = false;
    for (Syllable& s : syl) {
      const CoreGraph& g = s.right ? b : a;
      if (auto e = g.express(s.word)) {
        s.word = e->substitute(s.right ? a_gens : b_gens);
        s.right = !s.right;
        changed = true;
        break;
      }
    }
    normalize();
  }
  return syl.empty();
}

FcOracleForm fc_rewrite(const Word& w) {
  // Signed symbols: +-1 x, +-2 y, +-3 d.
  std::vector<int> s;
  for (Letter l : w.letters()) {
    const int sign = l.sign();
    switch (l.generator()) {
      case 0: s.push_back(sign * 1); break;
      case 1: s.push_back(sign * 2); break;
      default: {
        // d = y^-1 x^-1 y x
        std::vector<int> d{-2, -1, 2, 1};
        if (sign < 0) {
          std::reverse(d.begin(), d.end());
          for (int& c : d) c = -c;
        }
        s.insert(s.end(), d.begin(), d.end());
      }
    }
  }
  auto is_y = [](int c) { return c == 2 || c == -2; };
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
      if (!is_y(s[i]) || is_y(s[i + 1])) continue;
      const int y = s[i];
      const int other = s[i + 1];
      std::vector<int> repl;
      if (other == 3 || other == -3) {
        repl = {other, y};
      } else if (y == 2) {
        repl = other == 1 ? std::vector<int>{1, 3, 2} : std::vector<int>{-3, -1, 2};
      } else {
        repl = other == 1 ? std::vector<int>{1, -3, -2} : std::vector<int>{3, -1, -2};
      }
      s.erase(s.begin() + static_cast<std::ptrdiff_t>(i), s.begin() + static_cast<std::ptrdiff_t>(i) + 2);
      s.insert(s.begin() + static_cast<std::ptrdiff_t>(i), repl.begin(), repl.end());
      changed = true;
      break;
    }
  }
  FcOracleForm out;
  for (int c : s) {
    if (is_y(c))
      out.y_power += c > 0 ? 1 : -1;
    else
      out.fiber *= Letter(c == 1 || c == -1 ? 0 : 2, c < 0);
  }
  return out;
}

std::vector<std::pair<Generator, long>> cyclic_product_form(const Word& w,
                                                            const std::vector<unsigned long>& orders) {
  std::vector<std::pair<Generator, long>> syl;
  for (Letter l : w.letters()) syl.emplace_back(l.generator(), l.sign());
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < syl.size(); ++i) {
      const unsigned long ord = orders.at(syl[i].first);
      if (ord != 0) {
        long e = syl[i].second % static_cast<long>(ord);
        if (e < 0) e += static_cast<long>(ord);
        if (e != syl[i].second) {
          syl[i].second = e;
          changed = true;
        }
      }
      if (syl[i].second == 0) {
        syl.erase(syl.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
      if (i + 1 < syl.size() && syl[i + 1].first == syl[i].first) {
        syl[i].second += syl[i + 1].second;
        syl.erase(syl.begin() + static_cast<std::ptrdiff_t>(i) + 1);
        changed = true;
        break;
      }
    }
  }
  return syl;
}

}  // namespace csakit::oracle
