#include "csakit/csa.hpp"

#include <numeric>
#include <sstream>
#include <unordered_set>

#include "csakit/errors.hpp"

namespace csakit {

namespace {

// Abstract reduced words over k letters, shortlex, lengths 0..radius.
std::vector<Word> abstract_ball(std::size_t k, std::size_t radius) {
  std::vector<Word> out{Word()};
  std::size_t begin = 0;
  for (std::size_t r = 1; r <= radius; ++r) {
    const std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (std::uint32_t c = 0; c < 2 * k; ++c) {
        const Letter l = Letter::from_code(c);
        if (!out[i].empty() && out[i].back() == l.inverse()) continue;
        Word w = out[i];
        w *= l;
        out.push_back(std::move(w));
      }
    }
    begin = end;
  }
  return out;
}

// Lazily filled symmetric commutation table over a ball.
class CommuteTable {
 public:
  CommuteTable(const std::vector<Word>& ball, const GroupSpec& g)
      : ball_(ball), g_(g), n_(ball.size()), cells_(n_ * n_, -1) {}

  bool operator()(std::size_t i, std::size_t j) {
    signed char& c = cells_[i * n_ + j];
    if (c < 0) {
      c = commutes(ball_[i], ball_[j], g_) ? 1 : 0;
      cells_[j * n_ + i] = c;
      ++evaluated_;
    }
    return c == 1;
  }
  std::size_t evaluated() const { return evaluated_; }

 private:
  const std::vector<Word>& ball_;
  const GroupSpec& g_;
  std::size_t n_;
  std::vector<signed char> cells_;
  std::size_t evaluated_ = 0;
};

long checked_mul(long a, long b) {
  long r;
  if (__builtin_mul_overflow(a, b, &r)) throw RangeError("exponent overflow");
  return r;
}

long checked_pow(long base, unsigned e) {
  long r = 1;
  for (unsigned i = 0; i < e; ++i) r = checked_mul(r, base);
  return r;
}

// Largest power the Britton check builds letter by letter.
constexpr long kMaxExponent = 1L << 16;

}  // namespace

std::vector<Word> search_ball(const GroupSpec& g, const std::vector<Word>& alphabet,
                              std::size_t radius, std::vector<std::size_t>* levels) {
  std::vector<Word> out;
  std::unordered_set<std::string> seen;
  for (const Word& w : abstract_ball(alphabet.size(), radius)) {
    if (w.empty()) continue;
    Word host = w.substitute(alphabet);
    if (is_trivial(host, g)) continue;
    if (auto key = canonical_key(host, g))
      if (!seen.insert(*key).second) continue;
    out.push_back(std::move(host));
    if (levels) levels->push_back(w.length());
  }
  return out;
}

bool verify_csa_witness(const CsaWitness& w, const GroupSpec& g) {
  return !is_trivial(w.a, g) && commutes(w.a, conjugate(w.a, w.v), g) && !commutes(w.a, w.v, g);
}

bool verify_ct_witness(const CtWitness& w, const GroupSpec& g) {
  return !is_trivial(w.a, g) && !is_trivial(w.b, g) && !is_trivial(w.c, g) &&
         commutes(w.a, w.b, g) && commutes(w.b, w.c, g) && !commutes(w.a, w.c, g);
}

SearchResult<CsaWitness> falsify_csa(const GroupSpec& g, const SearchOptions& options) {
  const std::vector<Word> alphabet =
      options.alphabet.empty() ? default_search_alphabet(g) : options.alphabet;
  std::vector<std::size_t> level;
  const std::vector<Word> ball = search_ball(g, alphabet, options.radius, &level);
  SearchResult<CsaWitness> result;
  result.ball_size = ball.size();

  std::size_t prefix = 0;
  for (std::size_t m = 1; m <= options.radius; ++m) {
    const std::size_t level_begin = prefix;
    while (prefix < ball.size() && level[prefix] == m) ++prefix;
    for (std::size_t ia = 0; ia < prefix; ++ia) {
      const std::size_t first_v = level[ia] == m ? 0 : level_begin;
      for (std::size_t iv = first_v; iv < prefix; ++iv) {
        ++result.candidates;
        const Word& a = ball[ia];
        const Word& v = ball[iv];
        if (!commutes(a, conjugate(a, v), g)) continue;
        if (commutes(a, v, g)) continue;
        result.witness = CsaWitness{a, v};
        return result;
      }
    }
  }
  return result;
}

SearchResult<CtWitness> falsify_ct(const GroupSpec& g, const SearchOptions& options) {
  const std::vector<Word> alphabet =
      options.alphabet.empty() ? default_search_alphabet(g) : options.alphabet;
  std::vector<std::size_t> level;
  const std::vector<Word> ball = search_ball(g, alphabet, options.radius, &level);
  SearchResult<CtWitness> result;
  result.ball_size = ball.size();
  CommuteTable commute(ball, g);

  std::size_t prefix = 0;
  for (std::size_t m = 1; m <= options.radius; ++m) {
    while (prefix < ball.size() && level[prefix] == m) ++prefix;
    for (std::size_t ib = 0; ib < prefix; ++ib) {
      std::vector<std::size_t> centralizer;
      for (std::size_t i = 0; i < prefix; ++i)
        if (i != ib && commute(i, ib)) centralizer.push_back(i);
      for (std::size_t ia : centralizer) {
        for (std::size_t ic : centralizer) {
          if (std::max({level[ia], level[ib], level[ic]}) != m) continue;
          ++result.candidates;
          if (commute(ia, ic)) continue;
          result.witness = CtWitness{ball[ia], ball[ib], ball[ic]};
          return result;
        }
      }
    }
  }
  return result;
}

std::string to_string(ObstacleKind k) {
  switch (k) {
    case ObstacleKind::B1n: return "B1n";
    case ObstacleKind::CalB: return "calB";
    case ObstacleKind::Dinf: return "Dinf";
  }
  return "?";
}

std::size_t obstacle_rank(ObstacleKind kind) { return kind == ObstacleKind::CalB ? 3 : 2; }

std::vector<Word> obstacle_relators(ObstacleKind kind, long n) {
  const Word g0 = Word::generator(0);
  const Word g1 = Word::generator(1);
  switch (kind) {
    case ObstacleKind::B1n: return {g1.inverse() * g0 * g1 * g0.pow(-n)};
    case ObstacleKind::CalB: {
      const Word r = Word::generator(2);
      return {commutator(g0, r), commutator(g1, r)};
    }
    case ObstacleKind::Dinf: return {g0.pow(2), g1.pow(2)};
  }
  return {};
}

std::vector<Word> obstacle_normal_forms(ObstacleKind kind, long n, std::size_t radius) {
  std::vector<Word> out;
  const long r = static_cast<long>(radius);
  switch (kind) {
    case ObstacleKind::Dinf: {
      out.push_back(Word());
      for (std::size_t len = 1; len <= radius; ++len)
        for (Generator start : {0u, 1u}) {
          Word w;
          for (std::size_t i = 0; i < len; ++i) w *= Letter((start + i) % 2, false);
          out.push_back(w);
        }
      break;
    }
    case ObstacleKind::CalB: {
      for (long k = -r; k <= r; ++k) {
        const std::size_t budget = radius - static_cast<std::size_t>(std::labs(k));
        std::vector<Word> free_part{Word()};
        std::size_t begin = 0;
        for (std::size_t len = 1; len <= budget; ++len) {
          const std::size_t end = free_part.size();
          for (std::size_t i = begin; i < end; ++i)
            for (std::uint32_t c = 0; c < 4; ++c) {
              const Letter l = Letter::from_code(c);
              if (!free_part[i].empty() && free_part[i].back() == l.inverse()) continue;
              Word w = free_part[i];
              w *= l;
              free_part.push_back(std::move(w));
            }
          begin = end;
        }
        for (const Word& w : free_part) out.push_back(w * Word::generator(2).pow(k));
      }
      break;
    }
    case ObstacleKind::B1n: {
      if (std::labs(n) < 2) throw InvalidArgument("B1n obstacle needs |n| >= 2");
      const Word x = Word::generator(0);
      const Word t = Word::generator(1);
      for (long i = 0; i <= r; ++i)
        for (long j = 0; i + j <= r; ++j)
          for (long k = -(r - i - j); k <= r - i - j; ++k) {
            if (i > 0 && j > 0 && k % n == 0) continue;
            out.push_back(t.pow(i) * x.pow(k) * t.pow(-j));
          }
      break;
    }
  }
  return out;
}

ObstacleReport verify_obstacle(const ObstacleWitness& w, const GroupSpec& host) {
  if (w.images.size() != obstacle_rank(w.obstacle))
    throw InvalidArgument(to_string(w.obstacle) + " needs " +
                          std::to_string(obstacle_rank(w.obstacle)) + " images");
  ObstacleReport report;
  report.relators_hold = true;
  for (const Word& rel : obstacle_relators(w.obstacle, w.n)) {
    if (!is_trivial(rel.substitute(w.images), host)) {
      report.relators_hold = false;
      report.failed_relator = format_word(rel);
      break;
    }
  }
  const std::vector<Word> forms = obstacle_normal_forms(w.obstacle, w.n, w.radius);
  report.normal_forms = forms.size();
  std::vector<Word> images;
  for (const Word& f : forms) images.push_back(f.substitute(w.images));
  for (std::size_t i = 0; i < forms.size() && !report.collision; ++i)
    for (std::size_t j = i + 1; j < forms.size(); ++j) {
      ++report.pairs_checked;
      if (equal(images[i], images[j], host)) {
        report.collision = std::pair{forms[i], forms[j]};
        break;
      }
    }
  report.verified = report.relators_hold && !report.collision;
  return report;
}

HnnPresentation baumslag_solitar(long m, long n) {
  if (m == 0 || n == 0) throw InvalidArgument("Baumslag-Solitar exponents must be nonzero");
  return HnnPresentation(FreeGroupSpec{1}, {Word::generator(0).pow(m)},
                         {Word::generator(0).pow(n)});
}

PowerConjReport power_conj_identity(long m, long n, unsigned i) {
  if (i == 0) throw InvalidArgument("power-conjugation identity needs i >= 1");
  if (std::labs(m) < 2 || std::labs(n) < 2) throw InvalidArgument("need |m|, |n| >= 2");
  const long mn_i = checked_pow(checked_mul(m, n), i);
  const long m_2i = checked_pow(m, 2 * i);
  const long n_2i = checked_pow(n, 2 * i);
  for (long e : {mn_i, m_2i, n_2i})
    if (std::labs(e) > kMaxExponent) throw RangeError("exponent " + std::to_string(e) + " too large");

  const HnnPresentation bs = baumslag_solitar(m, n);
  const Word x = Word::generator(0);
  const Word z = Word::generator(1);
  const Word lhs = x.pow(mn_i);
  const Word zi = z.pow(static_cast<long>(i));
  PowerConjReport r;
  r.first = hnn_equal(lhs, zi.inverse() * x.pow(m_2i) * zi, bs);
  r.second = hnn_equal(lhs, zi * x.pow(n_2i) * zi.inverse(), bs);
  r.holds = r.first && r.second;
  return r;
}

std::string AbelianInvariants::str() const {
  std::ostringstream s;
  bool first = true;
  if (free_rank > 0) {
    s << "Z";
    if (free_rank > 1) s << "^" << free_rank;
    first = false;
  }
  for (unsigned long t : torsion) {
    s << (first ? "" : " + ") << "Z/" << t;
    first = false;
  }
  if (first) s << "1";
  return s.str();
}

AbelianInvariants abelianization_one_relator(const Word& relator, std::size_t generators) {
  if (relator.min_rank() > generators) throw MalformedInput("relator uses an unknown generator");
  AbelianInvariants out;
  long g = 0;
  for (std::size_t i = 0; i < generators; ++i) {
    const long e = relator.exponent_sum(static_cast<Generator>(i));
    out.exponent_sums.push_back(e);
    g = std::gcd(g, e);
  }
  if (g == 0) {
    out.free_rank = generators;
  } else {
    out.free_rank = generators - 1;
    if (g > 1) out.torsion.push_back(static_cast<unsigned long>(g));
  }
  return out;
}

bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

ResidualPReport residually_p_obstruction(long m, long n, long p) {
  if (m == 0 || n == 0) throw InvalidArgument("residually-p test needs mn != 0");
  if (!is_prime(p)) throw InvalidArgument(std::to_string(p) + " is not prime");
  ResidualPReport r;
  r.obstruction = m != n ? (n - m) % p != 0 : n % p != 0;

  // B_{m,n} = <x, y | y x^m y^-1 x^-n>, x = 0, y = 1.
  const Word x = Word::generator(0);
  const Word y = Word::generator(1);
  r.abelianization = abelianization_one_relator(y * x.pow(m) * y.inverse() * x.pow(-n), 2);
  if (m != n) {
    // x has order |n - m| in H_1; its p-primary part is trivial iff p does not divide n - m.
    const unsigned long order = r.abelianization.torsion.empty() ? 1 : r.abelianization.torsion[0];
    const bool x_dies = order % static_cast<unsigned long>(p) != 0;
    r.cross_checked = x_dies == r.obstruction;
  } else if (std::labs(n) >= 2) {
    r.cross_checked = r.abelianization.free_rank == 2 && r.abelianization.torsion.empty();
    r.note = "y commutes with x^n; the flag concerns [x, y], invisible in H_1 = Z^2";
  } else {
    r.note = "B_{m,n} is abelian here; the flag is the closed-form criterion only";
  }
  return r;
}

}  // namespace csakit
