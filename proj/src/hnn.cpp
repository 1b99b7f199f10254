#include "csakit/hnn.hpp"

#include <stdexcept>

#include "csakit/errors.hpp"

namespace csakit {

namespace {

void check_letters(std::span<const Word> words, std::size_t rank, const char* what) {
  for (const Word& w : words)
    if (w.min_rank() > rank)
      throw InvalidArgument(std::string(what) + " generator uses a letter outside the base");
}

const CoreGraph& require_graph(const std::optional<CoreGraph>& g) {
  if (!g) throw UnsupportedBase("associated-subgroup membership needs a free base group");
  return *g;
}

}  // namespace

HnnPresentation::HnnPresentation(BaseSpec base, std::vector<Word> a_generators,
                                 std::vector<Word> b_generators)
    : base_(std::move(base)), a_(std::move(a_generators)), b_(std::move(b_generators)) {
  if (a_.size() != b_.size())
    throw InvalidArgument("associated subgroups need generator lists of equal length (" +
                          std::to_string(a_.size()) + " vs " + std::to_string(b_.size()) + ")");
  check_letters(a_, base_rank(), "A");
  check_letters(b_, base_rank(), "B");
  if (free_base()) {
    a_graph_ = fold(a_, base_rank());
    b_graph_ = fold(b_, base_rank());
    if (a_graph_->rank() != a_.size() || b_graph_->rank() != b_.size())
      throw InvalidArgument(
          "associated generators must be free bases of A and B for phi to be an isomorphism");
  }
}

const CoreGraph& HnnPresentation::a_graph() const { return require_graph(a_graph_); }
const CoreGraph& HnnPresentation::b_graph() const { return require_graph(b_graph_); }

std::optional<Word> HnnPresentation::phi(const Word& a) const {
  auto e = a_graph().express(a);
  if (!e) return std::nullopt;
  return e->substitute(b_);
}

std::optional<Word> HnnPresentation::phi_inverse(const Word& b) const {
  auto e = b_graph().express(b);
  if (!e) return std::nullopt;
  return e->substitute(a_);
}

TWord TWord::from_word(const Word& w, Generator stable_letter) {
  TWord out;
  for (Letter l : w.letters()) {
    if (l.generator() > stable_letter)
      throw MalformedInput("letter index " + std::to_string(l.generator()) +
                           " beyond the stable letter");
    if (l.generator() == stable_letter)
      out.append_stable(l.sign());
    else
      out.gaps_.back() *= l;
  }
  return out;
}

Word TWord::to_word(Generator stable_letter) const {
  Word w = gaps_[0];
  for (std::size_t i = 0; i < exponents_.size(); ++i) {
    w *= Letter(stable_letter, exponents_[i] < 0);
    w *= gaps_[i + 1];
  }
  return w;
}

TWord britton_reduce(const TWord& w, const HnnPresentation& p) {
  if (!p.free_base()) throw UnsupportedBase("Britton reduction needs a free base group");
  TWord out(w.gap(0));
  for (std::size_t i = 0; i < w.length(); ++i) {
    const int e = w.exponent(i);
    if (out.length() > 0 && out.exponent(out.length() - 1) == -e) {
      const Word& h = out.gap(out.length());
      // t^-1 h t with h in A, or t h t^-1 with h in B.
      auto image = e == 1 ? p.phi(h) : p.phi_inverse(h);
      if (image) {
        out.pinch_last(*image);
        out.append_gap(w.gap(i + 1));
        continue;
      }
    }
    out.append_stable(e);
    out.append_gap(w.gap(i + 1));
  }
  return out;
}

TWord britton_reduce(const Word& w, const HnnPresentation& p) {
  return britton_reduce(TWord::from_word(w, p.stable_letter()), p);
}

std::size_t hnn_length(const Word& w, const HnnPresentation& p) {
  return britton_reduce(w, p).length();
}

bool hnn_is_trivial(const Word& w, const HnnPresentation& p) {
  const TWord r = britton_reduce(w, p);
  return r.length() == 0 && r.gap(0).empty();
}

bool hnn_equal(const Word& w, const Word& u, const HnnPresentation& p) {
  return hnn_is_trivial(w * u.inverse(), p);
}

HnnCyclicReduction hnn_cyclic_reduce(const Word& w, const HnnPresentation& p) {
  const Generator t = p.stable_letter();
  TWord c = britton_reduce(w, p);
  Word conj;
  auto conjugate_by = [&](Word x) {
    c = britton_reduce(x.inverse() * c.to_word(t) * x, p);
    conj *= x;
  };
  for (;;) {
    const std::size_t n = c.length();
    if (n == 0) {
      const CyclicReduction r = cyclic_reduce(c.gap(0));
      conj *= r.conjugator;
      c = TWord(r.core);
      break;
    }
    if (!c.gap(0).empty()) {
      conjugate_by(c.gap(0));
      continue;
    }
    const int first = c.exponent(0);
    if (n >= 2 && c.exponent(n - 1) == -first) {
      const Word& h = c.gap(n);
      const bool pinch = first == 1 ? p.a_graph().accepts(h) : p.b_graph().accepts(h);
      if (pinch) {
        conjugate_by(Word::generator(t, first));
        continue;
      }
    }
    break;
  }
  return {std::move(c), std::move(conj)};
}

SeparationReport is_separated(const HnnPresentation& p) {
  const auto r = conj_intersection_trivial(p.a_graph(), p.b_graph());
  return {r.trivial, r.witness};
}

SeparationReport is_strictly_separated(const HnnPresentation& p, std::size_t cap) {
  const CoreGraph closure = malnormal_closure(p.b_graph(), cap);
  const auto r = conj_intersection_trivial(p.a_graph(), closure);
  return {r.trivial, r.witness};
}

bool separated_iff_strict_for_abelian(const HnnPresentation& p, std::size_t cap) {
  if (p.a_graph().rank() > 1 || p.b_graph().rank() > 1)
    throw InvalidArgument("associated subgroups must be cyclic");
  const bool plain = is_separated(p).separated;
  const bool strict = is_strictly_separated(p, cap).separated;
  if (plain != strict)
    throw std::logic_error("separated and strictly separated verdicts differ for cyclic A, B");
  return plain;
}

std::string to_string(AbelianHnnCase c) {
  switch (c) {
    case AbelianHnnCase::TrivialAssociated: return "TRIVIAL-ASSOCIATED";
    case AbelianHnnCase::NotMaximalA: return "NOT-MAXIMAL(A)";
    case AbelianHnnCase::Case1Separated: return "CASE1-SEPARATED";
    case AbelianHnnCase::Case2CentralizerExtension: return "CASE2-CENTRALIZER-EXT";
    case AbelianHnnCase::Case3: return "CASE3";
    case AbelianHnnCase::Case4: return "CASE4";
  }
  return "?";
}

namespace {

struct PowerConjugacy {
  long k;
  long l;
  Word s;  // s^-1 u^k s = v^l
};

// Least (k, |l|, sign, s) with u^k conjugate to v^l. For u not a proper power any solution has
// k <= |cyclic core of v| and |l| <= |cyclic core of u|.
std::optional<PowerConjugacy> least_power_conjugacy(const Word& u, const Word& v) {
  const CyclicReduction cu = cyclic_reduce(u);
  const CyclicReduction cv = cyclic_reduce(v);
  const long lu = static_cast<long>(cu.core.length());
  const long lv = static_cast<long>(cv.core.length());
  for (long k = 1; k <= lv; ++k) {
    for (long al = 1; al <= lu; ++al) {
      if (k * lu != al * lv) continue;
      for (long l : {al, -al}) {
        const Word x = cu.core.pow(k);
        const Word y = cv.core.pow(l);
        std::optional<Word> best;
        for (std::size_t j = 0; j < x.length(); ++j) {
          if (rotate(x, j) != y) continue;
          Word s = cu.conjugator * x.subword(0, j) * cv.conjugator.inverse();
          if (!best || shortlex_less(s, *best)) best = std::move(s);
        }
        if (best) return PowerConjugacy{k, l, std::move(*best)};
      }
    }
  }
  return std::nullopt;
}

}  // namespace

AbelianHnnClassification classify_abelian_hnn(const HnnPresentation& p) {
  const CoreGraph& a = p.a_graph();
  const CoreGraph& b = p.b_graph();
  if (a.rank() > 1 || b.rank() > 1)
    throw InvalidArgument("classification needs cyclic associated subgroups");

  AbelianHnnClassification out;
  if (p.a_generators().empty()) {
    out.kind = AbelianHnnCase::TrivialAssociated;
    out.predicted_csa = true;
    out.citations = {"Thm-AbSepExt"};
    return out;
  }
  out.u = p.a_generators()[0];
  out.v = p.b_generators()[0];
  const bool u_max = is_maximal_abelian_in_free(out.u);
  const bool v_max = is_maximal_abelian_in_free(out.v);

  if (!u_max) {
    out.kind = AbelianHnnCase::NotMaximalA;
    if (!v_max) {
      out.predicted_csa = false;
      out.citations = {"Prop-MustMax"};
      return out;
    }
    // t -> t^-1 swaps the roles of A and B.
    const HnnPresentation swapped(p.base(), {out.v}, {out.u});
    const AbelianHnnClassification inner = classify_abelian_hnn(swapped);
    out.swapped_case = inner.kind;
    out.predicted_csa = inner.predicted_csa;
    out.citations = inner.citations;
    if (inner.csa_witness) {
      // In the swapped group the stable letter is t^-1.
      const Word tinv = Word::generator(p.stable_letter(), -1);
      const std::vector<Word> back = [&] {
        std::vector<Word> m;
        for (Generator g = 0; g < p.base_rank(); ++g) m.push_back(Word::generator(g));
        m.push_back(tinv);
        return m;
      }();
      out.csa_witness = std::pair{inner.csa_witness->first.substitute(back),
                                  inner.csa_witness->second.substitute(back)};
    }
    return out;
  }

  const auto pc = least_power_conjugacy(out.u, out.v);
  const bool case1 = !pc;
  const bool case2 = pc && v_max && pc->l == 1;
  const bool case3 = pc && v_max && pc->l == -1;
  const bool case4 = pc && !v_max;
  if (int(case1) + int(case2) + int(case3) + int(case4) != 1)
    throw std::logic_error("abelian HNN classifier: cases are not mutually exclusive");

  const Word t = Word::generator(p.stable_letter());
  if (pc) {
    out.powers = std::pair{pc->k, pc->l};
    out.conjugator = pc->s;
  }
  if (case1) {
    out.kind = AbelianHnnCase::Case1Separated;
    out.predicted_csa = true;
    out.citations = {"Thm-AbSepExt", "Prop-AbSep"};
  } else if (case2) {
    out.kind = AbelianHnnCase::Case2CentralizerExtension;
    out.predicted_csa = true;
    out.citations = {"Prop-ConjExt"};
  } else {
    out.kind = case3 ? AbelianHnnCase::Case3 : AbelianHnnCase::Case4;
    out.predicted_csa = false;
    out.csa_witness = std::pair{out.u, t * pc->s.inverse()};
    out.citations = case3 ? std::vector<std::string>{"Thm-AbelianIff"}
                          : std::vector<std::string>{"Thm-AbelianIff", "Prop-TFObstacles"};
  }
  return out;
}

}  // namespace csakit
