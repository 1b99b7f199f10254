#include "csakit/wpengine.hpp"

#include <sstream>

#include "csakit/errors.hpp"

namespace csakit {

namespace {

template <class... Fs>
struct Overload : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overload(Fs...) -> Overload<Fs...>;

void check_range(const Word& w, std::size_t n) {
  if (w.min_rank() > n)
    throw MalformedInput("letter index " + std::to_string(w.min_rank() - 1) +
                         " outside an alphabet of " + std::to_string(n) + " letters");
}

// beta^k applied to a single fiber letter.
Word beta_power(Letter l, long k) {
  if (l.generator() == kFbcD) return Word{l};
  const Word xd = Word{Letter(kFbcX, false)} * Word::generator(kFbcD, 1).pow(k);
  return l.inverted() ? xd.inverse() : xd;
}

}  // namespace

std::size_t alphabet_size(const GroupSpec& g) {
  return std::visit(Overload{
                        [](const FreeGroupSpec& f) { return f.rank; },
                        [](const CyclicFreeProductSpec& c) { return c.orders.size(); },
                        [](const HnnPresentation& h) { return h.rank(); },
                        [](const AmalgamPresentation& a) { return a.rank(); },
                        [](const FreeByCyclicSpec&) { return std::size_t{3}; },
                    },
                    g);
}

std::vector<Word> default_search_alphabet(const GroupSpec& g) {
  if (std::holds_alternative<FreeByCyclicSpec>(g))
    return {Word::generator(kFbcX), Word::generator(kFbcY)};
  std::vector<Word> out;
  for (std::size_t i = 0; i < alphabet_size(g); ++i)
    out.push_back(Word::generator(static_cast<Generator>(i)));
  return out;
}

std::string group_kind(const GroupSpec& g) {
  return std::visit(Overload{
                        [](const FreeGroupSpec&) { return std::string("free"); },
                        [](const CyclicFreeProductSpec&) { return std::string("free-product-of-cyclics"); },
                        [](const HnnPresentation&) { return std::string("hnn"); },
                        [](const AmalgamPresentation&) { return std::string("amalgam"); },
                        [](const FreeByCyclicSpec&) { return std::string("free-by-cyclic"); },
                    },
                    g);
}

FcWord fc_multiply(const FcWord& a, const FcWord& b) {
  FcWord out = a;
  for (Letter l : b.fiber.letters()) out.fiber *= beta_power(l, a.k);
  out.k += b.k;
  return out;
}

FcWord fc_normal_form(const Word& w) {
  check_range(w, 3);
  FcWord out;
  for (Letter l : w.letters()) {
    if (l.generator() == kFbcY)
      out.k += l.sign();
    else
      out.fiber *= beta_power(l, out.k);
  }
  return out;
}

Word fc_to_word(const FcWord& f) { return f.fiber * Word::generator(kFbcY, 1).pow(f.k); }

std::vector<std::pair<Generator, long>> fpc_normal_form(const Word& w,
                                                        const std::vector<unsigned long>& orders) {
  check_range(w, orders.size());
  std::vector<std::pair<Generator, long>> stack;
  for (Letter l : w.letters()) {
    const Generator g = l.generator();
    const long order = static_cast<long>(orders[g]);
    if (!stack.empty() && stack.back().first == g) {
      long e = stack.back().second + l.sign();
      if (order != 0) e = ((e % order) + order) % order;
      if (e == 0)
        stack.pop_back();
      else
        stack.back().second = e;
    } else {
      long e = l.sign();
      if (order != 0) e = ((e % order) + order) % order;
      if (e != 0) stack.emplace_back(g, e);
    }
  }
  return stack;
}

bool is_trivial(const Word& w, const GroupSpec& g) {
  return std::visit(Overload{
                        [&](const FreeGroupSpec& f) {
                          check_range(w, f.rank);
                          return w.empty();
                        },
                        [&](const CyclicFreeProductSpec& c) {
                          return fpc_normal_form(w, c.orders).empty();
                        },
                        [&](const HnnPresentation& h) { return hnn_is_trivial(w, h); },
                        [&](const AmalgamPresentation& a) { return embed_in_hnn(a).is_trivial(w); },
                        [&](const FreeByCyclicSpec&) {
                          const FcWord f = fc_normal_form(w);
                          return f.k == 0 && f.fiber.empty();
                        },
                    },
                    g);
}

bool equal(const Word& u, const Word& v, const GroupSpec& g) { return is_trivial(u * v.inverse(), g); }

bool commutes(const Word& u, const Word& v, const GroupSpec& g) {
  return is_trivial(commutator(u, v), g);
}

std::optional<std::string> canonical_key(const Word& w, const GroupSpec& g) {
  std::ostringstream s;
  if (std::holds_alternative<FreeGroupSpec>(g)) {
    check_range(w, std::get<FreeGroupSpec>(g).rank);
    for (Letter l : w.letters()) s << l.code() << ' ';
    return s.str();
  }
  if (const auto* c = std::get_if<CyclicFreeProductSpec>(&g)) {
    for (const auto& [gen, e] : fpc_normal_form(w, c->orders)) s << gen << '^' << e << ' ';
    return s.str();
  }
  if (std::holds_alternative<FreeByCyclicSpec>(g)) {
    const FcWord f = fc_normal_form(w);
    for (Letter l : f.fiber.letters()) s << l.code() << ' ';
    s << "| " << f.k;
    return s.str();
  }
  return std::nullopt;
}

}  // namespace csakit
