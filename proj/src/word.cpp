#include "csakit/word.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "csakit/errors.hpp"

namespace csakit {

Letter Letter::from_signed(int encoded) {
  if (encoded == 0) throw MalformedInput("signed letter encoding must be nonzero");
  return Letter(static_cast<Generator>(std::abs(encoded) - 1), encoded < 0);
}

Word::Word(std::span<const Letter> raw) {
  letters_.reserve(raw.size());
  for (Letter l : raw) *this *= l;
}

Word::Word(std::initializer_list<Letter> raw) : Word(std::span<const Letter>(raw.begin(), raw.size())) {}

Word Word::from_signed(std::initializer_list<int> encoded) {
  Word w;
  for (int e : encoded) w *= Letter::from_signed(e);
  return w;
}

Word Word::generator(Generator g, int exponent) {
  Word w;
  const Letter l(g, exponent < 0);
  for (int i = 0; i < std::abs(exponent); ++i) w.letters_.push_back(l);
  return w;
}

std::size_t Word::min_rank() const {
  std::size_t r = 0;
  for (Letter l : letters_) r = std::max<std::size_t>(r, l.generator() + 1);
  return r;
}

long Word::exponent_sum(Generator g) const {
  long s = 0;
  for (Letter l : letters_)
    if (l.generator() == g) s += l.sign();
  return s;
}

Word Word::inverse() const {
  Word w;
  w.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) w.letters_.push_back(it->inverse());
  return w;
}

Word Word::pow(long exponent) const {
  Word base = exponent < 0 ? inverse() : *this;
  Word result;
  for (long i = 0; i < std::labs(exponent); ++i) result *= base;
  return result;
}

Word Word::subword(std::size_t pos, std::size_t count) const {
  pos = std::min(pos, letters_.size());
  count = std::min(count, letters_.size() - pos);
  return Word(std::span<const Letter>(letters_.data() + pos, count));
}

Word& Word::operator*=(Letter rhs) {
  if (!letters_.empty() && letters_.back() == rhs.inverse())
    letters_.pop_back();
  else
    letters_.push_back(rhs);
  return *this;
}

Word& Word::operator*=(const Word& rhs) {
  if (&rhs == this) {
    const Word copy = rhs;
    return *this *= copy;
  }
  std::size_t i = 0;
  while (i < rhs.letters_.size() && !letters_.empty() &&
         letters_.back() == rhs.letters_[i].inverse()) {
    letters_.pop_back();
    ++i;
  }
  letters_.insert(letters_.end(), rhs.letters_.begin() + static_cast<std::ptrdiff_t>(i),
                  rhs.letters_.end());
  return *this;
}

Word Word::substitute(std::span<const Word> mapping) const {
  Word result;
  for (Letter l : letters_) {
    if (l.generator() >= mapping.size())
      throw MalformedInput("substitution does not cover generator " +
                           std::to_string(l.generator()));
    const Word& image = mapping[l.generator()];
    result *= l.inverted() ? image.inverse() : image;
  }
  return result;
}

Word Word::shifted(Generator offset) const {
  Word w;
  w.letters_.reserve(letters_.size());
  for (Letter l : letters_) w.letters_.emplace_back(l.generator() + offset, l.inverted());
  return w;
}

bool shortlex_less(const Word& a, const Word& b) {
  if (a.length() != b.length()) return a.length() < b.length();
  const auto la = a.letters();
  const auto lb = b.letters();
  return std::lexicographical_compare(la.begin(), la.end(), lb.begin(), lb.end());
}

Word free_reduce(std::span<const Letter> raw, std::size_t rank) {
  for (Letter l : raw)
    if (l.generator() >= rank)
      throw MalformedInput("generator index " + std::to_string(l.generator()) +
                           " out of range for rank " + std::to_string(rank));
  return Word(raw);
}

Word commutator(const Word& a, const Word& b) { return a.inverse() * b.inverse() * a * b; }

Word conjugate(const Word& a, const Word& by) { return by.inverse() * a * by; }

CyclicReduction cyclic_reduce(const Word& w) {
  std::size_t k = 0;
  const std::size_t n = w.length();
  while (2 * k + 1 < n && w[k] == w[n - 1 - k].inverse()) ++k;
  return {w.subword(k, n - 2 * k), w.subword(0, k)};
}

Word rotate(const Word& w, std::size_t k) {
  const std::size_t n = w.length();
  if (n == 0) return w;
  k %= n;
  return w.subword(k, n - k) * w.subword(0, k);
}

CyclicWord::CyclicWord(const Word& w) {
  const Word core = cyclic_reduce(w).core;
  canonical_ = core;
  for (std::size_t k = 1; k < core.length(); ++k) {
    Word r = rotate(core, k);
    if (shortlex_less(r, canonical_)) canonical_ = std::move(r);
  }
}

PowerDecomposition primitive_root_of_cyclic(const Word& w) {
  const std::size_t n = w.length();
  for (std::size_t p = 1; p < n; ++p) {
    if (n % p != 0) continue;
    bool periodic = true;
    for (std::size_t i = p; i < n && periodic; ++i) periodic = w[i] == w[i - p];
    if (periodic) return {w.subword(0, p), n / p};
  }
  return {w, 1};
}

bool is_proper_power(const Word& w) {
  if (w.empty()) throw InvalidArgument("the identity is not a proper power candidate");
  return primitive_root_of_cyclic(cyclic_reduce(w).core).exponent >= 2;
}

std::string format_word(const Word& w, std::span<const std::string> names) {
  if (w.empty()) return "1";
  std::ostringstream out;
  const auto letters = w.letters();
  bool first = true;
  for (std::size_t i = 0; i < letters.size();) {
    std::size_t j = i;
    while (j < letters.size() && letters[j] == letters[i]) ++j;
    const Generator g = letters[i].generator();
    if (!first) out << ' ';
    first = false;
    if (g < names.size())
      out << names[g];
    else
      out << 'x' << (g + 1);
    const long e = static_cast<long>(j - i) * letters[i].sign();
    if (e != 1) out << '^' << e;
    i = j;
  }
  return out.str();
}

std::string format_word(const Word& w) { return format_word(w, {}); }

}  // namespace csakit
