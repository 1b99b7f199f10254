#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace csakit {

using Generator = std::uint32_t;

// A generator or its inverse. Letters are totally ordered x1 < x1^-1 < x2 < x2^-1 < ...,
// which is the order every shortlex comparison in the toolkit uses.
class Letter {
 public:
  constexpr Letter() = default;
  constexpr Letter(Generator generator, bool inverted)
      : code_(2 * generator + (inverted ? 1u : 0u)) {}

  static constexpr Letter from_code(std::uint32_t code) {
    Letter l;
    l.code_ = code;
    return l;
  }
  // +k / -k encodes x_k^{+1} / x_k^{-1} with k >= 1.
  static Letter from_signed(int encoded);

  constexpr Generator generator() const { return code_ / 2; }
  constexpr bool inverted() const { return (code_ & 1u) != 0; }
  constexpr int sign() const { return inverted() ? -1 : 1; }
  constexpr Letter inverse() const { return from_code(code_ ^ 1u); }
  constexpr std::uint32_t code() const { return code_; }

  constexpr auto operator<=>(const Letter&) const = default;

 private:
  std::uint32_t code_ = 0;
};

// Freely reduced word over an indexed alphabet. Every constructor reduces, so a Word
// never contains an adjacent pair l l^-1.
class Word {
 public:
  Word() = default;
  explicit Word(std::span<const Letter> raw);
  Word(std::initializer_list<Letter> raw);

  // Signed encoding: {1, -2} is x1 x2^-1.
  static Word from_signed(std::initializer_list<int> encoded);
  static Word generator(Generator g, int exponent = 1);

  std::span<const Letter> letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  Letter front() const { return letters_.front(); }
  Letter back() const { return letters_.back(); }

  // One more than the largest generator index used; 0 for the identity.
  std::size_t min_rank() const;
  // Sum of exponents of generator g.
  long exponent_sum(Generator g) const;

  Word inverse() const;
  Word pow(long exponent) const;
  // Letters [pos, pos + count) as a (reduced) word.
  Word subword(std::size_t pos, std::size_t count) const;

  Word& operator*=(const Word& rhs);
  Word& operator*=(Letter rhs);

  friend Word operator*(Word lhs, const Word& rhs) { return lhs *= rhs; }
  friend bool operator==(const Word&, const Word&) = default;

  // Rebuilds the word with every generator index g replaced by mapping[g].
  Word substitute(std::span<const Word> mapping) const;
  // Adds offset to every generator index.
  Word shifted(Generator offset) const;

 private:
  std::vector<Letter> letters_;
};

// Word comparison by length first, then lexicographically by letter order.
bool shortlex_less(const Word& a, const Word& b);

struct ShortlexLess {
  bool operator()(const Word& a, const Word& b) const { return shortlex_less(a, b); }
};

// Freely reduces raw letters, rejecting generator indices >= rank.
Word free_reduce(std::span<const Letter> raw, std::size_t rank);

Word commutator(const Word& a, const Word& b);  // a^-1 b^-1 a b
Word conjugate(const Word& a, const Word& by);  // by^-1 a by

struct CyclicReduction {
  Word core;        // cyclically reduced
  Word conjugator;  // word == conjugator * core * conjugator^-1
};

CyclicReduction cyclic_reduce(const Word& w);

// Conjugacy class representative: cyclically reduced, then the shortlex-least rotation.
class CyclicWord {
 public:
  explicit CyclicWord(const Word& w);

  const Word& canonical() const { return canonical_; }
  std::size_t length() const { return canonical_.length(); }
  friend bool operator==(const CyclicWord&, const CyclicWord&) = default;

 private:
  Word canonical_;
};

// Rotation of a cyclically reduced word: letters [k, n) followed by [0, k).
Word rotate(const Word& cyclically_reduced, std::size_t k);

// Smallest root r with w == r^e for some e >= 1 (cyclically reduced input only).
struct PowerDecomposition {
  Word root;
  std::size_t exponent = 1;
};
PowerDecomposition primitive_root_of_cyclic(const Word& cyclically_reduced);

// True iff w is conjugate to u^k with k >= 2 (requires w != 1).
bool is_proper_power(const Word& w);

// Display names for a generator alphabet. Default names are x1, x2, ...
std::string format_word(const Word& w, std::span<const std::string> names);
std::string format_word(const Word& w);

}  // namespace csakit
