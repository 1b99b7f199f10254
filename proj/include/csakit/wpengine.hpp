#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "csakit/amalgam.hpp"
#include "csakit/basegroups.hpp"
#include "csakit/hnn.hpp"
#include "csakit/word.hpp"

namespace csakit {

// <x, y | [[x, y], y]> = F(x, d) x| <y> with d = y^-1 x^-1 y x. Letters: x = 0, y = 1, d = 2.
struct FreeByCyclicSpec {
  friend bool operator==(const FreeByCyclicSpec&, const FreeByCyclicSpec&) = default;
};

inline constexpr Generator kFbcX = 0;
inline constexpr Generator kFbcY = 1;
inline constexpr Generator kFbcD = 2;

using GroupSpec =
    std::variant<FreeGroupSpec, CyclicFreeProductSpec, HnnPresentation, AmalgamPresentation,
                 FreeByCyclicSpec>;

// Number of letters host words may use.
std::size_t alphabet_size(const GroupSpec& g);
// Generators a bounded search enumerates by default (free-by-cyclic: x and y, not d).
std::vector<Word> default_search_alphabet(const GroupSpec& g);
std::string group_kind(const GroupSpec& g);

bool is_trivial(const Word& w, const GroupSpec& g);
bool equal(const Word& u, const Word& v, const GroupSpec& g);
bool commutes(const Word& u, const Word& v, const GroupSpec& g);

// Element w y^k with w in the free fiber over x and d (letters 0 and 2).
struct FcWord {
  Word fiber;
  long k = 0;
  friend bool operator==(const FcWord&, const FcWord&) = default;
};

FcWord fc_normal_form(const Word& w);
// (w1, k1)(w2, k2) = (w1 beta^k1(w2), k1 + k2) with beta(x) = x d, beta(d) = d, since
// y w y^-1 = beta(w).
FcWord fc_multiply(const FcWord& a, const FcWord& b);
Word fc_to_word(const FcWord& f);

// Syllables (generator, exponent) of the normal form in a free product of cyclics; exponents of a
// factor of order n lie in [1, n).
std::vector<std::pair<Generator, long>> fpc_normal_form(const Word& w,
                                                        const std::vector<unsigned long>& orders);

// A string identifying the element, for hosts with unique normal forms (free, free product of
// cyclics, free-by-cyclic); nullopt otherwise.
std::optional<std::string> canonical_key(const Word& w, const GroupSpec& g);

}  // namespace csakit
