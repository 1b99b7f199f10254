#pragma once

// Independent reference implementations used by the unit and acceptance suites. Nothing here
// calls into the folding, Britton or normal-form code paths it is used to check, unless a
// function says otherwise.

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "csakit/word.hpp"

namespace csakit::oracle {

using Rng = std::mt19937_64;

Word random_word(Rng& rng, std::size_t rank, std::size_t max_length, std::size_t min_length = 0);

// All freely reduced words of length <= radius, shortlex order.
std::vector<Word> ball(std::size_t rank, std::size_t radius);

std::string key(const Word& w);

// Products of at most `factors` elements of gens ∪ gens^-1, freely reduced and deduplicated.
struct ProductSet {
  std::unordered_set<std::string> keys;
  std::vector<Word> words;
  bool contains(const Word& w) const;
};
ProductSet bounded_products(const std::vector<Word>& gens, std::size_t factors);

struct BruteMalnormality {
  bool violation_found = false;
  Word conjugator;
  Word element;
};

// Searches conjugators |g| <= max_conjugator with outside(g) and elements 1 != h in H with
// |h| <= max_element for g^-1 h g in H, H being represented by a bounded product set.
template <class Outside>
BruteMalnormality brute_malnormality(const ProductSet& members, std::size_t rank,
                                     std::size_t max_conjugator, std::size_t max_element,
                                     Outside outside);

// Nielsen reduction by elementary transformations: length-reducing replacements until N1 holds,
// then a bounded search over length-preserving replacements for N2. `reduced` is false when that
// search gives up, in which case membership below is only a lower bound.
struct NielsenBasis {
  std::vector<Word> basis;
  bool reduced = false;
};
NielsenBasis nielsen_reduce(const std::vector<Word>& gens);

// Checks N0, N1 and N2 for U ∪ U^-1.
bool is_nielsen_reduced(const std::vector<Word>& u);

// Membership in <basis> for a Nielsen-reduced basis: a reduced product u1 ... uk has length at
// least k and begins with the first ceil(|u1|/2) letters of u1, so a depth-first peel decides it.
bool nielsen_member(const Word& w, const NielsenBasis& b);

// Word problem in an amalgam of two free groups over A ≅ B (a_i <-> b_i) by syllable
// shuffling: any syllable lying in A or B moves across and merges with its neighbours. Uses
// Stallings membership from the library for the translation step.
// Letters [0, left_rank) are left-factor letters, the rest right-factor letters.
struct AmalgamOracle {
  std::size_t left_rank;
  std::size_t right_rank;
  std::vector<Word> a_gens;  // in the left factor
  std::vector<Word> b_gens;  // in the right factor, unshifted

  // Returns true iff the word is trivial in the amalgam.
  bool is_trivial(const Word& w) const;
};

// Normal form w y^k in <x, y | [[x, y], y]> for a word over x, y, d (generators 0, 1, 2; d is
// y^-1 x^-1 y x). d is first expanded, then y letters are bubbled to the right end one swap at a
// time: y x = x d y, y x^-1 = d^-1 x^-1 y, y^-1 x = x d^-1 y^-1, y^-1 x^-1 = d x^-1 y^-1, y^e
// commutes with d. The fiber word uses x = 0, d = 2.
struct FcOracleForm {
  Word fiber;
  long y_power = 0;
  friend bool operator==(const FcOracleForm&, const FcOracleForm&) = default;
};
FcOracleForm fc_rewrite(const Word& w);

// Syllable normal form in a free product of cyclic groups (orders 0 = infinite), computed by
// repeated local cancellation on a list rather than a stack.
std::vector<std::pair<Generator, long>> cyclic_product_form(const Word& w,
                                                            const std::vector<unsigned long>& orders);

template <class Outside>
BruteMalnormality brute_malnormality(const ProductSet& members, std::size_t rank,
                                     std::size_t max_conjugator, std::size_t max_element,
                                     Outside outside) {
  std::vector<const Word*> short_members;
  for (const Word& h : members.words)
    if (!h.empty() && h.length() <= max_element) short_members.push_back(&h);
  for (const Word& g : ball(rank, max_conjugator)) {
    if (!outside(g)) continue;
    for (const Word* h : short_members)
      if (members.contains(conjugate(*h, g))) return {true, g, *h};
  }
  return {};
}

}  // namespace csakit::oracle
