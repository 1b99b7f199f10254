#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "csakit/basegroups.hpp"
#include "csakit/freegroup.hpp"
#include "csakit/word.hpp"

namespace csakit {

// G* = <G, t | t^-1 a_i t = b_i>. Words in G* use the base generators 0..base_rank()-1 and the
// stable letter t = base_rank().
class HnnPresentation {
 public:
  // Throws InvalidArgument when the tuples differ in length, reference letters outside the
  // base, or (free base) fail to be free bases of the subgroups they generate.
  HnnPresentation(BaseSpec base, std::vector<Word> a_generators, std::vector<Word> b_generators);

  const BaseSpec& base() const { return base_; }
  std::size_t base_rank() const { return generator_count(base_); }
  Generator stable_letter() const { return static_cast<Generator>(base_rank()); }
  std::size_t rank() const { return base_rank() + 1; }
  bool free_base() const { return std::holds_alternative<FreeGroupSpec>(base_); }

  std::span<const Word> a_generators() const { return a_; }
  std::span<const Word> b_generators() const { return b_; }

  // Core graphs of A and B; UnsupportedBase unless the base is free.
  const CoreGraph& a_graph() const;
  const CoreGraph& b_graph() const;

  // phi(a) for a in A, nullopt when a is not in A.
  std::optional<Word> phi(const Word& a) const;
  std::optional<Word> phi_inverse(const Word& b) const;

 private:
  BaseSpec base_;
  std::vector<Word> a_;
  std::vector<Word> b_;
  std::optional<CoreGraph> a_graph_;
  std::optional<CoreGraph> b_graph_;
};

// g_0 t^{e_1} g_1 ... t^{e_n} g_n with every g_i a base word and e_i = +-1.
class TWord {
 public:
  TWord() : gaps_(1) {}
  explicit TWord(Word base) : gaps_{std::move(base)} {}

  static TWord from_word(const Word& w, Generator stable_letter);
  Word to_word(Generator stable_letter) const;

  std::size_t length() const { return exponents_.size(); }
  std::span<const Word> gaps() const { return gaps_; }
  std::span<const int> exponents() const { return exponents_; }
  const Word& gap(std::size_t i) const { return gaps_[i]; }
  int exponent(std::size_t i) const { return exponents_[i]; }

  void append_gap(const Word& g) { gaps_.back() *= g; }
  void append_stable(int exponent) {
    exponents_.push_back(exponent);
    gaps_.emplace_back();
  }
  // Drops the last stable letter together with the gap after it and appends `image` to the gap
  // before it: one pinch applied at the end of the word.
  void pinch_last(const Word& image) {
    exponents_.pop_back();
    gaps_.pop_back();
    gaps_.back() *= image;
  }

  friend bool operator==(const TWord&, const TWord&) = default;

 private:
  std::vector<Word> gaps_;
  std::vector<int> exponents_;
};

// Removes pinches t^-1 a t -> phi(a) and t b t^-1 -> phi^-1(b) until none remain.
TWord britton_reduce(const TWord& w, const HnnPresentation& p);
TWord britton_reduce(const Word& w, const HnnPresentation& p);

std::size_t hnn_length(const Word& w, const HnnPresentation& p);

// w == u in G*.
bool hnn_equal(const Word& w, const Word& u, const HnnPresentation& p);
bool hnn_is_trivial(const Word& w, const HnnPresentation& p);

struct HnnCyclicReduction {
  TWord core;  // every cyclic permutation is Britton-reduced
  Word conjugator;
};

// w == conjugator * core * conjugator^-1 in G*.
HnnCyclicReduction hnn_cyclic_reduce(const Word& w, const HnnPresentation& p);

struct SeparationReport {
  bool separated = true;
  // When !separated: 1 != h in A and g h g^-1 in B (or in mal(B) for strict separation).
  std::optional<ConjugacyWitness> witness;
};

SeparationReport is_separated(const HnnPresentation& p);
// Separation against the malnormal closure of B; CapExceeded propagates.
SeparationReport is_strictly_separated(const HnnPresentation& p,
                                       std::size_t cap = kDefaultClosureCap);

// For cyclic A and B the two notions coincide; returns the common verdict and throws
// std::logic_error if they ever differ. InvalidArgument for non-cyclic associated subgroups.
bool separated_iff_strict_for_abelian(const HnnPresentation& p,
                                      std::size_t cap = kDefaultClosureCap);

enum class AbelianHnnCase {
  TrivialAssociated,  // G* = G * <t>
  NotMaximalA,
  Case1Separated,
  Case2CentralizerExtension,
  Case3,
  Case4,
};

std::string to_string(AbelianHnnCase c);

struct AbelianHnnClassification {
  AbelianHnnCase kind = AbelianHnnCase::TrivialAssociated;
  bool predicted_csa = true;
  Word u;  // generator of A
  Word v;  // phi(u)
  // Least (k, l) with u^k conjugate to v^l, and s with s^-1 u^k s = v^l.
  std::optional<std::pair<long, long>> powers;
  std::optional<Word> conjugator;
  // Cases 3 and 4: (a, c) with [a, a^c] = 1 and [a, c] != 1 in G*.
  std::optional<std::pair<Word, Word>> csa_witness;
  // NotMaximalA with phi(u) maximal: the case of the presentation with A and B swapped.
  std::optional<AbelianHnnCase> swapped_case;
  std::vector<std::string> citations;
};

// Free base with cyclic A = <u>, B = <phi(u)>. InvalidArgument for non-cyclic A or B.
AbelianHnnClassification classify_abelian_hnn(const HnnPresentation& p);

}  // namespace csakit
