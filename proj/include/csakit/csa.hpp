#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "csakit/wpengine.hpp"
#include "csakit/word.hpp"

namespace csakit {

// a != 1, [a, a^v] = 1 and [a, v] != 1. Such a pair shows some maximal abelian subgroup is not
// malnormal, so the host is not CSA.
struct CsaWitness {
  Word a;
  Word v;
};

// Nontrivial a, b, c with [a, b] = [b, c] = 1 and [a, c] != 1.
struct CtWitness {
  Word a;
  Word b;
  Word c;
};

struct SearchOptions {
  std::size_t radius = 3;
  // Host elements the ball is built from; empty means default_search_alphabet().
  std::vector<Word> alphabet;
};

template <class W>
struct SearchResult {
  std::optional<W> witness;
  std::size_t ball_size = 0;  // distinct nontrivial elements searched
  std::size_t candidates = 0;
};

// Pairs are enumerated by (max level, index of a, index of v) over the shortlex ball, so the
// result is the least witness and monotone in the radius.
SearchResult<CsaWitness> falsify_csa(const GroupSpec& g, const SearchOptions& options);
// Triples by (max level, b, a, c).
SearchResult<CtWitness> falsify_ct(const GroupSpec& g, const SearchOptions& options);

bool verify_csa_witness(const CsaWitness& w, const GroupSpec& g);
bool verify_ct_witness(const CtWitness& w, const GroupSpec& g);

// The ball of reduced words of length <= radius over the alphabet, as host words, deduplicated
// where the host has canonical keys, trivial elements removed. `levels` receives the word length
// each element was first reached at.
std::vector<Word> search_ball(const GroupSpec& g, const std::vector<Word>& alphabet,
                              std::size_t radius, std::vector<std::size_t>* levels = nullptr);

enum class ObstacleKind {
  B1n,     // <x, t | t^-1 x t = x^n>, |n| >= 2
  CalB,    // F(p, q) x <r>
  Dinf,    // <u, w | u^2, w^2>
};

std::string to_string(ObstacleKind k);

struct ObstacleWitness {
  ObstacleKind obstacle = ObstacleKind::Dinf;
  long n = 2;               // B1n only
  std::vector<Word> images;  // host images of (x, t), (p, q, r) or (u, w)
  std::size_t radius = 3;
};

struct ObstacleReport {
  bool verified = false;
  bool relators_hold = false;
  std::size_t normal_forms = 0;
  std::size_t pairs_checked = 0;
  std::optional<std::pair<Word, Word>> collision;  // two obstacle normal forms with equal images
  std::string failed_relator;
};

// Bounded evidence of an embedding: relators map to 1 and the obstacle's normal forms of length
// <= radius have pairwise distinct images.
ObstacleReport verify_obstacle(const ObstacleWitness& w, const GroupSpec& host);

// Normal forms of the obstacle group up to `radius`, as words over its own generators.
std::vector<Word> obstacle_normal_forms(ObstacleKind kind, long n, std::size_t radius);
std::vector<Word> obstacle_relators(ObstacleKind kind, long n);
std::size_t obstacle_rank(ObstacleKind kind);

// <x, z | z^-1 x^m z = x^n> as an HNN extension of <x>.
HnnPresentation baumslag_solitar(long m, long n);

struct PowerConjReport {
  bool holds = false;
  bool first = false;   // x^{(mn)^i} = z^-i x^{m^{2i}} z^i
  bool second = false;  // x^{(mn)^i} = z^i x^{n^{2i}} z^-i
};

// RangeError when an exponent leaves the supported range, InvalidArgument for i = 0 or |m|, |n| < 2.
PowerConjReport power_conj_identity(long m, long n, unsigned i);

struct AbelianInvariants {
  std::size_t free_rank = 0;
  std::vector<unsigned long> torsion;  // invariant factors > 1
  std::vector<long> exponent_sums;
  std::string str() const;  // "Z^2", "Z + Z/2", "Z/3", "1"
};

AbelianInvariants abelianization_one_relator(const Word& relator, std::size_t generators);

struct ResidualPReport {
  bool obstruction = false;
  // Abelianization of B_{m,n} = <x, y | y x^m y^-1 = x^n>.
  AbelianInvariants abelianization;
  // The abelian test agrees with the flag: for m != n, x has order |n - m| in H_1, and x survives
  // in the largest abelian p-quotient iff p | (n - m); for m = n, H_1 = Z^2.
  bool cross_checked = false;
  std::string note;
};

// InvalidArgument for mn = 0 or p not prime.
ResidualPReport residually_p_obstruction(long m, long n, long p);

bool is_prime(long p);

}  // namespace csakit
