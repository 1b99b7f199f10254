#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "csakit/basegroups.hpp"
#include "csakit/freegroup.hpp"
#include "csakit/hnn.hpp"
#include "csakit/word.hpp"

namespace csakit {

struct AmalgamEmbedding;

// G *_phi H with phi(a_i) = b_i. Words in the amalgam use left generators [0, left_rank) followed
// by right generators; b_generators() are written over the right factor's own indices.
class AmalgamPresentation {
 public:
  AmalgamPresentation(BaseSpec left, BaseSpec right, std::vector<Word> a_generators,
                      std::vector<Word> b_generators);

  const BaseSpec& left() const { return left_; }
  const BaseSpec& right() const { return right_; }
  std::size_t left_rank() const { return generator_count(left_); }
  std::size_t right_rank() const { return generator_count(right_); }
  std::size_t rank() const { return left_rank() + right_rank(); }
  bool free_factors() const;

  std::span<const Word> a_generators() const { return a_; }
  std::span<const Word> b_generators() const { return b_; }

  // A word of the right factor written in the combined alphabet.
  Word lift_right(const Word& w) const { return w.shifted(static_cast<Generator>(left_rank())); }

 private:
  friend const AmalgamEmbedding& embed_in_hnn(const AmalgamPresentation& p);

  BaseSpec left_;
  BaseSpec right_;
  std::vector<Word> a_;
  std::vector<Word> b_;
  std::shared_ptr<const AmalgamEmbedding> embedding_;  // built once for free factors
};

// E(G, H, phi) = <G * H, t | t^-1 a t = phi(a)> together with the embedding of the amalgam.
struct AmalgamEmbedding {
  HnnPresentation hnn;
  std::size_t left_rank;

  // Left letters g go to t^-1 g t, right letters stay.
  Word map(const Word& amalgam_word) const;
  bool is_trivial(const Word& amalgam_word) const;
  bool equal(const Word& u, const Word& v) const;
};

// UnsupportedBase unless both factors are free.
const AmalgamEmbedding& embed_in_hnn(const AmalgamPresentation& p);

struct AmalgamVerdict {
  bool csa = true;
  std::vector<std::string> citations;
};

// Cyclic A and B: CSA* iff A is maximal abelian on the left or B on the right.
AmalgamVerdict amalgam_csa_verdict_abelian(const AmalgamPresentation& p);

struct PersistenceReport {
  bool no_violation = true;
  // x not in H, 1 != h in H and x^-1 h x in H.
  std::optional<ConjugacyWitness> witness;
  std::size_t conjugators_tried = 0;
};

// With A malnormal on the left and H malnormal on the right, H stays malnormal in the amalgam. The
// search runs over conjugators of at most `radius` syllables (every syllable a nontrivial word of
// length <= 2) against the nontrivial products of at most two generators of H.
// InvalidArgument when either malnormality hypothesis fails.
PersistenceReport malnormal_persistence_check(const AmalgamPresentation& p,
                                              const std::vector<Word>& h_generators,
                                              std::size_t radius);

enum class Tri { False, True, Unknown };

std::string to_string(Tri t);
Tri tri_and(Tri a, Tri b);

// Oriented graph of groups with free vertex groups.
struct GogVertex {
  std::string name;
  BaseSpec group;
  std::vector<std::string> generator_names;
};

struct GogEdge {
  std::string name;
  std::size_t source;
  std::size_t target;
  std::vector<Word> subgroup;  // G(e) in the source group
  std::vector<Word> image;     // t_e(G(e)) in the target group, generator by generator
};

class GraphOfGroups {
 public:
  // InvalidArgument on dangling endpoints, arity mismatches or letters outside a vertex group.
  GraphOfGroups(std::vector<GogVertex> vertices, std::vector<GogEdge> edges);

  std::span<const GogVertex> vertices() const { return vertices_; }
  std::span<const GogEdge> edges() const { return edges_; }

  bool is_tree() const;
  // Vertices v_0 .. v_n with the edges exactly v_i -> v_{i+1}.
  bool is_oriented_line() const;

 private:
  std::vector<GogVertex> vertices_;
  std::vector<GogEdge> edges_;
};

struct EdgePredicates {
  Tri source_malnormal = Tri::Unknown;           // G(e) malnormal in G(source)
  Tri image_normal_in_closure = Tri::Unknown;    // t_e(G(e)) normal in its malnormal closure
  Tri image_malnormal = Tri::Unknown;            // t_e(G(e)) malnormal in G(target)
  Tri separated = Tri::True;                     // loops only
  std::optional<ConjugacyWitness> source_witness;
  std::optional<ConjugacyWitness> image_witness;
  std::optional<ConjugacyWitness> separation_witness;
};

struct GogPredicates {
  Tri quasi_malnormal = Tri::True;
  Tri malnormal = Tri::True;
  Tri separated = Tri::True;
  std::vector<EdgePredicates> edges;
};

GogPredicates gog_predicates(const GraphOfGroups& g, std::size_t cap = kDefaultClosureCap);

// Finite presentation: generators are indices, names are for display only.
struct Presentation {
  std::vector<std::string> generator_names;
  std::vector<Word> relators;

  // Relators cyclically reduced, rotated to the least of all rotations of r and r^-1, deduplicated
  // and sorted; rendered over the generator indices.
  std::string canonical() const;
};

Presentation amalgam_presentation(const AmalgamPresentation& p);

struct GogVerdict {
  Tri csa = Tri::Unknown;  // True = CSA*, False = not CSA
  std::vector<std::string> citations;
  std::string reason;
};

struct FundamentalGroup {
  Presentation presentation;
  GogVerdict verdict;
};

// Iterated amalgamation over a finite tree (UnsupportedShape otherwise).
FundamentalGroup fundamental_group_presentation(const GraphOfGroups& g,
                                                std::size_t cap = kDefaultClosureCap);

}  // namespace csakit
