#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "csakit/word.hpp"

namespace csakit {

// Folded Stallings core graph of a finitely generated subgroup H of the free group of rank
// ambient_rank(). The basepoint is always vertex 0 and vertices are numbered in breadth-first
// order from it (letters explored in Letter order), so equal subgroups yield identical graphs.
//
// Besides the automaton, the graph remembers the generating tuple it was folded from and labels
// each edge with a word over that tuple, which lets express() write any h in H as a product of
// the original generators.
class CoreGraph {
 public:
  struct Edge {
    std::size_t source;
    std::size_t target;
    Generator label;
    friend bool operator==(const Edge&, const Edge&) = default;
  };

  // Graph of the trivial subgroup.
  explicit CoreGraph(std::size_t ambient_rank = 0);

  std::size_t ambient_rank() const { return ambient_rank_; }
  std::size_t vertex_count() const { return vertex_count_; }
  std::size_t basepoint() const { return 0; }
  std::span<const Edge> edges() const { return edges_; }
  std::size_t rank() const { return edges_.size() + 1 - vertex_count_; }
  bool is_trivial() const { return edges_.empty(); }

  // Target of the dart labelled `l` at v, if any.
  std::optional<std::size_t> step(std::size_t v, Letter l) const;
  // End vertex of the path spelled by w from v.
  std::optional<std::size_t> read(std::size_t v, const Word& w) const;

  bool accepts(const Word& w) const;
  // Shortlex-least geodesic from the basepoint to v.
  const Word& path_to(std::size_t v) const { return tree_paths_[v]; }

  // The generating tuple the graph was folded from.
  std::span<const Word> generators() const { return generators_; }
  // w as a word in generators() (generator i is letter i), or nullopt if w is not in H.
  std::optional<Word> express(const Word& w) const;
  // Free basis read off the breadth-first spanning tree.
  std::vector<Word> basis() const;

  // Structural equality of the canonical automata, i.e. equality of subgroups.
  bool same_subgroup(const CoreGraph& other) const;

 private:
  friend CoreGraph fold(std::span<const Word> generators, std::size_t ambient_rank);

  std::size_t ambient_rank_;
  std::size_t vertex_count_ = 1;
  std::vector<Edge> edges_;
  std::vector<Word> edge_weights_;                   // parallel to edges_
  std::vector<std::vector<std::ptrdiff_t>> darts_;   // [vertex][letter code] -> edge index or -1
  std::vector<Word> tree_paths_;
  std::vector<Word> generators_;
};

// Stallings folding of the subgroup generated by `generators`.
CoreGraph fold(std::span<const Word> generators, std::size_t ambient_rank);

bool member(const Word& h, const CoreGraph& subgroup);

// A pair (g, h) with h != 1. Its meaning depends on the producing operation and is stated there.
struct ConjugacyWitness {
  Word conjugator;  // g
  Word element;     // h
};

struct ConjugateIntersectionReport {
  bool trivial = true;
  // When !trivial: 1 != h in A and g h g^-1 in B, i.e. h in A ∩ g^-1 B g.
  std::optional<ConjugacyWitness> witness;
};

// Decides whether A ∩ g^-1 B g = 1 for every g in the free group, via the fiber product of the
// two core graphs.
ConjugateIntersectionReport conj_intersection_trivial(const CoreGraph& a, const CoreGraph& b);

struct MalnormalityReport {
  bool malnormal = true;
  // When !malnormal: 1 != h in H, g^-1 h g in H and g not in H.
  std::optional<ConjugacyWitness> witness;
};

MalnormalityReport is_malnormal(const CoreGraph& h);

inline constexpr std::size_t kDefaultClosureCap = 32;

// Best-effort malnormal closure: joins malnormality witnesses g until the subgroup is malnormal.
// Each joined g lies in every malnormal subgroup containing H, so a returned graph is the closure.
// Throws CapExceeded after `cap` joins.
CoreGraph malnormal_closure(const CoreGraph& h, std::size_t cap = kDefaultClosureCap);

// True iff <w> is maximal abelian in the ambient free group (w not a proper power). w != 1.
bool is_maximal_abelian_in_free(const Word& w);

// Subgroup normality test for K <= H, both finitely generated: conjugates of K's generators by
// H's generators (and their inverses) stay in K.
bool is_normal_in(const CoreGraph& k, const CoreGraph& h);

}  // namespace csakit
