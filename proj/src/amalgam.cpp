#include "csakit/amalgam.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

#include "csakit/errors.hpp"

namespace csakit {

namespace {

bool is_free(const BaseSpec& b) { return std::holds_alternative<FreeGroupSpec>(b); }

void check_basis(const std::vector<Word>& gens, std::size_t rank, const std::string& what) {
  for (const Word& w : gens)
    if (w.min_rank() > rank) throw InvalidArgument(what + " uses a letter outside its group");
  if (fold(gens, rank).rank() != gens.size())
    throw InvalidArgument(what + " generators must form a free basis");
}

// Words of length 1..2 over `rank` letters.
std::vector<Word> short_syllables(std::size_t rank) {
  std::vector<Word> out;
  for (std::uint32_t c = 0; c < 2 * rank; ++c) out.push_back(Word{Letter::from_code(c)});
  const std::size_t singles = out.size();
  for (std::size_t i = 0; i < singles; ++i)
    for (std::size_t j = 0; j < singles; ++j) {
      const Word w = out[i] * out[j];
      if (w.length() == 2) out.push_back(w);
    }
  return out;
}

}  // namespace

AmalgamPresentation::AmalgamPresentation(BaseSpec left, BaseSpec right,
                                         std::vector<Word> a_generators,
                                         std::vector<Word> b_generators)
    : left_(std::move(left)),
      right_(std::move(right)),
      a_(std::move(a_generators)),
      b_(std::move(b_generators)) {
  if (a_.size() != b_.size())
    throw InvalidArgument("amalgamated subgroups need generator lists of equal length");
  if (free_factors()) {
    check_basis(a_, left_rank(), "A");
    check_basis(b_, right_rank(), "B");
    std::vector<Word> b;
    for (const Word& w : b_) b.push_back(lift_right(w));
    embedding_ = std::make_shared<const AmalgamEmbedding>(
        AmalgamEmbedding{HnnPresentation(FreeGroupSpec{rank()}, a_, std::move(b)), left_rank()});
  }
}

bool AmalgamPresentation::free_factors() const { return is_free(left_) && is_free(right_); }

const AmalgamEmbedding& embed_in_hnn(const AmalgamPresentation& p) {
  if (!p.embedding_) throw UnsupportedBase("amalgam embedding needs free factors");
  return *p.embedding_;
}

Word AmalgamEmbedding::map(const Word& w) const {
  const Generator t = hnn.stable_letter();
  Word out;
  for (Letter l : w.letters()) {
    if (l.generator() >= t) throw MalformedInput("letter outside the amalgam alphabet");
    if (l.generator() < left_rank) {
      out *= Letter(t, true);
      out *= l;
      out *= Letter(t, false);
    } else {
      out *= l;
    }
  }
  return out;
}

bool AmalgamEmbedding::is_trivial(const Word& w) const { return hnn_is_trivial(map(w), hnn); }

bool AmalgamEmbedding::equal(const Word& u, const Word& v) const {
  return is_trivial(u * v.inverse());
}

AmalgamVerdict amalgam_csa_verdict_abelian(const AmalgamPresentation& p) {
  if (!p.free_factors()) throw UnsupportedBase("abelian amalgam verdict needs free factors");
  if (p.a_generators().size() > 1)
    throw InvalidArgument("abelian amalgam verdict needs cyclic amalgamated subgroups");
  if (p.a_generators().empty()) return {true, {"Thm-amalgprod"}};
  const bool a_max = is_maximal_abelian_in_free(p.a_generators()[0]);
  const bool b_max = is_maximal_abelian_in_free(p.b_generators()[0]);
  if (a_max || b_max) return {true, {"Thm-amalgiff"}};
  return {false, {"Prop-MustMax"}};
}

PersistenceReport malnormal_persistence_check(const AmalgamPresentation& p,
                                              const std::vector<Word>& h_generators,
                                              std::size_t radius) {
  const AmalgamEmbedding& e = embed_in_hnn(p);
  const CoreGraph a = fold(std::vector<Word>(p.a_generators().begin(), p.a_generators().end()),
                           p.left_rank());
  if (!is_malnormal(a).malnormal) throw InvalidArgument("A is not malnormal in the left factor");
  for (const Word& h : h_generators)
    if (h.min_rank() > p.right_rank()) throw InvalidArgument("H must lie in the right factor");
  const CoreGraph h_local = fold(h_generators, p.right_rank());
  if (!is_malnormal(h_local).malnormal)
    throw InvalidArgument("H is not malnormal in the right factor");

  PersistenceReport report;
  if (h_local.is_trivial()) return report;

  std::vector<Word> lifted;
  for (const Word& h : h_generators) lifted.push_back(p.lift_right(h));
  const CoreGraph h_graph = fold(lifted, e.hnn.base_rank());
  // Images of right-factor words are themselves, so x is in H iff its reduced image is a base
  // word accepted by H.
  auto in_h = [&](const Word& x) {
    const TWord r = britton_reduce(e.map(x), e.hnn);
    return r.length() == 0 && h_graph.accepts(r.gap(0));
  };

  std::vector<Word> elements;
  for (std::size_t i = 0; i < lifted.size(); ++i) {
    for (const Word& x : {lifted[i], lifted[i].inverse()}) {
      elements.push_back(x);
      for (const Word& y : lifted) {
        for (const Word& z : {y, y.inverse()}) {
          const Word xz = x * z;
          if (!xz.empty()) elements.push_back(xz);
        }
      }
    }
  }

  std::vector<Word> left = short_syllables(p.left_rank());
  std::vector<Word> right = short_syllables(p.right_rank());
  for (Word& w : right) w = p.lift_right(w);

  // Alternating syllable sequences, depth first.
  std::function<bool(const Word&, int, std::size_t)> search = [&](const Word& x, int last,
                                                                  std::size_t depth) {
    if (depth > 0) {
      ++report.conjugators_tried;
      if (!in_h(x)) {
        for (const Word& h : elements) {
          if (in_h(conjugate(h, x))) {
            report.no_violation = false;
            report.witness = ConjugacyWitness{x, h};
            return true;
          }
        }
      }
    }
    if (depth == radius) return false;
    for (int side = 0; side < 2; ++side) {
      if (side == last) continue;
      for (const Word& s : side == 0 ? left : right)
        if (search(x * s, side, depth + 1)) return true;
    }
    return false;
  };
  search(Word(), -1, 0);
  return report;
}

std::string to_string(Tri t) {
  switch (t) {
    case Tri::True: return "true";
    case Tri::False: return "false";
    case Tri::Unknown: return "unknown";
  }
  return "unknown";
}

Tri tri_and(Tri a, Tri b) {
  if (a == Tri::False || b == Tri::False) return Tri::False;
  if (a == Tri::Unknown || b == Tri::Unknown) return Tri::Unknown;
  return Tri::True;
}

GraphOfGroups::GraphOfGroups(std::vector<GogVertex> vertices, std::vector<GogEdge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
  for (const GogEdge& e : edges_) {
    if (e.source >= vertices_.size() || e.target >= vertices_.size())
      throw InvalidArgument("edge " + e.name + " has an endpoint that is not a vertex");
    if (e.subgroup.size() != e.image.size())
      throw InvalidArgument("edge " + e.name + ": subgroup and image generator counts differ");
    const std::size_t rs = generator_count(vertices_[e.source].group);
    const std::size_t rt = generator_count(vertices_[e.target].group);
    for (const Word& w : e.subgroup)
      if (w.min_rank() > rs) throw InvalidArgument("edge " + e.name + ": subgroup word outside source");
    for (const Word& w : e.image)
      if (w.min_rank() > rt) throw InvalidArgument("edge " + e.name + ": image word outside target");
    if (is_free(vertices_[e.source].group) && is_free(vertices_[e.target].group)) {
      if (fold(e.subgroup, rs).rank() != e.subgroup.size() ||
          fold(e.image, rt).rank() != e.image.size())
        throw InvalidArgument("edge " + e.name + ": t_e must map a free basis to a free basis");
    }
  }
}

bool GraphOfGroups::is_tree() const {
  if (vertices_.empty() || edges_.size() + 1 != vertices_.size()) return false;
  std::vector<std::size_t> parent(vertices_.size());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
  std::function<std::size_t(std::size_t)> find = [&](std::size_t v) {
    return parent[v] == v ? v : parent[v] = find(parent[v]);
  };
  for (const GogEdge& e : edges_) {
    const std::size_t a = find(e.source);
    const std::size_t b = find(e.target);
    if (a == b) return false;
    parent[a] = b;
  }
  return true;
}

bool GraphOfGroups::is_oriented_line() const {
  if (!is_tree()) return false;
  std::vector<int> in(vertices_.size(), 0), out(vertices_.size(), 0);
  for (const GogEdge& e : edges_) {
    ++out[e.source];
    ++in[e.target];
  }
  for (std::size_t v = 0; v < vertices_.size(); ++v)
    if (in[v] > 1 || out[v] > 1) return false;
  return true;
}

GogPredicates gog_predicates(const GraphOfGroups& g, std::size_t cap) {
  GogPredicates out;
  for (const GogEdge& e : g.edges()) {
    EdgePredicates ep;
    const GogVertex& src = g.vertices()[e.source];
    const GogVertex& dst = g.vertices()[e.target];
    if (is_free(src.group) && is_free(dst.group)) {
      const CoreGraph sub = fold(e.subgroup, generator_count(src.group));
      const CoreGraph img = fold(e.image, generator_count(dst.group));
      const auto ms = is_malnormal(sub);
      ep.source_malnormal = ms.malnormal ? Tri::True : Tri::False;
      ep.source_witness = ms.witness;
      const auto mi = is_malnormal(img);
      ep.image_malnormal = mi.malnormal ? Tri::True : Tri::False;
      ep.image_witness = mi.witness;
      try {
        ep.image_normal_in_closure =
            is_normal_in(img, malnormal_closure(img, cap)) ? Tri::True : Tri::False;
      } catch (const CapExceeded&) {
        ep.image_normal_in_closure = Tri::Unknown;
      }
      if (e.source == e.target) {
        const auto r = conj_intersection_trivial(sub, img);
        ep.separated = r.trivial ? Tri::True : Tri::False;
        ep.separation_witness = r.witness;
      }
    } else if (e.source == e.target) {
      ep.separated = Tri::Unknown;
    }
    const Tri quasi = tri_and(ep.source_malnormal, ep.image_normal_in_closure);
    out.quasi_malnormal = tri_and(out.quasi_malnormal, quasi);
    out.malnormal = tri_and(out.malnormal, tri_and(quasi, ep.image_malnormal));
    out.separated = tri_and(out.separated, ep.separated);
    out.edges.push_back(std::move(ep));
  }
  return out;
}

std::string Presentation::canonical() const {
  std::set<std::vector<std::uint32_t>> rels;
  for (const Word& r : relators) {
    const Word a = CyclicWord(r).canonical();
    if (a.empty()) continue;
    const Word b = CyclicWord(r.inverse()).canonical();
    const Word& best = shortlex_less(b, a) ? b : a;
    std::vector<std::uint32_t> codes;
    for (Letter l : best.letters()) codes.push_back(l.code());
    rels.insert(codes);
  }
  std::ostringstream s;
  s << "<" << generator_names.size() << " |";
  bool first = true;
  for (const auto& codes : rels) {
    s << (first ? " " : ", ");
    first = false;
    for (std::size_t i = 0; i < codes.size(); ++i)
      s << (i ? "." : "") << (codes[i] % 2 ? "-" : "") << (codes[i] / 2 + 1);
  }
  s << " >";
  return s.str();
}

Presentation amalgam_presentation(const AmalgamPresentation& p) {
  Presentation out;
  for (std::size_t i = 0; i < p.rank(); ++i) out.generator_names.push_back("x" + std::to_string(i + 1));
  for (std::size_t i = 0; i < p.a_generators().size(); ++i)
    out.relators.push_back(p.a_generators()[i] * p.lift_right(p.b_generators()[i]).inverse());
  return out;
}

namespace {

GogVerdict decide_verdict(const GraphOfGroups& g, const GogPredicates& preds) {
  GogVerdict positive;
  GogVerdict negative;

  const bool all_free = std::all_of(g.vertices().begin(), g.vertices().end(),
                                    [](const GogVertex& v) { return is_free(v.group); });
  if (!all_free) return {Tri::Unknown, {}, "vertex groups are not all free"};
  const bool cyclic = std::all_of(g.edges().begin(), g.edges().end(),
                                  [](const GogEdge& e) { return e.subgroup.size() <= 1; });

  if (g.edges().size() == 1) {
    const GogEdge& e = g.edges()[0];
    if (preds.quasi_malnormal == Tri::True) {
      positive = {Tri::True, {"Thm-amalgprod"}, "single quasi-malnormal edge"};
    } else if (cyclic && !e.subgroup.empty() &&
               (is_maximal_abelian_in_free(e.subgroup[0]) || is_maximal_abelian_in_free(e.image[0]))) {
      positive = {Tri::True, {"Thm-amalgiff"}, "single cyclic edge with a maximal abelian side"};
    }
  } else if (preds.malnormal == Tri::True) {
    positive = {Tri::True, {"Thm-GraphGroups"}, "malnormal tree of CSA* groups"};
    if (cyclic) positive.citations.push_back("Prop-TreeProdAb");
  } else if (g.is_oriented_line() && preds.quasi_malnormal == Tri::True) {
    positive = {Tri::True, {"Thm-GraphGroups"}, "quasi-malnormal oriented line"};
  }

  if (cyclic) {
    for (const GogEdge& e : g.edges()) {
      if (e.subgroup.empty()) continue;
      if (!is_maximal_abelian_in_free(e.subgroup[0]) && !is_maximal_abelian_in_free(e.image[0])) {
        negative = {Tri::False, {"Prop-MustMax"},
                    "edge " + e.name + " has no maximal abelian side"};
        break;
      }
    }
    if (negative.csa == Tri::Unknown) {
      // Per vertex: near side of each non-loop edge at v, far side maximal or not.
      struct End {
        const GogEdge* edge;
        Word near;
        Word far;
      };
      for (std::size_t v = 0; v < g.vertices().size() && negative.csa == Tri::Unknown; ++v) {
        std::vector<End> ends;
        for (const GogEdge& e : g.edges()) {
          if (e.subgroup.empty() || e.source == e.target) continue;
          if (e.source == v) ends.push_back({&e, e.subgroup[0], e.image[0]});
          if (e.target == v) ends.push_back({&e, e.image[0], e.subgroup[0]});
        }
        const std::size_t rank = generator_count(g.vertices()[v].group);
        for (std::size_t i = 0; i < ends.size() && negative.csa == Tri::Unknown; ++i) {
          for (std::size_t j = i + 1; j < ends.size(); ++j) {
            const End& x = ends[i];
            const End& y = ends[j];
            if (!is_maximal_abelian_in_free(x.near) || !is_maximal_abelian_in_free(y.near)) continue;
            if (is_maximal_abelian_in_free(x.far) || is_maximal_abelian_in_free(y.far)) continue;
            if (!fold(std::vector<Word>{x.near}, rank).same_subgroup(fold(std::vector<Word>{y.near}, rank)))
              continue;
            negative = {Tri::False, {"Prop-BadTree"},
                        "edges " + x.edge->name + " and " + y.edge->name + " at vertex " +
                            g.vertices()[v].name + " share a maximal abelian group"};
            break;
          }
        }
      }
    }
  }

  if (positive.csa == Tri::True && negative.csa == Tri::False)
    throw std::logic_error("graph-of-groups verdict rules contradict each other");
  if (positive.csa == Tri::True) return positive;
  if (negative.csa == Tri::False) return negative;
  return {Tri::Unknown, {}, "no criterion applies"};
}

}  // namespace

FundamentalGroup fundamental_group_presentation(const GraphOfGroups& g, std::size_t cap) {
  if (!g.is_tree()) throw UnsupportedShape("fundamental group presentation needs a finite tree");
  FundamentalGroup out;
  std::vector<Generator> offset;
  for (const GogVertex& v : g.vertices()) {
    offset.push_back(static_cast<Generator>(out.presentation.generator_names.size()));
    const std::size_t r = generator_count(v.group);
    for (std::size_t i = 0; i < r; ++i) {
      const std::string local =
          i < v.generator_names.size() ? v.generator_names[i] : "x" + std::to_string(i + 1);
      out.presentation.generator_names.push_back(v.name + "." + local);
    }
  }
  for (const GogEdge& e : g.edges())
    for (std::size_t i = 0; i < e.subgroup.size(); ++i)
      out.presentation.relators.push_back(e.subgroup[i].shifted(offset[e.source]) *
                                          e.image[i].shifted(offset[e.target]).inverse());
  out.verdict = decide_verdict(g, gog_predicates(g, cap));
  return out;
}

}  // namespace csakit
