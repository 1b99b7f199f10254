#include "csakit/freegroup.hpp"

#include <algorithm>
#include <deque>
#include <limits>

#include "csakit/errors.hpp"

namespace csakit {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// Working edge during folding. The weight is a word over the abstract generators of the input
// tuple; the weight of a basepoint loop is the preimage of its label.
struct WorkEdge {
  std::size_t source;
  std::size_t target;
  Generator label;
  Word weight;
  bool alive = true;
};

struct Dart {
  std::size_t edge;
  bool forward;
};

std::size_t dart_end(const WorkEdge& e, bool forward) { return forward ? e.target : e.source; }

Word dart_weight(const WorkEdge& e, bool forward) { return forward ? e.weight : e.weight.inverse(); }

// Finds two darts at one vertex carrying the same letter.
std::optional<std::pair<Dart, Dart>> find_collision(const std::vector<WorkEdge>& edges,
                                                     std::size_t vertex_slots,
                                                     std::size_t ambient_rank) {
  std::vector<std::vector<std::ptrdiff_t>> seen(vertex_slots,
                                                std::vector<std::ptrdiff_t>(2 * ambient_rank, -1));
  std::vector<std::vector<bool>> seen_forward(vertex_slots, std::vector<bool>(2 * ambient_rank));
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const WorkEdge& e = edges[i];
    if (!e.alive) continue;
    for (bool forward : {true, false}) {
      const std::size_t at = forward ? e.source : e.target;
      const std::uint32_t code = Letter(e.label, !forward).code();
      auto& slot = seen[at][code];
      if (slot >= 0)
        return std::make_pair(Dart{static_cast<std::size_t>(slot), seen_forward[at][code]},
                              Dart{i, forward});
      slot = static_cast<std::ptrdiff_t>(i);
      seen_forward[at][code] = forward;
    }
  }
  return std::nullopt;
}

}  // namespace

CoreGraph::CoreGraph(std::size_t ambient_rank)
    : ambient_rank_(ambient_rank),
      darts_(1, std::vector<std::ptrdiff_t>(2 * ambient_rank, -1)),
      tree_paths_(1) {}

std::optional<std::size_t> CoreGraph::step(std::size_t v, Letter l) const {
  if (l.generator() >= ambient_rank_) return std::nullopt;
  const std::ptrdiff_t e = darts_[v][l.code()];
  if (e < 0) return std::nullopt;
  const Edge& edge = edges_[static_cast<std::size_t>(e)];
  return l.inverted() ? edge.source : edge.target;
}

std::optional<std::size_t> CoreGraph::read(std::size_t v, const Word& w) const {
  for (Letter l : w.letters()) {
    const auto next = step(v, l);
    if (!next) return std::nullopt;
    v = *next;
  }
  return v;
}

bool CoreGraph::accepts(const Word& w) const {
  const auto end = read(basepoint(), w);
  return end && *end == basepoint();
}

std::optional<Word> CoreGraph::express(const Word& w) const {
  std::size_t v = basepoint();
  Word result;
  for (Letter l : w.letters()) {
    if (l.generator() >= ambient_rank_) return std::nullopt;
    const std::ptrdiff_t e = darts_[v][l.code()];
    if (e < 0) return std::nullopt;
    const auto idx = static_cast<std::size_t>(e);
    if (l.inverted()) {
      result *= edge_weights_[idx].inverse();
      v = edges_[idx].source;
    } else {
      result *= edge_weights_[idx];
      v = edges_[idx].target;
    }
  }
  if (v != basepoint()) return std::nullopt;
  return result;
}

std::vector<Word> CoreGraph::basis() const {
  std::vector<Word> out;
  for (const Edge& e : edges_) {
    const Word through = path_to(e.source) * Word{Letter(e.label, false)};
    if (through == path_to(e.target)) continue;  // tree edge
    out.push_back(through * path_to(e.target).inverse());
  }
  return out;
}

bool CoreGraph::same_subgroup(const CoreGraph& other) const {
  return ambient_rank_ == other.ambient_rank_ && vertex_count_ == other.vertex_count_ &&
         edges_ == other.edges_;
}

CoreGraph fold(std::span<const Word> generators, std::size_t ambient_rank) {
  std::vector<WorkEdge> edges;
  std::size_t slots = 1;
  for (std::size_t i = 0; i < generators.size(); ++i) {
    const Word& g = generators[i];
    if (g.min_rank() > ambient_rank)
      throw MalformedInput("subgroup generator uses a letter outside the ambient rank");
    std::size_t prev = 0;
    for (std::size_t j = 0; j < g.length(); ++j) {
      const std::size_t next = (j + 1 == g.length()) ? 0 : slots++;
      const Letter l = g[j];
      Word weight;
      if (j == 0) weight = Word{Letter(static_cast<Generator>(i), l.inverted())};
      if (l.inverted())
        edges.push_back({next, prev, l.generator(), weight});
      else
        edges.push_back({prev, next, l.generator(), weight});
      prev = next;
    }
  }

  while (auto collision = find_collision(edges, slots, ambient_rank)) {
    auto [d1, d2] = *collision;
    std::size_t w1 = dart_end(edges[d1.edge], d1.forward);
    std::size_t w2 = dart_end(edges[d2.edge], d2.forward);
    if (w1 != w2) {
      if (w2 == 0) {
        std::swap(d1, d2);
        std::swap(w1, w2);
      }
      // Re-gauge the vertex being merged so that both darts carry the same weight, then
      // identify it with the surviving endpoint. Loop weights at the basepoint are unchanged.
      const Word c =
          dart_weight(edges[d2.edge], d2.forward).inverse() * dart_weight(edges[d1.edge], d1.forward);
      const std::size_t x = w2;
      const std::size_t y = w1;
      for (WorkEdge& e : edges) {
        if (!e.alive) continue;
        if (e.source == x && e.target == x)
          e.weight = c.inverse() * e.weight * c;
        else if (e.target == x)
          e.weight = e.weight * c;
        else if (e.source == x)
          e.weight = c.inverse() * e.weight;
        if (e.source == x) e.source = y;
        if (e.target == x) e.target = y;
      }
    }
    edges[d2.edge].alive = false;
  }

  // Trim hanging trees.
  std::vector<std::size_t> degree(slots, 0);
  auto recount = [&] {
    std::fill(degree.begin(), degree.end(), 0);
    for (const WorkEdge& e : edges)
      if (e.alive) {
        ++degree[e.source];
        ++degree[e.target];
      }
  };
  for (bool changed = true; changed;) {
    changed = false;
    recount();
    for (WorkEdge& e : edges) {
      if (!e.alive) continue;
      if ((e.source != 0 && degree[e.source] == 1) || (e.target != 0 && degree[e.target] == 1)) {
        e.alive = false;
        changed = true;
      }
    }
  }

  // Canonical breadth-first numbering.
  std::vector<std::vector<std::ptrdiff_t>> work_darts(slots,
                                                      std::vector<std::ptrdiff_t>(2 * ambient_rank, -1));
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (!edges[i].alive) continue;
    work_darts[edges[i].source][Letter(edges[i].label, false).code()] = static_cast<std::ptrdiff_t>(i);
    work_darts[edges[i].target][Letter(edges[i].label, true).code()] = static_cast<std::ptrdiff_t>(i);
  }
  std::vector<std::size_t> number(slots, kNone);
  std::vector<std::size_t> order{0};
  std::vector<Word> paths{Word{}};
  number[0] = 0;
  for (std::size_t head = 0; head < order.size(); ++head) {
    const std::size_t v = order[head];
    for (std::uint32_t code = 0; code < 2 * ambient_rank; ++code) {
      const std::ptrdiff_t e = work_darts[v][code];
      if (e < 0) continue;
      const WorkEdge& edge = edges[static_cast<std::size_t>(e)];
      const bool forward = (code & 1u) == 0;
      const std::size_t u = dart_end(edge, forward);
      if (number[u] != kNone) continue;
      number[u] = order.size();
      order.push_back(u);
      paths.push_back(paths[number[v]] * Word{Letter::from_code(code)});
    }
  }

  CoreGraph graph(ambient_rank);
  graph.vertex_count_ = order.size();
  graph.generators_.assign(generators.begin(), generators.end());
  graph.tree_paths_ = std::move(paths);
  std::vector<std::pair<CoreGraph::Edge, Word>> kept;
  for (const WorkEdge& e : edges)
    if (e.alive) kept.push_back({{number[e.source], number[e.target], e.label}, e.weight});
  std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
    return std::tie(a.first.source, a.first.label, a.first.target) <
           std::tie(b.first.source, b.first.label, b.first.target);
  });
  graph.darts_.assign(graph.vertex_count_, std::vector<std::ptrdiff_t>(2 * ambient_rank, -1));
  for (std::size_t i = 0; i < kept.size(); ++i) {
    const auto& e = kept[i].first;
    graph.edges_.push_back(e);
    graph.edge_weights_.push_back(kept[i].second);
    graph.darts_[e.source][Letter(e.label, false).code()] = static_cast<std::ptrdiff_t>(i);
    graph.darts_[e.target][Letter(e.label, true).code()] = static_cast<std::ptrdiff_t>(i);
  }
  return graph;
}

bool member(const Word& h, const CoreGraph& subgroup) { return subgroup.accepts(h); }

namespace {

// Fiber product of two folded graphs. Components are visited in order of their least vertex
// pair, and inside a component breadth-first with letters in Letter order.
class FiberProduct {
 public:
  FiberProduct(const CoreGraph& a, const CoreGraph& b) : a_(a), b_(b), nb_(b.vertex_count()) {
    rank_ = std::min(a.ambient_rank(), b.ambient_rank());
  }

  struct CycleWitness {
    std::size_t root_a;
    std::size_t root_b;
    Word cycle;  // closed reduced path at (root_a, root_b)
  };

  // First component (in the order above) containing a cycle, skipping components whose root
  // satisfies `skip`.
  template <class Skip>
  std::optional<CycleWitness> first_cycle(Skip skip) const {
    const std::size_t total = a_.vertex_count() * nb_;
    // Components are disjoint, so one slot table serves every breadth-first search.
    std::vector<std::size_t> slot(total, kNone);
    for (std::size_t root = 0; root < total; ++root) {
      if (slot[root] != kNone) continue;
      std::vector<std::size_t> component{root};
      std::vector<Word> paths{Word{}};
      slot[root] = 0;
      std::optional<Word> best;
      for (std::size_t head = 0; head < component.size(); ++head) {
        const std::size_t v = component[head];
        for (std::uint32_t code = 0; code < 2 * rank_; ++code) {
          const Letter l = Letter::from_code(code);
          const auto pa = a_.step(v / nb_, l);
          const auto pb = b_.step(v % nb_, l);
          if (!pa || !pb) continue;
          const std::size_t u = *pa * nb_ + *pb;
          if (slot[u] == kNone) {
            slot[u] = component.size();
            component.push_back(u);
            paths.push_back(paths[head] * Word{l});
            continue;
          }
          // Each undirected edge is seen from both ends. Only forward darts are considered for
          // cycles; tree edges close up trivially.
          if (l.inverted()) continue;
          Word cycle = paths[head] * Word{l} * paths[slot[u]].inverse();
          if (cycle.empty()) continue;
          if (!best || shortlex_less(cycle, *best)) best = std::move(cycle);
        }
      }
      if (best && !skip(root / nb_, root % nb_)) return CycleWitness{root / nb_, root % nb_, *best};
    }
    return std::nullopt;
  }

 private:
  const CoreGraph& a_;
  const CoreGraph& b_;
  std::size_t nb_;
  std::size_t rank_;
};

}  // namespace

ConjugateIntersectionReport conj_intersection_trivial(const CoreGraph& a, const CoreGraph& b) {
  const FiberProduct product(a, b);
  const auto found = product.first_cycle([](std::size_t, std::size_t) { return false; });
  if (!found) return {};
  const Word& alpha = a.path_to(found->root_a);
  const Word& beta = b.path_to(found->root_b);
  ConjugacyWitness w{beta * alpha.inverse(), alpha * found->cycle * alpha.inverse()};
  return {false, std::move(w)};
}

MalnormalityReport is_malnormal(const CoreGraph& h) {
  const FiberProduct product(h, h);
  // The diagonal is a single component (the graph is connected and folded); its root is (0, 0).
  const auto found = product.first_cycle([](std::size_t p, std::size_t q) { return p == q; });
  if (!found) return {};
  const Word& alpha = h.path_to(found->root_a);
  const Word& beta = h.path_to(found->root_b);
  ConjugacyWitness w{alpha * beta.inverse(), alpha * found->cycle * alpha.inverse()};
  return {false, std::move(w)};
}

CoreGraph malnormal_closure(const CoreGraph& h, std::size_t cap) {
  if (cap == 0) throw InvalidArgument("malnormal closure cap must be at least 1");
  CoreGraph current = h;
  for (std::size_t joins = 0;; ++joins) {
    const MalnormalityReport report = is_malnormal(current);
    if (report.malnormal) return current;
    if (joins == cap)
      throw CapExceeded("malnormal closure did not stabilise within " + std::to_string(cap) +
                            " joins",
                        cap);
    std::vector<Word> gens = current.basis();
    gens.push_back(report.witness->conjugator);
    current = fold(gens, h.ambient_rank());
  }
}

bool is_maximal_abelian_in_free(const Word& w) {
  if (w.empty()) throw InvalidArgument("maximal-abelian test needs a nontrivial element");
  return !is_proper_power(w);
}

bool is_normal_in(const CoreGraph& k, const CoreGraph& h) {
  const std::vector<Word> kgens = k.basis();
  for (const Word& g : h.basis())
    for (const Word& x : kgens)
      if (!k.accepts(conjugate(x, g)) || !k.accepts(conjugate(x, g.inverse()))) return false;
  return true;
}

}  // namespace csakit
