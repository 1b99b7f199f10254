#include "csakit/cli/commands.hpp"

#include <chrono>
#include <functional>
#include <map>
#include <sstream>

#include "csakit/amalgam.hpp"
#include "csakit/cli/repro.hpp"
#include "csakit/csa.hpp"
#include "csakit/errors.hpp"
#include "csakit/hnn.hpp"

namespace csakit::cli {

namespace {

using nlohmann::json;

struct Context {
  const Options& opts;
  Document doc;
  Report& report;

  const GroupEntry& group() {
    if (!group_) {
      if (opts.group.find_first_of("<(") != std::string::npos) {
        inline_ = parse_group_expression(opts.group, doc);
        group_ = &*inline_;
      } else if (!opts.group.empty()) {
        group_ = &doc.group(opts.group);
      } else if (!doc.groups().empty()) {
        group_ = &doc.groups().back();
      } else {
        throw InvalidArgument("no group given: pass --group or a presentation file");
      }
      report.group = opts.group.empty() ? group_->name : opts.group;
    }
    return *group_;
  }

  std::string fmt(const Word& w) { return format_word(w, group().names); }

  void witness(std::string role, const Word& w) { report.witnesses.push_back({std::move(role), fmt(w)}); }

  std::optional<GroupEntry> inline_;
  const GroupEntry* group_ = nullptr;
};

const HnnPresentation& need_hnn(const GroupEntry& g, const std::string& command) {
  if (const auto* h = std::get_if<HnnPresentation>(&g.spec)) return *h;
  throw InvalidArgument(command + " needs an HNN extension; " + g.name + " is " + group_kind(g.spec));
}

json tri_json(Tri t) {
  if (t == Tri::Unknown) return "unknown";
  return t == Tri::True;
}

void cmd_reduce(Context& c) {
  const GroupEntry& g = c.group();
  if (c.opts.word.empty()) throw InvalidArgument("reduce needs --word");
  const Word w = parse_word(c.opts.word, g.names);
  json& d = c.report.details;
  d["input"] = c.fmt(w);
  std::visit(
      [&](const auto& spec) {
        using T = std::decay_t<decltype(spec)>;
        if constexpr (std::is_same_v<T, FreeGroupSpec>) {
          c.report.verdict = c.fmt(w);
          d["length"] = w.length();
        } else if constexpr (std::is_same_v<T, CyclicFreeProductSpec>) {
          Word nf;
          for (const auto& [gen, e] : fpc_normal_form(w, spec.orders)) nf *= Word::generator(gen).pow(e);
          c.report.verdict = c.fmt(nf);
          d["syllables"] = fpc_normal_form(w, spec.orders).size();
        } else if constexpr (std::is_same_v<T, HnnPresentation>) {
          const TWord r = britton_reduce(w, spec);
          c.report.verdict = c.fmt(r.to_word(spec.stable_letter()));
          d["length"] = r.length();
        } else if constexpr (std::is_same_v<T, AmalgamPresentation>) {
          const AmalgamEmbedding& e = embed_in_hnn(spec);
          const bool trivial = e.is_trivial(w);
          c.report.verdict = trivial ? "1" : c.fmt(w);
          d["trivial"] = trivial;
          d["embedded_length"] = hnn_length(e.map(w), e.hnn);
        } else {
          const FcWord f = fc_normal_form(w);
          c.report.verdict = c.fmt(fc_to_word(f));
          d["fiber"] = c.fmt(f.fiber);
          d["y_power"] = f.k;
        }
      },
      g.spec);
}

struct NamedSubgroup {
  std::string name;
  std::vector<Word> generators;
  std::size_t rank;                 // ambient free rank
  std::vector<std::string> names;  // display names for the ambient letters
};

std::vector<NamedSubgroup> subgroups_for(Context& c) {
  const GroupEntry& g = c.group();
  std::vector<NamedSubgroup> out;
  if (c.opts.subs.empty()) {
    if (const auto* h = std::get_if<HnnPresentation>(&g.spec)) {
      if (!h->free_base()) throw UnsupportedBase("malnormality needs a free base");
      std::vector<std::string> base(g.names.begin(), g.names.end() - 1);
      out.push_back({"A", {h->a_generators().begin(), h->a_generators().end()}, h->base_rank(), base});
      out.push_back({"B", {h->b_generators().begin(), h->b_generators().end()}, h->base_rank(), base});
      return out;
    }
    if (const auto* a = std::get_if<AmalgamPresentation>(&g.spec)) {
      if (!a->free_factors()) throw UnsupportedBase("malnormality needs free factors");
      std::vector<std::string> left(g.names.begin(), g.names.begin() + a->left_rank());
      std::vector<std::string> right(g.names.begin() + a->left_rank(), g.names.end());
      out.push_back({"A", {a->a_generators().begin(), a->a_generators().end()}, a->left_rank(), left});
      out.push_back({"B", {a->b_generators().begin(), a->b_generators().end()}, a->right_rank(), right});
      return out;
    }
    throw InvalidArgument("pass --sub, or use an HNN extension or amalgam");
  }
  std::size_t rank = 0;
  std::vector<std::string> names;
  if (std::holds_alternative<FreeGroupSpec>(g.spec)) {
    rank = g.names.size();
    names = g.names;
  } else if (const auto* h = std::get_if<HnnPresentation>(&g.spec); h && h->free_base()) {
    rank = h->base_rank();
    names.assign(g.names.begin(), g.names.end() - 1);
  } else {
    throw UnsupportedBase("malnormality is decided in free groups and free HNN bases only");
  }
  for (const std::string& s : c.opts.subs) {
    std::vector<Word> gens;
    for (const SymbolicWord& w : c.doc.subgroup(s).generators) gens.push_back(resolve(w, names));
    out.push_back({s, gens, rank, names});
  }
  return out;
}

void cmd_check_malnormal(Context& c) {
  bool all = true;
  json subs = json::array();
  for (const NamedSubgroup& s : subgroups_for(c)) {
    const CoreGraph h = fold(s.generators, s.rank);
    const auto r = is_malnormal(h);
    json e{{"name", s.name}, {"malnormal", r.malnormal}, {"rank", h.rank()}};
    try {
      const CoreGraph closure = malnormal_closure(h, c.opts.cap);
      e["closure_rank"] = closure.rank();
      e["normal_in_closure"] = is_normal_in(h, closure);
    } catch (const CapExceeded&) {
      e["normal_in_closure"] = "unknown";
    }
    if (r.witness) {
      c.report.witnesses.push_back({s.name + ".conjugator", format_word(r.witness->conjugator, s.names)});
      c.report.witnesses.push_back({s.name + ".element", format_word(r.witness->element, s.names)});
    }
    all = all && r.malnormal;
    subs.push_back(e);
  }
  c.report.details["subgroups"] = subs;
  c.report.verdict = all ? "malnormal" : "not malnormal";
  c.report.citations = {"Def-Malnormal"};
  if (!all) c.report.exit_code = 1;
}

void report_separation(Context& c, const SeparationReport& r, const HnnPresentation& h, const char* tag) {
  std::vector<std::string> base(c.group().names.begin(), c.group().names.end() - 1);
  c.report.verdict = r.separated ? "separated" : "not separated";
  c.report.citations = {tag};
  if (r.witness) {
    c.report.witnesses.push_back({"element", format_word(r.witness->element, base)});
    c.report.witnesses.push_back({"conjugator", format_word(r.witness->conjugator, base)});
    c.report.exit_code = 1;
  }
  c.report.details["base_rank"] = h.base_rank();
}

void cmd_check_separated(Context& c) {
  const HnnPresentation& h = need_hnn(c.group(), c.opts.command);
  report_separation(c, is_separated(h), h, "Def-Separated");
}

void cmd_check_strict_separated(Context& c) {
  const HnnPresentation& h = need_hnn(c.group(), c.opts.command);
  try {
    report_separation(c, is_strictly_separated(h, c.opts.cap), h, "Def-StrictlySeparated");
    c.report.details["closure_rank"] = malnormal_closure(h.b_graph(), c.opts.cap).rank();
  } catch (const CapExceeded& e) {
    c.report.verdict = "unknown";
    c.report.citations = {"Def-StrictlySeparated"};
    c.report.details["cap"] = e.cap();
    c.report.details["reason"] = e.what();
  }
}

void cmd_classify(Context& c) {
  const GroupEntry& g = c.group();
  if (const auto* a = std::get_if<AmalgamPresentation>(&g.spec)) {
    const AmalgamVerdict v = amalgam_csa_verdict_abelian(*a);
    c.report.verdict = v.csa ? "CSA*" : "not CSA";
    c.report.citations = v.citations;
    c.report.details["prediction"] = c.report.verdict;
    if (!v.csa) c.report.exit_code = 1;
    return;
  }
  const HnnPresentation& h = need_hnn(g, c.opts.command);
  const AbelianHnnClassification k = classify_abelian_hnn(h);
  c.report.verdict = to_string(k.kind);
  c.report.citations = k.citations;
  json& d = c.report.details;
  d["prediction"] = k.predicted_csa ? "CSA*" : "not CSA";
  if (k.kind != AbelianHnnCase::TrivialAssociated) {
    std::vector<std::string> base(g.names.begin(), g.names.end() - 1);
    d["u"] = format_word(k.u, base);
    d["v"] = format_word(k.v, base);
  }
  if (k.powers) d["powers"] = {k.powers->first, k.powers->second};
  if (k.conjugator) d["conjugator"] = c.fmt(*k.conjugator);
  if (k.swapped_case) d["swapped_case"] = to_string(*k.swapped_case);
  if (k.csa_witness) {
    c.witness("a", k.csa_witness->first);
    c.witness("v", k.csa_witness->second);
  }
  if (!k.predicted_csa) c.report.exit_code = 1;
}

SearchOptions search_options(Context& c) {
  SearchOptions s;
  s.radius = c.opts.radius;
  if (!c.opts.alphabet.empty()) s.alphabet = parse_word_list(c.opts.alphabet, c.group().names);
  return s;
}

void cmd_falsify_csa(Context& c) {
  const auto r = falsify_csa(c.group().spec, search_options(c));
  c.report.details["radius"] = c.opts.radius;
  c.report.details["ball_size"] = r.ball_size;
  c.report.details["candidates"] = r.candidates;
  c.report.citations = {"Def-CSA"};
  if (r.witness) {
    c.report.verdict = "not CSA";
    c.witness("a", r.witness->a);
    c.witness("v", r.witness->v);
    c.report.exit_code = 1;
  } else {
    c.report.verdict = "no witness";
  }
}

void cmd_falsify_ct(Context& c) {
  const auto r = falsify_ct(c.group().spec, search_options(c));
  c.report.details["radius"] = c.opts.radius;
  c.report.details["ball_size"] = r.ball_size;
  c.report.details["candidates"] = r.candidates;
  c.report.citations = {"Def-CT"};
  if (r.witness) {
    c.report.verdict = "not commutative transitive";
    c.witness("a", r.witness->a);
    c.witness("b", r.witness->b);
    c.witness("c", r.witness->c);
    c.report.exit_code = 1;
  } else {
    c.report.verdict = "no witness";
  }
}

ObstacleKind obstacle_kind(const std::string& s) {
  if (s == "Dinf") return ObstacleKind::Dinf;
  if (s == "calB") return ObstacleKind::CalB;
  if (s == "B1n") return ObstacleKind::B1n;
  throw InvalidArgument("unknown obstacle '" + s + "' (expected Dinf, calB or B1n)");
}

void cmd_verify_obstacle(Context& c) {
  const GroupEntry& g = c.group();
  ObstacleWitness w;
  w.obstacle = obstacle_kind(c.opts.obstacle);
  w.n = c.opts.obstacle_n;
  w.radius = c.opts.radius;
  w.images = parse_word_list(c.opts.images, g.names);
  const ObstacleReport r = verify_obstacle(w, g.spec);
  json& d = c.report.details;
  d["obstacle"] = to_string(w.obstacle);
  d["radius"] = w.radius;
  d["relators_hold"] = r.relators_hold;
  d["normal_forms"] = r.normal_forms;
  d["pairs_checked"] = r.pairs_checked;
  if (!r.failed_relator.empty()) d["failed_relator"] = r.failed_relator;
  if (r.collision) d["collision"] = {format_word(r.collision->first), format_word(r.collision->second)};

  // Rank of the fold of the first two images, where they are words in a free group: the free
  // host itself, or the fiber F(x, d) of the free-by-cyclic group.
  if (w.obstacle == ObstacleKind::CalB) {
    std::optional<std::size_t> rank;
    if (std::holds_alternative<FreeGroupSpec>(g.spec)) {
      rank = fold(std::vector<Word>{w.images[0], w.images[1]}, g.names.size()).rank();
    } else if (std::holds_alternative<FreeByCyclicSpec>(g.spec)) {
      const FcWord p = fc_normal_form(w.images[0]);
      const FcWord q = fc_normal_form(w.images[1]);
      if (p.k == 0 && q.k == 0) rank = fold(std::vector<Word>{p.fiber, q.fiber}, 3).rank();
    }
    if (rank) d["free_rank"] = *rank;
  }
  static const std::map<ObstacleKind, std::string> tags{{ObstacleKind::Dinf, "Prop-TObstacles"},
                                                        {ObstacleKind::CalB, "Prop-OneRelNotCSA"},
                                                        {ObstacleKind::B1n, "Prop-TFObstacles"}};
  c.report.citations = {tags.at(w.obstacle)};
  c.report.verdict = r.verified ? "verified" : "not verified";
  if (!r.verified) c.report.exit_code = 1;
}

void cmd_gog_check(Context& c) {
  const GogEntry* entry = nullptr;
  if (!c.opts.gog.empty())
    entry = &c.doc.gog(c.opts.gog);
  else if (!c.doc.gogs().empty())
    entry = &c.doc.gogs().back();
  else
    throw InvalidArgument("gog-check needs a gog block");
  c.report.group = entry->name;
  const GraphOfGroups& g = entry->graph;
  const GogPredicates p = gog_predicates(g, c.opts.cap);
  json& d = c.report.details;
  d["quasi_malnormal"] = tri_json(p.quasi_malnormal);
  d["malnormal"] = tri_json(p.malnormal);
  d["separated"] = tri_json(p.separated);
  d["tree"] = g.is_tree();
  d["line"] = g.is_oriented_line();
  json edges = json::array();
  for (std::size_t i = 0; i < p.edges.size(); ++i) {
    const EdgePredicates& e = p.edges[i];
    edges.push_back({{"name", g.edges()[i].name},
                     {"source_malnormal", tri_json(e.source_malnormal)},
                     {"image_normal_in_closure", tri_json(e.image_normal_in_closure)},
                     {"image_malnormal", tri_json(e.image_malnormal)},
                     {"separated", tri_json(e.separated)}});
  }
  d["edges"] = edges;
  if (!g.is_tree()) {
    c.report.verdict = "unknown";
    d["reason"] = "not a tree; only the edge predicates are reported";
    return;
  }
  const FundamentalGroup f = fundamental_group_presentation(g, c.opts.cap);
  std::vector<std::string> rels;
  for (const Word& r : f.presentation.relators) rels.push_back(format_word(r, f.presentation.generator_names));
  d["presentation"] = {{"generators", f.presentation.generator_names}, {"relators", rels}};
  d["reason"] = f.verdict.reason;
  c.report.citations = f.verdict.citations;
  switch (f.verdict.csa) {
    case Tri::True: c.report.verdict = "CSA*"; break;
    case Tri::False:
      c.report.verdict = "not CSA";
      c.report.exit_code = 1;
      break;
    case Tri::Unknown: c.report.verdict = "unknown"; break;
  }
}

void cmd_abelianize(Context& c) {
  const GroupEntry& g = c.group();
  const Presentation& p = g.presentation;
  Word relator;
  if (!c.opts.word.empty()) {
    relator = parse_word(c.opts.word, p.generator_names);
  } else if (p.relators.size() == 1) {
    relator = p.relators[0];
  } else if (p.relators.size() > 1) {
    throw InvalidArgument("abelianize handles one-relator presentations; " + g.name + " has " +
                          std::to_string(p.relators.size()) + " relators");
  }
  const AbelianInvariants a = abelianization_one_relator(relator, p.generator_names.size());
  c.report.verdict = a.str();
  c.report.details["relator"] = format_word(relator, p.generator_names);
  c.report.details["exponent_sums"] = a.exponent_sums;
  c.report.details["free_rank"] = a.free_rank;
  c.report.details["torsion"] = a.torsion;
  c.report.citations = {"Prop-res"};
}

long need(const std::optional<long>& v, const char* flag) {
  if (!v) throw InvalidArgument(std::string("missing ") + flag);
  return *v;
}

void cmd_resp(Context& c) {
  const long m = need(c.opts.m, "--m"), n = need(c.opts.n, "--n"), p = need(c.opts.p, "--p");
  const ResidualPReport r = residually_p_obstruction(m, n, p);
  c.report.group = "B(" + std::to_string(m) + "," + std::to_string(n) + ")";
  c.report.verdict = r.obstruction ? "obstruction" : "no obstruction";
  c.report.citations = {"Prop-res"};
  c.report.details["abelianization"] = r.abelianization.str();
  c.report.details["cross_checked"] = r.cross_checked;
  if (!r.note.empty()) c.report.details["note"] = r.note;
  if (r.obstruction) c.report.exit_code = 1;
}

void cmd_power_conj(Context& c) {
  const long m = need(c.opts.m, "--m"), n = need(c.opts.n, "--n");
  const PowerConjReport r = power_conj_identity(m, n, c.opts.i);
  c.report.group = "B(" + std::to_string(m) + "," + std::to_string(n) + ")";
  c.report.verdict = r.holds ? "holds" : "fails";
  c.report.citations = {"Eq-PowerConj"};
  c.report.details["first"] = r.first;
  c.report.details["second"] = r.second;
  c.report.details["i"] = c.opts.i;
  if (!r.holds) c.report.exit_code = 1;
}

using Handler = std::function<void(Context&)>;

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> h{
      {"reduce", cmd_reduce},
      {"check-malnormal", cmd_check_malnormal},
      {"check-separated", cmd_check_separated},
      {"check-strict-separated", cmd_check_strict_separated},
      {"classify", cmd_classify},
      {"falsify-csa", cmd_falsify_csa},
      {"falsify-ct", cmd_falsify_ct},
      {"verify-obstacle", cmd_verify_obstacle},
      {"gog-check", cmd_gog_check},
      {"abelianize", cmd_abelianize},
      {"resp-obstruction", cmd_resp},
      {"power-conj", cmd_power_conj},
  };
  return h;
}

}  // namespace

const std::vector<std::string>& citation_tags() {
  static const std::vector<std::string> tags{
      "Def-CSA",          "Def-CT",           "Def-Malnormal",     "Def-Separated",
      "Def-StrictlySeparated", "Thm-SepExt",  "Thm-AbSepExt",      "Prop-AbSep",
      "Prop-ConjExt",     "Thm-AbelianIff",   "Prop-MustMax",      "Prop-TFObstacles",
      "Prop-TObstacles",  "Prop-OneRelNotCSA", "Thm-amalgprod",    "Thm-amalgiff",
      "Prop-MalInAmal",   "Thm-GraphGroups",  "Prop-TreeProdAb",   "Prop-BadTree",
      "Eq-PowerConj",     "Prop-res",         "Thm-CommTrans",
  };
  return tags;
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [k, _] : handlers()) v.push_back(k);
    v.push_back("repro");
    return v;
  }();
  return names;
}

Report run(const Options& opts) {
  const auto start = std::chrono::steady_clock::now();
  Report report;
  report.command = opts.command;
  try {
    if (opts.command == "repro") {
      report = run_repro(opts.goldens.empty() ? default_goldens_path() : opts.goldens);
    } else {
      auto it = handlers().find(opts.command);
      if (it == handlers().end()) throw InvalidArgument("unknown command '" + opts.command + "'");
      Context c{opts, parse(opts.source), report, std::nullopt, nullptr};
      it->second(c);
    }
  } catch (const std::exception& e) {
    report.verdict = "error";
    report.exit_code = 2;
    report.witnesses.clear();
    report.citations.clear();
    report.details = json{{"error", e.what()}};
  }
  if (opts.seed) report.details["seed"] = *opts.seed;
  report.timing_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

json to_json(const Report& r) {
  json w = json::array();
  for (const ReportWitness& x : r.witnesses) w.push_back({{"role", x.role}, {"word", x.word}});
  return {{"command", r.command},   {"group", r.group},         {"verdict", r.verdict},
          {"witnesses", w},         {"citations", r.citations}, {"details", r.details},
          {"timing_ms", r.timing_ms}, {"exit_code", r.exit_code}};
}

std::string to_text(const Report& r) {
  std::ostringstream s;
  s << r.command;
  if (!r.group.empty()) s << " [" << r.group << "]";
  s << ": " << r.verdict << "\n";
  for (const ReportWitness& w : r.witnesses) s << "  " << w.role << " = " << w.word << "\n";
  if (!r.citations.empty()) {
    s << "  citations:";
    for (const std::string& c : r.citations) s << " " << c;
    s << "\n";
  }
  for (const auto& [k, v] : r.details.items())
    s << "  " << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
  return s.str();
}

}  // namespace csakit::cli
