#include "csakit/cli/parser.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "csakit/errors.hpp"

namespace csakit::cli {

namespace {

struct Token {
  enum class Kind { Ident, Int, Punct, End };
  Kind kind = Kind::End;
  std::string text;
  long value = 0;
  std::size_t line = 1;
  std::size_t column = 1;
};

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.column = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      t.kind = Token::Kind::Ident;
      t.text = std::string(src.substr(i, j - i));
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c)) ||
               (c == '-' && i + 1 < src.size() && std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
      std::size_t j = i + 1;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      t.kind = Token::Kind::Int;
      t.text = std::string(src.substr(i, j - i));
      if (j - i > 10) throw ParseError("integer too large", line, col);
      t.value = std::stol(t.text);
      advance(j - i);
    } else if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
      t.kind = Token::Kind::Punct;
      t.text = "->";
      advance(2);
    } else if (std::string_view("<>|,=;(){}^~:").find(c) != std::string_view::npos) {
      t.kind = Token::Kind::Punct;
      t.text = std::string(1, c);
      advance(1);
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.line = line;
  end.column = col;
  out.push_back(end);
  return out;
}

std::string describe(const Token& t) {
  switch (t.kind) {
    case Token::Kind::End: return "end of input";
    case Token::Kind::Int: return "integer " + t.text;
    default: return "'" + t.text + "'";
  }
}

// Symbolic free reduction: adjacent equal names merge, zero exponents drop.
std::vector<std::pair<std::string, long>> merged(const SymbolicWord& w) {
  std::vector<std::pair<std::string, long>> out;
  for (const auto& [name, e] : w.factors) {
    if (!out.empty() && out.back().first == name) {
      out.back().second += e;
      if (out.back().second == 0) out.pop_back();
    } else if (e != 0) {
      out.emplace_back(name, e);
    }
  }
  return out;
}

std::string print_word(const SymbolicWord& w) {
  const auto f = merged(w);
  if (f.empty()) return "1";
  std::string s;
  for (const auto& [name, e] : f) {
    if (!s.empty()) s += ' ';
    s += name;
    if (e != 1) s += "^" + std::to_string(e);
  }
  return s;
}

std::string join(const std::vector<std::string>& v, const char* sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
  return s;
}

std::string print_expr(const GroupExpr& e) {
  switch (e.kind) {
    case GroupExpr::Kind::Presentation: {
      std::string s = "< " + join(e.generators, ", ");
      if (!e.relations.empty()) {
        std::vector<std::string> rels;
        for (const SourceRelation& r : e.relations)
          rels.push_back(print_word(r.lhs) + (r.rhs ? " = " + print_word(*r.rhs) : ""));
        s += " | " + join(rels, ", ");
      }
      return s + " >";
    }
    case GroupExpr::Kind::Hnn: {
      std::string s = "hnn(" + e.base + "; " + e.sub_a + " -> " + e.sub_b;
      if (!e.via.empty()) {
        std::vector<std::string> pairs;
        for (const auto& [a, b] : e.via) pairs.push_back(print_word(a) + " -> " + print_word(b));
        s += " via " + join(pairs, ", ");
      }
      return s + ")";
    }
    case GroupExpr::Kind::Amalgam:
      return "amalgam(" + e.left + ", " + e.right + "; " + e.sub_a + " ~ " + e.sub_b + ")";
    case GroupExpr::Kind::FreeByCyclic: return "fbc()";
    case GroupExpr::Kind::Alias: return e.base;
  }
  return "";
}

std::string position(const SymbolicWord& w) {
  return std::to_string(w.line) + ":" + std::to_string(w.column);
}

bool is_free_spec(const GroupSpec& g) { return std::holds_alternative<FreeGroupSpec>(g); }

std::optional<BaseSpec> as_base(const GroupSpec& g) {
  if (const auto* f = std::get_if<FreeGroupSpec>(&g)) return BaseSpec{*f};
  if (const auto* c = std::get_if<CyclicFreeProductSpec>(&g)) return BaseSpec{*c};
  return std::nullopt;
}

// Free, free product of cyclics, or HNN with a free or cyclic-product base and stable letter
// preferably named t, then s, then any other generator from the last one backwards.
void classify_presentation(GroupEntry& entry) {
  const std::vector<std::string>& gens = entry.presentation.generator_names;
  std::vector<Word> rels;
  for (const Word& r : entry.presentation.relators) {
    const Word c = cyclic_reduce(r).core;
    if (!c.empty()) rels.push_back(c);
  }
  const std::size_t n = gens.size();

  // Relators x^k with each generator at most once.
  auto cyclic_orders = [](const std::vector<Word>& rs, std::size_t rank)
      -> std::optional<std::vector<unsigned long>> {
    std::vector<unsigned long> orders(rank, 0);
    for (const Word& r : rs) {
      const Generator g = r[0].generator();
      for (Letter l : r.letters())
        if (l.generator() != g) return std::nullopt;
      if (orders[g] != 0) return std::nullopt;
      orders[g] = r.length();
    }
    return orders;
  };

  if (rels.empty()) {
    entry.spec = FreeGroupSpec{n};
    entry.names = gens;
    return;
  }
  if (auto orders = cyclic_orders(rels, n)) {
    entry.spec = CyclicFreeProductSpec{*orders};
    entry.names = gens;
    return;
  }

  std::vector<std::size_t> candidates;
  for (const char* pref : {"t", "s"}) {
    auto it = std::find(gens.begin(), gens.end(), pref);
    if (it != gens.end()) candidates.push_back(static_cast<std::size_t>(it - gens.begin()));
  }
  for (std::size_t i = n; i-- > 0;)
    if (std::find(candidates.begin(), candidates.end(), i) == candidates.end()) candidates.push_back(i);

  for (std::size_t ti : candidates) {
    // Host order: base generators as written, stable letter last.
    std::vector<Word> to_host(n);
    std::vector<std::string> names;
    Generator next = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == ti) continue;
      to_host[i] = Word::generator(next++);
      names.push_back(gens[i]);
    }
    const Generator t = next;
    to_host[ti] = Word::generator(t);
    names.push_back(gens[ti]);

    std::vector<Word> base_rels, a, b;
    bool ok = true;
    for (const Word& r0 : rels) {
      const Word r = r0.substitute(to_host);
      std::vector<std::size_t> pos;
      for (std::size_t i = 0; i < r.length(); ++i)
        if (r[i].generator() == t) pos.push_back(i);
      if (pos.empty()) {
        base_rels.push_back(r);
        continue;
      }
      if (pos.size() != 2 || r[pos[0]].inverted() == r[pos[1]].inverted()) {
        ok = false;
        break;
      }
      const std::size_t start = r[pos[0]].inverted() ? pos[0] : pos[1];
      const Word rot = rotate(r, start);  // t^-1 u t w
      std::size_t second = 1;
      while (rot[second].generator() != t) ++second;
      a.push_back(rot.subword(1, second - 1));
      b.push_back(rot.subword(second + 1, rot.length()).inverse());
    }
    if (!ok) continue;
    std::optional<BaseSpec> base;
    if (base_rels.empty()) {
      base = FreeGroupSpec{n - 1};
    } else if (auto orders = cyclic_orders(base_rels, n - 1)) {
      base = CyclicFreeProductSpec{*orders};
    }
    if (!base) continue;
    try {
      entry.spec = HnnPresentation(*base, a, b);
    } catch (const InvalidArgument&) {
      continue;
    }
    entry.names = std::move(names);
    return;
  }
  throw MalformedInput("presentation of " + entry.name +
                       " is not free, a free product of cyclics, or an HNN extension of one");
}

}  // namespace

Word resolve(const SymbolicWord& w, const std::vector<std::string>& names) {
  Word out;
  for (const auto& [name, e] : w.factors) {
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw MalformedInput("unknown generator '" + name + "' at " + position(w));
    out *= Word::generator(static_cast<Generator>(it - names.begin())).pow(e);
  }
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : tokens_(lex(text)) {}

  Document document() {
    Document doc;
    while (!at_end()) {
      const Token& kw = expect_ident();
      if (kw.text == "group") {
        const std::string name = expect_ident().text;
        expect("=");
        GroupExpr e = group_expr();
        accept(";");
        if (doc.has_group(name)) throw MalformedInput("group " + name + " defined twice");
        doc.groups_.push_back(resolve_group(name, std::move(e), doc));
      } else if (kw.text == "sub") {
        SubgroupEntry s;
        s.name = expect_ident().text;
        expect("=");
        expect("{");
        if (!accept("}")) {
          do s.generators.push_back(word()); while (accept(","));
          expect("}");
        }
        accept(";");
        doc.subgroups_.push_back(std::move(s));
      } else if (kw.text == "gog") {
        doc.gogs_.push_back(gog(doc));
      } else {
        fail("expected 'group', 'sub' or 'gog'", kw);
      }
    }
    return doc;
  }

  GroupExpr group_expr() {
    GroupExpr e;
    if (accept("<")) {
      e.kind = GroupExpr::Kind::Presentation;
      do e.generators.push_back(expect_ident().text); while (accept(","));
      if (accept("|")) {
        do {
          SourceRelation r{word(), std::nullopt};
          if (accept("=")) r.rhs = word();
          e.relations.push_back(std::move(r));
        } while (accept(","));
      }
      expect(">");
      return e;
    }
    const Token& head = expect_ident();
    if (head.text == "hnn" && accept("(")) {
      e.kind = GroupExpr::Kind::Hnn;
      e.base = expect_ident().text;
      expect(";");
      e.sub_a = expect_ident().text;
      expect("->");
      e.sub_b = expect_ident().text;
      if (peek().kind == Token::Kind::Ident && peek().text == "via") {
        ++pos_;
        do {
          SymbolicWord a = word();
          expect("->");
          e.via.emplace_back(std::move(a), word());
        } while (accept(","));
      }
      expect(")");
      return e;
    }
    if (head.text == "amalgam" && accept("(")) {
      e.kind = GroupExpr::Kind::Amalgam;
      e.left = expect_ident().text;
      expect(",");
      e.right = expect_ident().text;
      expect(";");
      e.sub_a = expect_ident().text;
      expect("~");
      e.sub_b = expect_ident().text;
      expect(")");
      return e;
    }
    if (head.text == "fbc" && accept("(")) {
      expect(")");
      e.kind = GroupExpr::Kind::FreeByCyclic;
      return e;
    }
    e.kind = GroupExpr::Kind::Alias;
    e.base = head.text;
    return e;
  }

  SymbolicWord word() {
    SymbolicWord w;
    w.line = peek().line;
    w.column = peek().column;
    bool any = false;
    for (;;) {
      const Token& t = peek();
      if (t.kind == Token::Kind::Int && t.value == 1 && t.text == "1") {
        ++pos_;
        any = true;
        continue;
      }
      if (t.kind != Token::Kind::Ident) break;
      ++pos_;
      long e = 1;
      if (accept("^")) {
        const Token& n = peek();
        if (n.kind != Token::Kind::Int) fail("expected an integer exponent", n);
        ++pos_;
        e = n.value;
      }
      w.factors.emplace_back(t.text, e);
      any = true;
    }
    if (!any) fail("expected a word", peek());
    return w;
  }

  bool at_end() const { return tokens_[pos_].kind == Token::Kind::End; }
  const Token& peek() const { return tokens_[pos_]; }

  void expect_end() {
    if (!at_end()) fail("unexpected " + describe(peek()), peek());
  }

  bool accept(const char* punct) {
    if (peek().kind == Token::Kind::Punct && peek().text == punct) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(const char* punct) {
    if (!accept(punct)) fail(std::string("expected '") + punct + "', found " + describe(peek()), peek());
  }

  const Token& expect_ident() {
    if (peek().kind != Token::Kind::Ident) fail("expected a name, found " + describe(peek()), peek());
    return tokens_[pos_++];
  }

  [[noreturn]] static void fail(const std::string& msg, const Token& at) {
    throw ParseError(msg, at.line, at.column);
  }

  static GroupEntry resolve_group(const std::string& name, GroupExpr e, const Document& doc);

 private:
  GogEntry gog(const Document& doc);

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

GroupEntry Parser::resolve_group(const std::string& name, GroupExpr e, const Document& doc) {
  GroupEntry entry;
  entry.name = name;
  switch (e.kind) {
    case GroupExpr::Kind::Presentation: {
      std::vector<std::string> sorted = e.generators;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw MalformedInput("repeated generator name in " + name);
      entry.presentation.generator_names = e.generators;
      for (const SourceRelation& r : e.relations) {
        Word w = resolve(r.lhs, e.generators);
        if (r.rhs) w *= resolve(*r.rhs, e.generators).inverse();
        entry.presentation.relators.push_back(std::move(w));
      }
      entry.expr = std::move(e);
      classify_presentation(entry);
      return entry;
    }
    case GroupExpr::Kind::FreeByCyclic: {
      entry.spec = FreeByCyclicSpec{};
      entry.names = {"x", "y", "d"};
      entry.presentation.generator_names = {"x", "y"};
      const Word x = Word::generator(0), y = Word::generator(1);
      entry.presentation.relators = {commutator(commutator(x, y), y)};
      entry.expr = std::move(e);
      return entry;
    }
    case GroupExpr::Kind::Alias: {
      GroupEntry copy = doc.group(e.base);
      copy.name = name;
      copy.expr = std::move(e);
      return copy;
    }
    case GroupExpr::Kind::Hnn: {
      const GroupEntry& base = doc.group(e.base);
      const auto spec = as_base(base.spec);
      if (!spec) throw MalformedInput("hnn base " + e.base + " must be free or a free product of cyclics");
      const SubgroupEntry& sa = doc.subgroup(e.sub_a);
      const SubgroupEntry& sb = doc.subgroup(e.sub_b);
      std::vector<Word> a, b;
      if (e.via.empty()) {
        for (const SymbolicWord& w : sa.generators) a.push_back(resolve(w, base.names));
        for (const SymbolicWord& w : sb.generators) b.push_back(resolve(w, base.names));
        if (a.size() != b.size())
          throw MalformedInput("hnn(" + e.base + "; " + e.sub_a + " -> " + e.sub_b +
                               "): subgroups list different numbers of generators");
      } else {
        for (const auto& [x, y] : e.via) {
          a.push_back(resolve(x, base.names));
          b.push_back(resolve(y, base.names));
        }
        if (is_free_spec(base.spec)) {
          std::vector<Word> ga, gb;
          for (const SymbolicWord& w : sa.generators) ga.push_back(resolve(w, base.names));
          for (const SymbolicWord& w : sb.generators) gb.push_back(resolve(w, base.names));
          const CoreGraph fa = fold(ga, base.names.size());
          const CoreGraph fb = fold(gb, base.names.size());
          const CoreGraph va = fold(a, base.names.size());
          const CoreGraph vb = fold(b, base.names.size());
          if (!fa.same_subgroup(va) || !fb.same_subgroup(vb))
            throw MalformedInput("hnn via-words must generate " + e.sub_a + " and " + e.sub_b);
        }
      }
      try {
        entry.spec = HnnPresentation(*spec, a, b);
      } catch (const InvalidArgument& err) {
        throw MalformedInput(std::string("hnn: ") + err.what());
      }
      entry.names = base.names;
      std::string t = "t";
      for (int k = 1; std::find(entry.names.begin(), entry.names.end(), t) != entry.names.end(); ++k)
        t = "t" + std::to_string(k);
      entry.names.push_back(t);
      entry.presentation.generator_names = entry.names;
      entry.presentation.relators = base.presentation.relators;
      const Word tw = Word::generator(static_cast<Generator>(base.names.size()));
      for (std::size_t i = 0; i < a.size(); ++i)
        entry.presentation.relators.push_back(tw.inverse() * a[i] * tw * b[i].inverse());
      entry.expr = std::move(e);
      return entry;
    }
    case GroupExpr::Kind::Amalgam: {
      const GroupEntry& l = doc.group(e.left);
      const GroupEntry& r = doc.group(e.right);
      const auto ls = as_base(l.spec);
      const auto rs = as_base(r.spec);
      if (!ls || !rs) throw MalformedInput("amalgam factors must be free or free products of cyclics");
      for (const std::string& n : r.names)
        if (std::find(l.names.begin(), l.names.end(), n) != l.names.end())
          throw MalformedInput("amalgam factors share the generator name '" + n + "'");
      std::vector<Word> a, b;
      for (const SymbolicWord& w : doc.subgroup(e.sub_a).generators) a.push_back(resolve(w, l.names));
      for (const SymbolicWord& w : doc.subgroup(e.sub_b).generators) b.push_back(resolve(w, r.names));
      try {
        entry.spec = AmalgamPresentation(*ls, *rs, a, b);
      } catch (const InvalidArgument& err) {
        throw MalformedInput(std::string("amalgam: ") + err.what());
      }
      entry.names = l.names;
      entry.names.insert(entry.names.end(), r.names.begin(), r.names.end());
      entry.presentation.generator_names = entry.names;
      const Generator shift = static_cast<Generator>(l.names.size());
      entry.presentation.relators = l.presentation.relators;
      for (const Word& w : r.presentation.relators) entry.presentation.relators.push_back(w.shifted(shift));
      for (std::size_t i = 0; i < a.size(); ++i)
        entry.presentation.relators.push_back(a[i] * b[i].shifted(shift).inverse());
      entry.expr = std::move(e);
      return entry;
    }
  }
  return entry;
}

GogEntry Parser::gog(const Document& doc) {
  const std::string name = expect_ident().text;
  expect("{");
  std::vector<GogVertexDecl> vdecls;
  std::vector<GogEdgeDecl> edecls;
  while (!accept("}")) {
    const Token& kw = expect_ident();
    if (kw.text == "vertex") {
      GogVertexDecl v;
      v.name = expect_ident().text;
      expect("=");
      if (accept("<")) {
        do v.inline_generators.push_back(expect_ident().text); while (accept(","));
        expect(">");
      } else {
        v.group = expect_ident().text;
      }
      vdecls.push_back(std::move(v));
    } else if (kw.text == "edge") {
      GogEdgeDecl e;
      e.name = expect_ident().text;
      expect(":");
      e.source = expect_ident().text;
      expect("->");
      e.target = expect_ident().text;
      const Token& via = expect_ident();
      if (via.text != "via") fail("expected 'via'", via);
      do {
        SymbolicWord a = word();
        expect("->");
        e.via.emplace_back(std::move(a), word());
      } while (accept(","));
      edecls.push_back(std::move(e));
    } else {
      fail("expected 'vertex' or 'edge'", kw);
    }
    expect(";");
  }
  accept(";");

  std::vector<GogVertex> vertices;
  for (const GogVertexDecl& v : vdecls) {
    for (const GogVertex& seen : vertices)
      if (seen.name == v.name) throw MalformedInput("vertex " + v.name + " declared twice in " + name);
    if (v.group.empty()) {
      vertices.push_back({v.name, FreeGroupSpec{v.inline_generators.size()}, v.inline_generators});
      continue;
    }
    const GroupEntry& g = doc.group(v.group);
    const auto spec = as_base(g.spec);
    if (!spec) throw MalformedInput("vertex group " + v.group + " must be free or a free product of cyclics");
    vertices.push_back({v.name, *spec, g.names});
  }
  auto vertex_index = [&](const std::string& n) {
    for (std::size_t i = 0; i < vertices.size(); ++i)
      if (vertices[i].name == n) return i;
    throw MalformedInput("unknown vertex " + n + " in " + name);
  };
  std::vector<GogEdge> edges;
  for (const GogEdgeDecl& e : edecls) {
    GogEdge out{e.name, vertex_index(e.source), vertex_index(e.target), {}, {}};
    for (const auto& [a, b] : e.via) {
      out.subgroup.push_back(resolve(a, vertices[out.source].generator_names));
      out.image.push_back(resolve(b, vertices[out.target].generator_names));
    }
    edges.push_back(std::move(out));
  }
  try {
    return GogEntry{name, std::move(vdecls), std::move(edecls),
                    GraphOfGroups(std::move(vertices), std::move(edges))};
  } catch (const InvalidArgument& err) {
    throw MalformedInput("gog " + name + ": " + err.what());
  }
}

const GroupEntry& Document::group(std::string_view name) const {
  for (const GroupEntry& g : groups_)
    if (g.name == name) return g;
  throw MalformedInput("unknown group " + std::string(name));
}

bool Document::has_group(std::string_view name) const {
  return std::any_of(groups_.begin(), groups_.end(), [&](const GroupEntry& g) { return g.name == name; });
}

const SubgroupEntry& Document::subgroup(std::string_view name) const {
  for (const SubgroupEntry& s : subgroups_)
    if (s.name == name) return s;
  throw MalformedInput("unknown subgroup " + std::string(name));
}

const GogEntry& Document::gog(std::string_view name) const {
  for (const GogEntry& g : gogs_)
    if (g.name == name) return g;
  throw MalformedInput("unknown graph of groups " + std::string(name));
}

std::string Document::print() const {
  std::ostringstream s;
  for (const SubgroupEntry& sub : subgroups_) {
    std::vector<std::string> ws;
    for (const SymbolicWord& w : sub.generators) ws.push_back(print_word(w));
    s << "sub " << sub.name << " = { " << join(ws, ", ") << (ws.empty() ? "}" : " }") << "\n";
  }
  for (const GroupEntry& g : groups_) s << "group " << g.name << " = " << print_expr(g.expr) << "\n";
  for (const GogEntry& g : gogs_) {
    s << "gog " << g.name << " {\n";
    for (const GogVertexDecl& v : g.vertices) {
      s << "  vertex " << v.name << " = ";
      if (v.group.empty())
        s << "< " << join(v.inline_generators, ", ") << " >";
      else
        s << v.group;
      s << ";\n";
    }
    for (const GogEdgeDecl& e : g.edges) {
      std::vector<std::string> pairs;
      for (const auto& [a, b] : e.via) pairs.push_back(print_word(a) + " -> " + print_word(b));
      s << "  edge " << e.name << " : " << e.source << " -> " << e.target << " via " << join(pairs, ", ")
        << ";\n";
    }
    s << "}\n";
  }
  return s.str();
}

Document parse(std::string_view text) { return Parser(text).document(); }

GroupEntry parse_group_expression(std::string_view text, const Document& context) {
  Parser p(text);
  GroupExpr e = p.group_expr();
  p.expect_end();
  return Parser::resolve_group("<inline>", std::move(e), context);
}

Word parse_word(std::string_view text, const std::vector<std::string>& names) {
  Parser p(text);
  SymbolicWord w = p.word();
  p.expect_end();
  return resolve(w, names);
}

std::vector<Word> parse_word_list(std::string_view text, const std::vector<std::string>& names) {
  Parser p(text);
  std::vector<Word> out;
  if (p.at_end()) return out;
  do out.push_back(resolve(p.word(), names)); while (p.accept(","));
  p.expect_end();
  return out;
}

}  // namespace csakit::cli
