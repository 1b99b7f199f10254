#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "csakit/amalgam.hpp"
#include "csakit/wpengine.hpp"
#include "csakit/word.hpp"

namespace csakit::cli {

// A word as written: generator names with exponents, resolved against a group on use.
struct SymbolicWord {
  std::vector<std::pair<std::string, long>> factors;
  std::size_t line = 0;
  std::size_t column = 0;
};

struct SourceRelation {
  SymbolicWord lhs;
  std::optional<SymbolicWord> rhs;  // lhs = rhs
};

// Right-hand side of a `group` statement before resolution.
struct GroupExpr {
  enum class Kind { Presentation, Hnn, Amalgam, FreeByCyclic, Alias };
  Kind kind = Kind::Presentation;
  std::vector<std::string> generators;
  std::vector<SourceRelation> relations;
  std::string base;    // Hnn: group; Alias: target
  std::string left;    // Amalgam
  std::string right;
  std::string sub_a;   // Hnn and Amalgam
  std::string sub_b;
  std::vector<std::pair<SymbolicWord, SymbolicWord>> via;  // Hnn only
};

struct GogVertexDecl {
  std::string name;
  std::string group;  // group name, or empty when inline generators are given
  std::vector<std::string> inline_generators;
};

struct GogEdgeDecl {
  std::string name;
  std::string source;
  std::string target;
  std::vector<std::pair<SymbolicWord, SymbolicWord>> via;
};

// A resolved group: the host spec, display names for every host letter, and the presentation it
// was written as.
struct GroupEntry {
  std::string name;
  GroupExpr expr;
  GroupSpec spec;
  std::vector<std::string> names;   // one per host letter
  Presentation presentation;        // as written, over its own generator names
};

struct SubgroupEntry {
  std::string name;
  std::vector<SymbolicWord> generators;
};

struct GogEntry {
  std::string name;
  std::vector<GogVertexDecl> vertices;
  std::vector<GogEdgeDecl> edges;
  GraphOfGroups graph;
};

class Document {
 public:
  const GroupEntry& group(std::string_view name) const;
  const SubgroupEntry& subgroup(std::string_view name) const;
  const GogEntry& gog(std::string_view name) const;
  bool has_group(std::string_view name) const;

  const std::vector<GroupEntry>& groups() const { return groups_; }
  const std::vector<SubgroupEntry>& subgroups() const { return subgroups_; }
  const std::vector<GogEntry>& gogs() const { return gogs_; }

  // Canonical text; parse(print()) prints identically.
  std::string print() const;

 private:
  friend class Parser;
  std::vector<GroupEntry> groups_;
  std::vector<SubgroupEntry> subgroups_;
  std::vector<GogEntry> gogs_;
};

// ParseError with line and column on syntax errors; MalformedInput on unknown names, arity
// mismatches and presentations outside the supported classes.
Document parse(std::string_view text);

// A bare group expression such as "< x, y | x^2 >" or "fbc()", resolved against `context`.
GroupEntry parse_group_expression(std::string_view text, const Document& context = {});

// Words over the given names, e.g. "t^-1 x t" or "1".
Word parse_word(std::string_view text, const std::vector<std::string>& names);
// Comma-separated words.
std::vector<Word> parse_word_list(std::string_view text, const std::vector<std::string>& names);

Word resolve(const SymbolicWord& w, const std::vector<std::string>& names);

}  // namespace csakit::cli
