#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "csakit/cli/parser.hpp"
#include "csakit/freegroup.hpp"

namespace csakit::cli {

struct Options {
  std::string command;
  std::string source;       // presentation text
  std::string source_name;  // echoed in reports
  // A group name from the source, or an inline expression such as "< x, y | x^2 >". Empty
  // selects the last group in the source.
  std::string group;
  std::vector<std::string> subs;
  std::string word;
  std::string alphabet;  // comma-separated host words
  std::string obstacle;  // Dinf, calB or B1n
  std::string images;
  long obstacle_n = 2;
  std::string gog;
  std::optional<long> m;
  std::optional<long> n;
  std::optional<long> p;
  unsigned i = 1;
  std::size_t radius = 3;
  std::size_t cap = kDefaultClosureCap;
  std::optional<std::uint64_t> seed;
  std::string goldens;  // repro only; empty means the bundled file
};

struct ReportWitness {
  std::string role;
  std::string word;
};

struct Report {
  std::string command;
  std::string group;
  std::string verdict;
  std::vector<ReportWitness> witnesses;
  std::vector<std::string> citations;
  nlohmann::json details = nlohmann::json::object();
  double timing_ms = 0;
  // 0 verdict computed, 1 verdict computed and negative (not CSA, violation, obstruction), 2 error.
  int exit_code = 0;
};

// Every tag a report may cite.
const std::vector<std::string>& citation_tags();

const std::vector<std::string>& command_names();

// Does not throw: failures become exit code 2 with verdict "error" and the message in
// details["error"].
Report run(const Options& options);

nlohmann::json to_json(const Report& r);
std::string to_text(const Report& r);

}  // namespace csakit::cli
