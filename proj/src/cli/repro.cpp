#include "csakit/cli/repro.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "csakit/errors.hpp"

namespace csakit::cli {

namespace {

using nlohmann::json;

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw InvalidArgument("cannot read " + p.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Options case_options(const json& c, const std::filesystem::path& dir) {
  Options o;
  o.command = c.at("command").get<std::string>();
  if (c.contains("fixture")) {
    o.source_name = c["fixture"].get<std::string>();
    o.source = read_file(dir / o.source_name);
  }
  const json args = c.value("args", json::object());
  o.group = args.value("group", "");
  o.subs = args.value("subs", std::vector<std::string>{});
  o.word = args.value("word", "");
  o.alphabet = args.value("alphabet", "");
  o.obstacle = args.value("obstacle", "");
  o.images = args.value("images", "");
  o.obstacle_n = args.value("obstacle_n", 2L);
  o.gog = args.value("gog", "");
  if (args.contains("m")) o.m = args["m"].get<long>();
  if (args.contains("n")) o.n = args["n"].get<long>();
  if (args.contains("p")) o.p = args["p"].get<long>();
  o.i = args.value("i", 1u);
  o.radius = args.value("radius", std::size_t{3});
  o.cap = args.value("cap", kDefaultClosureCap);
  return o;
}

}  // namespace

std::string default_goldens_path() {
#ifdef CSAKIT_GOLDENS_PATH
  return CSAKIT_GOLDENS_PATH;
#else
  return "fixtures/goldens.json";
#endif
}

Report run_repro(const std::string& goldens_path) {
  Report report;
  report.command = "repro";
  report.group = goldens_path;
  const std::filesystem::path path(goldens_path);
  if (!std::filesystem::exists(path)) throw InvalidArgument("goldens file " + goldens_path + " not found");
  json goldens;
  try {
    goldens = json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw InvalidArgument("goldens file " + goldens_path + ": " + e.what());
  }

  json cases = json::array();
  std::size_t mismatches = 0;
  std::set<std::string> fixtures;
  for (const json& c : goldens.at("cases")) {
    const std::string name = c.at("name").get<std::string>();
    json entry{{"name", name}};
    if (c.contains("fixture") && c["fixture"].is_string()) fixtures.insert(c["fixture"].get<std::string>());
    try {
      const Report r = run(case_options(c, path.parent_path()));
      const json& expect = c.at("expect");
      std::vector<std::string> problems;
      if (r.verdict != expect.at("verdict").get<std::string>())
        problems.push_back("verdict " + r.verdict + " != " + expect["verdict"].get<std::string>());
      if (r.exit_code != expect.at("exit_code").get<int>())
        problems.push_back("exit code " + std::to_string(r.exit_code) + " != " +
                           std::to_string(expect["exit_code"].get<int>()));
      if (expect.contains("witnesses")) {
        json got = json::array();
        for (const ReportWitness& w : r.witnesses) got.push_back({{"role", w.role}, {"word", w.word}});
        if (got != expect["witnesses"]) problems.push_back("witnesses " + got.dump());
      }
      if (expect.contains("citations") && json(r.citations) != expect["citations"])
        problems.push_back("citations " + json(r.citations).dump());
      if (expect.contains("details"))
        for (const auto& [k, v] : expect["details"].items())
          if (!r.details.contains(k) || r.details[k] != v)
            problems.push_back("details." + k + " = " + (r.details.contains(k) ? r.details[k].dump() : "missing"));
      entry["verdict"] = r.verdict;
      entry["ok"] = problems.empty();
      if (!problems.empty()) entry["problems"] = problems;
      mismatches += !problems.empty();
    } catch (const json::exception& e) {
      entry["ok"] = false;
      entry["problems"] = {std::string("malformed case: ") + e.what()};
      ++mismatches;
    }
    cases.push_back(entry);
  }
  report.details["cases"] = cases;
  report.details["case_count"] = cases.size();
  report.details["fixtures"] = fixtures.size();
  report.details["mismatches"] = mismatches;
  report.verdict = mismatches == 0 ? "all goldens match" : std::to_string(mismatches) + " mismatches";
  report.exit_code = mismatches == 0 ? 0 : 1;
  return report;
}

}  // namespace csakit::cli
