// csakit: command-line driver. See README.md for the command list.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "csakit/cli/commands.hpp"

namespace {

std::string read_source(const std::string& file) {
  if (file.empty()) return "";
  std::ostringstream s;
  if (file == "-") {
    s << std::cin.rdbuf();
    return s.str();
  }
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot read " + file);
  s << in.rdbuf();
  return s.str();
}

}  // namespace

int main(int argc, char** argv) {
  using csakit::cli::Options;
  Options o;
  std::string file;
  bool json = false;
  long m = 0, n = 0, p = 0;
  std::uint64_t seed = 0;

  if (const char* env = std::getenv("CSAKIT_CAP")) {
    try {
      o.cap = std::stoul(env);
    } catch (const std::exception&) {
      std::cerr << "csakit: CSAKIT_CAP must be a non-negative integer\n";
      return 2;
    }
  }

  CLI::App app{"csakit: CSA groups, HNN extensions, amalgams and graphs of groups"};
  app.add_option("command", o.command, "Command to run")
      ->required()
      ->check(CLI::IsMember(csakit::cli::command_names()));
  app.add_option("file", file, "Presentation file, or - for stdin");
  app.add_option("--group,-g", o.group, "Group name from the file, or an inline expression");
  app.add_option("--sub,-s", o.subs, "Subgroup name (repeatable)")->allow_extra_args(false);
  app.add_option("--word,-w", o.word, "Word over the group's generators");
  app.add_option("--alphabet", o.alphabet, "Comma-separated search alphabet");
  app.add_option("--obstacle", o.obstacle, "Obstacle group: Dinf, calB or B1n");
  app.add_option("--images", o.images, "Comma-separated images of the obstacle generators");
  app.add_option("--obstacle-n", o.obstacle_n, "n for B1n")->capture_default_str();
  app.add_option("--gog", o.gog, "Graph-of-groups block name");
  auto* om = app.add_option("--m", m, "m");
  auto* on = app.add_option("--n", n, "n");
  auto* op = app.add_option("--p", p, "prime p");
  app.add_option("--i", o.i, "power i")->capture_default_str();
  app.add_option("--radius,-r", o.radius, "Search radius")->capture_default_str();
  app.add_option("--cap", o.cap, "Malnormal-closure iteration cap (env CSAKIT_CAP)")->capture_default_str();
  auto* os = app.add_option("--seed", seed, "Seed; deterministic commands ignore it");
  app.add_option("--goldens", o.goldens, "Goldens file for repro");
  app.add_flag("--json", json, "Machine-readable report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  if (*om) o.m = m;
  if (*on) o.n = n;
  if (*op) o.p = p;
  if (*os) o.seed = seed;

  try {
    o.source = read_source(file);
  } catch (const std::exception& e) {
    std::cerr << "csakit: " << e.what() << "\n";
    return 2;
  }
  o.source_name = file;

  const csakit::cli::Report r = csakit::cli::run(o);
  if (json)
    std::cout << csakit::cli::to_json(r).dump(2) << "\n";
  else
    std::cout << csakit::cli::to_text(r);
  return r.exit_code;
}
