#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "fibmult/cli.hpp"
#include "fibmult/error.hpp"

int main(int argc, char** argv) {
  CLI::App app{"fibmult: checks and constructions on finite fibered multicategories"};
  std::string command, file, out;
  fibmult::Flags flags;
  app.add_option("command", command, "check | cartesian-check | reindex | coreindex | products | equiv | gen | convert")
      ->required();
  app.add_option("file", file, "presentation file");
  app.add_option("--bound", flags.bound, "size bound for gen and equiv");
  app.add_option("--format", flags.format, "machine | human");
  app.add_option("--out", out, "write the report here instead of stdout");
  app.add_option("--arrow", flags.arrow, "M-arrow name");
  app.add_option("--lift", flags.lift, "D-arrow name");
  app.add_option("--base", flags.base, "base arrow name");
  app.add_option("--object", flags.object, "object name");
  app.add_option("--map", flags.map, "base map as 1-based images, e.g. 3,1,3");
  app.add_option("--symbols", flags.symbols, "names for the entries of t, e.g. b,c,a");
  app.add_option("--example", flags.example, "generator name for gen");
  app.add_option("--ring-order", flags.ring_order, "ring order for ring and matrix");
  app.add_option("--max-dim", flags.max_dim, "largest dimension for matrix");
  app.add_flag("--explicit", flags.explicit_tables, "gen writes explicit tables");
  bool no_timing = false;
  app.add_flag("--no-timing", no_timing, "omit the timing section");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  flags.timing = !no_timing;

  std::optional<fibmult::Presentation> presentation;
  if (!file.empty()) {
    std::ifstream in(file, std::ios::binary);
    if (!in) {
      std::cerr << "cannot read " << file << "\n";
      return 2;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    try {
      presentation = fibmult::parse_presentation(buf.str());
    } catch (const fibmult::Error& e) {
      std::cerr << file << ": " << e.what() << "\n";
      return 2;
    }
  }

  const auto report = fibmult::execute(command, presentation, flags);
  if (out.empty()) {
    std::cout << report.text;
  } else {
    std::ofstream o(out, std::ios::binary);
    o << report.text;
    if (!o) {
      std::cerr << "cannot write " << out << "\n";
      return 2;
    }
  }
  return report.exit_code;
}
