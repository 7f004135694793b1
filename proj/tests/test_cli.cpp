#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fibmult/cli.hpp"
#include "fibmult/error.hpp"
#include "fibmult/examples.hpp"
#include "oracles.hpp"

using namespace fibmult;

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(FIBMULT_FIXTURES) + "/" + name, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

ErrorCode code_of(const std::string& text, std::string* message = nullptr) {
  try {
    parse_presentation(text);
  } catch (const Error& e) {
    if (message) *message = e.what();
    return e.code();
  }
  FAIL("document parsed");
  return ErrorCode::InvalidInput;
}

Flags quiet() {
  Flags f;
  f.timing = false;
  return f;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("generator directives parse") {
    auto p = parse_presentation(slurp("terminal.json"));
    REQUIRE(p.generator);
    CHECK(p.generator->name == "terminal");
    CHECK(p.size_bound == 3);
  }

  TEST_CASE("every fixture round-trips byte for byte") {
    for (const auto& entry : std::filesystem::directory_iterator(FIBMULT_FIXTURES)) {
      const auto name = entry.path().filename().string();
      if (name == "malformed.json") continue;
      CAPTURE(name);
      const auto text = slurp(name);
      CHECK(serialize_presentation(parse_presentation(text)) == text);
    }
  }

  TEST_CASE("explicit tables rebuild the generated instance") {
    auto p = parse_presentation(slurp("ring2_explicit.json"));
    auto inst = build_instance(p);
    auto ex = gen_example("ring", {}, 2);
    CHECK(inst.fm->families().arrow_count() == ex.fm->families().arrow_count());
    CHECK(inst.fm->reindexings().arrow_count() == ex.fm->reindexings().arrow_count());
    CHECK(inst.fm->special_squares().size() == ex.fm->special_squares().size());
    for (ArrowId a = 0; a < ex.fm->families().arrow_count(); ++a) {
      CHECK(inst.fm->families().arrow_name(a) == ex.fm->families().arrow_name(a));
    }
    REQUIRE(inst.cs);
    CHECK(verify_cartesian_structure(*inst.cs).empty());
  }

  TEST_CASE("input errors carry locations") {
    const auto text = slurp("terminal_explicit.json");
    std::string message;

    auto undeclared = text;
    const auto at = undeclared.find("\"identities\": [") + std::string("\"identities\": [").size();
    undeclared.insert(at, "999");
    undeclared.erase(at + 3, undeclared.find_first_of(",]", at + 3) - (at + 3));
    CHECK(code_of(undeclared, &message) == ErrorCode::UndeclaredId);
    CHECK(message.find("/D/identities/0") != std::string::npos);

    auto reserved = text;
    reserved.replace(reserved.find("\"[1]\""), 5, "\"[1]|x\"");
    CHECK(code_of(reserved) == ErrorCode::ReservedLabel);

    CHECK(code_of(slurp("malformed.json"), &message) == ErrorCode::SyntaxError);
    CHECK(message.rfind("SyntaxError: 3:", 0) == 0);

    auto wrong_type = text;
    wrong_type.replace(wrong_type.find("\"size_bound\": 2"), 15, "\"size_bound\": \"two\"");
    CHECK(code_of(wrong_type, &message) == ErrorCode::SyntaxError);
    CHECK(message.find("/base/size_bound") != std::string::npos);
  }

  TEST_CASE("exit codes") {
    auto ok = parse_presentation(slurp("terminal.json"));
    auto bad = parse_presentation(slurp("mutant_missing_square.json"));
    CHECK(execute("check", ok, quiet()).exit_code == 0);
    CHECK(execute("check", bad, quiet()).exit_code == 1);
    CHECK(execute("frobnicate", ok, quiet()).exit_code == 2);
    CHECK(execute("reindex", ok, quiet()).exit_code == 2);
    CHECK(execute("check", std::nullopt, quiet()).exit_code == 2);
    Flags human = quiet();
    human.format = "pretty";
    CHECK(execute("check", ok, human).exit_code == 2);
  }

  TEST_CASE("machine reports are deterministic and reparse") {
    auto p = parse_presentation(slurp("ring3.json"));
    auto a = execute("cartesian-check", p, quiet());
    auto b = execute("cartesian-check", p, quiet());
    CHECK(a.text == b.text);
    auto j = nlohmann::json::parse(a.text);
    CHECK(j["status"] == "ok");
    CHECK_FALSE(j.contains("timing"));
    CHECK(j["checks"].size() == 4);
  }

  TEST_CASE("symbolic coreindex agrees with fiber sums for every map") {
    auto p = parse_presentation(slurp("ring2.json"));
    const std::vector<std::string> t{"b", "c", "a"};
    for (const auto& map : all_maps(standard_set(3), standard_set(3))) {
      Flags f = quiet();
      f.symbols = "b,c,a";
      for (std::size_t i = 0; i < 3; ++i) f.map += (i ? "," : "") + std::to_string(map(i) + 1);
      CAPTURE(f.map);
      auto r = execute("coreindex", p, f);
      REQUIRE(r.exit_code == 0);
      auto j = nlohmann::json::parse(r.text);
      // sums are commutative; compare as multisets of symbols
      auto want = oracle::fiber_sums(map.assignment, t, 3);
      for (std::size_t k = 0; k < 3; ++k) {
        auto got = j["coreindex"][k]["value"].get<std::string>();
        std::sort(got.begin(), got.end());
        std::sort(want[k].begin(), want[k].end());
        CHECK(got == want[k]);
      }
    }
  }

  TEST_CASE("symbolic coreindex along (1↦3, 2↦1, 3↦3)") {
    auto p = parse_presentation(slurp("ring2.json"));
    Flags f = quiet();
    f.format = "human";
    f.map = "3,1,3";
    f.symbols = "b,c,a";
    auto r = execute("coreindex", p, f);
    CHECK(r.exit_code == 0);
    CHECK(r.text.find("1↦c, 2↦0, 3↦b+a") != std::string::npos);
  }
}
