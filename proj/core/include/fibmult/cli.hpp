#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fibmult/cartesian.hpp"
#include "fibmult/standard.hpp"

namespace fibmult {

struct ArrowEntry {
  std::string name;
  ObjectId dom = 0;
  ObjectId cod = 0;
  ArrowId shape = 0;  // base arrow; unused for base tables

  bool operator==(const ArrowEntry&) const = default;
};

struct CategoryTables {
  std::vector<std::string> objects;
  std::vector<ArrowEntry> arrows;
  std::vector<ArrowId> identities;
  std::vector<std::array<ArrowId, 3>> compose;  // (g, f, g∘f)

  bool operator==(const CategoryTables&) const = default;
};

struct GeneratorDirective {
  std::string name;
  int ring_order = 2;
  int max_dim = 2;

  bool operator==(const GeneratorDirective&) const = default;
};

/// A fibered multicategory file: a base (the skeletal Set_f up to a bound, or
/// explicit tables) and either a generator directive or explicit tables.
struct Presentation {
  int format_version = 1;
  std::string base_kind = "finset";  // finset | explicit
  std::size_t size_bound = 2;
  CategoryTables base;  // explicit bases only
  std::optional<GeneratorDirective> generator;
  std::vector<ObjectId> object_shapes;
  CategoryTables d;  // D and M share their object list (d.objects)
  CategoryTables m;
  std::vector<SpecialSquare> squares;
  std::optional<std::vector<SpecialTriangle>> triangles;

  bool operator==(const Presentation&) const = default;
};

/// Throws SyntaxError (with line:column, or a JSON pointer for misplaced
/// values), UndeclaredId (with a JSON pointer) and ReservedLabel.
Presentation parse_presentation(std::string_view text);
std::string serialize_presentation(const Presentation& p);

struct Instance {
  std::shared_ptr<const FiberedMulticategory> fm;
  std::shared_ptr<const StandardMulticategory> standard;  // generator directives only
  std::optional<CartesianStructure> cs;
};

Instance build_instance(const Presentation& p);
/// Explicit tables for an instance over the skeletal Set_f.
Presentation tabulate(const FiberedMulticategory& fm, const std::vector<SpecialTriangle>* triangles,
                      std::size_t size_bound);

struct Flags {
  std::size_t bound = 2;
  std::string format = "machine";  // machine | human
  bool timing = true;
  std::string arrow;    // M-arrow name
  std::string lift;     // D-arrow name
  std::string base;     // base arrow name
  std::string object;   // object name
  std::string map;      // base map as 1-based images, e.g. 3,1,3
  std::string symbols;  // names of the components of t, e.g. b,c,a
  std::string example;
  int ring_order = 2;
  int max_dim = 2;
  bool explicit_tables = false;
};

struct Report {
  int exit_code = 0;  // 0 ok, 1 violations, 2 input error
  std::string text;
};

/// check | cartesian-check | reindex | coreindex | products | equiv | gen | convert.
/// Input errors become exit code 2 with the error in the report.
Report execute(std::string_view command, const std::optional<Presentation>& presentation, const Flags& flags);

}  // namespace fibmult
