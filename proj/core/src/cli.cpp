#include "fibmult/cli.hpp"

#include <chrono>
#include <sstream>

#include <json.hpp>

#include "fibmult/error.hpp"
#include "fibmult/examples.hpp"

namespace fibmult {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void syntax(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::SyntaxError, where + ": " + what);
}

std::pair<std::size_t, std::size_t> line_col(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

const json& member(const json& j, const std::string& path, const char* key) {
  if (!j.is_object()) syntax(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) syntax(path, std::string("missing key '") + key + "'");
  return *it;
}

std::uint32_t id_at(const json& j, const std::string& path) {
  if (!j.is_number_unsigned()) syntax(path, "expected a non-negative integer");
  return j.get<std::uint32_t>();
}

void check_id(std::uint32_t id, std::size_t count, const std::string& path) {
  if (id >= count) {
    throw Error(ErrorCode::UndeclaredId, path + ": id " + std::to_string(id) + " is not declared");
  }
}

std::string label_at(const json& j, const std::string& path) {
  if (!j.is_string()) syntax(path, "expected a string");
  auto s = j.get<std::string>();
  if (s.find_first_of("|:") != std::string::npos) {
    throw Error(ErrorCode::ReservedLabel, path + ": label '" + s + "' uses a reserved character");
  }
  return s;
}

const json& array_at(const json& j, const std::string& path) {
  if (!j.is_array()) syntax(path, "expected an array");
  return j;
}

std::vector<std::uint32_t> tuple_at(const json& j, const std::string& path, std::size_t n) {
  if (!j.is_array() || j.size() != n) syntax(path, "expected an array of " + std::to_string(n) + " ids");
  std::vector<std::uint32_t> out;
  for (std::size_t k = 0; k < n; ++k) out.push_back(id_at(j[k], path + "/" + std::to_string(k)));
  return out;
}

// Object names are taken from `objects` when given, else read from j.
CategoryTables parse_category(const json& j, const std::string& path, bool with_objects, bool with_shapes) {
  CategoryTables c;
  if (with_objects) {
    const auto& objs = array_at(member(j, path, "objects"), path + "/objects");
    for (std::size_t k = 0; k < objs.size(); ++k) c.objects.push_back(label_at(objs[k], path + "/objects/" + std::to_string(k)));
  }
  const auto& arrows = array_at(member(j, path, "arrows"), path + "/arrows");
  for (std::size_t k = 0; k < arrows.size(); ++k) {
    const std::string p = path + "/arrows/" + std::to_string(k);
    ArrowEntry e;
    e.name = label_at(member(arrows[k], p, "name"), p + "/name");
    e.dom = id_at(member(arrows[k], p, "dom"), p + "/dom");
    e.cod = id_at(member(arrows[k], p, "cod"), p + "/cod");
    if (with_shapes) e.shape = id_at(member(arrows[k], p, "shape"), p + "/shape");
    c.arrows.push_back(std::move(e));
  }
  const auto& ids = array_at(member(j, path, "identities"), path + "/identities");
  for (std::size_t k = 0; k < ids.size(); ++k) c.identities.push_back(id_at(ids[k], path + "/identities/" + std::to_string(k)));
  const auto& comp = array_at(member(j, path, "compose"), path + "/compose");
  for (std::size_t k = 0; k < comp.size(); ++k) {
    auto t = tuple_at(comp[k], path + "/compose/" + std::to_string(k), 3);
    c.compose.push_back({t[0], t[1], t[2]});
  }
  return c;
}

void check_category(const CategoryTables& c, std::size_t objects, std::size_t shapes, const std::string& path) {
  for (std::size_t k = 0; k < c.arrows.size(); ++k) {
    const std::string p = path + "/arrows/" + std::to_string(k);
    check_id(c.arrows[k].dom, objects, p + "/dom");
    check_id(c.arrows[k].cod, objects, p + "/cod");
    if (shapes) check_id(c.arrows[k].shape, shapes, p + "/shape");
  }
  if (c.identities.size() != objects) syntax(path + "/identities", "expected one identity per object");
  for (std::size_t k = 0; k < c.identities.size(); ++k) {
    check_id(c.identities[k], c.arrows.size(), path + "/identities/" + std::to_string(k));
  }
  for (std::size_t k = 0; k < c.compose.size(); ++k) {
    for (std::size_t i = 0; i < 3; ++i) {
      check_id(c.compose[k][i], c.arrows.size(), path + "/compose/" + std::to_string(k) + "/" + std::to_string(i));
    }
  }
}

json category_json(const CategoryTables& c, bool with_objects, bool with_shapes) {
  json j = json::object();
  if (with_objects) j["objects"] = c.objects;
  json arrows = json::array();
  for (const auto& a : c.arrows) {
    json e = {{"name", a.name}, {"dom", a.dom}, {"cod", a.cod}};
    if (with_shapes) e["shape"] = a.shape;
    arrows.push_back(std::move(e));
  }
  j["arrows"] = std::move(arrows);
  j["identities"] = c.identities;
  json comp = json::array();
  for (const auto& t : c.compose) comp.push_back(json::array({t[0], t[1], t[2]}));
  j["compose"] = std::move(comp);
  return j;
}

// One array element per line, everything else compact; stable under reparse.
void emit(std::ostream& out, const json& j, int depth) {
  const std::string pad(2 * depth, ' '), inner(2 * depth + 2, ' ');
  if (j.is_object() && !j.empty()) {
    out << "{\n";
    std::size_t k = 0;
    for (auto it = j.begin(); it != j.end(); ++it, ++k) {
      out << inner << json(it.key()).dump() << ": ";
      emit(out, it.value(), depth + 1);
      out << (k + 1 < j.size() ? ",\n" : "\n");
    }
    out << pad << "}";
  } else if (j.is_array() && !j.empty() && (j[0].is_object() || j[0].is_array())) {
    out << "[\n";
    for (std::size_t k = 0; k < j.size(); ++k) out << inner << j[k].dump() << (k + 1 < j.size() ? ",\n" : "\n");
    out << pad << "]";
  } else {
    out << j.dump();
  }
}

std::string render(const json& j) {
  std::ostringstream out;
  emit(out, j, 0);
  out << "\n";
  return out.str();
}

FinCategory materialise(const CategoryTables& c) {
  FinCategory out;
  for (const auto& o : c.objects) out.add_object(o);
  for (const auto& a : c.arrows) out.add_arrow(a.name, a.dom, a.cod);
  for (ObjectId x = 0; x < c.identities.size(); ++x) out.set_identity(x, c.identities[x]);
  for (const auto& t : c.compose) out.set_compose(t[0], t[1], t[2]);
  return out;
}

CategoryTables tables_of(const FinCategory& c, const std::vector<ArrowId>* shapes) {
  CategoryTables t;
  for (ObjectId x = 0; x < c.object_count(); ++x) t.objects.push_back(c.object_name(x));
  for (ArrowId a = 0; a < c.arrow_count(); ++a) {
    t.arrows.push_back(ArrowEntry{c.arrow_name(a), c.dom(a), c.cod(a), shapes ? (*shapes)[a] : 0});
  }
  for (ObjectId x = 0; x < c.object_count(); ++x) t.identities.push_back(c.identity(x));
  c.for_each_composite([&](ArrowId g, ArrowId f, ArrowId gf) { t.compose.push_back({g, f, gf}); });
  std::sort(t.compose.begin(), t.compose.end());
  return t;
}

std::shared_ptr<const BaseCategory> make_base(const Presentation& p) {
  if (p.base_kind == "finset") return BaseCategory::finset(p.size_bound);
  return BaseCategory::explicit_category(materialise(p.base));
}

std::uint64_t digest(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) h = (h ^ c) * 1099511628211ull;
  return h;
}

json violations_json(const Violations& vs) {
  json out = json::array();
  for (const auto& v : vs) {
    json w = json::object();
    for (const auto& [k, x] : v.witness) w[k] = x;
    out.push_back({{"kind", std::string(to_string(v.kind))}, {"detail", v.detail}, {"witness", std::move(w)}});
  }
  return out;
}

json check_json(const std::string& name, const Violations& vs, std::optional<std::size_t> bound = std::nullopt) {
  json j = {{"name", name}, {"status", vs.empty() ? "ok" : "violations"}};
  if (bound) j["bound"] = *bound;
  j["violations"] = violations_json(vs);
  return j;
}

ArrowId find_or_throw(const FinCategory& c, const std::string& name, const char* what) {
  if (name.empty()) throw Error(ErrorCode::BadFlags, std::string("missing --") + what);
  auto a = c.find_arrow(name);
  if (!a) throw Error(ErrorCode::UndeclaredId, std::string(what) + " '" + name + "' is not declared");
  return *a;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  for (std::string item; std::getline(in, item, ',');) out.push_back(item);
  return out;
}

const CartesianStructure& need_cs(const Instance& inst) {
  if (!inst.cs) throw Error(ErrorCode::BadFlags, "the instance carries no special triangles");
  return *inst.cs;
}

// f!t written as sums of the components of t; needs a sequential generator.
json symbolic_coreindex(const Instance& inst, const Flags& flags) {
  if (!inst.standard) throw Error(ErrorCode::BadFlags, "--map needs a generator directive");
  const auto& st = *inst.standard;
  const auto& fm = *inst.fm;
  const auto& base = fm.base();
  const auto images = split_list(flags.map);
  const auto symbols = split_list(flags.symbols);
  if (images.size() != symbols.size()) throw Error(ErrorCode::BadFlags, "--map and --symbols differ in length");
  const std::size_t n = images.size();
  std::vector<std::size_t> assignment;
  for (const auto& s : images) {
    std::size_t v = 0;
    try {
      v = std::stoul(s);
    } catch (const std::exception&) {
      throw Error(ErrorCode::BadFlags, "--map entries must be positive integers");
    }
    if (v == 0 || v > n) throw Error(ErrorCode::BadFlags, "--map entries must lie in 1.." + std::to_string(n));
    assignment.push_back(v - 1);
  }
  const FinSet set = standard_set(n);
  auto f = base.arrow_of(make_map(set, set, assignment));
  auto one = base.object_of(standard_set(1));
  auto obj = base.object_of(set);
  if (!f || !one || !obj) throw Error(ErrorCode::BoundTooSmall, "the base does not reach the map");
  auto bang = base.arrow_of(make_map(set, standard_set(1), std::vector<std::size_t>(n, 0)));
  const std::vector<int> family(n, 0);
  auto x = st.object_of(*obj, family);
  auto z = st.object_of(*one, {0});
  if (!x || !z) throw Error(ErrorCode::BadFlags, "--map needs a one-object presentation");
  const ArrowId lift = st.reindexing(*f, *x);

  const auto& cs = need_cs(inst);
  const auto& C = dynamic_cast<const SequentialPresentation&>(st.presentation()).category();
  const ArrowId zero = 0;
  const ArrowId unit = C.identity(0);
  std::vector<std::vector<std::string>> terms(n);
  for (std::size_t k = 0; k < n; ++k) {
    Payload entries(n, static_cast<int>(zero));
    entries[k] = static_cast<int>(unit);
    auto t = st.arrow_of(*x, *z, *bang, {entries});
    if (!t) throw Error(ErrorCode::BadFlags, "basis arrow missing");
    const ArrowId pushed = coreindex(cs, *t, lift, *bang);
    const auto& comps = st.components(pushed).front();
    for (std::size_t pos = 0; pos < comps.size(); ++pos) {
      if (comps[pos] == static_cast<int>(unit)) terms[pos].push_back(symbols[k]);
    }
  }
  json out = json::array();
  for (std::size_t j = 0; j < n; ++j) {
    std::string s;
    for (const auto& t : terms[j]) s += (s.empty() ? "" : "+") + t;
    out.push_back({{"index", j + 1}, {"value", s.empty() ? "0" : s}});
  }
  return out;
}

std::string human(const json& r) {
  std::ostringstream out;
  out << r["command"].get<std::string>() << ": " << r["status"].get<std::string>() << "\n";
  if (r.contains("checks")) {
    for (const auto& c : r["checks"]) {
      out << "  " << c["name"].get<std::string>() << " " << c["status"].get<std::string>();
      if (c.contains("bound")) out << " (bound " << c["bound"].get<std::size_t>() << ")";
      out << "\n";
      for (const auto& v : c["violations"]) {
        out << "    " << v["kind"].get<std::string>() << ": " << v["detail"].get<std::string>();
        for (auto it = v["witness"].begin(); it != v["witness"].end(); ++it) {
          out << " " << it.key() << "=" << it.value().get<std::string>();
        }
        out << "\n";
      }
    }
  }
  if (r.contains("coreindex")) {
    const auto& c = r["coreindex"];
    if (c.is_array()) {
      std::string line;
      for (const auto& e : c) {
        line += (line.empty() ? "" : ", ") + std::to_string(e["index"].get<std::size_t>()) + "↦" + e["value"].get<std::string>();
      }
      out << "  " << line << "\n";
    } else {
      out << "  " << c.get<std::string>() << "\n";
    }
  }
  for (const char* key : {"reindex", "verdict"}) {
    if (r.contains(key)) out << "  " << key << ": " << r[key].get<std::string>() << "\n";
  }
  for (const char* key : {"table", "products", "cosquares"}) {
    if (!r.contains(key)) continue;
    for (const auto& row : r[key]) out << "  " << row.dump() << "\n";
  }
  if (r.contains("timing")) out << "  time " << r["timing"]["seconds"].get<double>() << "s\n";
  return out.str();
}

}  // namespace

Presentation parse_presentation(std::string_view text) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    auto [line, col] = line_col(text, e.byte == 0 ? 0 : e.byte - 1);
    throw Error(ErrorCode::SyntaxError, std::to_string(line) + ":" + std::to_string(col) + ": malformed document");
  }
  Presentation p;
  p.format_version = static_cast<int>(id_at(member(j, "", "format_version"), "/format_version"));
  if (p.format_version != 1) syntax("/format_version", "unsupported version");
  const auto& base = member(j, "", "base");
  const auto& kind = member(base, "/base", "kind");
  if (!kind.is_string()) syntax("/base/kind", "expected a string");
  p.base_kind = kind.get<std::string>();
  if (p.base_kind == "finset") {
    p.size_bound = id_at(member(base, "/base", "size_bound"), "/base/size_bound");
  } else if (p.base_kind == "explicit") {
    p.base = parse_category(base, "/base", true, false);
    check_category(p.base, p.base.objects.size(), 0, "/base");
  } else {
    syntax("/base/kind", "expected finset or explicit");
  }

  if (j.contains("generator")) {
    const auto& g = j["generator"];
    GeneratorDirective d;
    const auto& name = member(g, "/generator", "name");
    if (!name.is_string()) syntax("/generator/name", "expected a string");
    d.name = name.get<std::string>();
    if (g.contains("params")) {
      const auto& params = g["params"];
      if (!params.is_object()) syntax("/generator/params", "expected an object");
      if (params.contains("ring_order")) d.ring_order = static_cast<int>(id_at(params["ring_order"], "/generator/params/ring_order"));
      if (params.contains("max_dim")) d.max_dim = static_cast<int>(id_at(params["max_dim"], "/generator/params/max_dim"));
    }
    p.generator = d;
    for (const char* key : {"objects", "D", "M", "special_squares"}) {
      if (j.contains(key)) syntax(std::string("/") + key, "tables are not allowed next to a generator");
    }
    return p;
  }

  const auto& objects = array_at(member(j, "", "objects"), "/objects");
  const std::size_t base_objects = p.base_kind == "finset" ? p.size_bound + 1 : p.base.objects.size();
  std::size_t base_arrows = 0;
  std::shared_ptr<const BaseCategory> b;
  if (p.base_kind == "finset") {
    b = BaseCategory::finset(p.size_bound);
    base_arrows = b->category().arrow_count();
  } else {
    base_arrows = p.base.arrows.size();
  }
  for (std::size_t k = 0; k < objects.size(); ++k) {
    const std::string path = "/objects/" + std::to_string(k);
    p.d.objects.push_back(label_at(member(objects[k], path, "name"), path + "/name"));
    const auto shape = id_at(member(objects[k], path, "shape"), path + "/shape");
    check_id(shape, base_objects, path + "/shape");
    p.object_shapes.push_back(shape);
  }
  p.d = [&] {
    auto c = parse_category(member(j, "", "D"), "/D", false, true);
    c.objects = p.d.objects;
    return c;
  }();
  p.m = parse_category(member(j, "", "M"), "/M", false, true);
  p.m.objects = p.d.objects;
  check_category(p.d, objects.size(), base_arrows, "/D");
  check_category(p.m, objects.size(), base_arrows, "/M");

  const auto& squares = array_at(member(j, "", "special_squares"), "/special_squares");
  for (std::size_t k = 0; k < squares.size(); ++k) {
    const std::string path = "/special_squares/" + std::to_string(k);
    auto t = tuple_at(squares[k], path, 4);
    check_id(t[0], p.d.arrows.size(), path + "/0");
    check_id(t[1], p.d.arrows.size(), path + "/1");
    check_id(t[2], p.m.arrows.size(), path + "/2");
    check_id(t[3], p.m.arrows.size(), path + "/3");
    p.squares.push_back(SpecialSquare{t[0], t[1], t[2], t[3]});
  }
  if (j.contains("special_triangles")) {
    const auto& tri = array_at(j["special_triangles"], "/special_triangles");
    std::vector<SpecialTriangle> ts;
    for (std::size_t k = 0; k < tri.size(); ++k) {
      const std::string path = "/special_triangles/" + std::to_string(k);
      auto t = tuple_at(tri[k], path, 3);
      check_id(t[0], p.d.arrows.size(), path + "/0");
      check_id(t[1], p.m.arrows.size(), path + "/1");
      check_id(t[2], p.m.arrows.size(), path + "/2");
      ts.push_back(SpecialTriangle{t[0], t[1], t[2]});
    }
    p.triangles = std::move(ts);
  }
  return p;
}

std::string serialize_presentation(const Presentation& p) {
  json j = json::object();
  j["format_version"] = p.format_version;
  json base = {{"kind", p.base_kind}};
  if (p.base_kind == "finset") {
    base["size_bound"] = p.size_bound;
  } else {
    const json tables = category_json(p.base, true, false);
    for (auto it = tables.begin(); it != tables.end(); ++it) base[it.key()] = it.value();
  }
  j["base"] = std::move(base);
  if (p.generator) {
    j["generator"] = {{"name", p.generator->name},
                      {"params", {{"ring_order", p.generator->ring_order}, {"max_dim", p.generator->max_dim}}}};
    return render(j);
  }
  json objects = json::array();
  for (std::size_t x = 0; x < p.d.objects.size(); ++x) objects.push_back({{"name", p.d.objects[x]}, {"shape", p.object_shapes[x]}});
  j["objects"] = std::move(objects);
  j["D"] = category_json(p.d, false, true);
  j["M"] = category_json(p.m, false, true);
  json squares = json::array();
  for (const auto& s : p.squares) squares.push_back(json::array({s.top, s.bottom, s.right, s.left}));
  j["special_squares"] = std::move(squares);
  if (p.triangles) {
    json tri = json::array();
    for (const auto& t : *p.triangles) tri.push_back(json::array({t.top, t.left, t.right}));
    j["special_triangles"] = std::move(tri);
  }
  return render(j);
}

Instance build_instance(const Presentation& p) {
  Instance inst;
  if (p.generator) {
    if (p.base_kind != "finset") throw Error(ErrorCode::BadParams, "generators run over the finset base");
    ExampleParams params;
    params.ring_order = p.generator->ring_order;
    params.max_dim = p.generator->max_dim;
    auto ex = gen_example(p.generator->name, params, p.size_bound);
    inst.fm = ex.fm;
    inst.standard = ex.standard;
    if (ex.standard && ex.standard->presentation().cartesian()) inst.cs = cartesian_structure(*ex.standard);
    return inst;
  }
  auto base = make_base(p);
  auto d = std::make_shared<const FinCategory>(materialise(p.d));
  auto m = std::make_shared<const FinCategory>(materialise(p.m));
  std::vector<ArrowId> d_shapes, m_shapes;
  for (const auto& a : p.d.arrows) d_shapes.push_back(a.shape);
  for (const auto& a : p.m.arrows) m_shapes.push_back(a.shape);
  inst.fm = std::make_shared<const FiberedMulticategory>(base, d, m, p.object_shapes, d_shapes, m_shapes, p.squares);
  if (p.triangles) inst.cs = CartesianStructure(inst.fm, *p.triangles);
  return inst;
}

Presentation tabulate(const FiberedMulticategory& fm, const std::vector<SpecialTriangle>* triangles,
                      std::size_t size_bound) {
  Presentation p;
  p.size_bound = size_bound;
  for (ObjectId x = 0; x < fm.object_count(); ++x) p.object_shapes.push_back(fm.shape(x));
  std::vector<ArrowId> d_shapes, m_shapes;
  for (ArrowId a = 0; a < fm.reindexings().arrow_count(); ++a) d_shapes.push_back(fm.d(a));
  for (ArrowId a = 0; a < fm.families().arrow_count(); ++a) m_shapes.push_back(fm.p(a));
  p.d = tables_of(fm.reindexings(), &d_shapes);
  p.m = tables_of(fm.families(), &m_shapes);
  p.squares.assign(fm.special_squares().begin(), fm.special_squares().end());
  if (triangles) p.triangles = *triangles;
  return p;
}

Report execute(std::string_view command, const std::optional<Presentation>& presentation, const Flags& flags) {
  const auto start = std::chrono::steady_clock::now();
  json r = json::object();
  r["command"] = std::string(command);
  try {
    if (flags.format != "machine" && flags.format != "human") throw Error(ErrorCode::BadFlags, "--format is machine or human");
    static const std::vector<std::string> known{"check",    "cartesian-check", "reindex", "coreindex",
                                                "products", "equiv",           "gen",     "convert"};
    if (std::find(known.begin(), known.end(), command) == known.end()) {
      throw Error(ErrorCode::UnknownCommand, "unknown command '" + std::string(command) + "'");
    }
    std::size_t violations = 0;
    if (command == "gen") {
      if (flags.example.empty()) throw Error(ErrorCode::BadFlags, "gen needs --example");
      Presentation p;
      p.size_bound = flags.bound;
      p.generator = GeneratorDirective{flags.example, flags.ring_order, flags.max_dim};
      if (flags.explicit_tables) {
        auto inst = build_instance(p);
        std::vector<SpecialTriangle> ts;
        if (inst.cs) ts.assign(inst.cs->triangles().begin(), inst.cs->triangles().end());
        p = tabulate(*inst.fm, inst.cs ? &ts : nullptr, flags.bound);
      } else {
        build_instance(p);
      }
      return Report{0, serialize_presentation(p)};
    }
    if (!presentation) throw Error(ErrorCode::BadFlags, "command needs a presentation file");
    r["digest"] = [&] {
      std::ostringstream h;
      h << std::hex << digest(serialize_presentation(*presentation));
      return h.str();
    }();
    const Instance inst = build_instance(*presentation);
    const auto& fm = *inst.fm;
    const auto& B = fm.base().category();
    json checks = json::array();

    if (command == "check") {
      VerifyOptions options;
      options.check_categories = fm.families().arrow_count() < 2000;
      auto axioms = verify_axioms(fm, options);
      violations += axioms.size();
      checks.push_back(check_json("axioms", axioms, presentation->size_bound));
      if (fm.base().set_backed()) {
        auto ext = check_extensivity(fm);
        violations += ext.size();
        checks.push_back(check_json("extensivity", ext, presentation->size_bound));
      }
    } else if (command == "cartesian-check") {
      const auto& cs = need_cs(inst);
      auto structure = verify_cartesian_structure(cs);
      violations += structure.size();
      checks.push_back(check_json("cartesian-structure", structure));
      if (structure.empty()) {
        for (auto [name, report] : {std::pair{"coherence", coherence_check(cs)}, std::pair{"frobenius", frobenius_equations(cs)},
                                    std::pair{"beck-chevalley", beck_chevalley_equations(cs)}}) {
          violations += report.failures.size();
          auto c = check_json(name, report.failures);
          c["configurations"] = report.configurations;
          checks.push_back(std::move(c));
        }
      }
    } else if (command == "reindex") {
      const ArrowId a = find_or_throw(fm.families(), flags.arrow, "arrow");
      const ArrowId g = find_or_throw(B, flags.base, "base");
      auto sq = fm.base().chosen_pullback(g, fm.p(a));
      if (!sq) throw Error(ErrorCode::BoundTooSmall, "no listed pullback of " + flags.base + " along p(" + flags.arrow + ")");
      r["reindex"] = fm.families().arrow_name(reindex(fm, a, *sq));
    } else if (command == "coreindex") {
      if (!flags.map.empty()) {
        r["coreindex"] = symbolic_coreindex(inst, flags);
      } else {
        const ArrowId a = find_or_throw(fm.families(), flags.arrow, "arrow");
        const ArrowId lift = find_or_throw(fm.reindexings(), flags.lift, "lift");
        const ArrowId h = find_or_throw(B, flags.base, "base");
        r["coreindex"] = fm.families().arrow_name(coreindex(need_cs(inst), a, lift, h));
      }
    } else if (command == "products") {
      auto x = fm.families().find_object(flags.object);
      if (!x) throw Error(ErrorCode::UndeclaredId, "object '" + flags.object + "' is not declared");
      const ArrowId f = find_or_throw(B, flags.base, "base");
      json rows = json::array();
      auto row = [&](const std::optional<ProductCertificate>& c, const char* kind) {
        json e = {{"kind", kind}, {"found", c.has_value()}};
        if (c) {
          e["carrier"] = fm.object_name(c->carrier);
          if (c->pi != kNoArrow) e["pi"] = fm.families().arrow_name(c->pi);
          if (c->u != kNoArrow) e["u"] = fm.families().arrow_name(c->u);
          e["certificates"] = c->certificates;
          e["carriers_isomorphic"] = c->carriers_isomorphic;
          e["evidence"] = c->evidence;
        }
        rows.push_back(std::move(e));
      };
      row(find_universal_product(fm, *x, f), "universal");
      if (inst.cs) {
        try {
          row(find_algebraic_product(*inst.cs, *x, f), "algebraic");
        } catch (const Error& e) {
          if (e.code() != ErrorCode::MissingDiagonal) throw;
          rows.push_back({{"kind", "algebraic"}, {"found", nullptr}, {"reason", e.what()}});
        }
      }
      row(find_opcartesian(fm, *x, f, false), "opcartesian");
      row(find_opcartesian(fm, *x, f, true), "stably-opcartesian");
      r["products"] = std::move(rows);
    } else if (command == "equiv") {
      auto report = products_equivalence_report(need_cs(inst), flags.bound);
      json table = json::array();
      for (const auto& row : report.rows) {
        table.push_back({{"object", fm.object_name(row.x)},
                         {"f", B.arrow_name(row.f)},
                         {"ap", row.ap ? json(*row.ap) : json(nullptr)},
                         {"up", row.up},
                         {"sr", row.sr}});
      }
      violations += report.counterexamples.size();
      r["verdict"] = report.equivalent() ? "equivalent" : "counterexample";
      r["table"] = std::move(table);
    } else if (command == "convert") {
      const auto& cs = need_cs(inst);
      auto squares = triangles_to_cosquares(cs);
      auto check = verify_covariant_presentation(fm, squares);
      violations += check.size();
      checks.push_back(check_json("covariant-presentation", check));
      if (check.empty()) {
        auto back = cosquares_to_triangles(inst.fm, squares);
        const bool same = std::equal(back.triangles().begin(), back.triangles().end(), cs.triangles().begin(),
                                     cs.triangles().end());
        violations += same ? 0 : 1;
        r["verdict"] = same ? "round-trip identical" : "round-trip differs";
      }
      json rows = json::array();
      for (const auto& s : squares) {
        rows.push_back(json::array({fm.reindexings().arrow_name(s.top), fm.families().arrow_name(s.left),
                                    fm.families().arrow_name(s.right), fm.families().arrow_name(s.bottom)}));
      }
      r["cosquares"] = std::move(rows);
    }
    if (!checks.empty()) r["checks"] = std::move(checks);
    r["status"] = violations == 0 ? "ok" : "violations";
    // keep status near the top
    json ordered = {{"command", r["command"]}, {"status", r["status"]}};
    for (auto it = r.begin(); it != r.end(); ++it) {
      if (it.key() != "command" && it.key() != "status") ordered[it.key()] = it.value();
    }
    r = std::move(ordered);
    if (flags.timing) {
      r["timing"] = {{"seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()}};
    }
    return Report{violations == 0 ? 0 : 1, flags.format == "human" ? human(r) : render(r)};
  } catch (const Error& e) {
    json err = {{"command", std::string(command)}, {"status", "error"}, {"error", std::string(to_string(e.code()))}, {"detail", e.what()}};
    return Report{2, flags.format == "human" ? std::string(e.what()) + "\n" : render(err)};
  }
}

}  // namespace fibmult
