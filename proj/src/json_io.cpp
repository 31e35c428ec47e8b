#include "ordercone/json_io.hpp"

#include <fstream>
#include <sstream>

#include "ordercone/errors.hpp"

namespace ordercone::io {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) { throw InputError(where + ": " + what); }

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) fail(where, std::string("missing field '") + key + "'");
  return *it;
}

std::size_t size_from(const Json& j, const std::string& where) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
    fail(where, "expected a nonnegative integer");
  return j.get<std::size_t>();
}

std::string string_from(const Json& j, const std::string& where) {
  if (!j.is_string()) fail(where, "expected a string");
  return j.get<std::string>();
}

Json constraint_json(const LinearConstraint& c) {
  return Json{{"coeffs", to_json(c.coeffs)}, {"rhs", to_json(c.rhs)}, {"strict", c.strict}};
}

LinearConstraint constraint_from(const Json& j, const std::string& where) {
  LinearConstraint c;
  c.coeffs = vector_from(field(j, "coeffs", where), where + ".coeffs");
  if (j.contains("rhs")) c.rhs = rational_from(j["rhs"], where + ".rhs");
  if (j.contains("strict")) {
    if (!j["strict"].is_boolean()) fail(where + ".strict", "expected a boolean");
    c.strict = j["strict"].get<bool>();
  }
  return c;
}

Json optional_vector(const std::optional<RatVector>& v) { return v ? to_json(*v) : Json(nullptr); }

}  // namespace

Json to_json(const Rational& r) { return r.str(); }

Json to_json(const RatVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(x.str());
  return out;
}

Json to_json(const std::vector<RatVector>& vs) {
  Json out = Json::array();
  for (const auto& v : vs) out.push_back(to_json(v));
  return out;
}

Rational rational_from(const Json& j, const std::string& where) {
  if (!j.is_string()) fail(where, "rationals must be strings such as \"3/4\"");
  try {
    return Rational::parse(j.get<std::string>());
  } catch (const InputError& e) {
    fail(where, e.what());
  }
}

RatVector vector_from(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array of rationals");
  RatVector out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(rational_from(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<RatVector> vectors_from(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array of vectors");
  std::vector<RatVector> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(vector_from(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

RatVector parse_csv(std::string_view text) {
  RatVector out;
  if (text.find_first_not_of(" \t") == std::string_view::npos) throw InputError("empty vector");
  std::size_t start = 0;
  for (;;) {
    const auto comma = text.find(',', start);
    out.push_back(Rational::parse(text.substr(start, comma == std::string_view::npos ? text.npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string to_csv(const RatVector& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + v[i].str();
  return out;
}

SpaceFile space_file_from_json(const Json& j, const std::string& where) {
  SpaceFile f;
  const auto& cone = field(j, "cone", where);
  const std::string cw = where + ".cone";
  f.kind = string_from(field(cone, "kind", cw), cw + ".kind");
  if (f.kind == "named") {
    f.name = string_from(field(cone, "name", cw), cw + ".name");
    if (j.contains("dimension")) f.dimension = size_from(j["dimension"], where + ".dimension");
    return f;
  }
  f.dimension = size_from(field(j, "dimension", where), where + ".dimension");
  if (f.kind == "closed_h") {
    f.vectors = vectors_from(field(cone, "inequalities", cw), cw + ".inequalities");
  } else if (f.kind == "closed_v") {
    f.vectors = vectors_from(field(cone, "generators", cw), cw + ".generators");
  } else if (f.kind == "semi_open") {
    const auto& cells = field(cone, "cells", cw);
    if (!cells.is_array()) fail(cw + ".cells", "expected an array of cells");
    for (std::size_t i = 0; i < cells.size(); ++i) {
      const std::string w = cw + ".cells[" + std::to_string(i) + "]";
      if (!cells[i].is_array()) fail(w, "expected an array of constraints");
      std::vector<LinearConstraint> cs;
      for (std::size_t k = 0; k < cells[i].size(); ++k)
        cs.push_back(constraint_from(cells[i][k], w + "[" + std::to_string(k) + "]"));
      f.cells.push_back(std::move(cs));
    }
  } else if (f.kind != "lexicographic") {
    fail(cw + ".kind", "unknown cone kind '" + f.kind + "'");
  }
  const auto check = [&](const RatVector& v, const std::string& w) {
    if (v.size() != f.dimension)
      throw DimensionMismatch(w + ": expected " + std::to_string(f.dimension) + " entries, got " + std::to_string(v.size()));
  };
  for (std::size_t i = 0; i < f.vectors.size(); ++i) check(f.vectors[i], cw + ".vectors[" + std::to_string(i) + "]");
  for (std::size_t i = 0; i < f.cells.size(); ++i)
    for (std::size_t k = 0; k < f.cells[i].size(); ++k)
      check(f.cells[i][k].coeffs, cw + ".cells[" + std::to_string(i) + "][" + std::to_string(k) + "]");
  return f;
}

Json to_json(const SpaceFile& f) {
  Json cone{{"kind", f.kind}};
  if (f.kind == "named") cone["name"] = f.name;
  if (f.kind == "closed_h") cone["inequalities"] = to_json(f.vectors);
  if (f.kind == "closed_v") cone["generators"] = to_json(f.vectors);
  if (f.kind == "semi_open") {
    Json cells = Json::array();
    for (const auto& c : f.cells) {
      Json cs = Json::array();
      for (const auto& k : c) cs.push_back(constraint_json(k));
      cells.push_back(std::move(cs));
    }
    cone["cells"] = std::move(cells);
  }
  return Json{{"dimension", f.dimension}, {"cone", std::move(cone)}};
}

SpaceFile describe(const OrderedSpace& space) {
  SpaceFile f;
  f.dimension = space.dim();
  const auto& name = space.name();
  if (name.rfind("standard:", 0) == 0 || name == "example_s2" || name == "square_cone") {
    f.kind = "named";
    f.name = name;
    return f;
  }
  switch (space.kind()) {
    case ConeKind::ClosedH:
      f.kind = "closed_h";
      f.vectors = space.source_vectors();
      break;
    case ConeKind::ClosedV:
      f.kind = "closed_v";
      f.vectors = space.source_vectors();
      break;
    case ConeKind::SemiOpen:
      f.kind = "semi_open";
      for (const auto& c : space.positive_cells().cells) f.cells.push_back(c.constraints);
      break;
    case ConeKind::Lexicographic:
      f.kind = "lexicographic";
      break;
  }
  return f;
}

OrderedSpace build(const SpaceFile& f) {
  if (f.kind == "named") {
    auto s = OrderedSpace::named(f.name);
    if (f.dimension != 0 && f.dimension != s.dim())
      throw DimensionMismatch("space '" + f.name + "' has dimension " + std::to_string(s.dim()));
    return s;
  }
  if (f.kind == "closed_h") return OrderedSpace::closed_h(f.dimension, f.vectors);
  if (f.kind == "closed_v") return OrderedSpace::closed_v(f.dimension, f.vectors);
  if (f.kind == "lexicographic") return OrderedSpace::lexicographic(f.dimension);
  if (f.kind == "semi_open") {
    std::vector<Cell> cells;
    for (const auto& c : f.cells) cells.emplace_back(f.dimension, c);
    return OrderedSpace::semi_open(CellUnion(f.dimension, std::move(cells), true));
  }
  throw InputError("unknown cone kind '" + f.kind + "'");
}

LinearOperator operator_from_json(const Json& j, const std::string& where) {
  const auto rows = vectors_from(field(j, "matrix", where), where + ".matrix");
  if (rows.empty()) fail(where + ".matrix", "an operator needs at least one row");
  const std::size_t n = rows.front().size();
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (rows[i].size() != n)
      throw DimensionMismatch(where + ".matrix[" + std::to_string(i) + "]: expected " + std::to_string(n) + " entries");
  if (j.contains("codomain_dim") && size_from(j["codomain_dim"], where + ".codomain_dim") != rows.size())
    throw DimensionMismatch(where + ".codomain_dim: does not match the number of rows");
  return LinearOperator(RatMatrix(rows, n));
}

Json to_json(const LinearOperator& t) {
  return Json{{"matrix", to_json(t.matrix.row_list())}, {"codomain_dim", t.codomain_dim()}};
}

std::vector<LinearOperator> operators_from_json(const Json& j, const std::string& where) {
  if (j.is_object() && j.contains("operators")) return operators_from_json(j["operators"], where + ".operators");
  if (j.is_object()) return {operator_from_json(j, where)};
  if (!j.is_array() || j.empty()) fail(where, "expected an operator or a nonempty array of operators");
  std::vector<LinearOperator> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(operator_from_json(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

ExtensionProblem problem_from_json(const Json& j, const std::string& where) {
  auto space = build(space_file_from_json(field(j, "space", where), where + ".space"));
  const auto& p = field(j, "p", where);
  const std::string kind = string_from(field(p, "kind", where + ".p"), where + ".p.kind");
  auto pieces = operators_from_json(field(p, "pieces", where + ".p"), where + ".p.pieces");
  auto basis = vectors_from(field(j, "basis", where), where + ".basis");
  auto t0 = operator_from_json(field(j, "t0", where), where + ".t0");
  if (kind == "min") return {SuperlinearMap::min_of_linear(std::move(space), std::move(pieces)), std::move(basis), std::move(t0)};
  if (kind == "rk")
    return {SuperlinearMap::rk_of_linear(RkInstance(std::move(space), std::move(pieces))), std::move(basis), std::move(t0)};
  fail(where + ".p.kind", "expected \"min\" or \"rk\"");
}

Json to_json(const ExtensionProblem& prob) {
  Json pieces = Json::array();
  for (const auto& t : prob.p.pieces()) pieces.push_back(to_json(t));
  return Json{{"space", to_json(describe(prob.space()))},
              {"p", {{"kind", prob.p.kind() == SuperlinearMap::Kind::MinOfLinear ? "min" : "rk"}, {"pieces", pieces}}},
              {"basis", to_json(prob.basis)},
              {"t0", to_json(prob.t0)}};
}

Json load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path + ": cannot open file");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

Json to_json(const RkValue& v) {
  Json out{{"value", to_json(v.value)}, {"attained", v.attained}};
  out["decomposition"] = v.decomposition ? to_json(*v.decomposition) : Json(nullptr);
  return out;
}

Json to_json(const NonlinearWitness& w) {
  return Json{{"coordinate", w.coordinate}, {"x", to_json(w.x)},         {"y", to_json(w.y)},
              {"rk_x", to_json(w.rk_x)},    {"rk_y", to_json(w.rk_y)}, {"rk_sum", to_json(w.rk_sum)}};
}

Json to_json(const LinearityResult& r) {
  Json out{{"linear", r.linear}, {"boundary_status", r.boundary_status}};
  out["operator"] = r.op ? to_json(*r.op) : Json(nullptr);
  out["witness"] = r.witness ? to_json(*r.witness) : Json(nullptr);
  return out;
}

Json to_json(const SupResult& r) {
  Json out{{"majorizes", r.majorizes}, {"least_on_samples", r.least_on_samples}};
  out["sup"] = r.sup ? to_json(*r.sup) : Json(nullptr);
  out["witness"] = r.witness ? to_json(*r.witness) : Json(nullptr);
  return out;
}

Json to_json(const SeparationResult& s) {
  return Json{{"functional", to_json(s.separator.row(0))},
              {"bound", to_json(s.bound)},
              {"value", to_json(s.value)},
              {"strict", s.strict}};
}

Json to_json(const RdpReport& r) {
  Json out{{"holds", r.holds}, {"x", to_json(r.x)}, {"y", to_json(r.y)}};
  out["witness"] = optional_vector(r.witness);
  out["witnesses"] = to_json(r.witnesses);
  out["lrdp_holds"] = r.lrdp_holds ? Json(*r.lrdp_holds) : Json(nullptr);
  out["lrdp_witness"] = optional_vector(r.lrdp_witness);
  out["separator"] = r.separator ? to_json(*r.separator) : Json(nullptr);
  if (r.regular_split) out["regular_split"] = {{"f0", to_json(r.regular_split->f0)}, {"f1", to_json(r.regular_split->f1)}};
  return out;
}

Json to_json(const ExtensionStep& s) {
  return Json{{"x0", to_json(s.x0)}, {"y0", to_json(s.y0)}, {"upper", to_json(s.upper)}};
}

Json to_json(const GrkfReport& r) {
  Json trials = Json::array();
  for (const auto& t : r.trials) {
    Json tj{{"index", t.index},
            {"lattice", t.lattice},
            {"rdp", t.rdp},
            {"linear_all", t.linear_all},
            {"linear_single", t.linear_single},
            {"lrdp", t.lrdp},
            {"operator_samples", t.operator_samples},
            {"pair_samples", t.pair_samples}};
    if (t.nonlinear) tj["nonlinear"] = to_json(*t.nonlinear);
    if (t.interpolation)
      tj["interpolation"] = {{"s1", to_json(t.interpolation->s1)},
                             {"s2", to_json(t.interpolation->s2)},
                             {"t1", to_json(t.interpolation->t1)},
                             {"t2", to_json(t.interpolation->t2)}};
    if (t.lrdp_failure) tj["lrdp_failure"] = to_json(*t.lrdp_failure);
    trials.push_back(std::move(tj));
  }
  return Json{{"space", r.space},
              {"regime", r.regime},
              {"lattice", r.lattice},
              {"rdp", r.rdp},
              {"linear_all", r.linear_all},
              {"linear_single", r.linear_single},
              {"lrdp", r.lrdp},
              {"consistent", r.consistent()},
              {"trials", std::move(trials)}};
}

}  // namespace ordercone::io
