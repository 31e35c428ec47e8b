#include "ordercone/report.hpp"

#include <sstream>

namespace ordercone {

namespace {

using io::Json;
using io::to_csv;
using io::to_json;

LinearOperator fn(std::initializer_list<long> row) { return LinearOperator::functional(from_ints(row)); }

std::string yes(bool b) { return b ? "true" : "false"; }

std::string vec(const RatVector& v) { return "(" + to_csv(v) + ")"; }

std::string vecs(const std::vector<RatVector>& vs) {
  std::string out;
  for (std::size_t i = 0; i < vs.size(); ++i) out += (i ? " " : "") + vec(vs[i]);
  return out;
}

class Builder {
 public:
  explicit Builder(WorkedExampleReport& r) : r_(r) {}
  void group(std::string g) { group_ = std::move(g); }
  void check(std::string name, std::string claim, Json inputs, std::string computed, std::string expected) {
    const bool pass = computed == expected;
    r_.checks.push_back({group_, std::move(name), std::move(claim), std::move(inputs), std::move(computed),
                         std::move(expected), pass});
  }
  void table(std::string title, std::vector<std::string> header, std::vector<std::vector<std::string>> rows) {
    r_.tables.push_back({group_, std::move(title), std::move(header), std::move(rows)});
  }

 private:
  WorkedExampleReport& r_;
  std::string group_;
};

Json space_input(const std::string& id) { return Json{{"space", id}}; }

void lexicographic(Builder& b) {
  b.group("Lexicographic plane");
  const auto lex = OrderedSpace::named("lex:2");
  b.check("order", "(x, y) >= 0 iff y > 0, or y = 0 and x >= 0", Json{{"space", "lex:2"}, {"a", "5,0"}, {"b", "0,1"}},
          yes(lex.leq(from_ints({5, 0}), from_ints({0, 1}))), "true");
  b.check("negative first coordinate", "(-1, 0) is not positive", Json{{"space", "lex:2"}, {"x", "-1,0"}},
          yes(lex.contains(from_ints({-1, 0}))), "false");
  const auto d = dual_cone(lex).closure();
  b.check("dual cone", "every positive functional has the form f(x, y) = a y with a >= 0", space_input("lex:2"),
          "rays " + vecs(d.rays) + ", lineality " + std::to_string(d.lineality.size()), "rays (0,1), lineality 0");
  b.check("order unit", "(0, 1) is an internal point", Json{{"space", "lex:2"}, {"e", "0,1"}},
          yes(is_order_unit(lex, from_ints({0, 1}))), "true");
}

void semi_open_example(Builder& b) {
  b.group("Semi-open cone in three dimensions");
  const auto s = OrderedSpace::named("example_s2");
  const auto zero = zeros(3);
  b.check("membership on the diagonal", "z = 0, x = y >= 0 belongs to the cone", Json{{"space", "example_s2"}, {"x", "1,1,0"}},
          yes(s.contains(from_ints({1, 1, 0}))), "true");
  b.check("boundary off the diagonal", "(1, 0, 0) is not positive", Json{{"space", "example_s2"}, {"x", "1,0,0"}},
          yes(s.contains(from_ints({1, 0, 0}))), "false");
  b.check("closure", "the closure is the standard cone", space_input("example_s2"),
          "rays " + vecs(s.closure().rays), "rays (0,0,1) (0,1,0) (1,0,0)");
  const auto x = from_ints({2, 1, 1});
  const auto y = from_ints({1, 2, 1});
  const Json pair{{"space", "example_s2"}, {"x", "2,1,1"}, {"y", "1,2,1"}};
  const auto rep = check_lrdp(s, x, y, FunctionalClass::All);
  b.check("RDP fails", "the cone does not have the Riesz decomposition property", pair, yes(rep.holds), "false");
  bool on_segments = !rep.witnesses.empty();
  bool bottom = false;
  for (const auto& w : rep.witnesses) {
    const bool lower = w[2].is_zero() && w[0] == w[1] && w[0] >= 2 && w[0] < 3;
    const bool upper = w[2] == 2 && w[0] == w[1] && w[0] > 0 && w[0] <= 1;
    bottom = bottom || lower;
    on_segments = on_segments && (lower || upper);
  }
  b.check("witnesses", "the uncovered part is two semi-open segments", pair,
          "on segments " + yes(on_segments) + ", bottom segment hit " + yes(bottom), "on segments true, bottom segment hit true");
  b.check("L-RDP holds", "the space has the L-Riesz decomposition property for any L", pair, yes(*rep.lrdp_holds), "true");
  const auto sum = minkowski_sum(order_interval(s, zero, x).set, order_interval(s, zero, y).set);
  const auto whole = order_interval(s, zero, add(x, y)).set;
  b.check("closure contains the difference", "[0, a + b] \\ ([0, a] + [0, b]) lies in the closure of the sum", pair,
          yes(subset_of_closure(whole, sum).holds), "true");
  const RatVector mid{Rational(5, 2), Rational(5, 2), 0};
  b.check("no separation", "(5/2, 5/2, 0) cannot be strictly separated from the sum",
          Json{{"space", "example_s2"}, {"point", to_csv(mid)}}, yes(strict_separation(mid, sum).has_value()), "false");
  std::vector<std::vector<std::string>> rows;
  bool table_ok = true;
  for (long k = 0; k < 4; ++k) {
    const RatVector low{Rational(8 + k, 4), Rational(8 + k, 4), 0};
    const RatVector high{Rational(k + 1, 4), Rational(k + 1, 4), 2};
    for (const auto& p : {low, high}) {
      const bool in_whole = contains(whole, p);
      const bool in_sum = contains(sum, p);
      table_ok = table_ok && in_whole && !in_sum;
      rows.push_back({vec(p), yes(in_whole), yes(in_sum)});
    }
  }
  for (const auto& end : {from_ints({3, 3, 0}), from_ints({0, 0, 2})})
    rows.push_back({vec(end), yes(contains(whole, end)), yes(contains(sum, end))});
  b.table("Sample points of the two segments", {"point", "in [0, x+y]", "in [0, x] + [0, y]"}, std::move(rows));
  b.check("segment samples", "sample points of both segments lie in [0, x + y] but not in the sum", pair, yes(table_ok), "true");
  const auto sep = strict_separation(from_ints({0, 0, 5}), closure(whole));
  b.check("separation from the closed interval", "(0, 0, 5) is separated from closure [0, (3,3,2)] by z",
          Json{{"space", "example_s2"}, {"point", "0,0,5"}, {"hi", "3,3,2"}},
          sep ? "f " + vec(sep->separator.row(0)) + ", sup " + sep->bound.str() : "none", "f (0,0,1), sup 2");
}

void rk_transform(Builder& b) {
  b.group("RK transform");
  const auto q3 = OrderedSpace::named("standard:3");
  const auto f = fn({-1, 1, -1});
  const auto g = fn({1, -1, -1});
  const RkInstance inst(q3, {f, g});
  const Json fg{{"space", "standard:3"}, {"ops", {"-1,1,-1", "1,-1,-1"}}};
  const std::vector<RatVector> points{
      from_ints({1, 1, 1}), from_ints({0, 0, 0}), from_ints({2, 0, 1}), from_ints({0, 3, 0}),
      {Rational(1, 2), Rational(1, 3), 1},        from_ints({5, 2, 7}), {Rational(7, 4), Rational(2), Rational(1, 5)},
      from_ints({0, 0, 4}), {Rational(3), Rational(9, 2), Rational(1, 2)}, from_ints({1, 10, 100})};
  std::vector<std::vector<std::string>> rows;
  bool all = true;
  for (const auto& p : points) {
    const auto v = rk_eval(inst, p);
    const bool shape = v.decomposition && (*v.decomposition)[0] == RatVector{0, p[1], 0} &&
                       (*v.decomposition)[1] == RatVector{p[0], 0, 0};
    const bool ok = v.value[0] == p[0] + p[1] && shape;
    all = all && ok;
    rows.push_back({vec(p), v.value[0].str(), (p[0] + p[1]).str(), v.decomposition ? vecs(*v.decomposition) : "-"});
  }
  b.table("rk{f, g} at sample points", {"x", "rk{f,g}(x)", "x1 + x2", "decomposition"}, std::move(rows));
  b.check("value table", "rk{f, g}(x, y, z) = x + y, attained at (0, y, 0) + (x, 0, 0)", fg, yes(all), "true");
  b.check("value at (1,1,1)", "rk{f, g}(1, 1, 1) = 2", fg, rk_eval(inst, from_ints({1, 1, 1})).value[0].str(), "2");
  const auto lin = rk_linearity(inst);
  b.check("linearity", "rk{f, g} is the linear functional x + y", fg,
          lin.linear && lin.op ? "linear " + vec(lin.op->row(0)) : "nonlinear", "linear (1,1,0)");
  const auto sup = sup_operator(inst);
  b.check("supremum", "f v g exists and equals rk{f, g}", fg,
          sup.sup ? vec(sup.sup->row(0)) + " majorizes " + yes(sup.majorizes) : "none", "(1,1,0) majorizes true");
  b.check("dual value", "min over D of h.x equals rk{f, g}(x)", fg,
          to_csv(dual_value(dual_polyhedron(inst), from_ints({1, 1, 1}))), "2");
  const auto zfg = inst.with_zero();
  const auto one = from_ints({1, 1, 1});
  b.check("equality form with a positive member", "with 0 adjoined, equality and inequality forms agree",
          Json{{"space", "standard:3"}, {"ops", {"0,0,0", "-1,1,-1", "1,-1,-1"}}, {"x", "1,1,1"}},
          rk_eval_equality_form(zfg, one).value[0].str() + " = " + rk_eval(zfg, one).value[0].str(), "2 = 2");
  b.check("equality form without a positive member", "without a positive member the forms can differ",
          Json{{"space", "standard:3"}, {"ops", {"-1,1,-1", "1,-1,-1"}}, {"x", "1,1,1"}},
          rk_eval_equality_form(inst, one).value[0].str() + " vs " + rk_eval(inst, one).value[0].str(), "1 vs 2");
  const auto assoc = check_associativity(q3, f, g, LinearOperator::zero(1, 3),
                                         {one, from_ints({2, 0, 1}), {Rational(1, 2), Rational(3, 2), 1}});
  b.check("associativity", "rk{rk{Q, R}, S} = rk{Q, R, S}", fg, yes(assoc.agree), "true");
  const auto sq = OrderedSpace::named("square_cone");
  const auto nonlinear = rk_linearity(RkInstance(sq, {fn({1, -1, 0})}));
  bool strict = false;
  if (nonlinear.witness) {
    const auto& w = *nonlinear.witness;
    strict = w.rk_sum[0] > w.rk_x[0] + w.rk_y[0];
  }
  b.check("nonlinear on a non-lattice cone", "rk{T} is not linear on the square cone",
          Json{{"space", "square_cone"}, {"ops", {"1,-1,0"}}}, yes(!nonlinear.linear && strict), "true");
}

void lemmas(Builder& b) {
  b.group("Dominating operators");
  const auto q3 = OrderedSpace::named("standard:3");
  const auto p = SuperlinearMap::rk_of_linear(RkInstance(q3, {fn({-1, 1, -1}), fn({1, -1, -1})}));
  const auto x = from_ints({1, 1, 1});
  const Json in{{"space", "standard:3"}, {"p", "rk{(-1,1,-1), (1,-1,-1)}"}, {"x", "1,1,1"}};
  const auto m = majorant_at_order_unit(p, x, from_ints({3}));
  b.check("majorant at an order unit", "M >= p and M x = y", in,
          "M x = " + to_csv(m.apply(x)) + ", dominates " + yes(dominates(m, p)), "M x = 3, dominates true");
  const auto below = dominating_below(p, x, Rational(5, 2));
  b.check("majorant below a value", "M >= p and M(x) < y for y = 5/2", in,
          "M " + vec(below.row(0)) + ", M x = " + to_csv(below.apply(x)) + ", dominates " + yes(dominates(below, p)),
          "M (1,1,0), M x = 2, dominates true");
  const auto q2 = OrderedSpace::named("standard:2");
  const ExtensionProblem prob{SuperlinearMap::min_of_linear(q2, {fn({1, 0}), fn({0, 1})}),
                              {from_ints({1, 1})},
                              LinearOperator::functional({Rational(1, 2), Rational(1, 2)})};
  std::vector<ExtensionStep> steps;
  const auto ext = extend_full(prob, &steps);
  b.check("extension from the diagonal", "T0 on span{(1,1)} extends to M >= min(x1, x2)",
          Json{{"problem", to_json(prob)}},
          "M " + vec(ext.row(0)) + ", M(1,1) = " + to_csv(ext.apply(from_ints({1, 1}))) + ", dominates " +
              yes(dominates(ext, prob.p)),
          "M (0,1), M(1,1) = 1, dominates true");
  b.check("extension step", "y0 = sup p(v + x0) - T0 v", Json{{"x0", "1,0"}},
          steps.empty() ? "none" : "y0 " + to_csv(steps[0].y0) + ", upper " + to_csv(steps[0].upper), "y0 0, upper 1");
}

void grkf(Builder& b) {
  b.group("Linearity chain");
  TrialConfig cfg;
  cfg.trials = 5;
  std::vector<std::vector<std::string>> rows;
  for (const char* id : {"standard:3", "square_cone", "example_s2"}) {
    const auto s = OrderedSpace::named(id);
    const auto r = verify_grkf(s, cfg);
    rows.push_back({id, r.regime, yes(r.lattice), yes(r.rdp), yes(r.linear_all), yes(r.linear_single), yes(r.lrdp)});
    const std::string verdict = "consistent " + yes(r.consistent()) + ", all " + yes(r.lattice && r.rdp && r.linear_all &&
                                                                                     r.linear_single && r.lrdp);
    const std::string id_s = id;
    const bool all_true = id_s != "square_cone";
    b.check(id_s + " conditions", "the five conditions are equivalent", Json{{"space", id}, {"seed", cfg.seed}, {"trials", cfg.trials}},
            verdict, "consistent true, all " + yes(all_true));
    if (!all_true)
      b.check(id_s + " certificates", "each failed condition carries a re-verified certificate",
              Json{{"space", id}, {"seed", cfg.seed}, {"trials", cfg.trials}}, yes(certificates_verify(s, r)), "true");
  }
  b.table("Condition summary", {"space", "regime", "lattice", "RDP", "rk linear", "rk{0,T} linear", "L-RDP"}, std::move(rows));
}

std::string escape_cell(std::string s) {
  std::string out;
  for (char c : s) out += c == '|' ? std::string("\\|") : std::string(1, c);
  return out;
}

}  // namespace

bool WorkedExampleReport::all_pass() const { return failures() == 0; }

std::size_t WorkedExampleReport::failures() const {
  std::size_t n = 0;
  for (const auto& c : checks) n += c.pass ? 0 : 1;
  return n;
}

std::string WorkedExampleReport::markdown() const {
  std::ostringstream os;
  os << "# Worked examples\n\n" << checks.size() - failures() << " of " << checks.size() << " checks pass.\n";
  std::string current;
  for (std::size_t i = 0; i <= checks.size(); ++i) {
    const std::string g = i < checks.size() ? checks[i].group : "";
    if (g != current) {
      if (!current.empty()) {
        for (const auto& t : tables) {
          if (t.group != current) continue;
          os << "\n### " << t.title << "\n\n|";
          for (const auto& h : t.header) os << " " << h << " |";
          os << "\n|";
          for (std::size_t k = 0; k < t.header.size(); ++k) os << " --- |";
          os << "\n";
          for (const auto& r : t.rows) {
            os << "|";
            for (const auto& c : r) os << " " << escape_cell(c) << " |";
            os << "\n";
          }
        }
      }
      if (i == checks.size()) break;
      current = g;
      os << "\n## " << g << "\n\n| check | claim | computed | expected | result |\n| --- | --- | --- | --- | --- |\n";
    }
    const auto& c = checks[i];
    os << "| " << escape_cell(c.name) << " | " << escape_cell(c.claim) << " | " << escape_cell(c.computed) << " | "
       << escape_cell(c.expected) << " | " << (c.pass ? "PASS" : "FAIL") << " |\n";
  }
  return os.str();
}

io::Json WorkedExampleReport::json() const {
  Json cs = Json::array();
  for (const auto& c : checks)
    cs.push_back(Json{{"group", c.group},
                      {"name", c.name},
                      {"claim", c.claim},
                      {"inputs", c.inputs},
                      {"computed", c.computed},
                      {"expected", c.expected},
                      {"pass", c.pass}});
  Json ts = Json::array();
  for (const auto& t : tables) ts.push_back(Json{{"group", t.group}, {"title", t.title}, {"header", t.header}, {"rows", t.rows}});
  return Json{{"all_pass", all_pass()}, {"checks", std::move(cs)}, {"tables", std::move(ts)}};
}

WorkedExampleReport build_report() {
  WorkedExampleReport r;
  Builder b(r);
  lexicographic(b);
  semi_open_example(b);
  rk_transform(b);
  lemmas(b);
  grkf(b);
  return r;
}

}  // namespace ordercone
