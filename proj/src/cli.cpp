#include "ordercone/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>

#include "CLI11.hpp"
#include "ordercone/errors.hpp"
#include "ordercone/json_io.hpp"
#include "ordercone/report.hpp"

namespace ordercone::cli {

namespace {

using io::Json;
using io::to_csv;
using io::to_json;

struct Options {
  std::string space;
  std::string ops_file;
  std::vector<std::string> ops;
  std::string point, x, y, lo;
  std::string form = "inequality";
  std::string cls = "all";
  std::string kind = "rk";
  std::string problem;
  std::string out_path;
  std::string below;
  std::uint64_t seed = 1;
  std::size_t samples = 20;
  std::size_t dim = 3;
  std::size_t gens = 0;
  std::size_t trials = 5;
  std::size_t cones = 10;
  std::size_t threads = 1;
  bool json = false;
};

// A named id ("standard:3", ...) or a SpaceFile path.
OrderedSpace load_space(const std::string& spec) {
  if (spec.empty()) throw InputError("--space is required");
  if (std::filesystem::exists(spec)) return io::build(io::space_file_from_json(io::load_file(spec), spec));
  return OrderedSpace::named(spec);
}

// "-1,1,-1" is a functional; rows of a matrix are separated by ';'.
LinearOperator parse_operator(const std::string& text) {
  std::vector<RatVector> rows;
  std::size_t start = 0;
  for (;;) {
    const auto semi = text.find(';', start);
    rows.push_back(io::parse_csv(std::string_view(text).substr(start, semi == std::string::npos ? std::string::npos : semi - start)));
    if (semi == std::string::npos) break;
    start = semi + 1;
  }
  const std::size_t n = rows.front().size();
  for (const auto& r : rows)
    if (r.size() != n) throw DimensionMismatch("--op '" + text + "': rows of different lengths");
  return LinearOperator(RatMatrix(rows, n));
}

std::vector<LinearOperator> load_ops(const Options& o) {
  std::vector<LinearOperator> out;
  if (!o.ops_file.empty()) out = io::operators_from_json(io::load_file(o.ops_file), o.ops_file);
  for (const auto& t : o.ops) out.push_back(parse_operator(t));
  if (out.empty()) throw InputError("give operators with --ops FILE or --op CSV");
  return out;
}

RatVector vector_arg(const std::string& text, const char* flag, std::size_t dim) {
  if (text.empty()) throw InputError(std::string(flag) + " is required");
  RatVector v;
  try {
    v = io::parse_csv(text);
  } catch (const InputError& e) {
    throw InputError(std::string(flag) + ": " + e.what());
  }
  if (v.size() != dim)
    throw DimensionMismatch(std::string(flag) + ": expected " + std::to_string(dim) + " entries, got " + std::to_string(v.size()));
  return v;
}

void print_witness(std::ostream& out, const NonlinearWitness& w) {
  out << "witness x " << to_csv(w.x) << " y " << to_csv(w.y) << "\n";
  out << "rk(x) " << to_csv(w.rk_x) << " rk(y) " << to_csv(w.rk_y) << " rk(x+y) " << to_csv(w.rk_sum) << "\n";
}

void print_operator(std::ostream& out, const LinearOperator& t) {
  for (std::size_t i = 0; i < t.codomain_dim(); ++i) out << "  " << to_csv(t.row(i)) << "\n";
}

int rk_eval_cmd(const Options& o, std::ostream& out) {
  const RkInstance inst(load_space(o.space), load_ops(o));
  const auto x = vector_arg(o.point, "--point", inst.dim());
  RkValue v;
  if (o.form == "inequality") v = rk_eval(inst, x);
  else if (o.form == "equality") v = rk_eval_equality_form(inst, x);
  else if (o.form == "positive") v = rk_positive(inst, x);
  else throw InputError("--form must be inequality, equality or positive");
  if (o.json) {
    out << to_json(v).dump(2) << "\n";
    return kExitOk;
  }
  out << to_csv(v.value) << "\n";
  if (v.decomposition)
    for (std::size_t j = 0; j < v.decomposition->size(); ++j) out << "x_" << j + 1 << " = " << to_csv((*v.decomposition)[j]) << "\n";
  else
    out << "not attained by a common decomposition\n";
  return kExitOk;
}

int rk_linearity_cmd(const Options& o, std::ostream& out) {
  const auto r = rk_linearity(RkInstance(load_space(o.space), load_ops(o)));
  if (o.json) {
    out << to_json(r).dump(2) << "\n";
  } else if (r.linear) {
    out << "linear (boundary " << r.boundary_status << ")\n";
    print_operator(out, *r.op);
  } else {
    out << "nonlinear\n";
    print_witness(out, *r.witness);
  }
  return r.linear ? kExitOk : kExitCheckFailed;
}

int rk_sup_cmd(const Options& o, std::ostream& out) {
  const auto r = sup_operator(RkInstance(load_space(o.space), load_ops(o)), o.seed, o.samples);
  if (o.json) {
    out << to_json(r).dump(2) << "\n";
  } else if (r.sup) {
    out << "sup\n";
    print_operator(out, *r.sup);
    out << "majorizes " << (r.majorizes ? "yes" : "no") << ", least on samples " << (r.least_on_samples ? "yes" : "no") << "\n";
  } else {
    out << "no supremum\n";
    if (r.witness) print_witness(out, *r.witness);
  }
  return r.sup ? kExitOk : kExitCheckFailed;
}

int check_cmd(const Options& o, std::ostream& out, bool lrdp) {
  const auto space = load_space(o.space);
  const auto x = vector_arg(o.x, "--x", space.dim());
  const auto y = vector_arg(o.y, "--y", space.dim());
  RdpReport r;
  if (lrdp) {
    if (o.cls != "all" && o.cls != "regular") throw InputError("--class must be all or regular");
    r = check_lrdp(space, x, y, o.cls == "all" ? FunctionalClass::All : FunctionalClass::Regular);
  } else {
    r = check_rdp(space, x, y);
  }
  const bool ok = lrdp ? *r.lrdp_holds : r.holds;
  if (o.json) {
    out << to_json(r).dump(2) << "\n";
    return ok ? kExitOk : kExitCheckFailed;
  }
  out << "rdp " << (r.holds ? "holds" : "fails") << "\n";
  if (r.witness) out << "witness " << to_csv(*r.witness) << "\n";
  for (const auto& w : r.witnesses)
    if (!r.witness || w != *r.witness) out << "witness " << to_csv(w) << "\n";
  if (lrdp) {
    out << "lrdp " << (*r.lrdp_holds ? "holds" : "fails") << "\n";
    if (r.lrdp_witness) out << "separated point " << to_csv(*r.lrdp_witness) << "\n";
    if (r.separator)
      out << "separator " << to_csv(r.separator->separator.row(0)) << " sup " << r.separator->bound << " value "
          << r.separator->value << "\n";
  }
  return ok ? kExitOk : kExitCheckFailed;
}

int separate_cmd(const Options& o, std::ostream& out) {
  const auto space = load_space(o.space);
  const std::size_t n = space.dim();
  const auto p = vector_arg(o.point, "--point", n);
  const auto lo = o.lo.empty() ? zeros(n) : vector_arg(o.lo, "--lo", n);
  auto set = order_interval(space, lo, vector_arg(o.x, "--x", n)).set;
  if (!o.y.empty()) set = minkowski_sum(set, order_interval(space, zeros(n), vector_arg(o.y, "--y", n)).set);
  const auto s = strict_separation(p, set);
  if (o.json) {
    out << (s ? to_json(*s) : Json(nullptr)).dump(2) << "\n";
  } else if (s) {
    out << "separator " << to_csv(s->separator.row(0)) << "\nsup over set " << s->bound << "\nvalue at point " << s->value << "\n";
  } else {
    out << "point lies in the closure of the set\n";
  }
  return s ? kExitOk : kExitCheckFailed;
}

int hb_extend_cmd(const Options& o, std::ostream& out) {
  if (o.problem.empty()) throw InputError("--problem is required");
  const auto prob = io::problem_from_json(io::load_file(o.problem), o.problem);
  std::vector<ExtensionStep> steps;
  const auto m = extend_full(prob, &steps);
  bool restricts = true;
  for (const auto& b : prob.basis) restricts = restricts && m.apply(b) == prob.t0.apply(b);
  const bool dom = dominates(m, prob.p);
  if (o.json) {
    Json js = Json::array();
    for (const auto& s : steps) js.push_back(to_json(s));
    out << Json{{"operator", to_json(m)}, {"steps", js}, {"restricts", restricts}, {"dominates", dom}}.dump(2) << "\n";
  } else {
    out << "M\n";
    print_operator(out, m);
    for (const auto& s : steps)
      out << "step x0 " << to_csv(s.x0) << " y0 " << to_csv(s.y0) << " upper " << to_csv(s.upper) << "\n";
    out << "M = T0 on L " << (restricts ? "yes" : "no") << ", M >= p " << (dom ? "yes" : "no") << "\n";
  }
  return restricts && dom ? kExitOk : kExitCheckFailed;
}

int hb_majorant_cmd(const Options& o, std::ostream& out) {
  auto space = load_space(o.space);
  const auto x = vector_arg(o.x, "--x", space.dim());
  auto ops = load_ops(o);
  const std::size_t m = ops.front().codomain_dim();
  SuperlinearMap p = o.kind == "min"  ? SuperlinearMap::min_of_linear(std::move(space), std::move(ops))
                     : o.kind == "rk" ? SuperlinearMap::rk_of_linear(RkInstance(std::move(space), std::move(ops)))
                                      : throw InputError("--kind must be min or rk");
  LinearOperator op;
  if (!o.below.empty()) {
    op = dominating_below(p, x, Rational::parse(o.below));
  } else {
    op = majorant_at_order_unit(p, x, vector_arg(o.y, "--y", m));
  }
  const bool dom = dominates(op, p);
  if (o.json) {
    out << Json{{"operator", to_json(op)}, {"value", to_json(op.apply(x))}, {"p", to_json(p(x))}, {"dominates", dom}}.dump(2)
        << "\n";
  } else {
    out << "M\n";
    print_operator(out, op);
    out << "M x = " << to_csv(op.apply(x)) << ", p(x) = " << to_csv(p(x)) << ", M >= p " << (dom ? "yes" : "no") << "\n";
  }
  return dom ? kExitOk : kExitCheckFailed;
}

int lab_grkf_cmd(const Options& o, std::ostream& out) {
  TrialConfig cfg;
  cfg.seed = o.seed;
  cfg.dimension = o.dim;
  cfg.generator_count = o.gens == 0 ? o.dim + 1 : o.gens;
  cfg.trials = o.trials;
  cfg.threads = o.threads;
  std::vector<OrderedSpace> spaces;
  if (!o.space.empty()) {
    spaces.push_back(load_space(o.space));
  } else {
    for (std::size_t i = 0; i < o.cones; ++i) spaces.push_back(random_cone(cfg, i));
  }
  Json all = Json::array();
  std::size_t bad = 0;
  for (std::size_t i = 0; i < spaces.size(); ++i) {
    const auto r = verify_grkf(spaces[i], cfg);
    const bool certs = certificates_verify(spaces[i], r);
    if (!r.consistent() || !certs) ++bad;
    if (o.json) {
      auto j = to_json(r);
      j["cone"] = to_json(io::describe(spaces[i]));
      j["certificates_verified"] = certs;
      all.push_back(std::move(j));
    } else {
      out << "cone " << i << " rays " << spaces[i].closure().rays.size() << ": lattice " << r.lattice << " rdp " << r.rdp
          << " linear " << r.linear_all << " linear_single " << r.linear_single << " lrdp " << r.lrdp
          << (r.consistent() ? " consistent" : " INCONSISTENT") << (certs ? "" : " CERTIFICATE FAILURE") << "\n";
    }
  }
  if (o.json) out << all.dump(2) << "\n";
  else out << spaces.size() - bad << " of " << spaces.size() << " consistent\n";
  return bad == 0 ? kExitOk : kExitCheckFailed;
}

int report_cmd(const Options& o, std::ostream& out) {
  if (o.out_path.empty()) throw InputError("--out is required");
  namespace fs = std::filesystem;
  fs::path md = o.out_path;
  if (md.extension() != ".md") {
    fs::create_directories(md);
    md /= "report.md";
  } else if (md.has_parent_path()) {
    fs::create_directories(md.parent_path());
  }
  fs::path js = md;
  js.replace_extension(".json");
  const auto r = build_report();
  std::ofstream(md) << r.markdown();
  std::ofstream(js) << r.json().dump(2) << "\n";
  if (!std::ofstream(md, std::ios::app)) throw InputError(md.string() + ": cannot write");
  for (const auto& c : r.checks)
    if (!c.pass) out << "FAIL " << c.group << ": " << c.name << " computed " << c.computed << " expected " << c.expected << "\n";
  out << r.checks.size() - r.failures() << " of " << r.checks.size() << " checks pass; wrote " << md.string() << " and "
      << js.string() << "\n";
  return r.all_pass() ? kExitOk : kExitCheckFailed;
}

void apply_dimension_cap() {
  const char* cap = std::getenv("ORDERCONE_DIM_CAP");
  if (cap == nullptr) return;
  const std::string s = cap;
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); }) || s.size() > 6 ||
      std::stoul(s) == 0)
    throw InputError("ORDERCONE_DIM_CAP must be a positive integer");
  set_dimension_cap(std::stoul(s));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  std::function<int()> action;
  CLI::App app{"Exact computations on ordered vector spaces and the RK transform", "ordercone"};
  app.require_subcommand(1);
  app.add_flag("--json", o.json, "Print results as JSON");

  const auto space_opt = [&](CLI::App* c) { c->add_option("--space", o.space, "Named space id or SpaceFile path"); };
  const auto ops_opt = [&](CLI::App* c) {
    c->add_option("--ops", o.ops_file, "OperatorFile path");
    c->add_option("--op", o.ops, "Operator as CSV, rows separated by ';' (repeatable)");
  };
  const auto pair_opt = [&](CLI::App* c) {
    c->add_option("--x", o.x, "Positive vector x")->allow_extra_args(false);
    c->add_option("--y", o.y, "Positive vector y")->allow_extra_args(false);
  };

  auto* rk = app.add_subcommand("rk", "RK transform");
  rk->require_subcommand(1);
  auto* rk_ev = rk->add_subcommand("eval", "Evaluate rk at a point");
  space_opt(rk_ev);
  ops_opt(rk_ev);
  rk_ev->add_option("--point", o.point, "Point of X+ as CSV");
  rk_ev->add_option("--form", o.form, "inequality, equality or positive");
  rk_ev->callback([&] { action = [&] { return rk_eval_cmd(o, out); }; });
  auto* rk_lin = rk->add_subcommand("linearity", "Decide whether rk is linear");
  space_opt(rk_lin);
  ops_opt(rk_lin);
  rk_lin->callback([&] { action = [&] { return rk_linearity_cmd(o, out); }; });
  auto* rk_sup = rk->add_subcommand("sup", "Supremum of the operators");
  space_opt(rk_sup);
  ops_opt(rk_sup);
  rk_sup->add_option("--seed", o.seed, "Sampling seed");
  rk_sup->add_option("--samples", o.samples, "Sampled elements of D");
  rk_sup->callback([&] { action = [&] { return rk_sup_cmd(o, out); }; });

  auto* check = app.add_subcommand("check", "Decomposition properties");
  check->require_subcommand(1);
  auto* rdp = check->add_subcommand("rdp", "[0,x] + [0,y] = [0,x+y]?");
  space_opt(rdp);
  pair_opt(rdp);
  rdp->callback([&] { action = [&] { return check_cmd(o, out, false); }; });
  auto* lrdp = check->add_subcommand("lrdp", "L-Riesz decomposition for a pair");
  space_opt(lrdp);
  pair_opt(lrdp);
  lrdp->add_option("--class", o.cls, "all or regular");
  lrdp->callback([&] { action = [&] { return check_cmd(o, out, true); }; });

  auto* sep = app.add_subcommand("separate", "Strictly separate a point from [lo,x] or [0,x] + [0,y]");
  space_opt(sep);
  pair_opt(sep);
  sep->add_option("--point", o.point, "Point to separate");
  sep->add_option("--lo", o.lo, "Lower end of the interval (default 0)");
  sep->callback([&] { action = [&] { return separate_cmd(o, out); }; });

  auto* hb = app.add_subcommand("hb", "Hahn-Banach extension");
  hb->require_subcommand(1);
  auto* ext = hb->add_subcommand("extend", "Extend T0 from L to X");
  ext->add_option("--problem", o.problem, "ExtensionProblem JSON file");
  ext->callback([&] { action = [&] { return hb_extend_cmd(o, out); }; });
  auto* maj = hb->add_subcommand("majorant", "Linear M >= p with a prescribed value at x");
  space_opt(maj);
  ops_opt(maj);
  pair_opt(maj);
  maj->add_option("--kind", o.kind, "min or rk");
  maj->add_option("--below", o.below, "Scalar p: find M(x) = p(x) < VALUE instead");
  maj->callback([&] { action = [&] { return hb_majorant_cmd(o, out); }; });

  auto* lab = app.add_subcommand("lab", "Randomized experiments");
  lab->require_subcommand(1);
  auto* gk = lab->add_subcommand("grkf", "Equivalence of the five lattice/linearity conditions");
  gk->add_option("--seed", o.seed, "Seed");
  gk->add_option("--dim", o.dim, "Dimension of the random cones");
  gk->add_option("--gens", o.gens, "Generators per cone (default dim + 1)");
  gk->add_option("--trials", o.trials, "Trials per cone");
  gk->add_option("--cones", o.cones, "Number of random cones");
  gk->add_option("--threads", o.threads, "Worker threads (0 = all cores)");
  space_opt(gk);
  gk->callback([&] { action = [&] { return lab_grkf_cmd(o, out); }; });

  auto* rep = app.add_subcommand("paper-report", "Reproduce every worked example as markdown and JSON");
  rep->add_option("--out", o.out_path, "Directory, or a .md path (JSON is written next to it)");
  rep->callback([&] { action = [&] { return report_cmd(o, out); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  try {
    apply_dimension_cap();
    return action ? action() : kExitInputError;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

}  // namespace ordercone::cli
