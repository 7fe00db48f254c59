#include "epilip/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "epilip/core.hpp"
#include "epilip/lp.hpp"
#include "epilip/pareto.hpp"
#include "epilip/polyhedra.hpp"
#include "epilip/sensitivity.hpp"
#include "epilip/verify.hpp"

namespace epilip::cli {

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : data) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Vector vector_arg(const std::string& text, std::string_view name) {
  try {
    return parse_vector(text);
  } catch (const Error& e) {
    throw UsageError("--" + std::string(name) + ": " + e.what());
  }
}

Rational rational_arg(const std::string& text, std::string_view name) {
  try {
    return parse_rational(text);
  } catch (const Error& e) {
    throw UsageError("--" + std::string(name) + ": " + e.what());
  }
}

std::string approx(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string yes_no(bool v) { return v ? "yes" : "no"; }

std::string vec(VectorView v) { return to_string(v); }

std::string set_of(const std::vector<Vector>& vs) {
  std::string out = "{";
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i) out += ",";
    out += to_string(VectorView(vs[i]));
  }
  return out + "}";
}

std::string index_list(const std::vector<std::size_t>& idx) {
  if (idx.empty()) return "none";
  std::string out;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(idx[i] + 1);
  }
  return out;
}

std::string magnitude(const Magnitude& m, Exactness e) {
  return m.to_string() + " (" + std::string(exactness_name(e)) + ")";
}

struct Input {
  Problem problem;
  std::string name;
  std::uint64_t digest = 0;
};

Input load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read problem file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  Input input;
  input.problem = parse_problem(text);
  input.name = std::filesystem::path(path).filename().string();
  input.digest = fnv1a64(text);
  return input;
}

void header(std::ostream& out, std::string_view command, const Input& in) {
  char digest[17];
  std::snprintf(digest, sizeof digest, "%016llx", static_cast<unsigned long long>(in.digest));
  out << "command: " << command << "\n";
  out << "input: " << in.name << "\n";
  out << "digest: fnv1a64:" << digest << "\n";
}

void print_system(std::ostream& out, std::string_view prefix, const SymbolicSystem& sys) {
  out << prefix << "rows: " << sys.rows.size() << "\n";
  for (const auto& r : sys.rows) out << "  " << r.to_string() << "\n";
  out << prefix << "conditions: " << sys.consistency.size() << "\n";
  for (const auto& f : sys.consistency) out << "  0 <= " << f.to_string() << "\n";
}

Vector check_length(Vector v, std::size_t expected, std::string_view what) {
  if (v.size() != expected)
    throw Error(Errc::dimension_mismatch, std::string(what) + " needs " + std::to_string(expected) + " entries");
  return v;
}

Vector default_anchor_x(const Problem& p) {
  auto w = bounded_weights(p);
  if (!w || !in_dom_s(p, p.nominal))
    throw Error(Errc::not_in_dom_s, "no nondominated point exists at the nominal parameter");
  return *pareto_point(p, p.nominal, *w).witness;
}

// ---------------------------------------------------------------------------

void cmd_analyze(std::ostream& out, const Input& in) {
  const Problem& p = in.problem;
  header(out, "analyze", in);
  out << "n: " << p.n << "\nq: " << p.q() << "\nm: " << p.m() << "\n";
  out << "nominal: " << vec(p.nominal) << "\n";
  out << "decision_norm: " << norm_name(p.decision_norm) << "\n";
  out << "image_norm: " << norm_name(p.image_norm) << "\n";
  auto feasible = solve(p.rows, p.nominal, zeros(p.n));
  out << "feasible_at_nominal: " << yes_no(feasible.status != LpStatus::infeasible) << "\n";
  auto w = bounded_weights(p);
  out << "bounded_weights: " << (w ? vec(*w) : std::string("none")) << "\n";
  out << "in_dom_s: " << yes_no(in_dom_s(p, p.nominal)) << "\n";
  auto theta = polar_generators(p.objectives, p.n);
  out << "polar_rays: " << set_of(theta.rays) << "\n";
  out << "polar_lineality: " << set_of(theta.lineality) << "\n";
  if (p.q() != 1) return;

  const Vector& c = p.objectives.front();
  out << "dual_consistent: " << yes_no(dual_consistent(p.rows, c)) << "\n";
  auto sol = solve(p.rows, p.nominal, c);
  out << "status_at_nominal: " << status_name(sol.status) << "\n";
  if (sol.status != LpStatus::optimal) return;
  out << "value_at_nominal: " << to_string(sol.value) << "\n";
  out << "optimal_point: " << vec(sol.primal_point) << "\n";
  out << "dual_point: " << vec(sol.dual_point) << "\n";
  try {
    auto rel = lp_relations(p, p.nominal, sol.primal_point);
    out << "lip_P: " << magnitude(rel.lip_P, Exactness::exact) << "\n";
    out << "lip_EP: " << magnitude(rel.lip_EP, Exactness::exact) << "\n";
    out << "lip_EF: " << magnitude(rel.lip_EF, Exactness::exact) << "\n";
    out << "dual_norm_c: " << rel.dual_norm_c.to_string() << "\n";
    out << "proportionality: " << (rel.proportionality_ok ? "holds" : "fails") << "\n";
  } catch (const Error& e) {
    out << "lip_relations: unavailable (" << e.name() << ")\n";
  }
}

enum class Prune { none, global, at_nominal };

void cmd_eliminate(std::ostream& out, const Input& in, const std::vector<EliminationStep>& given,
                   Prune prune) {
  const Problem& p = in.problem;
  header(out, "eliminate", in);
  auto steps = given;
  out << "directions: " << (steps.empty() ? "epigraph" : "given") << "\n";
  if (steps.empty()) steps = epigraph_steps(p);
  out << "prune: " << (prune == Prune::none ? "none" : prune == Prune::global ? "global" : "at-nominal") << "\n";
  for (auto& s : steps) check_length(s.direction, p.n, "direction");

  SymbolicSystem cur = SymbolicSystem::from_problem(p);
  std::size_t index = 0;
  for (const auto& s : steps) {
    ++index;
    cur = s.span ? eliminate_span_direction(cur, s.direction) : eliminate_cone_direction(cur, s.direction);
    out << "step: " << index << " " << (s.span ? "span " : "cone ") << vec(s.direction) << "\n";
    print_system(out, "", cur);
    if (prune == Prune::none) continue;
    // Rows implied only at b-bar are reported but kept: they matter elsewhere.
    auto report = remove_redundancy(cur);
    out << "dropped: " << index_list(report.dropped) << "\n";
    if (prune == Prune::at_nominal)
      out << "locally_dropped: " << index_list(remove_redundancy(cur, p.nominal).locally_dropped) << "\n";
    cur = std::move(report.system);
  }
  print_system(out, "result_", cur);
}

void cmd_value_function(std::ostream& out, const Input& in) {
  const Problem& p = in.problem;
  header(out, "value-function", in);
  auto vf = lp_value_function(p);
  out << "objective: " << vec(vf.objective) << "\n";
  out << "pieces: " << vf.pieces.size() << "\n";
  for (const auto& f : vf.pieces) out << "  " << f.to_string() << "\n";
  out << "domain_conditions: " << vf.domain_conditions.size() << "\n";
  for (const auto& f : vf.domain_conditions) out << "  0 <= " << f.to_string() << "\n";
  if (!vf.in_domain(p.nominal)) {
    out << "nominal_in_domain: no\n";
    return;
  }
  out << "nominal_in_domain: yes\n";
  out << "value_at_nominal: " << to_string(vf.evaluate(p.nominal)) << "\n";
  out << "piece_values_at_nominal:";
  for (const auto& f : vf.pieces) out << " " << to_string(f.evaluate(p.nominal));
  out << "\n";
  out << "active_at_nominal: " << index_list(vf.active(p.nominal)) << "\n";
}

struct AnchorArgs {
  std::string x, p;
};

void print_subdiff(std::ostream& out, const SubdiffSet& set) {
  out << "exactness: " << exactness_name(set.exactness) << "\n";
  out << "pieces: " << set.pieces.size() << "\n";
  out << "active_pieces: " << set.active_count() << "\n";
  std::size_t index = 0;
  for (const auto& piece : set.pieces) {
    ++index;
    if (!piece.active) continue;
    out << "piece: " << index << " weight " << vec(piece.weight) << "\n";
    out << "  scale: " << piece.scale.to_string() << "\n";
    out << "  vertices: conv" << set_of(piece.vertices) << "\n";
    out << "  rays: " << (piece.rays.empty() ? std::string("none") : "cone" + set_of(piece.rays)) << "\n";
    out << "  sup_l1: " << piece.l1_bound().to_string() << "\n";
  }
}

void cmd_subdiff(std::ostream& out, const Input& in, const std::string& target, const AnchorArgs& anchor,
                 std::optional<std::size_t> grid) {
  const Problem& p = in.problem;
  header(out, "subdiff", in);
  const std::size_t k = grid.value_or(WeightGrid::default_resolution(p.q()));
  if (target == "f") {
    Vector x = anchor.x.empty() ? default_anchor_x(p) : check_length(vector_arg(anchor.x, "anchor-x"), p.n, "anchor-x");
    out << "target: F\nmode: composite\ngrid: " << k << "\nanchor_x: " << vec(x) << "\n";
    print_subdiff(out, subdiff_F(p, p.nominal, x, WeightGrid::simplex(p, GridMode::composite, k)));
  } else {
    Vector pt;
    if (!anchor.p.empty()) pt = check_length(vector_arg(anchor.p, "anchor-p"), p.q(), "anchor-p");
    else if (!anchor.x.empty()) pt = p.image(check_length(vector_arg(anchor.x, "anchor-x"), p.n, "anchor-x"));
    else pt = p.image(default_anchor_x(p));
    out << "target: P\nmode: image\ngrid: " << k << "\nanchor_p: " << vec(pt) << "\n";
    print_subdiff(out, subdiff_P(p, p.nominal, pt, WeightGrid::simplex(p, GridMode::image, k)));
  }
}

Vector anchor_for(const Problem& p, Target target, const AnchorArgs& anchor) {
  if (target == Target::lip_EF)
    return anchor.x.empty() ? default_anchor_x(p) : check_length(vector_arg(anchor.x, "anchor-x"), p.n, "anchor-x");
  if (!anchor.p.empty()) return check_length(vector_arg(anchor.p, "anchor-p"), p.q(), "anchor-p");
  if (!anchor.x.empty()) return p.image(check_length(vector_arg(anchor.x, "anchor-x"), p.n, "anchor-x"));
  return p.image(default_anchor_x(p));
}

void cmd_modulus(std::ostream& out, const Input& in, const std::string& target_text, const AnchorArgs& anchor,
                 std::optional<std::size_t> grid) {
  const Problem& p = in.problem;
  header(out, "modulus", in);
  Target target = parse_target(target_text);
  if (target == Target::lip_P && p.q() != 1)
    throw Error(Errc::lip_p_unsupported, "lip P is only computable for a single objective");
  Vector a = anchor_for(p, target, anchor);
  auto report = lip_modulus(p, target, p.nominal, a, grid);
  out << "target: " << target_name(target) << "\n";
  out << (target == Target::lip_EF ? "anchor_x: " : "anchor_p: ") << vec(a) << "\n";
  out << "grid: " << grid.value_or(WeightGrid::default_resolution(p.q())) << "\n";
  out << "value: " << magnitude(report.value, report.exactness) << "\n";
  out << "value_approx: " << approx(report.value.approx()) << "\n";
  if (report.exactness == Exactness::grid_approximation) out << "bound: lower\n";
  out << "active_pieces: " << report.active_pieces << "\n";
  if (report.attaining_weight) {
    out << "attaining_weight: " << vec(*report.attaining_weight) << "\n";
    out << "attaining_subgradient: " << vec(report.attaining_subgradient) << " / "
        << report.attaining_scale.to_string() << "\n";
  }
  out << "profile: weight sup_l1\n";
  for (const auto& [w, v] : report.profile) out << "  " << vec(w) << " " << approx(v.approx()) << "\n";
}

void cmd_pareto_check(std::ostream& out, const Input& in, const std::string& b_text, const std::string& x_text) {
  const Problem& p = in.problem;
  header(out, "pareto-check", in);
  Vector b = check_length(vector_arg(b_text, "b"), p.m(), "b");
  Vector x = check_length(vector_arg(x_text, "x"), p.n, "x");
  auto res = dominance_check(p, b, x);
  out << "b: " << vec(b) << "\nx: " << vec(x) << "\nimage: " << vec(p.image(x)) << "\n";
  out << "status: " << (res.nondominated ? "nondominated" : "dominated") << "\n";
  if (res.dominator) {
    out << "dominator: " << vec(*res.dominator) << "\n";
    out << "dominator_image: " << vec(p.image(*res.dominator)) << "\n";
  }
}

void cmd_dominate(std::ostream& out, const Input& in, const std::string& b_text, const std::string& x_text) {
  const Problem& p = in.problem;
  header(out, "dominate", in);
  Vector b = check_length(vector_arg(b_text, "b"), p.m(), "b");
  Vector x = check_length(vector_arg(x_text, "x"), p.n, "x");
  auto res = dominate_to_nondominated(p, b, x);
  out << "b: " << vec(b) << "\nx: " << vec(x) << "\nimage: " << vec(p.image(x)) << "\n";
  out << "result: " << vec(res.x) << "\n";
  out << "result_image: " << vec(p.image(res.x)) << "\n";
  out << "stages: " << res.stages << "\n";
  out << "nondominated: " << yes_no(is_nondominated(p, b, res.x)) << "\n";
}

struct VerifyArgs {
  std::string target;
  std::string radius = "1/10";
  std::size_t samples = 1000;
  std::uint64_t seed = 1;
  std::uint64_t denominator = 1000;
  std::optional<std::size_t> grid;
};

void print_estimate(std::ostream& out, std::string_view prefix, const LipEstimate& est) {
  out << prefix << "pairs_used: " << est.pairs_used << "\n";
  out << prefix << "pairs_skipped: " << est.pairs_skipped << "\n";
  out << prefix << "estimate: " << approx(est.estimate()) << "\n";
  out << prefix << "estimate_exact: " << est.value.to_string() << "\n";
}

void cmd_verify(std::ostream& out, const Input& in, const VerifyArgs& args, const AnchorArgs& anchor) {
  const Problem& p = in.problem;
  header(out, "verify", in);
  SampleConfig config;
  config.radius = rational_arg(args.radius, "radius");
  if (config.radius <= 0) throw UsageError("--radius must be positive");
  config.samples = args.samples;
  config.seed = args.seed;
  config.denominator_bound = args.denominator;
  out << "target: " << args.target << "\nradius: " << to_string(config.radius) << "\nsamples: " << config.samples
      << "\nseed: " << config.seed << "\n";

  if (args.target == "convexity") {
    auto res = convexity_check(p, config);
    out << "samples_checked: " << res.samples_checked << "\n";
    out << "convex: " << yes_no(res.ok) << "\n";
    if (res.witness) {
      const auto& w = *res.witness;
      out << "witness: b1 " << vec(w.b1) << " p1 " << vec(w.p1) << " b2 " << vec(w.b2) << " p2 " << vec(w.p2)
          << " lambda " << to_string(w.lambda) << "\n";
    }
    return;
  }
  if (args.target == "interval") {
    Vector zero{0};
    print_estimate(out, "M_", empirical_lip(IntervalFixture(false), zero, zero, config));
    print_estimate(out, "EM_", empirical_lip(IntervalFixture(true), zero, zero, config));
    return;
  }
  MappingKind kind;
  Target target;
  if (args.target == "ef") {
    kind = MappingKind::EF;
    target = Target::lip_EF;
  } else if (args.target == "ep") {
    kind = MappingKind::EP;
    target = Target::lip_EP;
  } else {
    kind = MappingKind::P;
    target = Target::lip_P;
  }
  Vector a = anchor_for(p, target, anchor);
  out << (kind == MappingKind::EF ? "anchor_x: " : "anchor_p: ") << vec(a) << "\n";
  auto est = empirical_lip(p, kind, p.nominal, a, config);
  print_estimate(out, "", est);
  if (kind == MappingKind::P && p.q() != 1) {
    out << "closed_form: unavailable\n";
    return;
  }
  auto report = lip_modulus(p, target, p.nominal, a, args.grid);
  out << "closed_form: " << magnitude(report.value, report.exactness) << "\n";
  out << "closed_form_approx: " << approx(report.value.approx()) << "\n";
  out << "estimate_within_closed_form: " << yes_no(est.estimate() <= report.value.approx() + 1e-9) << "\n";
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact Lipschitz analysis of right-hand-side parameterized multiobjective linear programs",
               "epilip"};
  app.require_subcommand(1);

  std::string file;
  AnchorArgs anchor;
  std::string target, b_text, x_text, prune_text = "global";
  std::optional<std::size_t> grid;
  std::vector<std::string> cones, spans;
  VerifyArgs verify_args;

  auto add_file = [&](CLI::App* sub) { sub->add_option("file", file, "problem file")->required(); };
  auto add_grid = [&](CLI::App* sub) {
    sub->add_option("--grid", grid, "weight grid resolution K")->check(CLI::PositiveNumber);
  };
  auto add_anchor = [&](CLI::App* sub) {
    sub->add_option("--anchor-x", anchor.x, "anchor in decision space");
    sub->add_option("--anchor-p", anchor.p, "anchor in image space");
  };

  auto* analyze = app.add_subcommand("analyze", "domain checks and, for one objective, the value at b-bar");
  add_file(analyze);

  auto* eliminate = app.add_subcommand("eliminate", "fold cone/span directions into the feasible set");
  add_file(eliminate);
  auto* cone_opt = eliminate->add_option("--cone", cones, "cone direction")->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  auto* span_opt = eliminate->add_option("--span", spans, "span direction")->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  cone_opt->allow_extra_args(false);
  span_opt->allow_extra_args(false);
  eliminate->add_option("--prune", prune_text, "none|global|at-nominal")
      ->check(CLI::IsMember({"none", "global", "at-nominal"}));

  auto* value_fn = app.add_subcommand("value-function", "piecewise description of the optimal value");
  add_file(value_fn);

  auto* subdiff = app.add_subcommand("subdiff", "subdifferential of F or P at the anchor");
  add_file(subdiff);
  subdiff->add_option("--target", target, "f|p")->required()->check(CLI::IsMember({"f", "p"}));
  add_anchor(subdiff);
  add_grid(subdiff);

  auto* modulus = app.add_subcommand("modulus", "Lipschitz modulus lip_EF, lip_EP or lip_P");
  add_file(modulus);
  modulus->add_option("--target", target, "ef|ep|p")->required()->check(CLI::IsMember({"ef", "ep", "p"}));
  add_anchor(modulus);
  add_grid(modulus);

  auto* pareto = app.add_subcommand("pareto-check", "nondominance test");
  add_file(pareto);
  pareto->add_option("--b", b_text, "parameter")->required();
  pareto->add_option("--x", x_text, "feasible point")->required();

  auto* dominate = app.add_subcommand("dominate", "move a feasible point to a nondominated one");
  add_file(dominate);
  dominate->add_option("--b", b_text, "parameter")->required();
  dominate->add_option("--x", x_text, "feasible point")->required();

  auto* verify = app.add_subcommand("verify", "Monte-Carlo oracles");
  add_file(verify);
  verify->add_option("--target", verify_args.target, "ef|ep|p|convexity|interval")
      ->required()
      ->check(CLI::IsMember({"ef", "ep", "p", "convexity", "interval"}));
  verify->add_option("--radius", verify_args.radius, "sup-norm radius around b-bar");
  verify->add_option("--samples", verify_args.samples, "number of samples");
  verify->add_option("--seed", verify_args.seed, "seed");
  verify->add_option("--denominator", verify_args.denominator, "sample denominator bound")
      ->check(CLI::PositiveNumber);
  add_anchor(verify);
  verify->add_option("--grid", verify_args.grid, "grid resolution for the closed form")
      ->check(CLI::PositiveNumber);

  try {
    std::vector<std::string> args;
    for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    Input in = load(file);
    if (analyze->parsed()) {
      cmd_analyze(out, in);
    } else if (eliminate->parsed()) {
      // Interleaved --cone/--span occurrences keep their command-line order.
      std::vector<EliminationStep> steps;
      std::size_t ci = 0, si = 0;
      for (auto* opt : eliminate->parse_order()) {
        if (opt == cone_opt) steps.push_back({false, vector_arg(cones.at(ci++), "cone")});
        else if (opt == span_opt) steps.push_back({true, vector_arg(spans.at(si++), "span")});
      }
      Prune prune = prune_text == "none" ? Prune::none : prune_text == "global" ? Prune::global : Prune::at_nominal;
      cmd_eliminate(out, in, steps, prune);
    } else if (value_fn->parsed()) {
      cmd_value_function(out, in);
    } else if (subdiff->parsed()) {
      cmd_subdiff(out, in, target, anchor, grid);
    } else if (modulus->parsed()) {
      cmd_modulus(out, in, target, anchor, grid);
    } else if (pareto->parsed()) {
      cmd_pareto_check(out, in, b_text, x_text);
    } else if (dominate->parsed()) {
      cmd_dominate(out, in, b_text, x_text);
    } else if (verify->parsed()) {
      cmd_verify(out, in, verify_args, anchor);
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    out << "error: " << e.name() << "\n";
    out << "message: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace epilip::cli
