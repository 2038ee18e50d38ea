// matfid: command-line driver for the genfid library.

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "genfid/channels.hpp"
#include "genfid/holevo.hpp"
#include "genfid/io.hpp"
#include "genfid/polar_realization.hpp"
#include "genfid/unitary_factors.hpp"

namespace {

using namespace genfid;
using nlohmann::ordered_json;

enum Exit { kOk = 0, kInput = 2, kMath = 3, kInfeasible = 4, kResidual = 5 };

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidArgument: return kInput;
    case ErrorKind::TargetOutOfInterval:
    case ErrorKind::ZBelowHalf:
    case ErrorKind::NoEpsilonFound:
    case ErrorKind::SearchExhausted: return kInfeasible;
    case ErrorKind::ResidualCheck: return kResidual;
    default: return kMath;
  }
}

struct Globals {
  std::string tol_profile;
  std::uint64_t seed = 0;
  std::string format = "json";
  ToleranceProfile tol;
};

class Report {
 public:
  Report(std::string command, const Globals& g) : g_(g) {
    j_["command"] = std::move(command);
    j_["inputs"] = ordered_json::object();
    j_["seed"] = g.seed;
    j_["tolerances"] = io::tolerances_to_json(g.tol);
    j_["outputs"] = ordered_json::object();
  }

  void input(const std::string& name, const std::string& path, bool keyword) {
    ordered_json e;
    e["path"] = path;
    e["sha256"] = keyword ? std::string("builtin") : io::sha256_file(path);
    j_["inputs"][name] = std::move(e);
  }
  void param(const std::string& name, ordered_json v) { j_["inputs"][name] = std::move(v); }

  void out(const std::string& name, double v) { j_["outputs"][name] = io::round15(v); }
  void out(const std::string& name, bool v) { j_["outputs"][name] = v; }
  void out(const std::string& name, int v) { j_["outputs"][name] = v; }
  void out(const std::string& name, const char* v) { j_["outputs"][name] = std::string(v); }
  void out(const std::string& name, std::string v) { j_["outputs"][name] = std::move(v); }
  void out(const std::string& name, std::string_view v) { j_["outputs"][name] = std::string(v); }
  void out(const std::string& name, Complex v) {
    out(name + "_re", v.real());
    out(name + "_im", v.imag());
  }
  void out_matrix(const std::string& name, const MatrixC& m, io::MatrixKind kind) {
    ordered_json mj = io::matrix_to_json(m, kind);
    for (auto& block : {"re", "im"})
      for (auto& row : mj[block])
        for (auto& e : row) e = io::round15(e.get<double>());
    j_["outputs"][name] = std::move(mj);
  }

  void emit(std::ostream& os) const {
    if (g_.format == "json") {
      os << j_.dump(2) << "\n";
      return;
    }
    const char* sep = g_.format == "csv" ? "," : " = ";
    if (g_.format == "csv") os << "key,value\n";
    for (const auto& [k, v] : j_["outputs"].items()) {
      if (v.is_object()) continue;
      os << k << sep << (v.is_number_float() ? io::format15(v.get<double>()) : v.dump()) << "\n";
    }
  }

 private:
  const Globals& g_;
  ordered_json j_;
};

bool is_keyword(const std::string& s) { return s == "identity" || s == "minusI"; }

MatrixC keyword_matrix(const std::string& s, Eigen::Index d) {
  const MatrixC id = MatrixC::Identity(d, d);
  return s == "minusI" ? MatrixC(-id) : id;
}

MatrixC load_matrix(const std::string& path, Eigen::Index d, const std::string& name,
                    Report& rep, const Globals& g) {
  const bool kw = is_keyword(path);
  rep.input(name, path, kw);
  if (kw) {
    if (d < 1) throw io::InputError(name + ": keyword needs a dimension from another input");
    return keyword_matrix(path, d);
  }
  MatrixC m = io::read_matrix_file(path, g.tol).m;
  if (d >= 1 && m.rows() != d) {
    throw Error(ErrorKind::DimensionMismatch,
                name + " is " + std::to_string(m.rows()) + "x" + std::to_string(m.rows()) +
                    ", expected " + std::to_string(d) + "x" + std::to_string(d));
  }
  return m;
}

PDMatrix load_pd(const std::string& path, Eigen::Index d, const std::string& name, Report& rep,
                 const Globals& g) {
  return PDMatrix(load_matrix(path, d, name, rep, g), g.tol);
}

struct PairArgs {
  std::string p;
  std::string q;
};

void add_pair(CLI::App* sub, PairArgs& a) {
  sub->add_option("--p", a.p, "matrix file for P")->required();
  sub->add_option("--q", a.q, "matrix file for Q")->required();
}

std::pair<PDMatrix, PDMatrix> load_pair(const PairArgs& a, Report& rep, const Globals& g) {
  if (is_keyword(a.p) && is_keyword(a.q)) {
    throw io::InputError("--p/--q: at least one must be a file to fix the dimension");
  }
  if (is_keyword(a.p)) {
    PDMatrix q = load_pd(a.q, 0, "q", rep, g);
    PDMatrix p = load_pd(a.p, q.dim(), "p", rep, g);
    return {std::move(p), std::move(q)};
  }
  PDMatrix p = load_pd(a.p, 0, "p", rep, g);
  PDMatrix q = load_pd(a.q, p.dim(), "q", rep, g);
  return {std::move(p), std::move(q)};
}

void put_fidelity(Report& rep, const std::string& name, const FidelityReport& f) {
  rep.out(name, f.value);
  rep.out(name + "_imag_residual", f.imag_residual);
  rep.out(name + "_base", f.base_used);
}

// ---------------------------------------------------------------------------

struct FidelityArgs {
  PairArgs pair;
  std::string r;
  std::string named;
  double z = 0.0;
};

void run_fidelity(const FidelityArgs& a, Report& rep, const Globals& g) {
  const auto [p, q] = load_pair(a.pair, rep, g);
  const int modes = int(!a.r.empty()) + int(!a.named.empty()) + int(a.z != 0.0);
  if (modes != 1) throw io::InputError("fidelity: give exactly one of --r, --named, --z");
  if (!a.r.empty()) {
    const PDMatrix r = load_pd(a.r, p.dim(), "r", rep, g);
    const FidelityReport f = generalized_fidelity(p, q, r, g.tol);
    const UnitaryFormResult u = unitary_form_fidelity(p, q, r, g.tol);
    put_fidelity(rep, "fidelity", f);
    rep.out("unitary_form", u.report.value);
    const double gap = std::abs(u.report.value - f.value);
    rep.out("dual_formula_gap", gap);
    if (gap > g.tol.fid_tol * std::max(1.0, std::abs(f.value))) {
      throw Error(ErrorKind::ResidualCheck, "direct and unitary forms disagree");
    }
    rep.out("uhlmann", uhlmann(p, q, g.tol).real());
    return;
  }
  if (a.z != 0.0) {
    rep.param("z", a.z);
    put_fidelity(rep, "fidelity", z_fidelity(p, q, a.z, g.tol));
    return;
  }
  rep.param("named", a.named);
  if (a.named == "uhlmann") put_fidelity(rep, "fidelity", uhlmann(p, q, g.tol));
  else if (a.named == "holevo") put_fidelity(rep, "fidelity", holevo(p, q, g.tol));
  else if (a.named == "matsumoto") put_fidelity(rep, "fidelity", matsumoto(p, q, g.tol));
  else if (a.named == "log-euclidean") put_fidelity(rep, "fidelity", log_euclidean(p, q, g.tol));
  else throw io::InputError("--named: expected uhlmann, holevo, matsumoto or log-euclidean");
}

struct CurveArgs {
  PairArgs pair;
  double xmin = -1.0;
  double xmax = 1.0;
  int steps = 201;
  std::string out;
};

std::string run_polar_curve(const CurveArgs& a, Report& rep, const Globals& g) {
  if (!(a.xmin < a.xmax) || a.steps < 2) {
    throw io::InputError("polar-curve: need xmin < xmax and steps >= 2");
  }
  const auto [p, q] = load_pair(a.pair, rep, g);
  rep.param("xmin", a.xmin);
  rep.param("xmax", a.xmax);
  rep.param("steps", a.steps);
  std::vector<double> xs(static_cast<std::size_t>(a.steps));
  for (int k = 0; k < a.steps; ++k) {
    xs[static_cast<std::size_t>(k)] =
        k + 1 == a.steps ? a.xmax : a.xmin + (a.xmax - a.xmin) * k / (a.steps - 1);
  }
  const PolarCurve c = polar_curve(p, q, xs, g.tol);
  const MonotonicityScan scan = scan_monotonicity(p, q, xs, g.tol);
  const auto put = [&rep](const std::string& n, const PathViolation& v) {
    rep.out(n + "_violation_left", v.left);
    rep.out(n + "_violation_right", v.right);
    rep.out(n + "_grid_max", v.grid_max);
    rep.out(n + "_argmax", v.argmax);
  };
  put("phi_p", scan.phi_p);
  put("phi_q", scan.phi_q);
  put("f_pol", scan.f_pol);
  rep.out("worst_violation", scan.worst());
  rep.out("monotone", scan.worst() <= g.tol.mono_tol);
  const std::string csv = io::curve_csv(c);
  if (!a.out.empty()) {
    std::ofstream f(a.out, std::ios::binary);
    if (!f) throw io::InputError(a.out + ":1: cannot open for writing");
    f << csv;
    rep.out("csv", a.out);
  }
  return csv;
}

struct RealizeArgs {
  PairArgs pair;
  std::optional<double> target;
  std::optional<double> z;
  bool log_euclidean = false;
  std::string path = "all";
};

void put_realization(Report& rep, const RealizationResult& r) {
  const std::string n = "path_" + std::string(to_string(r.path));
  rep.out(n + "_theta", r.theta);
  rep.out(n + "_achieved", r.achieved);
  rep.out(n + "_residual", r.residual);
  rep.out(n + "_iterations", r.iterations);
}

void run_realize(const RealizeArgs& a, Report& rep, const Globals& g) {
  const int modes = int(a.target.has_value()) + int(a.z.has_value()) + int(a.log_euclidean);
  if (modes != 1) throw io::InputError("realize: give exactly one of --target, --z, --log-euclidean");
  const auto [p, q] = load_pair(a.pair, rep, g);
  rep.param("path", a.path);
  double target = 0.0;
  if (a.target) {
    target = *a.target;
  } else if (a.z) {
    rep.param("z", *a.z);
    if (*a.z < 0.5) {
      throw Error(ErrorKind::ZBelowHalf,
                  "z < 1/2 cannot be realized in general; see `matfid counterexample`");
    }
    target = z_fidelity(p, q, *a.z, g.tol).real();
  } else {
    target = log_euclidean(p, q, g.tol).real();
  }
  rep.out("target", target);
  rep.out("matsumoto", matsumoto(p, q, g.tol).real());
  rep.out("uhlmann", uhlmann(p, q, g.tol).real());
  const auto one = [&](PolarPath path) { put_realization(rep, realize_on_path(p, q, target, path, g.tol)); };
  if (a.path == "P") one(PolarPath::P_path);
  else if (a.path == "Q") one(PolarPath::Q_path);
  else if (a.path == "symmetrized") one(PolarPath::symmetrized);
  else if (a.path == "all") for (const auto& r : realize_all_paths(p, q, target, g.tol)) put_realization(rep, r);
  else throw io::InputError("--path: expected P, Q, symmetrized or all");
}

struct HolevoArgs {
  PairArgs pair;
  double t = 0.0;
  std::string r;
  std::string emit;
  int seeds = 100;
};

void put_verdict(Report& rep, const HolevoVerdict& v) {
  rep.out("is_holevo", v.is_holevo);
  rep.out("polar_slice", v.polar_slice);
  rep.out("fidelity", v.fidelity);
  rep.out("trace_residual", v.trace_residual);
  rep.out("cross_check", v.cross_check);
}

void run_holevo_generate(const HolevoArgs& a, Report& rep, const Globals& g) {
  const auto [p, q] = load_pair(a.pair, rep, g);
  rep.param("t", a.t);
  const PairContext ctx = pair_context(p, q, g.tol);
  const PDMatrix r = power_family_base(ctx, a.t, g.tol);
  rep.out("fH", ctx.fH);
  put_verdict(rep, is_holevo_base(ctx, r, g.tol));
  rep.out_matrix("r", r.matrix(), io::MatrixKind::pd);
  if (!a.emit.empty()) io::write_matrix_file(a.emit, r.matrix(), io::MatrixKind::pd);
}

void run_holevo_check(const HolevoArgs& a, Report& rep, const Globals& g) {
  const auto [p, q] = load_pair(a.pair, rep, g);
  const PDMatrix r = load_pd(a.r, p.dim(), "r", rep, g);
  const PairContext ctx = pair_context(p, q, g.tol);
  rep.out("fH", ctx.fH);
  put_verdict(rep, is_holevo_base(ctx, r, g.tol));
}

void run_holevo_falsify(const HolevoArgs& a, Report& rep, const Globals& g) {
  const bool kw = is_keyword(a.r);
  if (kw) throw io::InputError("--r: falsify-universal needs a matrix file");
  const PDMatrix r = load_pd(a.r, 0, "r", rep, g);
  rep.param("seeds", a.seeds);
  rep.out("scalar", is_scalar_base(r, g.tol));
  const auto witness = falsify_universal_base(r, a.seeds, g.seed, g.tol);
  rep.out("witness_found", witness.has_value());
  if (witness) {
    const PDMatrix id = PDMatrix::identity(r.dim());
    rep.out("witness_fidelity", generalized_fidelity(id, *witness, r, g.tol).value);
    rep.out("witness_holevo", holevo(id, *witness, g.tol).real());
    rep.out_matrix("q_witness", witness->matrix(), io::MatrixKind::pd);
    if (!a.emit.empty()) io::write_matrix_file(a.emit, witness->matrix(), io::MatrixKind::pd);
  }
}

struct UnitaryArgs {
  PairArgs pair;
  std::string r;
  std::string w;
  std::string c;
  std::string emit;
};

void run_unitary_factor(const UnitaryArgs& a, Report& rep, const Globals& g) {
  const auto [p, q] = load_pair(a.pair, rep, g);
  const PDMatrix r = load_pd(a.r, p.dim(), "r", rep, g);
  const PairContext ctx = pair_context(p, q, g.tol);
  const UnitaryM w = unitary_factor_of_base(ctx, r, g.tol);
  rep.out("det", w.det());
  rep.out("distance_to_identity", (w.matrix() - MatrixC::Identity(p.dim(), p.dim())).norm());
  rep.out("holevo_stratum", is_holevo_stratum_unitary(ctx, w, g.tol));
  rep.out_matrix("w", w.matrix(), io::MatrixKind::unitary);
  if (!a.emit.empty()) io::write_matrix_file(a.emit, w.matrix(), io::MatrixKind::unitary);
}

void run_unitary_can_arise(const UnitaryArgs& a, Report& rep, const Globals& g) {
  const auto [p, q] = load_pair(a.pair, rep, g);
  const UnitaryM w(load_matrix(a.w, p.dim(), "w", rep, g), g.tol);
  const PairContext ctx = pair_context(p, q, g.tol);
  const AttainabilityVerdict v = can_arise(ctx, w, g.tol);
  rep.out("can_arise", v.can_arise);
  rep.out("det", v.det_w);
  rep.out("similarity_residual", v.residual);
  rep.out("max_imag_ratio", v.max_imag_ratio);
  rep.out("min_real_ratio", v.min_real_ratio);
  rep.out("holevo_stratum", v.can_arise && is_holevo_stratum_unitary(ctx, w, g.tol));
}

void run_unitary_stratum(const UnitaryArgs& a, Report& rep, const Globals& g) {
  const auto [p, q] = load_pair(a.pair, rep, g);
  const UnitaryM w(load_matrix(a.w, p.dim(), "w", rep, g), g.tol);
  const PairContext ctx = pair_context(p, q, g.tol);
  const AttainabilityVerdict v = can_arise(ctx, w, g.tol);
  rep.out("can_arise", v.can_arise);
  if (!v.can_arise) throw Error(ErrorKind::InvalidArgument, "W does not arise as a unitary factor");
  const PDMatrix c = a.c.empty() ? PDMatrix::identity(p.dim()) : load_pd(a.c, p.dim(), "c", rep, g);
  const PDMatrix r = stratum_base(ctx, *v.witness, c, g.tol);
  const UnitaryM w2 = unitary_factor_of_base(ctx, r, g.tol);
  rep.out("recovered_gap", (w2.matrix() - w.matrix()).norm());
  rep.out_matrix("r", r.matrix(), io::MatrixKind::pd);
  if (!a.emit.empty()) io::write_matrix_file(a.emit, r.matrix(), io::MatrixKind::pd);
}

struct CounterArgs {
  int d = 2;
  double z = 0.25;
  double c = 0.5;
  std::string emit_prefix;
};

void run_counterexample(const CounterArgs& a, Report& rep, const Globals& g) {
  rep.param("d", a.d);
  rep.param("z", a.z);
  rep.param("c", a.c);
  const CounterexampleWitness w = build_z_counterexample(a.d, a.z, a.c, g.tol);
  rep.out("epsilon", w.epsilon);
  rep.out("fz", w.fz);
  rep.out("fu", w.fu);
  rep.out("margin", w.fz - w.fu);
  rep.out("fz_exceeds_fu", w.fz > w.fu + g.tol.margin_tol);
  rep.out("limit_fz", w.limit_fz);
  rep.out("limit_fu", w.limit_fu);
  rep.out("pure_fz", std::pow(a.c, 2.0 * a.z));
  rep.out("pure_fu", a.c);
  rep.out_matrix("rho", w.rho.matrix(), io::MatrixKind::pd);
  rep.out_matrix("sigma", w.sigma.matrix(), io::MatrixKind::pd);
  if (!a.emit_prefix.empty()) {
    io::write_matrix_file(a.emit_prefix + "rho.json", w.rho.matrix(), io::MatrixKind::pd);
    io::write_matrix_file(a.emit_prefix + "sigma.json", w.sigma.matrix(), io::MatrixKind::pd);
  }
}

struct DpiArgs {
  PairArgs pair;
  std::string channel;
  std::string gamma;
  double x = 0.0;
  std::string branch = "input";
  int probes = 8;
};

void run_dpi(const DpiArgs& a, Report& rep, const Globals& g) {
  const auto [p, q] = load_pair(a.pair, rep, g);
  rep.param("x", a.x);
  rep.param("branch", a.branch);
  const auto load_channel = [&](const std::string& path, const std::string& name) {
    rep.input(name, path, false);
    return io::read_channel_file(path, g.tol);
  };
  DPIVerdict v;
  if (a.branch == "input" || a.branch == "output") {
    if (a.channel.empty()) throw io::InputError("--channel is required for this branch");
    const KrausSet k = load_channel(a.channel, "channel");
    v = check_dpi_commutative(k, p, q, a.x,
                              a.branch == "input" ? DPIBranch::input_commuting
                                                  : DPIBranch::output_commuting,
                              g.tol);
  } else if (a.branch == "pinch") {
    v = check_dpi_commutative(KrausSet::pinching(p.dim()), p, q, a.x,
                              DPIBranch::output_commuting, g.tol);
  } else if (a.branch == "factored") {
    if (a.gamma.empty()) throw io::InputError("--gamma is required for the factored branch");
    const KrausSet m = a.channel.empty() ? KrausSet::pinching(p.dim())
                                         : load_channel(a.channel, "channel");
    const KrausSet gamma = load_channel(a.gamma, "gamma");
    std::vector<PDMatrix> probes;
    for (int i = 0; i < a.probes; ++i) {
      probes.push_back(random_pd(p.dim(), g.seed + static_cast<std::uint64_t>(i), 1e3));
    }
    v = check_dpi_factored(gamma, m, p, q, a.x, probes, g.tol);
  } else if (a.branch == "explore") {
    if (a.channel.empty()) throw io::InputError("--channel is required for this branch");
    v = explore_dpi(load_channel(a.channel, "channel"), p, q, a.x, g.tol);
  } else {
    throw io::InputError("--branch: expected input, output, pinch, factored or explore");
  }
  rep.out("branch", to_string(v.branch));
  rep.out("applies", v.applies);
  rep.out("lhs", v.lhs);
  rep.out("rhs", v.rhs);
  rep.out("holds", v.holds);
  rep.out("reason", v.reason);
  if (v.applies && !v.holds) {
    throw Error(ErrorKind::ResidualCheck, "data-processing inequality violated under its hypotheses");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized fidelities of positive definite matrices"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--tol-profile", g.tol_profile, "JSON file overriding tolerances");
  app.add_option("--seed", g.seed, "seed for all randomness");
  app.add_option("--format", g.format, "json, csv or text")
      ->check(CLI::IsMember({"json", "csv", "text"}));

  FidelityArgs fa;
  auto* fid = app.add_subcommand("fidelity", "F_R or a named fidelity");
  add_pair(fid, fa.pair);
  fid->add_option("--r", fa.r, "base matrix file (or identity)");
  fid->add_option("--named", fa.named, "uhlmann, holevo, matsumoto, log-euclidean");
  fid->add_option("--z", fa.z, "z-fidelity parameter");

  CurveArgs ca;
  auto* curve = app.add_subcommand("polar-curve", "Phi_P, Phi_Q, F^pol on a grid");
  add_pair(curve, ca.pair);
  curve->add_option("--xmin", ca.xmin);
  curve->add_option("--xmax", ca.xmax);
  curve->add_option("--steps", ca.steps);
  curve->add_option("--out", ca.out, "CSV output file");

  RealizeArgs ra;
  auto* real = app.add_subcommand("realize", "realize a value on the polar paths");
  add_pair(real, ra.pair);
  real->add_option("--target", ra.target);
  real->add_option("--z", ra.z);
  real->add_flag("--log-euclidean", ra.log_euclidean);
  real->add_option("--path", ra.path, "P, Q, symmetrized or all");

  HolevoArgs ha;
  auto* hol = app.add_subcommand("holevo", "Holevo bases");
  hol->require_subcommand(1);
  auto* hgen = hol->add_subcommand("generate", "power-family base R_t");
  add_pair(hgen, ha.pair);
  hgen->add_option("--t", ha.t)->required();
  hgen->add_option("--emit", ha.emit, "write R to this matrix file");
  auto* hchk = hol->add_subcommand("check", "trace criterion for a base");
  add_pair(hchk, ha.pair);
  hchk->add_option("--r", ha.r)->required();
  auto* hfal = hol->add_subcommand("falsify-universal", "search a pair where R is not Holevo");
  hfal->add_option("--r", ha.r)->required();
  hfal->add_option("--seeds", ha.seeds);
  hfal->add_option("--emit", ha.emit, "write the witness Q to this matrix file");

  UnitaryArgs ua;
  auto* uni = app.add_subcommand("unitary", "unitary factors");
  uni->require_subcommand(1);
  auto* ufac = uni->add_subcommand("factor", "W for a base");
  add_pair(ufac, ua.pair);
  ufac->add_option("--r", ua.r)->required();
  ufac->add_option("--emit", ua.emit);
  auto* uca = uni->add_subcommand("can-arise", "attainability of W");
  add_pair(uca, ua.pair);
  uca->add_option("--w", ua.w)->required();
  auto* ustr = uni->add_subcommand("stratum", "a base with unitary factor W");
  add_pair(ustr, ua.pair);
  ustr->add_option("--w", ua.w)->required();
  ustr->add_option("--c", ua.c, "matrix commuting with D (default identity)");
  ustr->add_option("--emit", ua.emit);

  CounterArgs ce;
  auto* cex = app.add_subcommand("counterexample", "pair with F_z > F^U for z < 1/2");
  cex->add_option("--d", ce.d);
  cex->add_option("--z", ce.z);
  cex->add_option("--c", ce.c);
  cex->add_option("--emit-prefix", ce.emit_prefix);

  DpiArgs da;
  auto* dpi = app.add_subcommand("dpi", "data processing of F^pol_x");
  add_pair(dpi, da.pair);
  dpi->add_option("--channel", da.channel, "channel file (the inner channel when factored)");
  dpi->add_option("--gamma", da.gamma, "outer channel file for the factored branch");
  dpi->add_option("--x", da.x);
  dpi->add_option("--branch", da.branch, "input, output, pinch, factored, explore");
  dpi->add_option("--probes", da.probes);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInput;
  }

  try {
    if (!g.tol_profile.empty()) g.tol = io::read_tolerance_file(g.tol_profile);
    std::string name;
    for (const auto* s = app.get_subcommands().front(); s != nullptr;) {
      name += (name.empty() ? "" : " ") + s->get_name();
      const auto subs = s->get_subcommands();
      s = subs.empty() ? nullptr : subs.front();
    }
    Report rep(name, g);
    if (!g.tol_profile.empty()) rep.input("tol_profile", g.tol_profile, false);
    std::string csv;
    if (*fid) run_fidelity(fa, rep, g);
    else if (*curve) csv = run_polar_curve(ca, rep, g);
    else if (*real) run_realize(ra, rep, g);
    else if (*hgen) run_holevo_generate(ha, rep, g);
    else if (*hchk) run_holevo_check(ha, rep, g);
    else if (*hfal) run_holevo_falsify(ha, rep, g);
    else if (*ufac) run_unitary_factor(ua, rep, g);
    else if (*uca) run_unitary_can_arise(ua, rep, g);
    else if (*ustr) run_unitary_stratum(ua, rep, g);
    else if (*cex) run_counterexample(ce, rep, g);
    else if (*dpi) run_dpi(da, rep, g);
    if (!csv.empty() && g.format == "csv") std::cout << csv;
    else rep.emit(std::cout);
    return kOk;
  } catch (const io::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    // unexpected internal failure
    std::cerr << "error: " << e.what() << "\n";
    return kResidual;
  }
}
