#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

#include "discflow/field_io.hpp"
#include "discflow/hierarchy.hpp"
#include "discflow/pipeline.hpp"

namespace discflow {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Message without the kind prefix added by Error.
std::string bare(const Error& e) {
  const std::string what = e.what();
  const std::string prefix = std::string(to_string(e.kind())) + ": ";
  return what.rfind(prefix, 0) == 0 ? what.substr(prefix.size()) : what;
}

template <class F>
auto stage(const char* name, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    throw Error(e.kind(), std::string("stage '") + name + "': " + bare(e), e.measured());
  }
}

struct GateSet {
  const RunConfig& cfg;
  std::vector<Gate> gates;

  void add(const std::string& name, double measured, double lo, double hi) {
    if (!cfg.gates.empty() && std::find(cfg.gates.begin(), cfg.gates.end(), name) == cfg.gates.end())
      return;
    Gate g{name, measured, lo, hi, std::isfinite(measured) && measured >= lo && measured <= hi};
    if (std::isnan(measured)) g.pass = false;
    gates.push_back(g);
  }
  void upper(const std::string& name, double measured, double hi) { add(name, measured, -kInf, hi); }
};

Json gates_json(const std::vector<Gate>& gates) {
  Json arr = Json::array();
  for (const auto& g : gates) {
    Json j;
    j["name"] = g.name;
    j["measured"] = g.measured;
    j["lo"] = std::isfinite(g.lo) ? Json(g.lo) : Json(nullptr);
    j["hi"] = std::isfinite(g.hi) ? Json(g.hi) : Json(nullptr);
    j["pass"] = g.pass;
    arr.push_back(j);
  }
  return arr;
}

void check_gate_names(const RunConfig& cfg) {
  const auto& known = gate_names();
  for (const auto& g : cfg.gates)
    if (std::find(known.begin(), known.end(), g) == known.end())
      throw Error(ErrorKind::Config, "key 'gates': unknown gate '" + g + "'");
}

// Largest deviation of the wall values of f from the prescribed data.
double trace_error(const FourierField& f, const FourierData& target) {
  double m = 0.0;
  for (int k = 0; k <= f.n_modes(); ++k) {
    const double c = k < static_cast<int>(target.cos.size()) ? target.cos[k] : 0.0;
    const double s = k < static_cast<int>(target.sin.size()) ? target.sin[k] : 0.0;
    m = std::max(m, std::abs(f.a(k)[0] - c));
    if (k > 0) m = std::max(m, std::abs(f.b(k)[0] - s));
  }
  return m;
}

Json euler_json(const EulerOrder& e) {
  Json j;
  j["k"] = e.k;
  j["A"] = e.A;
  j["tilde_A"] = e.tilde_A;
  j["corrected"] = e.corrected;
  j["has_pressure"] = e.has_pressure;
  Json modes = Json::array();
  for (std::size_t n = 0; n < e.c.size(); ++n) {
    if (e.c[n] == std::complex<double>(0.0, 0.0)) continue;
    modes.push_back({{"n", n + 1}, {"re", e.c[n].real()}, {"im", e.c[n].imag()}});
  }
  j["modes"] = modes;
  return j;
}

Json layer_json(const BoundaryLayerOrder& l, const ThetaGrid& tg) {
  Json j;
  j["k"] = l.k;
  j["A"] = l.A;
  j["A_check"] = l.A_check;
  j["A_consistent"] = l.A_consistent;
  j["sup_u_p"] = sup_norm(l.u_p, tg);
  j["iterations"] = l.telemetry.iterations;
  j["last_update"] = l.telemetry.last_update;
  j["residual"] = l.telemetry.residual;
  return j;
}

struct HistoryRow {
  std::string stage;
  int order = 0;
  int iteration = 0;
  double update = 0.0;
  double energy = 0.0;
};

void write_history(const std::filesystem::path& path, const std::vector<HistoryRow>& rows) {
  std::ofstream os(path);
  if (!os) throw Error(ErrorKind::Config, "cannot write '" + path.string() + "'");
  os << "stage,order,iteration,update,energy\n";
  for (const auto& r : rows)
    os << r.stage << ',' << r.order << ',' << r.iteration << ',' << format_double(r.update) << ','
       << format_double(r.energy) << '\n';
}

void write_report(const std::filesystem::path& dir, const Json& j) {
  std::ofstream os(dir / "report.json");
  if (!os) throw Error(ErrorKind::Config, "cannot write '" + (dir / "report.json").string() + "'");
  os << to_json_text(j);
}

std::filesystem::path prepare_dir(const std::string& out) {
  std::filesystem::path dir(out);
  std::error_code ec;
  std::filesystem::create_directories(dir / "fields", ec);
  if (ec) throw Error(ErrorKind::Config, "cannot create output directory '" + out + "': " + ec.message());
  return dir;
}

struct Context {
  std::shared_ptr<const ThetaGrid> tg;
  std::shared_ptr<const RadialGrid> r_grid, s_grid;
};

Context make_context(const RunConfig& cfg) {
  return {std::make_shared<ThetaGrid>(cfg.n_modes), RadialGrid::geometric(cfg.n_radial, cfg.r_max),
          RadialGrid::geometric(cfg.n_s, cfg.r_max, RadialCoordinate::Log)};
}

// Everything downstream of the hierarchy for one epsilon.
struct Evaluation {
  ApproxSolution approx;
  Residual residual;
  std::optional<PicardResult> picard;
  std::optional<TheoremReport> theorem;
  FullSolution full;
};

Evaluation evaluate(const Hierarchy& h, double eps, const Context& ctx, const RunConfig& cfg, bool solve,
                    Json& j, std::vector<HistoryRow>& history, Json& timing) {
  Evaluation ev;
  auto t0 = Clock::now();
  ev.approx = stage("assembly", [&] { return assemble(h, eps, ctx.r_grid); });
  ev.residual = stage("residual", [&] { return residual(ev.approx, *ctx.tg); });
  timing["assembly"] = seconds_since(t0);

  FourierData wall_u = h.params.f;
  wall_u.cos.resize(std::max<std::size_t>(wall_u.cos.size(), 1), 0.0);
  for (auto& c : wall_u.cos) c *= h.params.delta;
  for (auto& s : wall_u.sin) s *= h.params.delta;
  wall_u.cos[0] += h.params.omega;

  Json as;
  as["epsilon"] = eps;
  as["divergence_before"] = ev.approx.divergence_before;
  as["divergence_after"] = ev.approx.divergence_after;
  as["corrector_mean"] = ev.approx.corrector_mean;
  as["trace_u"] = trace_error(ev.approx.u.value(), wall_u);
  as["trace_v"] = trace_error(ev.approx.v.value(), FourierData{});
  j["assembly"] = as;
  j["residual"] = {{"sup_r4_ru", ev.residual.sup_r4_ru},
                   {"sup_r4_rv", ev.residual.sup_r4_rv},
                   {"sup_r4", std::max(ev.residual.sup_r4_ru, ev.residual.sup_r4_rv)},
                   {"support_violation", ev.residual.support_violation}};
  if (!solve) return ev;

  t0 = Clock::now();
  PicardConfig pc = cfg.picard;
  pc.throw_on_failure = false;
  PicardResult pr =
      stage("error solve", [&] { return picard_solve(ev.approx, ev.residual, h.params.delta, ctx.s_grid, *ctx.tg, pc); });
  timing["error_solve"] = seconds_since(t0);
  for (std::size_t i = 0; i < pr.history.update.size(); ++i)
    history.push_back({"picard", h.order(), static_cast<int>(i + 1), pr.history.update[i], pr.history.energy[i]});
  Json es;
  es["converged"] = pr.converged;
  es["iterations"] = pr.history.update.size();
  es["final_update"] = pr.history.update.empty() ? 0.0 : pr.history.update.back();
  es["energy_norm"] = pr.history.energy.empty() ? 0.0 : pr.history.energy.back();
  es["update_history"] = pr.history.update;
  es["contraction_ratios"] = pr.history.ratio;
  es["divergence"] = pr.divergence;
  es["stream_consistency"] = pr.stream_consistency;
  es["zero_mode_residual"] = pr.zero_mode_residual;
  es["full_vorticity_residual"] = pr.full_vorticity_residual;
  es["approx_vorticity_residual"] = pr.approx_vorticity_residual;
  es["sup_u_err"] = sup_norm(pr.state.u, *ctx.tg);
  es["sup_v_err"] = sup_norm(pr.state.v, *ctx.tg);
  Json norm = Json::array();
  for (const auto& c : energy_norm(pr.state.phi, eps).components)
    norm.push_back({{"name", c.name}, {"eps_power", c.eps_power}, {"value", c.value}, {"weighted", c.weighted}});
  es["energy_components"] = norm;
  j["error_solve"] = es;

  ev.full = full_solution(ev.approx, pr.state);
  if (pr.converged) {
    TheoremReport th = stage("verification", [&] {
      return verify_theorem1(ev.full, ev.approx, h.tilde_omega(), h.params.delta, *ctx.tg);
    });
    Json t;
    t["tilde_omega"] = th.tilde_omega;
    t["c1"] = th.c1;
    Json rows = Json::array();
    for (std::size_t i = 0; i < th.radii.size(); ++i)
      rows.push_back({{"r", th.radii[i]}, {"r2_e_u", th.e_u_r2[i]}, {"r2_e_v", th.e_v_r2[i]}});
    t["table"] = rows;
    t["exponent_u"] = th.exponent_u;
    t["exponent_v"] = th.exponent_v;
    t["bound_constant"] = th.bound_constant;
    j["theorem"] = t;
    ev.theorem = th;
  }
  ev.picard = std::move(pr);
  return ev;
}

void construction_json(const Hierarchy& h, const ThetaGrid& tg, Json& j, std::vector<HistoryRow>& history) {
  j["batchelor_wood"] = {{"tilde_omega", h.bw.tilde_omega},
                         {"omega_sq", h.bw.omega_sq},
                         {"cross", h.bw.cross},
                         {"square", h.bw.square}};
  Json eu = Json::array();
  for (const auto& e : h.euler) eu.push_back(euler_json(e));
  j["euler"] = eu;
  Json la = Json::array();
  for (const auto& l : h.layers) {
    la.push_back(layer_json(l, tg));
    for (std::size_t i = 0; i < l.telemetry.updates.size(); ++i)
      history.push_back({"layer", l.k, static_cast<int>(i + 1), l.telemetry.updates[i], 0.0});
  }
  j["layers"] = la;
  j["compatibility"] = h.compatibility;
  j["layer_divergence"] = h.divergence;
}

double max_of(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double layer_consistency(const Hierarchy& h) {
  double m = 0.0;
  for (const auto& l : h.layers)
    m = std::max(m, std::abs(l.A - l.A_check) / std::max(1.0, std::abs(l.A)));
  return m;
}

void construction_gates(const Hierarchy& h, const Evaluation& ev, const Json& j, GateSet& gs) {
  gs.upper("divergence", ev.approx.divergence_after, 1e-9);
  gs.upper("trace_u", j["assembly"]["trace_u"].get<double>(), 1e-10);
  gs.upper("trace_v", j["assembly"]["trace_v"].get<double>(), 1e-10);
  gs.upper("support", ev.residual.support_violation, 1e-9);
  gs.upper("compatibility", max_of(h.compatibility), 1e-9);
  gs.upper("layer_consistency", layer_consistency(h), 1e-6);
}

void solve_gates(const RunConfig& cfg, const Evaluation& ev, GateSet& gs) {
  if (!ev.picard) return;
  const auto& up = ev.picard->history.update;
  gs.upper("picard_converged", up.empty() ? kInf : up.back(), cfg.picard.tol);
  if (ev.theorem) {
    gs.upper("decay_u", ev.theorem->exponent_u, -1.8);
    gs.upper("decay_v", ev.theorem->exponent_v, -1.8);
  }
}

void write_fields(const std::filesystem::path& dir, const Evaluation& ev, const Hierarchy& h, const ThetaGrid& tg) {
  const auto f = dir / "fields";
  write_nodal_csv((f / "u_approx.csv").string(), ev.approx.u.value(), tg);
  write_nodal_csv((f / "v_approx.csv").string(), ev.approx.v.value(), tg);
  write_nodal_csv((f / "p_approx.csv").string(), ev.approx.p.value(), tg);
  write_nodal_csv((f / "residual_omega.csv").string(), ev.residual.omega, tg);
  for (const auto& l : h.layers)
    write_modes_csv((f / ("layer_u_p" + std::to_string(l.k) + "_modes.csv")).string(), l.u_p);
  if (ev.picard) {
    write_modes_csv((f / "phi_error_modes.csv").string(), ev.picard->state.phi);
    write_nodal_csv((f / "u_error.csv").string(), ev.picard->state.u, tg);
    write_nodal_csv((f / "v_error.csv").string(), ev.picard->state.v, tg);
    write_nodal_csv((f / "u_full.csv").string(), ev.full.u, tg);
    write_nodal_csv((f / "v_full.csv").string(), ev.full.v, tg);
  }
}

Hierarchy build(const Params& p, const Context& ctx, const LayerConfig& lc, Json& timing) {
  const auto t0 = Clock::now();
  Hierarchy h = stage("construction", [&] { return build_hierarchy(p, ctx.tg, lc); });
  timing["construction"] = seconds_since(t0);
  return h;
}

void finish(RunReport& rep, const RunConfig& cfg, Json& timing, Clock::time_point start,
            const std::vector<HistoryRow>& history) {
  rep.json["gates"] = gates_json(rep.gates);
  rep.json["passed"] = rep.passed();
  if (rep.failure) rep.json["failure"] = {{"kind", to_string(*rep.failure)}, {"message", rep.failure_message}};
  if (cfg.report_timing) {
    timing["total"] = seconds_since(start);
    rep.json["timing"] = timing;
  }
  if (!cfg.out_dir.empty()) {
    const auto dir = prepare_dir(cfg.out_dir);
    write_report(dir, rep.json);
    write_history(dir / "history.csv", history);
  }
}

RunReport run_single(const RunConfig& cfg) {
  const auto start = Clock::now();
  check_gate_names(cfg);
  RunReport rep;
  GateSet gs{cfg, {}};
  Json timing = Json::object();
  std::vector<HistoryRow> history;
  rep.json["schema"] = "discflow-report/1";
  rep.json["mode"] = to_string(cfg.mode);
  rep.json["config"] = config_to_json(cfg);

  const Context ctx = make_context(cfg);
  const bool rescale = cfg.mode == RunMode::RescaleLambda;
  const bool solve = cfg.mode == RunMode::FullSolve || rescale;
  const double eps = cfg.params.eps();
  try {
    Hierarchy h = build(cfg.params, ctx, cfg.layer, timing);
    construction_json(h, *ctx.tg, rep.json, history);
    Evaluation ev = evaluate(h, eps, ctx, cfg, solve, rep.json, history, timing);
    construction_gates(h, ev, rep.json, gs);
    solve_gates(cfg, ev, gs);
    if (ev.picard && !ev.picard->converged) {
      rep.failure = ErrorKind::Nonconvergence;
      rep.failure_message = "stage 'error solve': Picard iteration did not reach the tolerance";
    }

    if (rescale) {
      const double lambda = *cfg.params.lambda;
      const FlowFields unit{ev.approx.u.value(), ev.approx.v.value(), ev.approx.p.value()};
      const FlowFields scaled = rescale_lambda(unit, lambda);
      const MomentumResidual r1 = momentum_residual(unit, eps * eps, *ctx.tg);
      const MomentumResidual r2 = momentum_residual(scaled, 1.0, *ctx.tg);
      const double l2 = lambda * lambda;
      const double diff = std::max(sup_norm(r2.ru - l2 * r1.ru, *ctx.tg), sup_norm(r2.rv - l2 * r1.rv, *ctx.tg));
      const double ref = std::max(sup_norm(l2 * r1.ru, *ctx.tg), sup_norm(l2 * r1.rv, *ctx.tg));
      const double rel = ref > 0.0 ? diff / ref : diff;
      rep.json["rescale"] = {{"lambda", lambda},
                             {"epsilon", eps},
                             {"unit_residual", ref / l2},
                             {"rescaled_residual", sup_norm(r2.ru, *ctx.tg)},
                             {"identity_error", rel}};
      gs.upper("rescale_identity", rel, 1e-10);
      if (!cfg.out_dir.empty() && cfg.write_fields) {
        const auto f = prepare_dir(cfg.out_dir) / "fields";
        write_nodal_csv((f / "u_rescaled.csv").string(), scaled.u, *ctx.tg);
        write_nodal_csv((f / "v_rescaled.csv").string(), scaled.v, *ctx.tg);
        write_nodal_csv((f / "p_rescaled.csv").string(), scaled.p, *ctx.tg);
        if (ev.picard) {
          FlowFields full{ev.full.u, ev.full.v, ev.approx.p.value()};
          const FlowFields fs = rescale_lambda(full, lambda);
          write_nodal_csv((f / "u_full_rescaled.csv").string(), fs.u, *ctx.tg);
          write_nodal_csv((f / "v_full_rescaled.csv").string(), fs.v, *ctx.tg);
        }
      }
    }
    if (!cfg.out_dir.empty() && cfg.write_fields) write_fields(prepare_dir(cfg.out_dir), ev, h, *ctx.tg);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Config) throw;
    rep.failure = e.kind();
    rep.failure_message = bare(e);
  }
  rep.gates = gs.gates;
  finish(rep, cfg, timing, start, history);
  return rep;
}

struct Member {
  double value = 0.0;
  bool ok = false;
  double sup_r4 = 0.0;
  double sup_layer = 0.0;
  std::optional<TheoremReport> theorem;
};

// Least-squares slope with the note used when the fit is not possible.
Json fit_json(const std::vector<double>& x, const std::vector<double>& y, double& slope) {
  Json j;
  if (x.size() < 2) {
    j["note"] = "insufficient points";
    slope = std::numeric_limits<double>::quiet_NaN();
    return j;
  }
  slope = fit_exponent(x, y);
  j["exponent"] = slope;
  j["points"] = x.size();
  return j;
}

}  // namespace

bool RunReport::passed() const {
  if (failure) return false;
  return std::all_of(gates.begin(), gates.end(), [](const Gate& g) { return g.pass; });
}

const std::vector<std::string>& gate_names() {
  static const std::vector<std::string> names = {
      "divergence",      "trace_u",          "trace_v",          "support",
      "compatibility",   "layer_consistency", "picard_converged", "decay_u",
      "decay_v",         "rescale_identity", "residual_exponent", "delta_linearity",
      "bound_constant_ratio", "members"};
  return names;
}

RunReport run(const RunConfig& cfg) {
  cfg.validate();
  if (cfg.mode == RunMode::Sweep) return sweep(cfg, cfg.sweep_axis, cfg.sweep_values);
  return run_single(cfg);
}

RunReport sweep(const RunConfig& base, const std::string& axis_in, const std::vector<double>& values) {
  const auto start = Clock::now();
  const std::string axis = axis_in == "eps" ? "epsilon" : axis_in;
  if (axis != "epsilon" && axis != "delta")
    throw Error(ErrorKind::Config, "key 'sweep.axis': expected epsilon or delta, got '" + axis_in + "'");
  if (values.empty()) throw Error(ErrorKind::Config, "key 'sweep.values': needs at least one value");
  for (double v : values)
    if (!(v > 0.0)) throw Error(ErrorKind::Config, "key 'sweep.values': entries must be positive");
  RunConfig cfg = base;
  cfg.mode = RunMode::Sweep;
  cfg.sweep_axis = axis;
  cfg.sweep_values = values;
  cfg.validate();
  check_gate_names(cfg);

  RunReport rep;
  GateSet gs{cfg, {}};
  Json timing = Json::object();
  std::vector<HistoryRow> history;
  rep.json["schema"] = "discflow-report/1";
  rep.json["mode"] = "sweep";
  rep.json["config"] = config_to_json(cfg);
  rep.json["axis"] = axis;

  const Context ctx = make_context(cfg);
  const bool solve = cfg.member_mode == RunMode::FullSolve;
  std::optional<Hierarchy> shared;
  std::vector<Member> members;
  Json mj = Json::array();
  int failed = 0;
  for (std::size_t m = 0; m < values.size(); ++m) {
    Member mem;
    mem.value = values[m];
    Json j;
    j[axis] = values[m];
    RunConfig mc = cfg;
    mc.gates.clear();
    if (axis == "epsilon") {
      mc.params.epsilon = values[m];
      mc.params.lambda.reset();
    } else {
      mc.params.delta = values[m];
    }
    GateSet mg{mc, {}};
    Json mt = Json::object();
    std::vector<HistoryRow> mh;
    try {
      mc.params.validate();
      const Hierarchy* h = nullptr;
      std::optional<Hierarchy> own;
      if (axis == "epsilon") {
        if (!shared) {
          shared = build(mc.params, ctx, cfg.layer, timing);
          construction_json(*shared, *ctx.tg, rep.json, history);
        }
        h = &*shared;
      } else {
        own = build(mc.params, ctx, cfg.layer, mt);
        h = &*own;
        j["tilde_omega"] = h->tilde_omega();
      }
      mem.sup_layer = h->layers.empty() ? 0.0 : sup_norm(h->layers[0].u_p, *ctx.tg);
      j["sup_u_p0"] = mem.sup_layer;
      Evaluation ev = evaluate(*h, mc.params.eps(), ctx, mc, solve, j, mh, mt);
      construction_gates(*h, ev, j, mg);
      solve_gates(mc, ev, mg);
      mem.sup_r4 = std::max(ev.residual.sup_r4_ru, ev.residual.sup_r4_rv);
      mem.theorem = ev.theorem;
      mem.ok = !(ev.picard && !ev.picard->converged);
      if (!mem.ok) j["failure"] = {{"kind", to_string(ErrorKind::Nonconvergence)}, {"message", "Picard iteration did not reach the tolerance"}};
    } catch (const Error& e) {
      j["failure"] = {{"kind", to_string(e.kind())}, {"message", bare(e)}};
      if (!rep.failure) {
        rep.failure = e.kind();
        rep.failure_message = "member " + std::to_string(m) + ": " + bare(e);
      }
    }
    for (auto& r : mh) {
      r.stage = "member" + std::to_string(m) + "-" + r.stage;
      history.push_back(r);
    }
    const bool member_pass =
        mem.ok && std::all_of(mg.gates.begin(), mg.gates.end(), [](const Gate& g) { return g.pass; });
    if (!member_pass) ++failed;
    if (!mem.ok && !rep.failure && solve) {
      rep.failure = ErrorKind::Nonconvergence;
      rep.failure_message = "member " + std::to_string(m) + ": Picard iteration did not reach the tolerance";
    }
    j["gates"] = gates_json(mg.gates);
    j["passed"] = member_pass;
    if (cfg.report_timing) j["timing"] = mt;
    mj.push_back(j);
    members.push_back(std::move(mem));
  }
  rep.json["members"] = mj;

  std::vector<Member> ok;
  for (const auto& m : members)
    if (m.ok) ok.push_back(m);
  Json fits;
  if (axis == "epsilon") {
    std::vector<double> x, y;
    for (const auto& m : ok) {
      x.push_back(m.value);
      y.push_back(m.sup_r4);
    }
    double slope = 0.0;
    fits["residual"] = fit_json(x, y, slope);
    if (x.size() >= 2) {
      const double n = cfg.params.order;
      gs.add("residual_exponent", slope, n + 0.6, n + 1.4);
    }
    if (solve) {
      std::vector<double> ks;
      Json decay = Json::array();
      for (const auto& m : ok) {
        if (!m.theorem) continue;
        ks.push_back(m.theorem->bound_constant);
        decay.push_back({{"epsilon", m.value},
                         {"exponent_u", m.theorem->exponent_u},
                         {"exponent_v", m.theorem->exponent_v},
                         {"bound_constant", m.theorem->bound_constant}});
      }
      fits["far_field"] = decay;
      if (ks.size() >= 2) {
        const double ratio = *std::max_element(ks.begin(), ks.end()) / *std::min_element(ks.begin(), ks.end());
        fits["bound_constant_ratio"] = ratio;
        gs.add("bound_constant_ratio", ratio, 1.0, 2.0);
      }
    }
  } else {
    std::vector<double> x, y;
    for (const auto& m : ok) {
      x.push_back(m.value);
      y.push_back(m.sup_layer);
    }
    double slope = 0.0;
    Json f = fit_json(x, y, slope);
    if (x.size() >= 2) {
      const double ratio = std::pow(2.0, slope);
      f["ratio_per_doubling"] = ratio;
      gs.add("delta_linearity", ratio, 1.7, 2.3);
    }
    fits["delta_linearity"] = f;
  }
  rep.json["fits"] = fits;
  gs.add("members", failed, 0.0, 0.0);
  rep.gates = gs.gates;
  finish(rep, cfg, timing, start, history);
  return rep;
}

}  // namespace discflow
