#include "bosonchain/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <optional>
#include <regex>
#include <thread>

#include "bosonchain/band_theory.hpp"
#include "bosonchain/entanglement.hpp"
#include "bosonchain/errors.hpp"
#include "bosonchain/langevin.hpp"
#include "bosonchain/open_spectrum.hpp"
#include "bosonchain/params_json.hpp"
#include "bosonchain/steady_state.hpp"

namespace bosonchain {

namespace {

enum class ObsKind { ENEdge, ENPair, Phase, Stable, Delta, Spectrum, Moments, Abscissa, Skin };

struct Observable {
  ObsKind kind;
  int m = 0;  // 1-based, ENPair only
  int mp = 0;
};

const std::vector<std::string> kAxisNames = {
    "t1",         "delta1",       "q_t",            "q_delta",        "phi_t",  "phi_delta", "n_cells",
    "kappa",      "n_th",         "mu",             "t2_over_t1",     "delta_over_t",
    "delta1_over_t1", "delta2_over_t2", "sigma1", "sigma2"};

Observable parse_observable(const std::string& s) {
  static const std::regex pair_re(R"(E_N_pair[(:_]\s*(\d+)\s*[,:_]\s*(\d+)\)?)");
  std::smatch mt;
  if (std::regex_match(s, mt, pair_re)) return {ObsKind::ENPair, std::stoi(mt[1]), std::stoi(mt[2])};
  if (s == "E_N_edge") return {ObsKind::ENEdge};
  if (s == "phase") return {ObsKind::Phase};
  if (s == "stable") return {ObsKind::Stable};
  if (s == "delta") return {ObsKind::Delta};
  if (s == "spectrum") return {ObsKind::Spectrum};
  if (s == "moments") return {ObsKind::Moments};
  if (s == "spectral_abscissa") return {ObsKind::Abscissa};
  if (s == "skin_effect") return {ObsKind::Skin};
  throw Error(ErrorCode::Config, "unknown observable '" + s + "'");
}

std::vector<std::string> columns_of(const Observable& o, int spectrum_len) {
  switch (o.kind) {
    case ObsKind::ENEdge: return {"E_N_edge"};
    case ObsKind::ENPair: return {"E_N_pair_" + std::to_string(o.m) + "_" + std::to_string(o.mp)};
    case ObsKind::Phase: return {"phase"};
    case ObsKind::Stable: return {"stable"};
    case ObsKind::Delta: return {"delta"};
    case ObsKind::Abscissa: return {"spectral_abscissa"};
    case ObsKind::Skin: return {"skin_effect"};
    case ObsKind::Moments: return {"K1", "re_K2", "im_K2", "K3", "eta_minus"};
    case ObsKind::Spectrum: {
      std::vector<std::string> c;
      for (int i = 1; i <= spectrum_len; ++i) c.push_back("re_xi_" + std::to_string(i));
      for (int i = 1; i <= spectrum_len; ++i) c.push_back("im_xi_" + std::to_string(i));
      return c;
    }
  }
  return {};
}

void apply_axis(ChainParams& p, const std::string& name, double v, bool& lock) {
  auto with = [&](auto edit) {
    Couplings c = p.couplings();
    edit(c);
    p = ChainParams::from_couplings(c, p);
  };
  if (name == "t1") with([&](Couplings& c) { c.t1 = v; });
  else if (name == "delta1") with([&](Couplings& c) { c.delta1 = v; });
  else if (name == "q_t" || name == "t2_over_t1") p.q_t = v;
  else if (name == "q_delta") {
    p.q_delta = v;
    p.delta2_abs.reset();
  } else if (name == "phi_t") p.phi_t = v;
  else if (name == "phi_delta") p.phi_delta = v;
  else if (name == "n_cells") p.n_cells = static_cast<int>(std::lround(v));
  else if (name == "kappa") p.kappa = v;
  else if (name == "n_th") p.n_th = v;
  else if (name == "mu") p.mu = v;
  else if (name == "delta_over_t") {
    with([&](Couplings& c) { c.delta1 = v * c.t1; });
    lock = true;
  } else if (name == "delta1_over_t1") with([&](Couplings& c) { c.delta1 = v * c.t1; });
  else if (name == "delta2_over_t2") with([&](Couplings& c) { c.delta2 = v * c.t2; });
  else if (name == "sigma1") {
    with([&](Couplings& c) {
      const double d2 = c.t1 * c.t1 - v;
      if (d2 < 0.0) throw Error(ErrorCode::Config, "sigma1 exceeds t1^2");
      c.delta1 = std::copysign(std::sqrt(d2), c.delta1 == 0.0 ? 1.0 : c.delta1);
    });
  } else if (name == "sigma2") {
    with([&](Couplings& c) {
      const double d2 = std::norm(c.t2) - v;
      if (d2 < 0.0) throw Error(ErrorCode::Config, "sigma2 exceeds |t2|^2");
      const cd dir = std::abs(c.delta2) > 0.0 ? c.delta2 / std::abs(c.delta2)
                     : std::abs(c.t2) > 0.0   ? c.t2 / std::abs(c.t2)
                                              : cd(1.0);
      c.delta2 = std::sqrt(d2) * dir;
    });
  } else {
    throw Error(ErrorCode::Config, "unknown sweep axis '" + name + "'");
  }
}

struct PointOut {
  std::vector<Value> values;
  PointStatus status = PointStatus::Ok;
  std::string message;
};

void escalate(PointOut& out, PointStatus s, const std::string& msg) {
  if (static_cast<int>(s) > static_cast<int>(out.status)) {
    out.status = s;
    out.message = msg;
  }
}

PointOut evaluate_point(const SweepSpec& spec, const std::vector<Observable>& obs, const ChainParams& p,
                        int spectrum_len, size_t n_columns) {
  PointOut out;
  const double nan = std::nan("");
  const auto verdict = validate(p);
  if (!verdict.ok) {
    out.values.assign(n_columns, nan);
    out.status = PointStatus::Error;
    out.message = verdict.violations.front();
    return out;
  }

  std::optional<StabilityReport> stab;
  auto stability = [&]() -> const StabilityReport& {
    if (!stab) stab = assess_stability(p);
    return *stab;
  };
  std::optional<MomentState> state;
  bool state_tried = false;
  auto moments = [&]() -> const MomentState* {
    if (state_tried) return state ? &*state : nullptr;
    state_tried = true;
    try {
      if (spec.engine == Engine::Exact) {
        if (!stability().stable) {
          escalate(out, PointStatus::Unstable, "no steady state");
          return nullptr;
        }
        state = steady_moments(p).state;
      } else {
        const auto ph = classify_phase(p).phase;
        AnalyticMoments am;
        if (ph == Phase::Topological) am = topo_approx(p);
        else if (ph == Phase::Trivial) am = trivial_approx(p);
        else if (ph == Phase::Boundary) am = exact_sums(p);
        else throw Error(ErrorCode::UnstableRegime, "Sigma1 or Sigma2 <= 0");
        state = MomentState{am.F_tilde, am.G_tilde, Frame::Squeezed};
      }
    } catch (const Error& e) {
      const bool unstable = e.code() == ErrorCode::Unstable || e.code() == ErrorCode::UnstableRegime;
      escalate(out, unstable ? PointStatus::Unstable : PointStatus::Error, e.what());
    }
    return state ? &*state : nullptr;
  };
  auto en = [&](int m, int mp) -> double {
    const MomentState* s = moments();
    if (!s) return nan;
    if (m < 0 || mp < 0 || m >= s->n_modes() || mp >= s->n_modes() || m == mp) {
      escalate(out, PointStatus::Error, "mode pair out of range");
      return nan;
    }
    return pair_report(*s, m, mp, false).E_N;
  };

  for (const auto& o : obs) {
    try {
      switch (o.kind) {
        case ObsKind::ENEdge: out.values.emplace_back(en(0, p.n_modes() - 1)); break;
        case ObsKind::ENPair: out.values.emplace_back(en(o.m - 1, o.mp - 1)); break;
        case ObsKind::Phase: out.values.emplace_back(std::string(to_string(classify_phase(p).phase))); break;
        case ObsKind::Skin: out.values.emplace_back(classify_phase(p).skin_effect ? 1.0 : 0.0); break;
        case ObsKind::Stable: out.values.emplace_back(stability().stable ? 1.0 : 0.0); break;
        case ObsKind::Abscissa: out.values.emplace_back(stability().spectral_abscissa); break;
        case ObsKind::Delta: out.values.emplace_back(min_abs(bdg_eigenvalues(p))); break;
        case ObsKind::Spectrum: {
          const auto eigs = bdg_eigenvalues(p);
          for (int i = 0; i < spectrum_len; ++i)
            out.values.emplace_back(i < static_cast<int>(eigs.size()) ? eigs[i].real() : nan);
          for (int i = 0; i < spectrum_len; ++i)
            out.values.emplace_back(i < static_cast<int>(eigs.size()) ? eigs[i].imag() : nan);
          break;
        }
        case ObsKind::Moments: {
          const MomentState* s = moments();
          if (!s) {
            for (int i = 0; i < 5; ++i) out.values.emplace_back(nan);
            break;
          }
          const auto r = pair_report(*s, 0, p.n_modes() - 1, false);
          for (double x : {r.K1, r.K2.real(), r.K2.imag(), r.K3, r.eta_minus}) out.values.emplace_back(x);
          break;
        }
      }
    } catch (const Error& e) {
      escalate(out, PointStatus::Error, e.what());
    }
  }
  out.values.resize(n_columns, nan);
  return out;
}

}  // namespace

const char* to_string(PointStatus s) noexcept {
  switch (s) {
    case PointStatus::Ok: return "ok";
    case PointStatus::Unstable: return "unstable";
    case PointStatus::Error: return "error";
  }
  return "error";
}

std::vector<double> Axis::grid() const {
  if (scale == AxisScale::List) return values;
  std::vector<double> g(static_cast<size_t>(std::max(0, n_points)));
  for (int i = 0; i < n_points; ++i) {
    const double f = n_points == 1 ? 0.0 : static_cast<double>(i) / (n_points - 1);
    if (scale == AxisScale::Linear)
      g[i] = (i == n_points - 1 && n_points > 1) ? max : min + (max - min) * f;
    else
      g[i] = (i == n_points - 1 && n_points > 1) ? max : std::exp(std::log(min) + (std::log(max) - std::log(min)) * f);
  }
  return g;
}

void validate_spec(const SweepSpec& spec) {
  if (spec.axes.empty() || spec.axes.size() > 2) throw Error(ErrorCode::Config, "a sweep needs one or two axes");
  for (const auto& a : spec.axes) {
    if (std::find(kAxisNames.begin(), kAxisNames.end(), a.name) == kAxisNames.end())
      throw Error(ErrorCode::Config, "unknown sweep axis '" + a.name + "'");
    if (a.scale == AxisScale::List) {
      if (a.values.empty()) throw Error(ErrorCode::Config, "list axis '" + a.name + "' has no values");
      continue;
    }
    if (a.n_points < 0) throw Error(ErrorCode::Config, "axis '" + a.name + "' has negative n_points");
    if (!std::isfinite(a.min) || !std::isfinite(a.max))
      throw Error(ErrorCode::Config, "axis '" + a.name + "' has a non-finite range");
    if (a.scale == AxisScale::Log && (a.min <= 0.0 || a.max <= 0.0))
      throw Error(ErrorCode::Config, "log axis '" + a.name + "' needs a positive range");
  }
  if (spec.observables.empty()) throw Error(ErrorCode::Config, "a sweep needs at least one observable");
  for (const auto& o : spec.observables) parse_observable(o);
  require_valid(spec.base);
}

ChainParams apply_axes(const SweepSpec& spec, const std::vector<double>& coords) {
  if (coords.size() != spec.axes.size()) throw Error(ErrorCode::Config, "coordinate count mismatch");
  ChainParams p = spec.base;
  bool lock = spec.lock_delta_ratio;
  for (size_t i = 0; i < coords.size(); ++i) apply_axis(p, spec.axes[i].name, coords[i], lock);
  if (lock) {
    p.q_delta = p.q_t;
    p.delta2_abs.reset();
  }
  return p;
}

SweepResult run_sweep(const SweepSpec& spec, int workers) {
  validate_spec(spec);
  std::vector<Observable> obs;
  for (const auto& o : spec.observables) obs.push_back(parse_observable(o));

  SweepResult r;
  std::vector<std::vector<double>> grids;
  size_t total = 1;
  for (const auto& a : spec.axes) {
    r.axis_names.push_back(a.name);
    grids.push_back(a.grid());
    r.shape.push_back(static_cast<int>(grids.back().size()));
    total *= grids.back().size();
  }

  r.coords.resize(total);
  r.points.resize(total, spec.base);
  r.status.assign(total, PointStatus::Ok);
  r.messages.assign(total, "");
  r.values.resize(total);
  std::vector<bool> resolved(total, false);
  int max_cells = spec.base.n_cells;
  for (size_t idx = 0; idx < total; ++idx) {
    size_t rest = idx;
    std::vector<double> c(grids.size());
    for (size_t a = grids.size(); a-- > 0;) {
      c[a] = grids[a][rest % grids[a].size()];
      rest /= grids[a].size();
    }
    r.coords[idx] = c;
    try {
      r.points[idx] = apply_axes(spec, c);
      resolved[idx] = true;
      max_cells = std::max(max_cells, r.points[idx].n_cells);
    } catch (const Error& e) {
      r.status[idx] = PointStatus::Error;
      r.messages[idx] = e.what();
    }
  }

  const int spectrum_len = 4 * max_cells;
  for (const auto& o : obs)
    for (auto& c : columns_of(o, spectrum_len)) r.columns.push_back(c);

  if (workers <= 0) workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  workers = static_cast<int>(std::min<size_t>(static_cast<size_t>(workers), std::max<size_t>(total, 1)));
  std::atomic<size_t> next{0};
  auto work = [&]() {
    for (size_t idx = next++; idx < total; idx = next++) {
      if (!resolved[idx]) {
        r.values[idx].assign(r.columns.size(), std::nan(""));
        continue;
      }
      auto out = evaluate_point(spec, obs, r.points[idx], spectrum_len, r.columns.size());
      r.values[idx] = std::move(out.values);
      r.status[idx] = out.status;
      r.messages[idx] = std::move(out.message);
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  return r;
}

SweepSpec sweep_spec_from_json(const nlohmann::json& j) {
  try {
    SweepSpec s;
    if (!j.is_object()) throw Error(ErrorCode::Config, "sweep spec must be a JSON object");
    s.base = params_from_json(j.at("base"));
    for (const auto& a : j.at("axes")) {
      Axis ax;
      ax.name = a.at("name").get<std::string>();
      const std::string scale = a.value("scale", std::string("linear"));
      if (scale == "linear") ax.scale = AxisScale::Linear;
      else if (scale == "log") ax.scale = AxisScale::Log;
      else if (scale == "list") ax.scale = AxisScale::List;
      else throw Error(ErrorCode::Config, "unknown axis scale '" + scale + "'");
      if (ax.scale == AxisScale::List) {
        ax.values = a.at("values").get<std::vector<double>>();
        ax.n_points = static_cast<int>(ax.values.size());
        ax.min = ax.values.empty() ? 0.0 : *std::min_element(ax.values.begin(), ax.values.end());
        ax.max = ax.values.empty() ? 0.0 : *std::max_element(ax.values.begin(), ax.values.end());
      } else {
        ax.min = a.at("min").get<double>();
        ax.max = a.at("max").get<double>();
        ax.n_points = a.at("n_points").get<int>();
      }
      s.axes.push_back(ax);
    }
    s.observables = j.at("observables").get<std::vector<std::string>>();
    const std::string engine = j.value("engine", std::string("exact"));
    if (engine == "exact") s.engine = Engine::Exact;
    else if (engine == "analytic") s.engine = Engine::Analytic;
    else throw Error(ErrorCode::Config, "unknown engine '" + engine + "'");
    s.lock_delta_ratio = j.value("lock_delta_ratio", false);
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Config, std::string("sweep spec: ") + e.what());
  }
}

nlohmann::json sweep_spec_to_json(const SweepSpec& s) {
  nlohmann::json j;
  j["base"] = params_to_json(s.base);
  j["axes"] = nlohmann::json::array();
  for (const auto& a : s.axes) {
    nlohmann::json ja = {{"name", a.name}};
    if (a.scale == AxisScale::List) {
      ja["scale"] = "list";
      ja["values"] = a.values;
    } else {
      ja["scale"] = a.scale == AxisScale::Log ? "log" : "linear";
      ja["min"] = a.min;
      ja["max"] = a.max;
      ja["n_points"] = a.n_points;
    }
    j["axes"].push_back(ja);
  }
  j["observables"] = s.observables;
  j["engine"] = s.engine == Engine::Exact ? "exact" : "analytic";
  j["lock_delta_ratio"] = s.lock_delta_ratio;
  return j;
}

}  // namespace bosonchain
