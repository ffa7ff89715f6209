#include <numbers>

#include "bosonchain/errors.hpp"
#include "bosonchain/sweep.hpp"

namespace bosonchain {

namespace {

ChainParams fig5_base() {
  ChainParams p;
  p.t1 = 1.0;
  p.delta1 = 0.6;
  p.q_t = 4.0;
  p.q_delta = 4.0;
  p.n_cells = 5;
  p.kappa = 0.01;
  return p;
}

Axis linear(const std::string& name, double lo, double hi, int n) { return {name, lo, hi, n, AxisScale::Linear, {}}; }

Axis list(const std::string& name, std::vector<double> v) {
  return {name, v.front(), v.back(), static_cast<int>(v.size()), AxisScale::List, v};
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"fig1", "fig2", "fig3", "fig4", "fig5a", "fig5b", "fig5c", "fig5d", "fig6a", "fig6b", "pairs"};
}

Preset preset(const std::string& name) {
  Preset pr;
  pr.name = name;
  SweepSpec& s = pr.spec;
  const double two_pi = 2.0 * std::numbers::pi;

  if (name == "fig1") {
    // Phase diagram over (Sigma1, Sigma2) at t1 = 1, |t2| = 4.
    s.base = fig5_base();
    s.base.q_delta = 0.0;
    s.axes = {linear("sigma1", 0.02, 1.0, 41), linear("sigma2", 0.02, 16.0, 41)};
    s.observables = {"E_N_edge", "phase", "stable"};
    pr.range_assumed = true;
    pr.notes = "Sigma1 in [0.02, 1], Sigma2 in [0.02, 16] at t1=1, |t2|=4, kappa=0.01, N=5 (extents assumed)";
  } else if (name == "fig2") {
    s.base.t1 = 1.0;
    s.base.delta1 = 0.6;
    s.base.q_t = 0.8;
    s.base.q_delta = 0.0;
    s.base.n_cells = 10;
    s.base.kappa = 0.01;
    s.axes = {linear("t1", 0.65, 1.4, 151)};
    s.observables = {"spectrum", "phase", "delta"};
    pr.range_assumed = true;
    pr.notes = "t1 swept in [0.65, 1.4] at t2=0.8, Delta1=0.6, Delta2=0, N=10 (swept axis and extent assumed)";
  } else if (name == "fig3") {
    s.base = fig5_base();
    s.axes = {linear("delta1_over_t1", -0.95, 0.95, 41), linear("delta2_over_t2", -0.95, 0.95, 41)};
    s.observables = {"E_N_edge", "phase"};
    pr.analytic_companion = true;
    pr.range_assumed = true;
    pr.notes = "Delta1/t1, Delta2/t2 in [-0.95, 0.95] at t2/t1=4, N=5, kappa=0.01 (extents assumed)";
  } else if (name == "fig4") {
    s.base = fig5_base();
    s.axes = {linear("t2_over_t1", 1.0, 12.0, 45), linear("delta_over_t", 0.0, 0.95, 39)};
    s.observables = {"E_N_edge", "phase"};
    pr.analytic_companion = true;
    pr.range_assumed = true;
    pr.notes = "t2/t1 in [1, 12], Delta/t in [0, 0.95] with Delta1/t1 = Delta2/t2, N=5, kappa=0.01 (extents assumed)";
  } else if (name == "fig5a") {
    s.base = fig5_base();
    s.lock_delta_ratio = true;
    s.axes = {list("kappa", {0.01, 0.1, 0.3}), linear("t2_over_t1", 1.0, 12.0, 111)};
    s.observables = {"E_N_edge", "delta"};
    pr.notes = "t2/t1 in [1, 12], kappa in {0.01, 0.1, 0.3}, Delta/t = 0.6, N=5";
  } else if (name == "fig5b") {
    s.base = fig5_base();
    s.lock_delta_ratio = true;
    s.axes = {list("n_cells", {2, 3, 4, 5, 6}), linear("t2_over_t1", 1.0, 12.0, 111)};
    s.observables = {"E_N_edge", "delta"};
    pr.range_assumed = true;
    pr.notes = "N in {2, 3, 4, 5, 6} (values assumed), t2/t1 in [1, 12], kappa=0.01, Delta/t = 0.6";
  } else if (name == "fig5c") {
    s.base = fig5_base();
    s.lock_delta_ratio = true;
    s.axes = {linear("n_th", 0.0, 0.15, 61)};
    s.observables = {"E_N_edge"};
    pr.range_assumed = true;
    pr.notes = "inset: n_th in [0, 0.15] (extent assumed) at t2/t1=4, Delta/t = 0.6, N=5, kappa=0.01";
  } else if (name == "fig5d") {
    s.base = fig5_base();
    s.lock_delta_ratio = true;
    s.axes = {list("mu", {-0.02, 0.0, 0.02}), linear("t2_over_t1", 1.0, 12.0, 111)};
    s.observables = {"E_N_edge", "stable", "spectral_abscissa"};
    pr.range_assumed = true;
    pr.notes = "mu in {-0.02, 0, 0.02} (values assumed), t2/t1 in [1, 12], Delta/t = 0.6, N=5, kappa=0.01";
  } else if (name == "fig6a" || name == "fig6b") {
    s.base = fig5_base();
    s.axes = {linear(name == "fig6a" ? "phi_t" : "phi_delta", 0.0, two_pi, 81)};
    s.observables = {"E_N_edge", "stable"};
    pr.notes = "phase in [0, 2 pi], t1=1, |t2|=4, Delta1/t1=|Delta2/t2|=0.6, kappa=0.01, N=5";
  } else if (name == "pairs") {
    s.base = fig5_base();
    s.lock_delta_ratio = true;
    s.axes = {linear("t2_over_t1", 1.0, 12.0, 111)};
    s.observables = {"E_N_edge", "E_N_pair:1:3"};
    pr.notes = "edge pair vs modes (1, 3), kappa=0.01, N=5, Delta/t = 0.6";
  } else {
    throw Error(ErrorCode::Config, "unknown preset '" + name + "'");
  }
  return pr;
}

}  // namespace bosonchain
