#include "bosonchain/bosonchain.h"

#include <cstring>
#include <new>
#include <sstream>
#include <string>

#include "bosonchain/band_theory.hpp"
#include "bosonchain/entanglement.hpp"
#include "bosonchain/errors.hpp"
#include "bosonchain/langevin.hpp"
#include "bosonchain/open_spectrum.hpp"
#include "bosonchain/params_json.hpp"
#include "bosonchain/steady_state.hpp"
#include "bosonchain/sweep.hpp"

namespace bc = bosonchain;

struct bc_params {
  bc::ChainParams p;
};
struct bc_moments {
  bc::MomentState s;
};
struct bc_sweep {
  bc::SweepResult r;
};

namespace {

thread_local std::string g_last_error;

bc_status map_code(bc::ErrorCode c) {
  switch (c) {
    case bc::ErrorCode::InvalidArgument: return BC_ERR_INVALID_ARGUMENT;
    case bc::ErrorCode::Config: return BC_ERR_CONFIG;
    case bc::ErrorCode::UnstableRegime: return BC_ERR_UNSTABLE_REGIME;
    case bc::ErrorCode::Unstable: return BC_ERR_UNSTABLE;
    case bc::ErrorCode::NotTopological: return BC_ERR_NOT_TOPOLOGICAL;
    case bc::ErrorCode::WrongPhase: return BC_ERR_WRONG_PHASE;
    case bc::ErrorCode::AnalyticUnsupported: return BC_ERR_ANALYTIC_UNSUPPORTED;
    case bc::ErrorCode::UnphysicalCovariance: return BC_ERR_UNPHYSICAL;
    case bc::ErrorCode::Domain: return BC_ERR_DOMAIN;
    case bc::ErrorCode::Io: return BC_ERR_IO;
  }
  return BC_ERR_INTERNAL;
}

bc_status fail(bc_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

template <class F>
bc_status guard(F&& f) {
  try {
    g_last_error.clear();
    return f();
  } catch (const bc::Error& e) {
    return fail(map_code(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(BC_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(BC_ERR_INTERNAL, e.what());
  }
}

#define BC_REQUIRE(cond, msg) \
  if (!(cond)) return fail(BC_ERR_INVALID_ARGUMENT, msg)

bc_status copy_string(const std::string& s, char* buf, size_t cap, size_t* len) {
  if (len) *len = s.size();
  if (cap == 0 && buf == nullptr) return BC_OK;  // size query
  if (!buf || cap < s.size() + 1)
    return fail(BC_ERR_BUFFER_TOO_SMALL, "buffer too small: need " + std::to_string(s.size() + 1) + " bytes");
  std::memcpy(buf, s.c_str(), s.size() + 1);
  return BC_OK;
}

bc_status emit(bc::MomentState s, bc_moments** out) {
  *out = new bc_moments{std::move(s)};
  return BC_OK;
}

bc_entanglement to_c(const bc::EntanglementReport& r) {
  return {r.K1, r.K2.real(), r.K2.imag(), r.K3, r.eta_minus, r.E_N};
}

}  // namespace

extern "C" {

const char* bc_version(void) { return "1.0.0"; }
const char* bc_last_error(void) { return g_last_error.c_str(); }

const char* bc_status_name(bc_status s) {
  switch (s) {
    case BC_OK: return "ok";
    case BC_ERR_INVALID_ARGUMENT: return "invalid argument";
    case BC_ERR_CONFIG: return "config error";
    case BC_ERR_UNSTABLE_REGIME: return "unstable regime";
    case BC_ERR_UNSTABLE: return "unstable";
    case BC_ERR_NOT_TOPOLOGICAL: return "not topological";
    case BC_ERR_WRONG_PHASE: return "wrong phase";
    case BC_ERR_ANALYTIC_UNSUPPORTED: return "analytic unsupported";
    case BC_ERR_UNPHYSICAL: return "unphysical covariance";
    case BC_ERR_DOMAIN: return "domain error";
    case BC_ERR_IO: return "I/O error";
    case BC_ERR_BUFFER_TOO_SMALL: return "buffer too small";
    case BC_ERR_INTERNAL: return "internal error";
  }
  return "unknown";
}

bc_status bc_params_from_json(const char* json, bc_params** out) {
  return guard([&] {
    BC_REQUIRE(json && out, "null argument");
    *out = new bc_params{bc::params_from_json_text(json)};
    return BC_OK;
  });
}

bc_status bc_params_create(double t1, double delta1, double q_t, double q_delta, double phi_t, double phi_delta,
                           int n_cells, double kappa, double n_th, double mu, bc_params** out) {
  return guard([&] {
    BC_REQUIRE(out, "null argument");
    bc::ChainParams p;
    p.t1 = t1;
    p.delta1 = delta1;
    p.q_t = q_t;
    p.q_delta = q_delta;
    p.phi_t = phi_t;
    p.phi_delta = phi_delta;
    p.n_cells = n_cells;
    p.kappa = kappa;
    p.n_th = n_th;
    p.mu = mu;
    *out = new bc_params{p};
    return BC_OK;
  });
}

bc_status bc_params_clone(const bc_params* p, bc_params** out) {
  return guard([&] {
    BC_REQUIRE(p && out, "null argument");
    *out = new bc_params{*p};
    return BC_OK;
  });
}

void bc_params_destroy(bc_params* p) { delete p; }

bc_status bc_params_to_json(const bc_params* p, char* buf, size_t cap, size_t* len) {
  return guard([&] {
    BC_REQUIRE(p, "null argument");
    return copy_string(bc::params_to_json_text(p->p), buf, cap, len);
  });
}

int bc_params_n_modes(const bc_params* p) { return p ? p->p.n_modes() : 0; }

bc_status bc_params_validate(const bc_params* p, int* ok, int* analytic_restricted, char* buf, size_t cap,
                             size_t* len) {
  return guard([&] {
    BC_REQUIRE(p, "null argument");
    const auto v = bc::validate(p->p);
    if (ok) *ok = v.ok ? 1 : 0;
    if (analytic_restricted) *analytic_restricted = v.analytic_restricted ? 1 : 0;
    std::string joined;
    for (const auto& s : v.violations) joined += (joined.empty() ? "" : "; ") + s;
    if (!buf && cap == 0 && !len) return BC_OK;
    return copy_string(joined, buf, cap, len);
  });
}

bc_status bc_sigma_invariants(const bc_params* p, double out[3]) {
  return guard([&] {
    BC_REQUIRE(p && out, "null argument");
    const auto s = bc::sigma_invariants(p->p);
    out[0] = s.sigma1;
    out[1] = s.sigma2;
    out[2] = s.sigma3;
    return BC_OK;
  });
}

bc_status bc_effective_couplings(const bc_params* p, double* t1p, double* t2p) {
  return guard([&] {
    BC_REQUIRE(p, "null argument");
    const auto e = bc::effective_couplings(p->p);
    if (t1p) *t1p = e.t1p;
    if (t2p) *t2p = e.t2p;
    return BC_OK;
  });
}

bc_status bc_squeeze_transform(const bc_params* p, double* r_a, double* r_b, double* r_0, double* r, size_t cap) {
  return guard([&] {
    BC_REQUIRE(p, "null argument");
    const auto s = bc::squeeze_transform(p->p);
    if (r_a) *r_a = s.r_a;
    if (r_b) *r_b = s.r_b;
    if (r_0) *r_0 = s.r_0;
    if (r) {
      if (cap < static_cast<size_t>(s.r.size())) return fail(BC_ERR_BUFFER_TOO_SMALL, "r needs n_modes entries");
      for (Eigen::Index i = 0; i < s.r.size(); ++i) r[i] = s.r(i);
    }
    return BC_OK;
  });
}

bc_status bc_classify_phase(const bc_params* p, double tol, bc_phase* phase, int* skin_effect) {
  return guard([&] {
    BC_REQUIRE(p, "null argument");
    const auto d = bc::classify_phase(p->p, tol);
    if (phase) *phase = static_cast<bc_phase>(static_cast<int>(d.phase));
    if (skin_effect) *skin_effect = d.skin_effect ? 1 : 0;
    return BC_OK;
  });
}

bc_status bc_band_edges(const bc_params* p, double* xi2_min, double* xi2_max) {
  return guard([&] {
    BC_REQUIRE(p && xi2_min && xi2_max, "null argument");
    const auto e = bc::band_edges(p->p);
    *xi2_min = e.first;
    *xi2_max = e.second;
    return BC_OK;
  });
}

bc_status bc_bloch_spectrum(const bc_params* p, double k, double re_xi2[4], double im_xi2[4]) {
  return guard([&] {
    BC_REQUIRE(p && re_xi2 && im_xi2, "null argument");
    const auto b = bc::bloch_spectrum(p->p, k);
    for (int i = 0; i < 4; ++i) {
      re_xi2[i] = b.xi_squared[i].real();
      im_xi2[i] = b.xi_squared[i].imag();
    }
    return BC_OK;
  });
}

bc_status bc_beta_roots(const bc_params* p, double re_xi2, double im_xi2, double beta[8], int* degenerate) {
  return guard([&] {
    BC_REQUIRE(p && beta, "null argument");
    const auto r = bc::beta_roots(p->p, {re_xi2, im_xi2});
    for (int i = 0; i < 4; ++i) {
      beta[2 * i] = r.roots[i].real();
      beta[2 * i + 1] = r.roots[i].imag();
    }
    if (degenerate) *degenerate = r.degenerate ? 1 : 0;
    return BC_OK;
  });
}

bc_status bc_gbz_spectrum(const bc_params* p, int n_samples, double* xi, double* abs_beta_pair1,
                          double* abs_beta_pair2) {
  return guard([&] {
    BC_REQUIRE(p && xi && abs_beta_pair1 && abs_beta_pair2, "null argument");
    const auto g = bc::gbz_spectrum(p->p, n_samples);
    for (size_t i = 0; i < g.size(); ++i) {
      xi[i] = g[i].xi;
      abs_beta_pair1[i] = g[i].abs_beta_pair1;
      abs_beta_pair2[i] = g[i].abs_beta_pair2;
    }
    return BC_OK;
  });
}

bc_status bc_bdg_eigenvalues(const bc_params* p, double* re, double* im, size_t cap) {
  return guard([&] {
    BC_REQUIRE(p && re && im, "null argument");
    if (cap < static_cast<size_t>(2 * p->p.n_modes())) return fail(BC_ERR_BUFFER_TOO_SMALL, "need 4N entries");
    const auto e = bc::bdg_eigenvalues(p->p);
    for (size_t i = 0; i < e.size(); ++i) {
      re[i] = e[i].real();
      im[i] = e[i].imag();
    }
    return BC_OK;
  });
}

bc_status bc_assess_stability(const bc_params* p, int* stable, double* spectral_abscissa) {
  return guard([&] {
    BC_REQUIRE(p, "null argument");
    const auto s = bc::assess_stability(p->p);
    if (stable) *stable = s.stable ? 1 : 0;
    if (spectral_abscissa) *spectral_abscissa = s.spectral_abscissa;
    return BC_OK;
  });
}

bc_status bc_edge_modes(const bc_params* p, double out[6]) {
  return guard([&] {
    BC_REQUIRE(p && out, "null argument");
    const auto e = bc::edge_modes(p->p);
    const double v[6] = {e.delta, e.epsilon, e.l, e.L1, e.L2, e.overlap};
    std::memcpy(out, v, sizeof v);
    return BC_OK;
  });
}

bc_status bc_ssh_eigenvalues(const bc_params* p, double* lambdas, size_t cap) {
  return guard([&] {
    BC_REQUIRE(p && lambdas, "null argument");
    if (cap < static_cast<size_t>(p->p.n_modes())) return fail(BC_ERR_BUFFER_TOO_SMALL, "need 2N entries");
    const auto d = bc::ssh_eigendecomposition(bc::build_coupling_matrix(p->p));
    for (Eigen::Index i = 0; i < d.lambdas.size(); ++i) lambdas[i] = d.lambdas(i);
    return BC_OK;
  });
}

bc_status bc_steady_moments(const bc_params* p, bc_moments** out, double* spectral_abscissa) {
  try {
    BC_REQUIRE(p && out, "null argument");
    g_last_error.clear();
    auto sol = bc::steady_moments(p->p);
    if (spectral_abscissa) *spectral_abscissa = sol.spectral_abscissa;
    return emit(std::move(sol.state), out);
  } catch (const bc::UnstableError& e) {
    if (spectral_abscissa) *spectral_abscissa = e.spectral_abscissa();
    return fail(BC_ERR_UNSTABLE, e.what());
  } catch (...) {
    return guard([] () -> bc_status { throw; });
  }
}

bc_status bc_analytic_moments(const bc_params* p, bc_method method, bc_moments** out) {
  return guard([&] {
    BC_REQUIRE(p && out, "null argument");
    bc::AnalyticMoments a;
    switch (method) {
      case BC_METHOD_EXACT_SUM: a = bc::exact_sums(p->p); break;
      case BC_METHOD_TRIVIAL: a = bc::trivial_approx(p->p); break;
      case BC_METHOD_TOPO: a = bc::topo_approx(p->p); break;
      case BC_METHOD_EDGE: a = bc::edge_reduced(p->p); break;
      case BC_METHOD_TWO_MODE: a = bc::two_mode_closed_form(p->p); break;
      default: return fail(BC_ERR_INVALID_ARGUMENT, "unknown method");
    }
    return emit({a.F_tilde, a.G_tilde, bc::Frame::Squeezed}, out);
  });
}

bc_status bc_vacuum_moments(int n_modes, bc_moments** out) {
  return guard([&] {
    BC_REQUIRE(out && n_modes > 0, "need n_modes > 0");
    return emit(bc::vacuum_state(n_modes), out);
  });
}

bc_status bc_evolve_moments(const bc_params* p, const bc_moments* initial, double t, bc_moments** out) {
  return guard([&] {
    BC_REQUIRE(p && initial && out, "null argument");
    return emit(bc::evolve_moments(p->p, initial->s, t), out);
  });
}

bc_status bc_change_frame(const bc_params* p, const bc_moments* s, bc_frame to, bc_moments** out) {
  return guard([&] {
    BC_REQUIRE(p && s && out, "null argument");
    const auto target = to == BC_FRAME_SQUEEZED ? bc::Frame::Squeezed : bc::Frame::Original;
    return emit(bc::change_frame(s->s, bc::squeeze_transform(p->p), target), out);
  });
}

void bc_moments_destroy(bc_moments* s) { delete s; }
int bc_moments_n_modes(const bc_moments* s) { return s ? s->s.n_modes() : 0; }
bc_frame bc_moments_frame(const bc_moments* s) {
  return s && s->s.frame == bc::Frame::Squeezed ? BC_FRAME_SQUEEZED : BC_FRAME_ORIGINAL;
}

bc_status bc_moments_get(const bc_moments* s, int m, int mp, double F[2], double G[2]) {
  return guard([&] {
    BC_REQUIRE(s, "null argument");
    const int n = s->s.n_modes();
    BC_REQUIRE(m >= 1 && m <= n && mp >= 1 && mp <= n, "mode index out of range (1-based)");
    if (F) {
      F[0] = s->s.F(m - 1, mp - 1).real();
      F[1] = s->s.F(m - 1, mp - 1).imag();
    }
    if (G) {
      G[0] = s->s.G(m - 1, mp - 1).real();
      G[1] = s->s.G(m - 1, mp - 1).imag();
    }
    return BC_OK;
  });
}

bc_status bc_quadrature_covariance(const bc_moments* s, const int* modes, int n, double* out, size_t cap) {
  return guard([&] {
    BC_REQUIRE(s && modes && out && n > 0, "null argument");
    if (cap < static_cast<size_t>(4 * n * n)) return fail(BC_ERR_BUFFER_TOO_SMALL, "need (2n)^2 entries");
    std::vector<int> idx(modes, modes + n);
    for (int& m : idx) --m;
    const auto v = bc::to_quadrature_covariance(s->s, idx);
    for (int i = 0; i < 2 * n; ++i)
      for (int j = 0; j < 2 * n; ++j) out[i * 2 * n + j] = v(i, j);
    return BC_OK;
  });
}

bc_status bc_pair_report(const bc_moments* s, int m, int mp, bc_entanglement* out) {
  return guard([&] {
    BC_REQUIRE(s && out, "null argument");
    const int n = s->s.n_modes();
    BC_REQUIRE(m >= 1 && m <= n && mp >= 1 && mp <= n, "mode index out of range (1-based)");
    *out = to_c(bc::pair_report(s->s, m - 1, mp - 1));
    return BC_OK;
  });
}

bc_status bc_logneg_symmetric(double K1, double K2, double K3, bc_entanglement* out) {
  return guard([&] {
    BC_REQUIRE(out, "null argument");
    *out = to_c(bc::logneg_symmetric(K1, K2, K3));
    return BC_OK;
  });
}

bc_status bc_logneg_general(const double v[16], bc_entanglement* out) {
  return guard([&] {
    BC_REQUIRE(v && out, "null argument");
    const bc::Mat m = Eigen::Map<const Eigen::Matrix<double, 4, 4, Eigen::RowMajor>>(v);
    *out = to_c(bc::logneg_general(m));
    return BC_OK;
  });
}

bc_status bc_squeezing_degree(const bc_moments* s, int m, double* r_eff, double* theta) {
  return guard([&] {
    BC_REQUIRE(s && m >= 1 && m <= s->s.n_modes(), "bad moments handle or mode");
    const auto d = bc::squeezing_degree(s->s, m - 1);
    if (r_eff) *r_eff = d.r_eff;
    if (theta) *theta = d.theta;
    return BC_OK;
  });
}

bc_status bc_sweep_run_json(const char* spec_json, int workers, bc_sweep** out) {
  return guard([&] {
    BC_REQUIRE(spec_json && out, "null argument");
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(spec_json);
    } catch (const nlohmann::json::parse_error& e) {
      return fail(BC_ERR_CONFIG, std::string("sweep spec parse error: ") + e.what());
    }
    *out = new bc_sweep{bc::run_sweep(bc::sweep_spec_from_json(j), workers)};
    return BC_OK;
  });
}

bc_status bc_preset_names(char* buf, size_t cap, size_t* len) {
  return guard([&] {
    std::string all;
    for (const auto& n : bc::preset_names()) all += n + "\n";
    return copy_string(all, buf, cap, len);
  });
}

bc_status bc_preset_spec_json(const char* name, char* buf, size_t cap, size_t* len) {
  return guard([&] {
    BC_REQUIRE(name, "null argument");
    return copy_string(bc::sweep_spec_to_json(bc::preset(name).spec).dump(2), buf, cap, len);
  });
}

bc_status bc_preset_info(const char* name, int* range_assumed, int* analytic_companion, char* buf, size_t cap,
                         size_t* len) {
  return guard([&] {
    BC_REQUIRE(name, "null argument");
    const auto pr = bc::preset(name);
    if (range_assumed) *range_assumed = pr.range_assumed ? 1 : 0;
    if (analytic_companion) *analytic_companion = pr.analytic_companion ? 1 : 0;
    if (!buf && cap == 0 && !len) return BC_OK;
    return copy_string(pr.notes, buf, cap, len);
  });
}

size_t bc_sweep_size(const bc_sweep* s) { return s ? s->r.size() : 0; }

size_t bc_sweep_count_status(const bc_sweep* s, const char* status) {
  if (!s || !status) return 0;
  size_t n = 0;
  for (auto st : s->r.status) n += std::strcmp(bc::to_string(st), status) == 0;
  return n;
}

bc_status bc_sweep_write_csv(const bc_sweep* s, const char* path) {
  return guard([&] {
    BC_REQUIRE(s && path, "null argument");
    bc::write_csv(s->r, std::string(path));
    return BC_OK;
  });
}

bc_status bc_sweep_csv(const bc_sweep* s, char* buf, size_t cap, size_t* len) {
  return guard([&] {
    BC_REQUIRE(s, "null argument");
    std::ostringstream os;
    bc::write_csv(s->r, os);
    return copy_string(os.str(), buf, cap, len);
  });
}

bc_status bc_sweep_write_plot(const bc_sweep* s, const char* path, const char* csv_path, int phase_overlay) {
  return guard([&] {
    BC_REQUIRE(s && path && csv_path, "null argument");
    bc::render_plot(s->r, std::string(path), std::string(csv_path), phase_overlay != 0);
    return BC_OK;
  });
}

void bc_sweep_destroy(bc_sweep* s) { delete s; }

}  // extern "C"
