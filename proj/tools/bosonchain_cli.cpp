// bosonchain command-line front end. Talks to the library only through the C API.
#include <bosonchain/bosonchain.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitUnstable = 3;

struct CliError {
  int exit_code;
  std::string message;
};

int exit_code_for(bc_status s) {
  switch (s) {
    case BC_OK: return kExitOk;
    case BC_ERR_CONFIG:
    case BC_ERR_INVALID_ARGUMENT:
    case BC_ERR_IO: return kExitConfig;
    case BC_ERR_UNSTABLE:
    case BC_ERR_UNSTABLE_REGIME: return kExitUnstable;
    default: return kExitFailure;
  }
}

void check(bc_status s) {
  if (s != BC_OK) throw CliError{exit_code_for(s), std::string(bc_status_name(s)) + ": " + bc_last_error()};
}

using ParamsPtr = std::unique_ptr<bc_params, decltype(&bc_params_destroy)>;
using MomentsPtr = std::unique_ptr<bc_moments, decltype(&bc_moments_destroy)>;
using SweepPtr = std::unique_ptr<bc_sweep, decltype(&bc_sweep_destroy)>;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CliError{kExitConfig, "cannot read " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

struct Globals {
  std::string params_path;
  std::string out;
  std::string format = "csv";
  int workers = 0;
};

ParamsPtr load_params(const Globals& g) {
  if (g.params_path.empty()) throw CliError{kExitConfig, "--params <json-file> is required"};
  bc_params* p = nullptr;
  check(bc_params_from_json(read_file(g.params_path).c_str(), &p));
  return {p, bc_params_destroy};
}

void require_csv(const Globals& g, const char* cmd) {
  if (g.format != "csv") throw CliError{kExitConfig, std::string(cmd) + " only supports --format csv"};
}

// Text goes to --out when given, stdout otherwise.
void emit(const Globals& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(g.out);
  if (!f) throw CliError{kExitConfig, "cannot write " + g.out};
  f << text;
}

std::string sweep_csv(const bc_sweep* s) {
  size_t len = 0;
  check(bc_sweep_csv(s, nullptr, 0, &len));
  std::string buf(len + 1, '\0');
  check(bc_sweep_csv(s, buf.data(), buf.size(), &len));
  buf.resize(len);
  return buf;
}

// csv: write to --out or stdout. plot: --out names the gnuplot script; data lands beside it.
void emit_sweep(const Globals& g, const bc_sweep* s, const std::string& suffix = "") {
  if (g.format == "plot") {
    if (g.out.empty()) throw CliError{kExitConfig, "--format plot needs --out"};
    std::filesystem::path script(g.out);
    auto stem = script.parent_path() / (script.stem().string() + suffix);
    const std::string csv = stem.string() + ".csv";
    const std::string gp = stem.string() + ".gp";
    check(bc_sweep_write_csv(s, csv.c_str()));
    check(bc_sweep_write_plot(s, gp.c_str(), csv.c_str(), 1));
    std::cerr << "wrote " << csv << " and " << gp << "\n";
    return;
  }
  if (g.out.empty()) {
    if (!suffix.empty()) return;  // companion runs need a file target
    std::cout << sweep_csv(s);
    return;
  }
  std::filesystem::path out(g.out);
  std::string path = g.out;
  if (!suffix.empty()) path = (out.parent_path() / (out.stem().string() + suffix + out.extension().string())).string();
  check(bc_sweep_write_csv(s, path.c_str()));
}

SweepPtr run_spec(const std::string& json, int workers) {
  bc_sweep* s = nullptr;
  check(bc_sweep_run_json(json.c_str(), workers, &s));
  return {s, bc_sweep_destroy};
}

std::string preset_json(const std::string& name) {
  size_t len = 0;
  check(bc_preset_spec_json(name.c_str(), nullptr, 0, &len));
  std::string buf(len + 1, '\0');
  check(bc_preset_spec_json(name.c_str(), buf.data(), buf.size(), &len));
  buf.resize(len);
  return buf;
}

void run_preset(const Globals& g, const std::string& name) {
  int companion = 0, assumed = 0;
  check(bc_preset_info(name.c_str(), &assumed, &companion, nullptr, 0, nullptr));
  const std::string spec = preset_json(name);
  auto main_run = run_spec(spec, g.workers);
  emit_sweep(g, main_run.get());
  if (companion) {
    auto j = nlohmann::json::parse(spec);
    j["engine"] = "analytic";
    auto analytic = run_spec(j.dump(), g.workers);
    if (g.out.empty())
      std::cerr << "note: analytic companion of " << name << " skipped (no --out)\n";
    else
      emit_sweep(g, analytic.get(), "_analytic");
  }
}

std::string moments_csv(const bc_moments* m) {
  const int n = bc_moments_n_modes(m);
  std::ostringstream os;
  os << "m,mp,re_F,im_F,re_G,im_G\n";
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      double F[2], G[2];
      check(bc_moments_get(m, i, j, F, G));
      os << i << ',' << j << ',' << fmt(F[0]) << ',' << fmt(F[1]) << ',' << fmt(G[0]) << ',' << fmt(G[1]) << '\n';
    }
  return os.str();
}

void write_covariance(const bc_moments* m, const std::string& path) {
  const int n = bc_moments_n_modes(m);
  std::vector<int> modes(n);
  for (int i = 0; i < n; ++i) modes[i] = i + 1;
  std::vector<double> v(4 * n * n);
  check(bc_quadrature_covariance(m, modes.data(), n, v.data(), v.size()));
  std::ofstream f(path);
  if (!f) throw CliError{kExitConfig, "cannot write " + path};
  for (int i = 0; i < 2 * n; ++i) {
    for (int j = 0; j < 2 * n; ++j) f << (j ? "," : "") << fmt(v[i * 2 * n + j]);
    f << '\n';
  }
}

MomentsPtr to_frame(const bc_params* p, MomentsPtr m, const std::string& frame) {
  const bc_frame want = frame == "squeezed" ? BC_FRAME_SQUEEZED : BC_FRAME_ORIGINAL;
  if (bc_moments_frame(m.get()) == want) return m;
  bc_moments* out = nullptr;
  check(bc_change_frame(p, m.get(), want, &out));
  return {out, bc_moments_destroy};
}

MomentsPtr steady(const bc_params* p) {
  bc_moments* m = nullptr;
  double abscissa = 0.0;
  const bc_status s = bc_steady_moments(p, &m, &abscissa);
  if (s == BC_ERR_UNSTABLE)
    throw CliError{kExitUnstable, std::string("refusing: no steady state (spectral abscissa ") + fmt(abscissa) + ")"};
  check(s);
  return {m, bc_moments_destroy};
}

MomentsPtr analytic(const bc_params* p, bc_method method) {
  bc_moments* m = nullptr;
  check(bc_analytic_moments(p, method, &m));
  return {m, bc_moments_destroy};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steady-state entanglement in a dissipative bosonic Kitaev-type chain"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(bc_version()));

  Globals g;
  app.add_option("--params", g.params_path, "chain parameters (JSON file)");
  app.add_option("--out", g.out, "output path (default: stdout)");
  app.add_option("--format", g.format, "csv or plot")->check(CLI::IsMember({"csv", "plot"}));
  app.add_option("--workers", g.workers, "sweep threads (0 = hardware concurrency)")->check(CLI::NonNegativeNumber);
  app.fallthrough();

  auto* spectrum = app.add_subcommand("spectrum", "open-chain excitation spectrum");
  bool sweep_t1 = false;
  spectrum->add_flag("--sweep-t1", sweep_t1, "run the t1 spectrum scan preset instead");

  auto* bloch = app.add_subcommand("bloch", "Bloch bands xi^2(k)");
  int k_points = 101;
  bloch->add_option("--k-points", k_points, "samples in [-pi, pi]")->check(CLI::PositiveNumber);

  auto* gbz = app.add_subcommand("gbz", "generalized Brillouin zone |beta| along the band");
  int gbz_samples = 100;
  gbz->add_option("--samples", gbz_samples)->check(CLI::PositiveNumber);

  std::string frame = "original";
  auto* steady_cmd = app.add_subcommand("steady", "exact steady-state moments");
  std::string cov_path;
  steady_cmd->add_option("--covariance", cov_path, "also write the quadrature covariance matrix");
  steady_cmd->add_option("--frame", frame)->check(CLI::IsMember({"original", "squeezed"}));

  auto* analytic_cmd = app.add_subcommand("analytic", "analytic steady-state moments");
  std::string method = "exact";
  std::string analytic_frame = "squeezed";
  analytic_cmd->add_option("--method", method)->check(CLI::IsMember({"exact", "trivial", "topo", "edge", "two-mode"}));
  analytic_cmd->add_option("--frame", analytic_frame)->check(CLI::IsMember({"original", "squeezed"}));
  analytic_cmd->add_option("--covariance", cov_path);

  auto* entangle = app.add_subcommand("entangle", "log-negativity of a mode pair");
  std::string pair;
  std::string engine = "exact";
  entangle->add_option("--pair", pair, "m,m' (1-based; default 1,2N)");
  entangle->add_option("--engine", engine)->check(CLI::IsMember({"exact", "analytic"}));

  auto* sweep = app.add_subcommand("sweep", "run a sweep spec");
  std::string spec_path;
  sweep->add_option("--spec", spec_path, "sweep spec (JSON file)")->required();

  auto* preset = app.add_subcommand("preset", "run a figure preset");
  std::string preset_name;
  bool list_presets = false;
  preset->add_option("name", preset_name, "fig1 fig2 fig3 fig4 fig5a fig5b fig5c fig5d fig6a fig6b pairs");
  preset->add_flag("--list", list_presets, "print the resolved spec JSON and metadata instead of running");

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    if (*spectrum) {
      if (sweep_t1) {
        run_preset(g, "fig2");
        return kExitOk;
      }
      require_csv(g, "spectrum");
      auto p = load_params(g);
      const size_t n = 2 * static_cast<size_t>(bc_params_n_modes(p.get()));
      std::vector<double> re(n), im(n);
      check(bc_bdg_eigenvalues(p.get(), re.data(), im.data(), n));
      std::ostringstream os;
      os << "index,re_xi,im_xi\n";
      for (size_t i = 0; i < n; ++i) os << i + 1 << ',' << fmt(re[i]) << ',' << fmt(im[i]) << '\n';
      emit(g, os.str());
    } else if (*bloch) {
      require_csv(g, "bloch");
      auto p = load_params(g);
      std::ostringstream os;
      os << "k,re_xi2_1,re_xi2_2,re_xi2_3,re_xi2_4,im_xi2_1,im_xi2_2,im_xi2_3,im_xi2_4\n";
      const double pi = std::acos(-1.0);
      for (int i = 0; i < k_points; ++i) {
        const double k = k_points == 1 ? 0.0 : -pi + 2.0 * pi * i / (k_points - 1);
        double re[4], im[4];
        check(bc_bloch_spectrum(p.get(), k, re, im));
        os << fmt(k);
        for (double v : re) os << ',' << fmt(v);
        for (double v : im) os << ',' << fmt(v);
        os << '\n';
      }
      emit(g, os.str());
    } else if (*gbz) {
      require_csv(g, "gbz");
      auto p = load_params(g);
      std::vector<double> xi(gbz_samples), b1(gbz_samples), b2(gbz_samples);
      check(bc_gbz_spectrum(p.get(), gbz_samples, xi.data(), b1.data(), b2.data()));
      std::ostringstream os;
      os << "xi,abs_beta_pair1,abs_beta_pair2\n";
      for (int i = 0; i < gbz_samples; ++i) os << fmt(xi[i]) << ',' << fmt(b1[i]) << ',' << fmt(b2[i]) << '\n';
      emit(g, os.str());
    } else if (*steady_cmd) {
      require_csv(g, "steady");
      auto p = load_params(g);
      auto m = to_frame(p.get(), steady(p.get()), frame);
      emit(g, moments_csv(m.get()));
      if (!cov_path.empty()) write_covariance(m.get(), cov_path);
    } else if (*analytic_cmd) {
      require_csv(g, "analytic");
      auto p = load_params(g);
      const bc_method mm = method == "trivial" ? BC_METHOD_TRIVIAL
                           : method == "topo"  ? BC_METHOD_TOPO
                           : method == "edge"  ? BC_METHOD_EDGE
                           : method == "two-mode" ? BC_METHOD_TWO_MODE
                                                  : BC_METHOD_EXACT_SUM;
      auto m = to_frame(p.get(), analytic(p.get(), mm), analytic_frame);
      emit(g, moments_csv(m.get()));
      if (!cov_path.empty()) write_covariance(m.get(), cov_path);
    } else if (*entangle) {
      require_csv(g, "entangle");
      auto p = load_params(g);
      int m1 = 1, m2 = bc_params_n_modes(p.get());
      if (!pair.empty()) {
        char comma = 0;
        std::istringstream in(pair);
        if (!(in >> m1 >> comma >> m2) || comma != ',' || !in.eof())
          throw CliError{kExitConfig, "--pair expects m,m'"};
      }
      auto m = engine == "analytic" ? analytic(p.get(), BC_METHOD_EXACT_SUM) : steady(p.get());
      bc_entanglement r{};
      check(bc_pair_report(m.get(), m1, m2, &r));
      std::ostringstream os;
      os << "K1=" << fmt(r.K1) << " K2=" << fmt(r.K2_re) << " K2_im=" << fmt(r.K2_im) << " K3=" << fmt(r.K3)
         << " eta_minus=" << fmt(r.eta_minus) << " E_N=" << fmt(r.E_N) << '\n';
      emit(g, os.str());
    } else if (*sweep) {
      auto s = run_spec(read_file(spec_path), g.workers);
      emit_sweep(g, s.get());
    } else if (*preset) {
      if (preset_name.empty() && list_presets) {
        size_t len = 0;
        check(bc_preset_names(nullptr, 0, &len));
        std::string names(len + 1, '\0');
        check(bc_preset_names(names.data(), names.size(), &len));
        names.resize(len);
        emit(g, names);
        return kExitOk;
      }
      if (preset_name.empty()) throw CliError{kExitConfig, "preset name required"};
      if (list_presets) {
        int assumed = 0, companion = 0;
        size_t len = 0;
        check(bc_preset_info(preset_name.c_str(), &assumed, &companion, nullptr, 0, &len));
        std::string notes(len + 1, '\0');
        check(bc_preset_info(preset_name.c_str(), nullptr, nullptr, notes.data(), notes.size(), &len));
        notes.resize(len);
        auto j = nlohmann::json::parse(preset_json(preset_name));
        j["range_assumed"] = assumed != 0;
        j["analytic_companion"] = companion != 0;
        j["notes"] = notes;
        emit(g, j.dump(2) + "\n");
      } else {
        run_preset(g, preset_name);
      }
    }
  } catch (const CliError& e) {
    std::cerr << "bosonchain: " << e.message << '\n';
    return e.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "bosonchain: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}
