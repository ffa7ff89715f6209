#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "bosonchain/chain_model.hpp"

namespace bosonchain {

enum class Engine { Exact, Analytic };
enum class AxisScale { Linear, Log, List };

// Axis names: ChainParams fields (t1, delta1, q_t, q_delta, phi_t, phi_delta,
// n_cells, kappa, n_th, mu) or derived ones: t2_over_t1, delta_over_t (locks
// Delta2/t2 to Delta1/t1), delta1_over_t1, delta2_over_t2, sigma1, sigma2.
// Axes apply in order to the absolute couplings of the running point.
struct Axis {
  std::string name;
  double min = 0.0;
  double max = 0.0;
  int n_points = 1;
  AxisScale scale = AxisScale::Linear;
  std::vector<double> values;  // scale == List

  std::vector<double> grid() const;
};

// Observables: E_N_edge, E_N_pair:m:m' (1-based, also E_N_pair(m,m')), phase,
// stable, delta, spectrum, moments, spectral_abscissa, skin_effect.
struct SweepSpec {
  ChainParams base;
  std::vector<Axis> axes;
  std::vector<std::string> observables;
  Engine engine = Engine::Exact;
  bool lock_delta_ratio = false;
};

enum class PointStatus { Ok, Unstable, Error };
const char* to_string(PointStatus s) noexcept;

using Value = std::variant<double, std::string>;

struct SweepResult {
  std::vector<std::string> axis_names;
  std::vector<std::string> columns;  // observable columns, in order
  std::vector<std::vector<double>> coords;
  std::vector<std::vector<Value>> values;
  std::vector<PointStatus> status;
  std::vector<std::string> messages;  // empty when ok
  std::vector<ChainParams> points;    // resolved params (base when axis application failed)
  std::vector<int> shape;             // axis sizes, row-major with the first axis slowest

  size_t size() const { return status.size(); }
};

void validate_spec(const SweepSpec& spec);  // throws Config

// Params at one grid point. Throws Config for unknown axes or unreachable values.
ChainParams apply_axes(const SweepSpec& spec, const std::vector<double>& coords);

// workers <= 0 uses the hardware concurrency. Output is independent of workers.
SweepResult run_sweep(const SweepSpec& spec, int workers = 1);

SweepSpec sweep_spec_from_json(const nlohmann::json& j);
nlohmann::json sweep_spec_to_json(const SweepSpec& spec);

struct Preset {
  std::string name;
  SweepSpec spec;
  bool range_assumed = false;
  bool analytic_companion = false;  // also run with engine = analytic
  std::string notes;
};

Preset preset(const std::string& name);
std::vector<std::string> preset_names();

// Header: axes, observables, status. Floats with 17 significant digits.
void write_csv(const SweepResult& r, std::ostream& os);
void write_csv(const SweepResult& r, const std::string& path);
std::string format_double(double x);

// gnuplot script reading `csv_path`; 1D line plot, 2D heat map, optional phase-boundary overlay.
void render_plot(const SweepResult& r, std::ostream& os, const std::string& csv_path, bool phase_overlay);
void render_plot(const SweepResult& r, const std::string& path, const std::string& csv_path, bool phase_overlay);

}  // namespace bosonchain
