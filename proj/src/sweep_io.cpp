#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "bosonchain/band_theory.hpp"
#include "bosonchain/errors.hpp"
#include "bosonchain/sweep.hpp"

namespace bosonchain {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::Io, "cannot open '" + path + "' for writing");
  return f;
}

void check_written(std::ostream& f, const std::string& path) {
  f.flush();
  if (!f) throw Error(ErrorCode::Io, "write failed for '" + path + "'");
}

bool is_numeric_column(const SweepResult& r, size_t c) {
  for (const auto& row : r.values)
    if (c < row.size() && std::holds_alternative<std::string>(row[c])) return false;
  return true;
}

// First numeric observable column worth a heat map, preferring E_N.
int primary_column(const SweepResult& r) {
  for (size_t c = 0; c < r.columns.size(); ++c)
    if (r.columns[c].rfind("E_N", 0) == 0) return static_cast<int>(c);
  for (size_t c = 0; c < r.columns.size(); ++c)
    if (is_numeric_column(r, c)) return static_cast<int>(c);
  return -1;
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_csv(const SweepResult& r, std::ostream& os) {
  bool first = true;
  auto sep = [&]() {
    if (!first) os << ',';
    first = false;
  };
  for (const auto& a : r.axis_names) sep(), os << a;
  for (const auto& c : r.columns) sep(), os << c;
  sep(), os << "status\n";
  for (size_t i = 0; i < r.size(); ++i) {
    first = true;
    for (double x : r.coords[i]) sep(), os << format_double(x);
    for (const auto& v : r.values[i]) {
      sep();
      if (const double* d = std::get_if<double>(&v)) os << format_double(*d);
      else os << std::get<std::string>(v);
    }
    sep(), os << to_string(r.status[i]) << '\n';
  }
}

void write_csv(const SweepResult& r, const std::string& path) {
  auto f = open_out(path);
  write_csv(r, f);
  check_written(f, path);
}

void render_plot(const SweepResult& r, std::ostream& os, const std::string& csv_path, bool phase_overlay) {
  const size_t n_axes = r.axis_names.size();
  os << "# gnuplot script for a " << n_axes << "D sweep\n";
  os << "set datafile separator ','\n";
  os << "set datafile missing 'nan'\n";
  os << "data = '" << csv_path << "'\n";
  os << "set xlabel '" << (n_axes ? r.axis_names[0] : "") << "'\n";

  if (n_axes == 1) {
    os << "set key outside right\n";
    os << "plot";
    bool first = true;
    for (size_t c = 0; c < r.columns.size(); ++c) {
      if (!is_numeric_column(r, c)) continue;
      os << (first ? " " : ", \\\n     ") << "data skip 1 using 1:" << (c + 2) << " with "
         << (r.columns[c].find("xi_") != std::string::npos ? "points pt 7 ps 0.3" : "lines") << " title '"
         << r.columns[c] << "'";
      first = false;
    }
    os << (first ? " 0 notitle\n" : "\n");
    return;
  }

  const int col = primary_column(r);
  const int value_col = col < 0 ? 3 : col + 3;
  const int n0 = r.shape.at(0), n1 = r.shape.at(1);
  os << "set ylabel '" << r.axis_names[1] << "'\n";
  if (n0 <= 8) {
    // Few outer values: one curve per outer value against the inner axis.
    os << "set xlabel '" << r.axis_names[1] << "'\n";
    os << "set key outside right\n";
    os << "plot for [i=0:" << n0 - 1 << "] data skip 1 every ::(i*" << n1 << ")::(i*" << n1 << "+" << n1 - 1
       << ") using 2:" << value_col << " with lines title sprintf('" << r.axis_names[0] << " #%d', i+1)\n";
    return;
  }
  os << "set view map\n";
  os << "set cblabel '" << (col < 0 ? "" : r.columns[col]) << "'\n";
  if (phase_overlay) {
    os << "# phase boundary overlay from classify_phase\n";
    os << "$boundary << EOD\n";
    auto phase_at = [&](int i, int j) {
      const size_t idx = static_cast<size_t>(i) * n1 + j;
      return r.status[idx] == PointStatus::Error && r.messages[idx].size() ? Phase::Unstable
                                                                          : classify_phase(r.points[idx]).phase;
    };
    for (int i = 0; i < n0; ++i) {
      for (int j = 0; j < n1; ++j) {
        const auto& c = r.coords[static_cast<size_t>(i) * n1 + j];
        if (i + 1 < n0 && phase_at(i, j) != phase_at(i + 1, j)) {
          const auto& d = r.coords[static_cast<size_t>(i + 1) * n1 + j];
          os << format_double(0.5 * (c[0] + d[0])) << ' ' << format_double(c[1]) << '\n';
        }
        if (j + 1 < n1 && phase_at(i, j) != phase_at(i, j + 1)) {
          const auto& d = r.coords[static_cast<size_t>(i) * n1 + j + 1];
          os << format_double(c[0]) << ' ' << format_double(0.5 * (c[1] + d[1])) << '\n';
        }
      }
    }
    os << "EOD\n";
    os << "plot data skip 1 using 1:2:" << value_col << " with image notitle, \\\n"
       << "     $boundary using 1:2 with points pt 7 ps 0.4 lc rgb 'green' title 'phase boundary'\n";
  } else {
    os << "plot data skip 1 using 1:2:" << value_col << " with image notitle\n";
  }
}

void render_plot(const SweepResult& r, const std::string& path, const std::string& csv_path, bool phase_overlay) {
  auto f = open_out(path);
  render_plot(r, f, csv_path, phase_overlay);
  check_written(f, path);
}

}  // namespace bosonchain
