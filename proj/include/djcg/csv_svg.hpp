#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "djcg/model_core.hpp"
#include "djcg/ode_oracle.hpp"

namespace djcg {

// Shortest decimal string that parses back to the same double.
std::string fmt_double(double v);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  int col(const std::string& name) const;  // -1 when absent
  int require(const std::string& name) const;  // throws BadColumns
  std::vector<double> column(const std::string& name) const;
};

void write_csv(std::ostream& os, const Table& t);
void write_csv_file(const std::string& path, const Table& t);
Table read_csv(std::istream& is);
Table read_csv_file(const std::string& path);

// Fixed trajectory schema: t; sz_j, re_sp_j, im_sp_j; re_b, im_b, bbarb; dH_k; re_lambda_k, im_lambda_k;
// re_Lambda_k, im_Lambda_k when the uniformizing coordinates are present.
Table trajectory_table(const ModelParams& p, const Trajectory& tr);
// Physical states from a trajectory table (bbar = conj b, s- = conj s+).
Trajectory trajectory_from_table(const ModelParams& p, const Table& t);

struct Marker {
  double x, y;
  std::string kind;  // css class, e.g. "eps" or "bethe"
};

struct PlotSpec {
  std::string kind;  // lambda-plane, timeseries, moment-map, real-slice
  std::string title;
  std::string xcol;                 // empty: kind default
  std::vector<std::string> ycols;   // empty: kind default
  std::vector<Marker> markers;
};

std::string render_svg(const PlotSpec& spec, const Table& t);

}  // namespace djcg
