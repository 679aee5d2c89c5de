#include "djcg/csv_svg.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "djcg/errors.hpp"

namespace djcg {

std::string fmt_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

static std::string fixed3(double v) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 3);
  std::string s(buf, r.ptr);
  return s == "-0.000" ? "0.000" : s;
}

int Table::col(const std::string& name) const {
  auto it = std::find(header.begin(), header.end(), name);
  return it == header.end() ? -1 : static_cast<int>(it - header.begin());
}

int Table::require(const std::string& name) const {
  int c = col(name);
  if (c < 0) throw Error(Code::BadColumns, "missing column '" + name + "'");
  return c;
}

std::vector<double> Table::column(const std::string& name) const {
  int c = require(name);
  std::vector<double> v;
  v.reserve(rows.size());
  for (const auto& r : rows) v.push_back(r[c]);
  return v;
}

void write_csv(std::ostream& os, const Table& t) {
  for (size_t i = 0; i < t.header.size(); ++i) os << (i ? "," : "") << t.header[i];
  os << '\n';
  for (const auto& r : t.rows) {
    for (size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << fmt_double(r[i]);
    os << '\n';
  }
}

void write_csv_file(const std::string& path, const Table& t) {
  std::ofstream f(path);
  if (!f) throw Error(Code::InvalidInput, "cannot write " + path);
  write_csv(f, t);
}

static std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream ss(line);
  while (std::getline(ss, cur, ',')) {
    while (!cur.empty() && (cur.back() == '\r' || cur.back() == ' ')) cur.pop_back();
    size_t a = cur.find_first_not_of(' ');
    out.push_back(a == std::string::npos ? std::string() : cur.substr(a));
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

Table read_csv(std::istream& is) {
  Table t;
  std::string line;
  if (!std::getline(is, line)) return t;
  t.header = split(line);
  size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    auto f = split(line);
    if (f.size() != t.header.size())
      throw Error(Code::BadColumns, "row " + std::to_string(lineno) + " has " + std::to_string(f.size()) +
                                        " fields, header has " + std::to_string(t.header.size()));
    std::vector<double> r;
    for (const auto& s : f) {
      char* end = nullptr;
      double v = std::strtod(s.c_str(), &end);
      if (s.empty() || *end != '\0') throw Error(Code::BadColumns, "non-numeric field '" + s + "' on row " + std::to_string(lineno));
      r.push_back(v);
    }
    t.rows.push_back(std::move(r));
  }
  return t;
}

Table read_csv_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(Code::InvalidInput, "cannot open " + path);
  return read_csv(f);
}

Table trajectory_table(const ModelParams& p, const Trajectory& tr) {
  int n = p.n();
  size_t nl = tr.lambdas.empty() ? 0 : tr.lambdas.front().size();
  size_t nL = tr.Lambdas.empty() ? 0 : tr.Lambdas.front().size();
  Table t;
  t.header.push_back("t");
  for (int j = 1; j <= n; ++j) {
    auto k = std::to_string(j);
    t.header.insert(t.header.end(), {"sz_" + k, "re_sp_" + k, "im_sp_" + k});
  }
  t.header.insert(t.header.end(), {"re_b", "im_b", "bbarb"});
  for (int k = 1; k <= n + 1; ++k) t.header.push_back("dH_" + std::to_string(k));
  for (size_t k = 1; k <= nl; ++k) t.header.insert(t.header.end(), {"re_lambda_" + std::to_string(k), "im_lambda_" + std::to_string(k)});
  for (size_t k = 1; k <= nL; ++k) t.header.insert(t.header.end(), {"re_Lambda_" + std::to_string(k), "im_Lambda_" + std::to_string(k)});

  CVec h0 = tr.hvals.empty() ? CVec() : tr.hvals.front();
  for (size_t i = 0; i < tr.times.size(); ++i) {
    const PhaseState& st = tr.states[i];
    std::vector<double> r{tr.times[i]};
    for (const Spin& s : st.spins) r.insert(r.end(), {s.sz.real(), s.sp.real(), s.sp.imag()});
    r.insert(r.end(), {st.b.real(), st.b.imag(), (st.bbar * st.b).real()});
    CVec h = i < tr.hvals.size() ? tr.hvals[i] : eval_hamiltonians(p, st);
    if (h0.empty()) h0 = h;
    for (int k = 0; k <= n; ++k) r.push_back(std::abs(h[k] - h0[k]));
    for (size_t k = 0; k < nl; ++k) {
      cplx z = k < tr.lambdas[i].size() ? tr.lambdas[i][k] : cplx(NAN, NAN);
      r.insert(r.end(), {z.real(), z.imag()});
    }
    for (size_t k = 0; k < nL; ++k) {
      cplx z = k < tr.Lambdas[i].size() ? tr.Lambdas[i][k] : cplx(NAN, NAN);
      r.insert(r.end(), {z.real(), z.imag()});
    }
    t.rows.push_back(std::move(r));
  }
  return t;
}

Trajectory trajectory_from_table(const ModelParams& p, const Table& t) {
  int n = p.n();
  int ct = t.require("t"), crb = t.require("re_b"), cib = t.require("im_b");
  std::vector<std::array<int, 3>> sc;
  for (int j = 1; j <= n; ++j) {
    auto k = std::to_string(j);
    sc.push_back({t.require("sz_" + k), t.require("re_sp_" + k), t.require("im_sp_" + k)});
  }
  if (t.col("sz_" + std::to_string(n + 1)) >= 0) throw Error(Code::BadColumns, "trajectory has more spins than the model");
  Trajectory tr;
  for (const auto& r : t.rows) {
    PhaseState st;
    st.b = cplx(r[crb], r[cib]);
    st.bbar = std::conj(st.b);
    for (auto& c : sc) {
      cplx sp(r[c[1]], r[c[2]]);
      st.spins.push_back(Spin{r[c[0]], sp, std::conj(sp)});
    }
    tr.times.push_back(r[ct]);
    tr.states.push_back(st);
    tr.hvals.push_back(eval_hamiltonians(p, st));
  }
  return tr;
}

namespace {

constexpr double W = 640, H = 480, ML = 70, MR = 20, MT = 40, MB = 50;

struct Frame {
  double x0 = -1, x1 = 1, y0 = -1, y1 = 1;
  void include(double x, double y) {
    if (!std::isfinite(x) || !std::isfinite(y)) return;
    if (empty) {
      x0 = x1 = x;
      y0 = y1 = y;
      empty = false;
    } else {
      x0 = std::min(x0, x);
      x1 = std::max(x1, x);
      y0 = std::min(y0, y);
      y1 = std::max(y1, y);
    }
  }
  void finish() {
    auto pad = [](double& a, double& b) {
      double w = b - a;
      if (w <= 0) w = std::max(1.0, std::abs(a));
      a -= 0.05 * w;
      b += 0.05 * w;
    };
    pad(x0, x1);
    pad(y0, y1);
  }
  double px(double x) const { return ML + (x - x0) / (x1 - x0) * (W - ML - MR); }
  double py(double y) const { return H - MB - (y - y0) / (y1 - y0) * (H - MT - MB); }
  bool empty = true;
};

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string esc(const std::string& s) {
  std::string o;
  for (char c : s) {
    if (c == '<') o += "&lt;";
    else if (c == '>') o += "&gt;";
    else if (c == '&') o += "&amp;";
    else if (c == '"') o += "&quot;";
    else o += c;
  }
  return o;
}

struct Series {
  std::vector<double> x, y;
  bool line = true;
  std::string name;
};

}  // namespace

std::string render_svg(const PlotSpec& spec, const Table& t) {
  std::vector<Series> series;
  std::string xlabel, ylabel;
  const std::string& k = spec.kind;
  if (k == "lambda-plane") {
    xlabel = "Re lambda";
    ylabel = "Im lambda";
    std::string pre = "lambda";
    if (!spec.xcol.empty()) pre = spec.xcol;
    for (int j = 1;; ++j) {
      int cr = t.col("re_" + pre + "_" + std::to_string(j)), ci = t.col("im_" + pre + "_" + std::to_string(j));
      if (cr < 0 || ci < 0) break;
      Series s{t.column(t.header[cr]), t.column(t.header[ci]), true, pre + "_" + std::to_string(j)};
      series.push_back(std::move(s));
    }
    if (series.empty() && !t.header.empty()) throw Error(Code::BadColumns, "no re_" + pre + "_k/im_" + pre + "_k columns");
  } else if (k == "timeseries" || k == "moment-map" || k == "real-slice") {
    std::string xc = spec.xcol;
    std::vector<std::string> yc = spec.ycols;
    if (k == "timeseries") {
      if (xc.empty()) xc = "t";
      if (yc.empty()) yc = {"bbarb"};
    } else if (k == "moment-map") {
      if (xc.empty()) xc = "H1";
      if (yc.empty()) yc = {"H2"};
    } else {
      if (xc.empty()) xc = "x";
      if (yc.empty()) {
        if (t.col("yplus") >= 0) yc = {"yplus", "yminus"};
        else yc = {"y"};
      }
    }
    xlabel = xc;
    ylabel = yc.size() == 1 ? yc[0] : "";
    if (!t.header.empty()) {
      auto xs = t.column(xc);
      for (auto& c : yc) series.push_back(Series{xs, t.column(c), k == "timeseries", c});
    }
  } else {
    throw Error(Code::InvalidInput, "unknown plot kind '" + k + "'");
  }

  Frame fr;
  for (auto& s : series)
    for (size_t i = 0; i < s.x.size(); ++i) fr.include(s.x[i], s.y[i]);
  for (auto& m : spec.markers) fr.include(m.x, m.y);
  fr.finish();

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 " << W << ' '
    << H << "\">\n";
  o << "<style>.axis{stroke:#000;stroke-width:1;fill:none}.tick{font:11px sans-serif}"
       ".marker.eps{fill:#000}.marker.bethe{fill:#e377c2}.marker{stroke:none}</style>\n";
  o << "<rect x=\"0\" y=\"0\" width=\"" << W << "\" height=\"" << H << "\" fill=\"#fff\"/>\n";
  if (!spec.title.empty())
    o << "<text x=\"" << fixed3(W / 2) << "\" y=\"24\" text-anchor=\"middle\" class=\"tick\">" << esc(spec.title)
      << "</text>\n";
  o << "<rect class=\"axis\" x=\"" << fixed3(ML) << "\" y=\"" << fixed3(MT) << "\" width=\"" << fixed3(W - ML - MR)
    << "\" height=\"" << fixed3(H - MT - MB) << "\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    double xv = fr.x0 + (fr.x1 - fr.x0) * i / 4.0, yv = fr.y0 + (fr.y1 - fr.y0) * i / 4.0;
    o << "<text class=\"tick\" x=\"" << fixed3(fr.px(xv)) << "\" y=\"" << fixed3(H - MB + 16)
      << "\" text-anchor=\"middle\">" << fixed3(xv) << "</text>\n";
    o << "<text class=\"tick\" x=\"" << fixed3(ML - 6) << "\" y=\"" << fixed3(fr.py(yv) + 4)
      << "\" text-anchor=\"end\">" << fixed3(yv) << "</text>\n";
  }
  o << "<text class=\"tick\" x=\"" << fixed3(W / 2) << "\" y=\"" << fixed3(H - 12) << "\" text-anchor=\"middle\">"
    << esc(xlabel) << "</text>\n";
  o << "<text class=\"tick\" x=\"16\" y=\"" << fixed3(H / 2) << "\" transform=\"rotate(-90 16 " << fixed3(H / 2)
    << ")\" text-anchor=\"middle\">" << esc(ylabel) << "</text>\n";

  for (size_t si = 0; si < series.size(); ++si) {
    const Series& s = series[si];
    const char* col = kPalette[si % 8];
    if (s.x.empty()) continue;
    if (s.line) {
      o << "<path class=\"series\" data-name=\"" << esc(s.name) << "\" fill=\"none\" stroke=\"" << col
        << "\" stroke-width=\"1.2\" d=\"";
      bool pen = false;
      for (size_t i = 0; i < s.x.size(); ++i) {
        if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) {
          pen = false;
          continue;
        }
        o << (pen ? " L" : (i ? " M" : "M")) << fixed3(fr.px(s.x[i])) << ',' << fixed3(fr.py(s.y[i]));
        pen = true;
      }
      o << "\"/>\n";
    } else {
      o << "<g class=\"series\" data-name=\"" << esc(s.name) << "\" fill=\"" << col << "\">\n";
      for (size_t i = 0; i < s.x.size(); ++i) {
        if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
        o << "<circle cx=\"" << fixed3(fr.px(s.x[i])) << "\" cy=\"" << fixed3(fr.py(s.y[i])) << "\" r=\"1.5\"/>\n";
      }
      o << "</g>\n";
    }
  }
  for (const Marker& m : spec.markers)
    o << "<circle class=\"marker " << esc(m.kind) << "\" data-x=\"" << fmt_double(m.x) << "\" data-y=\""
      << fmt_double(m.y) << "\" cx=\"" << fixed3(fr.px(m.x)) << "\" cy=\"" << fixed3(fr.py(m.y)) << "\" r=\"4\"/>\n";
  o << "</svg>\n";
  return o.str();
}

}  // namespace djcg
