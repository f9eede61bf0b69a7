#include "ranksde/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace ranksde {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  return in;
}

void chomp(std::string& line) {
  while (!line.empty() && (line.back() == '\r' || line.back() == '\n'))
    line.pop_back();
}

bool blank(const std::string& line) {
  return line.find_first_not_of(" \t") == std::string::npos;
}

double parse_double(const std::string& token, const std::string& what,
                    std::size_t line_no) {
  const char* s = token.c_str();
  char* end = nullptr;
  double v = std::strtod(s, &end);
  if (end == s || *end != '\0')
    throw std::invalid_argument(what + " does not parse as a number, line " +
                                std::to_string(line_no));
  return v;
}

long long parse_time(const std::string& token, std::size_t line_no) {
  const char* s = token.c_str();
  char* end = nullptr;
  long long v = std::strtoll(s, &end, 10);
  if (end == s || *end != '\0')
    throw std::invalid_argument("time must be an integer, line " +
                                std::to_string(line_no));
  return v;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(cur);
  return fields;
}

}  // namespace

PanelSeries load_panel_csv(const std::string& path) {
  auto in = open_in(path);
  std::string line;
  std::size_t line_no = 0;
  double delta_tau = 1.0;
  bool saw_header = false;

  struct Row {
    std::size_t entity;
    long long time;
    double value;
  };
  std::vector<Row> rows;
  std::vector<std::string> entities;
  std::unordered_map<std::string, std::size_t> entity_index;
  std::set<long long> time_set;
  std::set<std::pair<std::size_t, long long>> seen;

  while (std::getline(in, line)) {
    ++line_no;
    chomp(line);
    if (blank(line)) continue;
    if (line[0] == '#') {
      const std::string key = "# delta_tau=";
      if (line.rfind(key, 0) == 0)
        delta_tau = parse_double(line.substr(key.size()), "delta_tau", line_no);
      continue;
    }
    if (!saw_header) {
      if (line != "entity,time,value")
        throw std::invalid_argument("expected header entity,time,value at line " +
                                    std::to_string(line_no) + " of " + path);
      saw_header = true;
      continue;
    }
    auto fields = split_csv(line);
    if (fields.size() != 3)
      throw std::invalid_argument("expected entity,time,value, line " +
                                  std::to_string(line_no));
    if (fields[0].empty())
      throw std::invalid_argument("empty entity name, line " +
                                  std::to_string(line_no));
    long long t = parse_time(fields[1], line_no);
    double v = parse_double(fields[2], "value", line_no);
    if (!(v > 0) || !std::isfinite(v))
      throw std::invalid_argument("value must be positive, line " +
                                  std::to_string(line_no));
    auto [it, fresh] =
        entity_index.try_emplace(fields[0], entities.size());
    if (fresh) entities.push_back(fields[0]);
    if (!seen.insert({it->second, t}).second)
      throw std::invalid_argument("duplicate entity,time pair, line " +
                                  std::to_string(line_no));
    time_set.insert(t);
    rows.push_back({it->second, t, v});
  }
  if (!saw_header)
    throw std::invalid_argument("expected header entity,time,value in " + path);
  if (rows.empty())
    throw std::invalid_argument("no data rows in " + path);

  PanelSeries panel;
  panel.entities = std::move(entities);
  panel.times.assign(time_set.begin(), time_set.end());
  panel.delta_tau = delta_tau;
  std::map<long long, std::size_t> time_index;
  for (std::size_t i = 0; i < panel.times.size(); ++i)
    time_index[panel.times[i]] = i;
  panel.values = Matrix(panel.T(), panel.E(),
                        std::numeric_limits<double>::quiet_NaN());
  for (const auto& row : rows)
    panel.values.at(time_index[row.time], row.entity) = row.value;
  return panel;
}

void save_panel_csv(const PanelSeries& panel, const std::string& path) {
  auto out = open_out(path);
  out << "# delta_tau=" << fmt17(panel.delta_tau) << "\n";
  out << "entity,time,value\n";
  for (std::size_t e = 0; e < panel.E(); ++e)
    for (std::size_t t = 0; t < panel.T(); ++t) {
      double v = panel.values.at(t, e);
      if (!std::isfinite(v)) continue;
      out << panel.entities[e] << "," << panel.times[t] << "," << fmt17(v)
          << "\n";
    }
}

void save_family(const FirstOrderFamily& family, const std::string& path) {
  auto out = open_out(path);
  out << "#first-order-family K=" << family.K_explicit() << "\n";
  for (std::size_t k = 1; k <= family.K_explicit(); ++k)
    out << k << " " << fmt17(family.g()[k - 1]) << " "
        << fmt17(family.sigma2()[k - 1]) << "\n";
}

FirstOrderFamily load_family(const std::string& path) {
  auto in = open_in(path);
  std::string line;
  if (!std::getline(in, line))
    throw std::invalid_argument("empty family file " + path);
  chomp(line);
  const std::string key = "#first-order-family K=";
  if (line.rfind(key, 0) != 0)
    throw std::invalid_argument("expected header '#first-order-family K=<n>' in " +
                                path);
  char* end = nullptr;
  long long K = std::strtoll(line.c_str() + key.size(), &end, 10);
  if (end == line.c_str() + key.size() || *end != '\0' || K < 1)
    throw std::invalid_argument("family rank count must be a positive integer in " +
                                path);

  std::vector<double> g, s2;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    chomp(line);
    if (blank(line)) continue;
    if (g.size() == std::size_t(K))
      throw std::invalid_argument("unexpected content after " +
                                  std::to_string(K) + " ranks, line " +
                                  std::to_string(line_no));
    std::istringstream fields(line);
    long long k = 0;
    double gk = 0, sk = 0;
    std::string extra;
    if (!(fields >> k >> gk >> sk) || (fields >> extra))
      throw std::invalid_argument("expected 'k g_k sigma2_k', line " +
                                  std::to_string(line_no));
    if (k != (long long)g.size() + 1)
      throw std::invalid_argument("ranks must run 1.." + std::to_string(K) +
                                  " in order, line " + std::to_string(line_no));
    g.push_back(gk);
    s2.push_back(sk);
  }
  if (g.size() != std::size_t(K))
    throw std::invalid_argument("family file " + path + " declares " +
                                std::to_string(K) + " ranks but has " +
                                std::to_string(g.size()));
  return FirstOrderFamily(std::move(g), std::move(s2));
}

void save_stats_csv(const RankGapStats& stats, const std::string& path) {
  auto out = open_out(path);
  out << "k,lambda_hat,sigma2_hat,mean_gap\n";
  for (std::size_t k = 1; k < stats.N; ++k)
    out << k << "," << fmt17(stats.lambda_hat[k - 1]) << ","
        << fmt17(stats.sigma2_hat[k - 1]) << "," << fmt17(stats.mean_gap[k - 1])
        << "\n";
}

void emit_curve_csv(const DistributionCurve& curve, const std::string& path) {
  if (curve.log_rank.empty())
    throw std::invalid_argument("cannot emit an empty curve");
  auto out = open_out(path);
  out << "log_rank,mean_log_value\n";
  for (std::size_t i = 0; i < curve.log_rank.size(); ++i)
    out << fmt17(curve.log_rank[i]) << "," << fmt17(curve.mean_log_value[i])
        << "\n";
}

namespace {

constexpr double kLn10 = 2.302585092994045684;

struct AxisMap {
  double lo, hi, px0, px1;
  double operator()(double v) const {
    return px0 + (v - lo) / (hi - lo) * (px1 - px0);
  }
};

std::string pow10_label(long long m) {
  if (m >= 0 && m <= 6) {
    long long v = 1;
    for (long long i = 0; i < m; ++i) v *= 10;
    return std::to_string(v);
  }
  return "1e" + std::to_string(m);
}

void emit_ticks(std::ostream& out, const AxisMap& map, double cross_px,
                bool horizontal) {
  long long m0 = (long long)std::ceil(std::min(map.lo, map.hi) / kLn10 - 1e-9);
  long long m1 = (long long)std::floor(std::max(map.lo, map.hi) / kLn10 + 1e-9);
  for (long long m = m0; m <= m1; ++m) {
    double px = map(m * kLn10);
    if (horizontal) {
      out << "<line x1=\"" << px << "\" y1=\"" << cross_px << "\" x2=\"" << px
          << "\" y2=\"" << cross_px + 5 << "\" stroke=\"#444\"/>\n";
      out << "<text x=\"" << px << "\" y=\"" << cross_px + 18
          << "\" font-size=\"11\" text-anchor=\"middle\">" << pow10_label(m)
          << "</text>\n";
    } else {
      out << "<line x1=\"" << cross_px - 5 << "\" y1=\"" << px << "\" x2=\""
          << cross_px << "\" y2=\"" << px << "\" stroke=\"#444\"/>\n";
      out << "<text x=\"" << cross_px - 8 << "\" y=\"" << px + 4
          << "\" font-size=\"11\" text-anchor=\"end\">" << pow10_label(m)
          << "</text>\n";
    }
  }
}

void emit_polyline(std::ostream& out, const DistributionCurve& curve,
                   const AxisMap& x, const AxisMap& y, const char* color,
                   bool dashed) {
  out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\"";
  if (dashed) out << " stroke-dasharray=\"6 4\"";
  out << " points=\"";
  for (std::size_t i = 0; i < curve.log_rank.size(); ++i) {
    if (i) out << " ";
    out << x(curve.log_rank[i]) << "," << y(curve.mean_log_value[i]);
  }
  out << "\"/>\n";
}

}  // namespace

void emit_curve_svg(const DistributionCurve& curve,
                    const DistributionCurve* overlay, const std::string& path) {
  if (curve.log_rank.empty())
    throw std::invalid_argument("cannot emit an empty curve");

  double xlo = curve.log_rank.front(), xhi = curve.log_rank.front();
  double ylo = curve.mean_log_value.front(), yhi = curve.mean_log_value.front();
  auto widen = [&](const DistributionCurve& c) {
    for (double v : c.log_rank) {
      xlo = std::min(xlo, v);
      xhi = std::max(xhi, v);
    }
    for (double v : c.mean_log_value) {
      ylo = std::min(ylo, v);
      yhi = std::max(yhi, v);
    }
  };
  widen(curve);
  if (overlay && !overlay->log_rank.empty()) widen(*overlay);
  if (xhi - xlo < 1e-12) {
    xlo -= 1.0;
    xhi += 1.0;
  }
  if (yhi - ylo < 1e-12) {
    ylo -= 1.0;
    yhi += 1.0;
  }

  const double W = 640, H = 480, ml = 64, mr = 24, mt = 24, mb = 56;
  AxisMap x{xlo, xhi, ml, W - mr};
  AxisMap y{ylo, yhi, H - mb, mt};  // larger value maps higher on screen

  auto out = open_out(path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W
      << "\" height=\"" << H << "\" viewBox=\"0 0 " << W << " " << H
      << "\">\n";
  out << "<rect x=\"0\" y=\"0\" width=\"" << W << "\" height=\"" << H
      << "\" fill=\"white\"/>\n";
  out << "<line x1=\"" << ml << "\" y1=\"" << H - mb << "\" x2=\"" << W - mr
      << "\" y2=\"" << H - mb << "\" stroke=\"#000\"/>\n";
  out << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml
      << "\" y2=\"" << H - mb << "\" stroke=\"#000\"/>\n";
  emit_ticks(out, x, H - mb, true);
  emit_ticks(out, y, ml, false);

  emit_polyline(out, curve, x, y, "#1f77b4", false);
  if (overlay && !overlay->log_rank.empty())
    emit_polyline(out, *overlay, x, y, "#d62728", true);

  // First interior point whose centered finite-difference slope reaches -1.
  for (std::size_t i = 1; i + 1 < curve.log_rank.size(); ++i) {
    double dx = curve.log_rank[i + 1] - curve.log_rank[i - 1];
    if (dx == 0) continue;
    double slope = (curve.mean_log_value[i + 1] - curve.mean_log_value[i - 1]) / dx;
    if (slope <= -1.0) {
      out << "<circle cx=\"" << x(curve.log_rank[i]) << "\" cy=\""
          << y(curve.mean_log_value[i]) << "\" r=\"4\" fill=\"#000\" data-rank=\""
          << i + 1 << "\"/>\n";
      break;
    }
  }
  out << "</svg>\n";
}

void save_report(const std::vector<std::pair<std::string, std::string>>& kv,
                 const std::string& path) {
  auto out = open_out(path);
  for (const auto& [key, value] : kv) out << key << "=" << value << "\n";
}

}  // namespace ranksde
