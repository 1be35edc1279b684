#include "eds/plot.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace eds {
namespace {

constexpr std::array<const char*, 10> kPalette = {"#d62728", "#1f77b4", "#2ca02c", "#ff7f0e",
                                                  "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
                                                  "#bcbd22", "#17becf"};

const char* colour(int index) {
  if (index < 0) return "#000000";
  return kPalette[static_cast<std::size_t>(index) % kPalette.size()];
}

}  // namespace

std::vector<Position> spring_layout(const WeightedGraph& g, std::uint64_t seed, int iterations) {
  const std::size_t n = g.vertex_count();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Position> pos(n);
  for (auto& p : pos) p = {u(rng), u(rng)};
  if (n < 2) return pos;

  const double k = std::sqrt(1.0 / static_cast<double>(n));
  double temperature = 0.1;
  const double cooling = temperature / (iterations + 1);
  std::vector<Position> shift(n);
  for (int it = 0; it < iterations; ++it) {
    std::fill(shift.begin(), shift.end(), Position{0.0, 0.0});
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        double dx = pos[a][0] - pos[b][0];
        double dy = pos[a][1] - pos[b][1];
        double d = std::max(std::hypot(dx, dy), 1e-6);
        double f = k * k / d;
        shift[a][0] += dx / d * f;
        shift[a][1] += dy / d * f;
        shift[b][0] -= dx / d * f;
        shift[b][1] -= dy / d * f;
      }
    }
    for (const auto& e : g.edges()) {
      double dx = pos[e.u][0] - pos[e.v][0];
      double dy = pos[e.u][1] - pos[e.v][1];
      double d = std::max(std::hypot(dx, dy), 1e-6);
      double f = d * d / k;
      shift[e.u][0] -= dx / d * f;
      shift[e.u][1] -= dy / d * f;
      shift[e.v][0] += dx / d * f;
      shift[e.v][1] += dy / d * f;
    }
    for (std::size_t a = 0; a < n; ++a) {
      double len = std::max(std::hypot(shift[a][0], shift[a][1]), 1e-12);
      double step = std::min(len, temperature);
      pos[a][0] += shift[a][0] / len * step;
      pos[a][1] += shift[a][1] / len * step;
    }
    temperature -= cooling;
  }

  double lo_x = pos[0][0], hi_x = pos[0][0], lo_y = pos[0][1], hi_y = pos[0][1];
  for (const auto& p : pos) {
    lo_x = std::min(lo_x, p[0]);
    hi_x = std::max(hi_x, p[0]);
    lo_y = std::min(lo_y, p[1]);
    hi_y = std::max(hi_y, p[1]);
  }
  double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-12});
  for (auto& p : pos) p = {(p[0] - lo_x) / span, (p[1] - lo_y) / span};
  return pos;
}

std::string scatter_svg(const PointDataset& data, const std::vector<int>& labels) {
  constexpr double size = 600.0;
  constexpr double margin = 20.0;
  double lo_x = 0, hi_x = 1, lo_y = 0, hi_y = 1;
  if (!data.points.empty() && data.dimension() >= 2) {
    lo_x = hi_x = data.points[0][0];
    lo_y = hi_y = data.points[0][1];
    for (const auto& p : data.points) {
      lo_x = std::min(lo_x, p[0]);
      hi_x = std::max(hi_x, p[0]);
      lo_y = std::min(lo_y, p[1]);
      hi_y = std::max(hi_y, p[1]);
    }
  }
  double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-12});
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
      << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (data.dimension() < 2) break;
    double x = margin + (data.points[i][0] - lo_x) / span * (size - 2 * margin);
    double y = size - margin - (data.points[i][1] - lo_y) / span * (size - 2 * margin);
    int label = i < labels.size() ? labels[i] : -1;
    svg << "<circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"3\" fill=\"" << colour(label)
        << "\"/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string graph_svg(const WeightedGraph& g, const std::vector<Position>& layout,
                      const std::vector<int>& edge_classes, const std::vector<int>& vertex_labels) {
  constexpr double size = 600.0;
  constexpr double margin = 30.0;
  auto at = [&](VertexId v) {
    return Position{margin + layout[v][0] * (size - 2 * margin),
                    margin + layout[v][1] * (size - 2 * margin)};
  };
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
      << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    auto a = at(g.edge(e).u);
    auto b = at(g.edge(e).v);
    int cls = e < edge_classes.size() ? edge_classes[e] : -1;
    svg << "<line x1=\"" << a[0] << "\" y1=\"" << a[1] << "\" x2=\"" << b[0] << "\" y2=\"" << b[1]
        << "\" stroke=\"" << colour(cls) << "\" stroke-width=\"2\"/>\n";
  }
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    auto p = at(v);
    int label = v < vertex_labels.size() ? vertex_labels[v] : -1;
    svg << "<circle cx=\"" << p[0] << "\" cy=\"" << p[1] << "\" r=\"9\" fill=\"" << colour(label)
        << "\" stroke=\"black\"/>\n<text x=\"" << p[0] << "\" y=\"" << p[1] + 4
        << "\" font-size=\"10\" text-anchor=\"middle\" fill=\"white\">" << v << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string rank_diagram_svg(const std::vector<std::string>& techniques,
                             const std::vector<double>& avg_ranks, double cd, int control) {
  const int k = static_cast<int>(techniques.size());
  constexpr double width = 700.0;
  constexpr double left = 60.0;
  constexpr double right = 60.0;
  constexpr double axis_y = 60.0;
  const double height = axis_y + 40.0 + 22.0 * k;
  auto x_of = [&](double rank) {
    return left + (rank - 1.0) / std::max(1, k - 1) * (width - left - right);
  };
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width + 240 << "\" height=\"" << height
      << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<line x1=\"" << x_of(1) << "\" y1=\"" << axis_y << "\" x2=\"" << x_of(k) << "\" y2=\""
      << axis_y << "\" stroke=\"black\"/>\n";
  for (int r = 1; r <= k; ++r) {
    svg << "<line x1=\"" << x_of(r) << "\" y1=\"" << axis_y - 5 << "\" x2=\"" << x_of(r)
        << "\" y2=\"" << axis_y << "\" stroke=\"black\"/>\n<text x=\"" << x_of(r) << "\" y=\""
        << axis_y - 10 << "\" font-size=\"12\" text-anchor=\"middle\">" << r << "</text>\n";
  }
  if (control >= 0 && control < k) {
    double lo = std::max(1.0, avg_ranks[control] - cd);
    double hi = std::min<double>(k, avg_ranks[control] + cd);
    svg << "<line x1=\"" << x_of(lo) << "\" y1=\"" << axis_y + 12 << "\" x2=\"" << x_of(hi)
        << "\" y2=\"" << axis_y + 12 << "\" stroke=\"black\" stroke-width=\"4\"/>\n";
  }
  for (int t = 0; t < k; ++t) {
    double x = x_of(avg_ranks[t]);
    double y = axis_y + 40.0 + 22.0 * t;
    svg << "<polyline points=\"" << x << ',' << axis_y << ' ' << x << ',' << y << ' '
        << width - right + 5 << ',' << y << "\" fill=\"none\" stroke=\"gray\"/>\n<text x=\""
        << width - right + 8 << "\" y=\"" << y + 4 << "\" font-size=\"12\">" << techniques[t]
        << " (" << avg_ranks[t] << ")</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace eds
