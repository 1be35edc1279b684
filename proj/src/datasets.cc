#include "eds/datasets.h"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <utility>

#include "eds/errors.h"

namespace eds {

NamedDataset karate_club() {
  static constexpr std::array<std::pair<int, int>, 78> kEdges = {{
      {0, 1},   {0, 2},   {0, 3},   {0, 4},   {0, 5},   {0, 6},   {0, 7},   {0, 8},
      {0, 10},  {0, 11},  {0, 12},  {0, 13},  {0, 17},  {0, 19},  {0, 21},  {0, 31},
      {1, 2},   {1, 3},   {1, 7},   {1, 13},  {1, 17},  {1, 19},  {1, 21},  {1, 30},
      {2, 3},   {2, 7},   {2, 8},   {2, 9},   {2, 13},  {2, 27},  {2, 28},  {2, 32},
      {3, 7},   {3, 12},  {3, 13},  {4, 6},   {4, 10},  {5, 6},   {5, 10},  {5, 16},
      {6, 16},  {8, 30},  {8, 32},  {8, 33},  {9, 33},  {13, 33}, {14, 32}, {14, 33},
      {15, 32}, {15, 33}, {18, 32}, {18, 33}, {19, 33}, {20, 32}, {20, 33}, {22, 32},
      {22, 33}, {23, 25}, {23, 27}, {23, 29}, {23, 32}, {23, 33}, {24, 25}, {24, 27},
      {24, 31}, {25, 31}, {26, 29}, {26, 33}, {27, 33}, {28, 31}, {28, 33}, {29, 32},
      {29, 33}, {30, 32}, {30, 33}, {31, 32}, {31, 33}, {32, 33},
  }};
  // Members who sided with the instructor (Mr. Hi) after the split.
  static constexpr std::array<int, 16> kInstructor = {0, 1,  2,  3,  4,  5,  6,  7,
                                                      10, 11, 12, 13, 16, 17, 19, 21};
  std::vector<Edge> edges;
  for (auto [u, v] : kEdges) {
    edges.push_back({static_cast<VertexId>(u), static_cast<VertexId>(v), 1.0});
  }
  std::vector<int> truth(34, 1);
  for (int v : kInstructor) truth[v] = 0;

  NamedDataset d;
  d.name = "karate";
  d.payload = WeightedGraph(34, std::move(edges));
  d.ground_truth = std::move(truth);
  d.source = NamedDataset::Source::kEmbedded;
  return d;
}

Shape parse_shape(std::string_view name) {
  if (name == "banana") return Shape::kBanana;
  if (name == "highleyman") return Shape::kHighleyman;
  if (name == "lithuanian") return Shape::kLithuanian;
  if (name == "spirals") return Shape::kSpirals;
  throw ParameterError("unknown shape '" + std::string(name) +
                       "'; expected banana, highleyman, lithuanian or spirals");
}

std::string_view shape_name(Shape shape) {
  switch (shape) {
    case Shape::kBanana:
      return "banana";
    case Shape::kHighleyman:
      return "highleyman";
    case Shape::kLithuanian:
      return "lithuanian";
    case Shape::kSpirals:
      return "spirals";
  }
  return "unknown";
}

namespace {

using Point = std::vector<double>;

// Two arcs of radius 5 with unit Gaussian noise, the second shifted by
// (-3.75, -3.75) and opening the other way.
Point banana(int cls, std::mt19937_64& rng) {
  constexpr double r = 5.0;
  constexpr double pi = std::numbers::pi;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::normal_distribution<double> noise(0.0, 1.0);
  double angle = cls == 0 ? 0.125 * pi + u(rng) * 1.25 * pi : 0.375 * pi - u(rng) * 1.25 * pi;
  double x = r * std::sin(angle) + noise(rng);
  double y = r * std::cos(angle) + noise(rng);
  if (cls == 1) {
    x -= 0.75 * r;
    y -= 0.75 * r;
  }
  return {x, y};
}

// Gaussians N((1,1), diag(1, 0.25)) and N((2,0), diag(0.01, 4)).
Point highleyman(int cls, std::mt19937_64& rng) {
  std::normal_distribution<double> z(0.0, 1.0);
  if (cls == 0) return {1.0 + z(rng), 1.0 + 0.5 * z(rng)};
  return {2.0 + 0.1 * z(rng), 2.0 * z(rng)};
}

// Two parallel curved, elongated bands whose noise tails overlap.
Point lithuanian(int cls, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> along(-5.0, 5.0);
  std::normal_distribution<double> across(0.0, 0.7);
  double x = along(rng);
  double y = 0.1 * x * x + across(rng) + (cls == 0 ? 0.0 : 2.5);
  return {x, y};
}

// Archimedean arms r = theta for theta in [pi/2, 3 pi], the second arm rotated
// by pi. Points are stratified along the arc length (theta^2 is uniform per
// stratum) so no arm has gaps large enough to break a small-k neighbour graph.
Point spiral(int cls, int index, int per_class, std::mt19937_64& rng) {
  constexpr double pi = std::numbers::pi;
  constexpr double lo = 0.5 * pi * 0.5 * pi;
  constexpr double hi = 3.0 * pi * 3.0 * pi;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::normal_distribution<double> noise(0.0, 0.1);
  double s = (index + u(rng)) / per_class;
  double theta = std::sqrt(lo + s * (hi - lo));
  double x = theta * std::cos(theta);
  double y = theta * std::sin(theta);
  if (cls == 1) {
    x = -x;
    y = -y;
  }
  return {x + noise(rng), y + noise(rng)};
}

}  // namespace

NamedDataset generate(Shape shape, int n, std::uint64_t seed) {
  if (n < 4 || n % 2 != 0) {
    throw ParameterError("point count must be even and >= 4, got " + std::to_string(n));
  }
  std::mt19937_64 rng(seed);
  PointDataset data;
  std::vector<int> labels;
  for (int cls = 0; cls < 2; ++cls) {
    for (int i = 0; i < n / 2; ++i) {
      switch (shape) {
        case Shape::kBanana:
          data.points.push_back(banana(cls, rng));
          break;
        case Shape::kHighleyman:
          data.points.push_back(highleyman(cls, rng));
          break;
        case Shape::kLithuanian:
          data.points.push_back(lithuanian(cls, rng));
          break;
        case Shape::kSpirals:
          data.points.push_back(spiral(cls, i, n / 2, rng));
          break;
      }
      labels.push_back(cls);
    }
  }
  data.labels = labels;
  NamedDataset d;
  d.name = std::string(shape_name(shape));
  d.payload = std::move(data);
  d.ground_truth = std::move(labels);
  d.source = NamedDataset::Source::kGenerated;
  d.seed = seed;
  return d;
}

namespace {

std::string trim(std::string_view s) {
  auto first = s.find_first_not_of(" \t\r\"");
  if (first == std::string_view::npos) return {};
  auto last = s.find_last_not_of(" \t\r\"");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::optional<double> parse_number(const std::string& cell) {
  double value = 0.0;
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  if (begin != end && *begin == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || cell.empty()) return std::nullopt;
  return value;
}

}  // namespace

NamedDataset read_csv(std::istream& in, const std::string& name,
                      const std::optional<std::string>& label_column) {
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    rows.push_back(split_row(line));
  }
  if (rows.empty()) throw DataError(name + ": no rows");

  std::vector<std::string> header;
  if (!parse_number(rows.front().front())) {
    header = rows.front();
    rows.erase(rows.begin());
  }
  std::optional<std::size_t> label_index;
  if (label_column) {
    auto it = std::find(header.begin(), header.end(), *label_column);
    if (it == header.end()) throw DataError(name + ": no column named '" + *label_column + "'");
    label_index = static_cast<std::size_t>(it - header.begin());
  } else if (auto it = std::find(header.begin(), header.end(), "label"); it != header.end()) {
    label_index = static_cast<std::size_t>(it - header.begin());
  }
  if (rows.size() < 2) {
    throw DataError(name + ": need at least 2 data rows to build a k-NN graph, got " +
                    std::to_string(rows.size()));
  }

  const std::size_t width = rows.front().size();
  if (!header.empty() && header.size() != width) {
    throw DataError(name + ": header has " + std::to_string(header.size()) + " columns, row 1 has " +
                    std::to_string(width));
  }
  PointDataset data;
  std::vector<int> labels;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& row = rows[r];
    // Rows are reported 1-based counting data rows after any header.
    if (row.size() != width) {
      throw DataError(name + ": row " + std::to_string(r + 1) + " has " +
                      std::to_string(row.size()) + " columns, expected " + std::to_string(width));
    }
    std::vector<double> features;
    for (std::size_t c = 0; c < width; ++c) {
      auto value = parse_number(row[c]);
      if (!value || !std::isfinite(*value)) {
        throw DataError(name + ": non-numeric cell '" + row[c] + "' at row " +
                        std::to_string(r + 1) + ", column " + std::to_string(c + 1));
      }
      if (label_index && c == *label_index) {
        if (*value != std::floor(*value)) {
          throw DataError(name + ": non-integer label at row " + std::to_string(r + 1));
        }
        labels.push_back(static_cast<int>(*value));
      } else {
        features.push_back(*value);
      }
    }
    data.points.push_back(std::move(features));
  }
  if (data.dimension() == 0) throw DataError(name + ": no feature columns");

  NamedDataset d;
  d.name = name;
  for (std::size_t c = 0; c < data.dimension(); ++c) {
    double mean = 0.0;
    for (const auto& p : data.points) mean += p[c];
    mean /= static_cast<double>(data.size());
    double var = 0.0;
    for (const auto& p : data.points) var += (p[c] - mean) * (p[c] - mean);
    double sd = std::sqrt(var / static_cast<double>(data.size()));
    if (sd == 0.0) {
      d.warnings.push_back(name + ": feature column " + std::to_string(c + 1) +
                           " is constant; normalised to zeros");
    }
    for (auto& p : data.points) p[c] = sd == 0.0 ? 0.0 : (p[c] - mean) / sd;
  }
  if (label_index) {
    data.labels = labels;
    d.ground_truth = std::move(labels);
  }
  d.payload = std::move(data);
  return d;
}

NamedDataset load_csv(const std::string& path, const std::optional<std::string>& label_column) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  auto d = read_csv(in, path, label_column);
  d.source = NamedDataset::Source::kIngested;
  d.path = path;
  return d;
}

void write_csv(std::ostream& out, const PointDataset& data) {
  data.validate();
  for (std::size_t c = 0; c < data.dimension(); ++c) out << (c ? "," : "") << 'x' << c;
  if (data.labels) out << ",label";
  out << '\n';
  auto old = out.precision(17);
  for (std::size_t i = 0; i < data.size(); ++i) {
    for (std::size_t c = 0; c < data.dimension(); ++c) out << (c ? "," : "") << data.points[i][c];
    if (data.labels) out << ',' << (*data.labels)[i];
    out << '\n';
  }
  out.precision(old);
}

}  // namespace eds
