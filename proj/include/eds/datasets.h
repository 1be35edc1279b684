#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "eds/graph.h"

namespace eds {

struct NamedDataset {
  enum class Source { kEmbedded, kGenerated, kIngested };

  std::string name;
  std::variant<PointDataset, WeightedGraph> payload;
  std::optional<std::vector<int>> ground_truth;
  Source source = Source::kEmbedded;
  std::uint64_t seed = 0;  // kGenerated
  std::string path;        // kIngested
  std::vector<std::string> warnings;
};

// Zachary's karate club: 34 vertices, 78 unit-weight edges, and the two
// factions (instructor's side labelled 0).
NamedDataset karate_club();

enum class Shape { kBanana, kHighleyman, kLithuanian, kSpirals };

// Throws ParameterError for unknown names.
Shape parse_shape(std::string_view name);
std::string_view shape_name(Shape shape);

// n two-dimensional points, n/2 per class, deterministic in (shape, n, seed).
// n must be even and >= 4.
NamedDataset generate(Shape shape, int n, std::uint64_t seed);

// Numeric CSV, one row per point. A header row is detected when its first
// cell is not a number; the label column defaults to "label" when present.
// Features are z-score normalised per column (constant columns become zeros
// with a warning). Throws DataError with row/column on bad cells.
NamedDataset load_csv(const std::string& path,
                      const std::optional<std::string>& label_column = std::nullopt);
NamedDataset read_csv(std::istream& in, const std::string& name,
                      const std::optional<std::string>& label_column = std::nullopt);

// Writes x0,x1,...[,label] with a header row.
void write_csv(std::ostream& out, const PointDataset& data);

}  // namespace eds
