#include "brpa/chord_diagram.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

#include "brpa/error.hpp"

namespace brpa {

bool is_perfect_matching(std::span<const std::uint32_t> partner) {
  const std::size_t points = partner.size();
  if (points == 0 || points % 2 != 0) return false;
  for (std::size_t i = 0; i < points; ++i) {
    const std::uint32_t q = partner[i];
    if (q < 1 || q > points || q == i + 1) return false;
    if (partner[q - 1] != i + 1) return false;
  }
  return true;
}

ChordDiagram::ChordDiagram(std::vector<std::uint32_t> partner)
    : partner_(std::move(partner)) {
  require(is_perfect_matching(partner_),
          "chord diagram: partner list is not a perfect matching");
}

ChordDiagram::ChordDiagram(std::vector<std::uint32_t> partner,
                           std::vector<ChordCoords> coords)
    : ChordDiagram(std::move(partner)) {
  require(coords.size() == chords(),
          "chord diagram: need one coordinate pair per chord");
  double previous_right = 0.0;
  for (const auto& c : coords) {
    require(c.left > 0.0 && c.left < c.right && c.right < 1.0,
            "chord diagram: coordinates must satisfy 0 < left < right < 1");
    require(c.right > previous_right,
            "chord diagram: coordinates must be ordered by right endpoint");
    previous_right = c.right;
  }
  coords_ = std::move(coords);
}

ChordDiagram diagram_from_paired_values(std::span<const double> values) {
  const std::size_t points = values.size();
  require(points >= 2 && points % 2 == 0,
          "paired values: need an even, positive number of values");

  std::vector<std::uint32_t> order(points);
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return values[a] < values[b];
  });
  std::vector<std::uint32_t> rank(points);
  for (std::size_t r = 0; r < points; ++r) {
    if (r > 0) {
      require(values[order[r]] != values[order[r - 1]],
              "paired values: values must be distinct");
    }
    rank[order[r]] = static_cast<std::uint32_t>(r + 1);
  }

  std::vector<std::uint32_t> partner(points);
  for (std::size_t i = 0; i < points; i += 2) {
    partner[rank[i] - 1] = rank[i + 1];
    partner[rank[i + 1] - 1] = rank[i];
  }

  // Right endpoints appear in increasing order when scanning by rank.
  std::vector<ChordCoords> coords;
  coords.reserve(points / 2);
  for (std::size_t r = 0; r < points; ++r) {
    const std::uint32_t p = static_cast<std::uint32_t>(r + 1);
    const std::uint32_t q = partner[r];
    if (q < p) coords.push_back({values[order[q - 1]], values[order[r]]});
  }
  return ChordDiagram(std::move(partner), std::move(coords));
}

}  // namespace brpa
