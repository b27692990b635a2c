#ifndef BRPA_CHORD_DIAGRAM_HPP_
#define BRPA_CHORD_DIAGRAM_HPP_

#include <cstdint>
#include <span>
#include <vector>

namespace brpa {

/// Continuous placement of one chord, left < right.
struct ChordCoords {
  double left;
  double right;
};

/// A linearized chord diagram: a fixed-point-free involution on the points
/// 1..2N, optionally carrying the continuous coordinates it was built from.
/// When present, coords()[k-1] belongs to the chord with the k-th smallest
/// right coordinate.
class ChordDiagram {
 public:
  /// `partner[p-1]` is the point matched with p. Throws invalid-argument
  /// unless this is a perfect matching of 1..2N.
  explicit ChordDiagram(std::vector<std::uint32_t> partner);
  ChordDiagram(std::vector<std::uint32_t> partner,
               std::vector<ChordCoords> coords);

  std::size_t chords() const { return partner_.size() / 2; }
  std::uint32_t partner(std::uint32_t point) const {
    return partner_[point - 1];
  }
  std::span<const std::uint32_t> partners() const { return partner_; }

  bool has_coords() const { return !coords_.empty(); }
  std::span<const ChordCoords> coords() const { return coords_; }

  friend bool operator==(const ChordDiagram& x, const ChordDiagram& y) {
    return x.partner_ == y.partner_;
  }

 private:
  std::vector<std::uint32_t> partner_;
  std::vector<ChordCoords> coords_;
};

/// True iff `partner` is a perfect matching of 1..partner.size().
bool is_perfect_matching(std::span<const std::uint32_t> partner);

/// Builds the matching induced by 2N distinct reals where value 2i-1 is
/// paired with value 2i, after relabelling all values by rank. Coordinates are
/// attached in right-endpoint order.
ChordDiagram diagram_from_paired_values(std::span<const double> values);

}  // namespace brpa

#endif  // BRPA_CHORD_DIAGRAM_HPP_
