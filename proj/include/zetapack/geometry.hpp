#pragma once

#include <cstdint>
#include <optional>
#include <utility>

namespace zetapack {

// Axis-aligned rectangle in container units.
struct Rect {
  double x0 = 0.0;  // left
  double y0 = 0.0;  // bottom
  double dx = 0.0;  // extent along x, > 0
  double dy = 0.0;  // extent along y, > 0

  double x1() const noexcept { return x0 + dx; }
  double y1() const noexcept { return y0 + dy; }
  double area() const noexcept { return dx * dy; }

  friend bool operator==(const Rect&, const Rect&) = default;
};

enum class Axis : unsigned char { X, Y };

double extent_along(const Rect& r, Axis axis) noexcept;

// Creation-ordered id source; one per packing run.
class BoxIdGen {
 public:
  explicit BoxIdGen(std::uint64_t start = 0) noexcept : next_(start) {}
  std::uint64_t next() noexcept { return next_++; }

 private:
  std::uint64_t next_;
};

// A physical rectangle with the logical short/long-side view: width always
// refers to the shorter side and height to the longer one.
struct OrientedBox {
  Rect rect;
  std::uint64_t id = 0;

  double width() const noexcept { return rect.dx < rect.dy ? rect.dx : rect.dy; }
  double height() const noexcept { return rect.dx < rect.dy ? rect.dy : rect.dx; }
  double area() const noexcept { return rect.area(); }
  double semiperimeter() const noexcept { return rect.dx + rect.dy; }
  // Ties (dx == dy) resolve to X so cut orientation stays deterministic.
  Axis long_axis() const noexcept { return rect.dx >= rect.dy ? Axis::X : Axis::Y; }
};

struct PlacedSquare {
  std::int64_t n = 0;
  double side = 0.0;  // n^(-t), from the shared power routine
  Rect rect;          // dx == dy == side

  friend bool operator==(const PlacedSquare&, const PlacedSquare&) = default;
};

// Guillotine cut perpendicular to `axis`, at distance `len` from the
// low-coordinate end. Fresh ids are assigned to (near, far) in that order.
// Throws std::invalid_argument unless 0 < len < extent along the axis.
std::pair<OrientedBox, OrientedBox> split_along(const OrientedBox& box, Axis axis,
                                                double len, BoxIdGen& ids);

// Guillotine cut perpendicular to the box's long axis; 0 < len < height.
std::pair<OrientedBox, OrientedBox> split_long(const OrientedBox& box, double len,
                                               BoxIdGen& ids);

struct SnugPlacement {
  Rect square;
  std::optional<OrientedBox> remainder;  // absent on an exact fit
};

// Places a square of side == width(box) flush against the low-coordinate end
// of the long axis, spanning the full short side. The side must bit-equal
// the box width (callers route both through the shared power routine);
// anything else throws std::invalid_argument.
SnugPlacement place_square_snug(const OrientedBox& box, double side, BoxIdGen& ids);

// True iff the interiors penetrate more than tol along both axes; shared
// edges and corners never count. Requires tol >= 0.
bool rects_interior_overlap(const Rect& a, const Rect& b, double tol) noexcept;

}  // namespace zetapack
