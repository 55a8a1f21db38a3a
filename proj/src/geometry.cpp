#include "zetapack/geometry.hpp"

#include <algorithm>
#include <stdexcept>

namespace zetapack {

double extent_along(const Rect& r, Axis axis) noexcept {
  return axis == Axis::X ? r.dx : r.dy;
}

std::pair<OrientedBox, OrientedBox> split_along(const OrientedBox& box, Axis axis,
                                                double len, BoxIdGen& ids) {
  const double span = extent_along(box.rect, axis);
  if (!(len > 0.0 && len < span)) {
    throw std::invalid_argument("split_along: cut length must lie strictly inside (0, extent)");
  }
  Rect near = box.rect;
  Rect far = box.rect;
  if (axis == Axis::X) {
    near.dx = len;
    far.x0 = box.rect.x0 + len;
    far.dx = box.rect.dx - len;
  } else {
    near.dy = len;
    far.y0 = box.rect.y0 + len;
    far.dy = box.rect.dy - len;
  }
  OrientedBox near_box{near, ids.next()};
  OrientedBox far_box{far, ids.next()};
  return {near_box, far_box};
}

std::pair<OrientedBox, OrientedBox> split_long(const OrientedBox& box, double len,
                                               BoxIdGen& ids) {
  return split_along(box, box.long_axis(), len, ids);
}

SnugPlacement place_square_snug(const OrientedBox& box, double side, BoxIdGen& ids) {
  if (side != box.width()) {
    throw std::invalid_argument("place_square_snug: side must bit-equal the box width");
  }
  const Axis axis = box.long_axis();
  const double rest = box.height() - side;
  Rect square = box.rect;
  if (axis == Axis::X) {
    square.dx = side;
  } else {
    square.dy = side;
  }
  SnugPlacement out{square, std::nullopt};
  if (rest != 0.0) {  // exact fit consumes the whole box
    Rect rem = box.rect;
    if (axis == Axis::X) {
      rem.x0 += side;
      rem.dx = rest;
    } else {
      rem.y0 += side;
      rem.dy = rest;
    }
    out.remainder = OrientedBox{rem, ids.next()};
  }
  return out;
}

bool rects_interior_overlap(const Rect& a, const Rect& b, double tol) noexcept {
  const double pen_x = std::min(a.x1(), b.x1()) - std::max(a.x0, b.x0);
  const double pen_y = std::min(a.y1(), b.y1()) - std::max(a.y0, b.y0);
  return pen_x > tol && pen_y > tol;
}

}  // namespace zetapack
