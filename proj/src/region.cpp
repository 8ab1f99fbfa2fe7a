#include "carnot/region.hpp"

#include "carnot/errors.hpp"
#include "carnot/interval.hpp"

#include <array>

namespace carnot {

Box product_bounds(const CarnotGroup &g, const Box &left, const Box &right) {
  const int n = g.dim();
  std::array<Interval, kMaxDim> a{}, b{}, out{};
  for (int c = 0; c < n; ++c) {
    a[c] = Interval(left.lo[c], left.hi[c]);
    b[c] = Interval(right.lo[c], right.hi[c]);
  }
  g.multiply_raw(a.data(), b.data(), out.data());
  Box box{Coords(n), Coords(n)};
  for (int c = 0; c < n; ++c) {
    const Interval w = inflate(out[c]);
    box.lo[c] = w.lo;
    box.hi[c] = w.hi;
  }
  return box;
}

Region::Region(Box box) : box_(box), translation_{Coords::Zero(box.dim())}, bounds_(box) {
  if (box_.empty())
    throw EmptyWindow("window box is empty");
}

Region::Region(Box box, Point translation, double scale, const CarnotGroup &g)
    : box_(std::move(box)), translation_(std::move(translation)), scale_(scale), plain_(false) {
  const Box scaled{dilate(g, scale_, Point{box_.lo}).coords, dilate(g, scale_, Point{box_.hi}).coords};
  if (translation_.coords.isZero(0.0)) {
    // A dilated box is still a box.
    box_ = scaled;
    scale_ = 1.0;
    plain_ = true;
    bounds_ = scaled;
    return;
  }
  const Box at{translation_.coords, translation_.coords};
  bounds_ = product_bounds(g, at, scaled);
}

Region Region::translated(const CarnotGroup &g, const Point &y) const {
  return Region(box_, multiply(g, y, translation_), scale_, g);
}

Region Region::dilated(const CarnotGroup &g, double lambda) const {
  return Region(box_, dilate(g, lambda, translation_), scale_ * lambda, g);
}

bool Region::contains(const CarnotGroup &g, const Point &p) const {
  if (!bounds_.contains(p))
    return false;
  if (plain_)
    return true;
  const Point local = dilate(g, 1.0 / scale_, multiply(g, inverse(translation_), p));
  return box_.contains(local);
}

} // namespace carnot
