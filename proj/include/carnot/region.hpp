#pragma once

#include "carnot/group.hpp"

namespace carnot {

/// Window in G: a coordinate box B transported by p -> y . delta_lambda(p).
/// Plain boxes have y = identity, lambda = 1. Translated and dilated
/// windows are what the invariance experiments compare against.
class Region {
public:
  explicit Region(Box box);

  Region translated(const CarnotGroup &g, const Point &y) const;
  Region dilated(const CarnotGroup &g, double lambda) const;

  bool contains(const CarnotGroup &g, const Point &p) const;

  /// Coordinate box enclosing the region (exact for plain boxes, an
  /// interval-arithmetic enclosure otherwise).
  const Box &bounds() const { return bounds_; }

  const Box &base_box() const { return box_; }
  const Point &translation() const { return translation_; }
  double scale() const { return scale_; }
  bool is_plain_box() const { return plain_; }

private:
  Region(Box box, Point translation, double scale, const CarnotGroup &g);

  Box box_;
  Point translation_;
  double scale_ = 1.0;
  bool plain_ = true;
  Box bounds_;
};

/// Interval enclosure of {a . b : a in `left`, b in `right`}.
Box product_bounds(const CarnotGroup &g, const Box &left, const Box &right);

} // namespace carnot
