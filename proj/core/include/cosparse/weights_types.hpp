#pragma once

#include "cosparse/core_math.hpp"

namespace cosparse {

/// Strictly positive per-row weights. `normalized` records that the largest
/// entry has been scaled to 1.
class WeightVector {
 public:
  /// Throws ValidationError unless every entry is finite and positive.
  explicit WeightVector(Vector v, bool normalized = false);

  const Vector& values() const { return v_; }
  Index size() const { return v_.size(); }
  double operator()(Index i) const { return v_(i); }
  bool normalized() const { return normalized_; }

  /// Copy scaled so that the largest entry is exactly 1.
  WeightVector normalized_copy() const;

 private:
  Vector v_;
  bool normalized_;
};

}  // namespace cosparse
