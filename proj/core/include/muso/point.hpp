#pragma once

#include <cmath>

namespace muso {

/// A point in 1 or 2 dimensions. The active dimension is carried by the
/// surrounding mesh/domain; unused coordinates stay zero.
struct Point {
  double v[2]{0.0, 0.0};

  double& operator[](int i) { return v[i]; }
  double operator[](int i) const { return v[i]; }
};

inline Point make_point(double x) { return Point{{x, 0.0}}; }
inline Point make_point(double x, double y) { return Point{{x, y}}; }

inline double distance(const Point& a, const Point& b, int dim) {
  if (dim == 1) return std::fabs(a.v[0] - b.v[0]);
  const double dx = a.v[0] - b.v[0];
  const double dy = a.v[1] - b.v[1];
  return std::sqrt(dx * dx + dy * dy);
}

}  // namespace muso
