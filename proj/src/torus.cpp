#include "scto/torus.hpp"

#include <algorithm>

namespace scto {

Arc arc_hull(const std::vector<CirclePoint>& points) {
  if (points.empty()) throw std::invalid_argument("arc_hull: empty point set");
  std::vector<double> v;
  v.reserve(points.size());
  for (const auto& p : points) v.push_back(wrap(p.value).value);
  std::sort(v.begin(), v.end());

  // The hull is the complement of the largest gap between consecutive points.
  double best_gap = 1.0 - v.back() + v.front();
  std::size_t best_idx = 0;  // gap sits after v[n-1+best_idx-1]... index of point starting the hull
  for (std::size_t i = 1; i < v.size(); ++i) {
    double gap = v[i] - v[i - 1];
    if (gap > best_gap) {
      best_gap = gap;
      best_idx = i;
    }
  }
  if (best_gap <= 0.0)
    throw std::invalid_argument("arc_hull: no proper hull, points cover the circle");
  return Arc{CirclePoint{v[best_idx]}, 1.0 - best_gap};
}

}  // namespace scto
