#include <algorithm>
#include <cmath>

#include "period_lab/errors.hpp"
#include "period_lab/numkit.hpp"

namespace period_lab::numkit {

namespace {

Complex hermitian(const Vec3& a, const Vec3& b) {
  return std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1] + std::conj(a[2]) * b[2];
}

}  // namespace

std::vector<PointCluster> cluster_points(std::span<const ProjectivePoint> points, double tol) {
  std::vector<std::vector<ProjectivePoint>> groups;
  for (const auto& p : points) {
    auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) {
      return chordal_distance(g.front(), p) <= tol;
    });
    if (it == groups.end()) {
      groups.push_back({p});
    } else {
      it->push_back(p);
    }
  }

  std::vector<PointCluster> out;
  for (const auto& g : groups) {
    const Vec3& seed = g.front().coords();
    Vec3 sum{};
    for (const auto& member : g) {
      const Complex overlap = hermitian(member.coords(), seed);
      const Complex phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : Complex(1.0);
      for (int i = 0; i < 3; ++i) sum[static_cast<std::size_t>(i)] += member[i] * phase;
    }
    out.push_back({ProjectivePoint(sum), static_cast<int>(g.size())});
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (std::size_t j = i + 1; j < out.size(); ++j) {
      if (chordal_distance(out[i].point, out[j].point) < 3.0 * tol) {
        fail(ErrorCode::AmbiguousClustering, "cluster centers within 3 * tol");
      }
    }
  }
  std::sort(out.begin(), out.end(),
            [](const PointCluster& a, const PointCluster& b) { return lex_less(a.point, b.point); });
  return out;
}

}  // namespace period_lab::numkit
