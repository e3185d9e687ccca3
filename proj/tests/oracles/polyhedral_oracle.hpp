#pragma once

// Independent floating-point facet enumeration for small cones, used to cross
// check the exact rational code paths. Deliberately naive: every (n-1)-subset
// of rays, kernel by full-pivot LU, sign test on all rays.

#include <Eigen/Dense>
#include <algorithm>
#include <numeric>
#include <vector>

namespace oracle {

struct HRep {
  std::vector<Eigen::VectorXd> rays;
  std::vector<Eigen::VectorXd> facets;  // unit inward normals
};

inline HRep enumerate_facets(const std::vector<Eigen::VectorXd>& rays) {
  HRep h{rays, {}};
  const int n = static_cast<int>(rays.front().size());
  const int m = static_cast<int>(rays.size());
  std::vector<int> pick(m, 0);
  std::fill(pick.begin(), pick.begin() + (n - 1), 1);
  std::sort(pick.begin(), pick.end());
  do {
    Eigen::MatrixXd a(n - 1, n);
    int row = 0;
    for (int i = 0; i < m; ++i)
      if (pick[i]) a.row(row++) = rays[i].transpose();
    Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
    if (lu.rank() != n - 1) continue;
    Eigen::VectorXd k = lu.kernel().col(0).normalized();
    bool pos = false, neg = false;
    for (const auto& r : rays) {
      const double v = k.dot(r);
      if (v > 1e-9) pos = true;
      if (v < -1e-9) neg = true;
    }
    if (pos && neg) continue;
    if (neg) k = -k;
    bool dup = false;
    for (const auto& f : h.facets) dup = dup || (f - k).norm() < 1e-9;
    if (!dup) h.facets.push_back(k);
  } while (std::next_permutation(pick.begin(), pick.end()));
  return h;
}

inline bool contains(const HRep& h, const Eigen::VectorXd& x, double tol = 1e-12) {
  for (const auto& f : h.facets)
    if (f.dot(x) < -tol) return false;
  return true;
}

// Dimension of the face of x: rank of the rays lying on every facet tight at x.
inline int face_dimension(const HRep& h, const Eigen::VectorXd& x, double tol = 1e-12) {
  std::vector<Eigen::VectorXd> in_face;
  for (const auto& r : h.rays) {
    bool ok = true;
    for (const auto& f : h.facets)
      if (std::abs(f.dot(x)) <= tol && std::abs(f.dot(r)) > 1e-9) ok = false;
    if (ok) in_face.push_back(r);
  }
  if (in_face.empty()) return 0;
  Eigen::MatrixXd a(in_face.size(), x.size());
  for (std::size_t i = 0; i < in_face.size(); ++i) a.row(static_cast<int>(i)) = in_face[i].transpose();
  return static_cast<int>(Eigen::FullPivLU<Eigen::MatrixXd>(a).rank());
}

}  // namespace oracle
