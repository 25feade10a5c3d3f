/*
   Copyright 2026 The elop authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef ELOP_DENSE_SVD_HPP
#define ELOP_DENSE_SVD_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace elop::detail {

/// Column-major dense block for the singular value kernel.
struct DenseBlock {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> a;  // size rows * cols

  DenseBlock() = default;
  DenseBlock(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0.0) {}
  double& at(std::size_t r, std::size_t c) { return a[c * rows + r]; }
  double at(std::size_t r, std::size_t c) const { return a[c * rows + r]; }
};

/// Singular values by one-sided Jacobi rotations, descending.  Intended for
/// the small support blocks of finite-rank operators (tens of rows/columns);
/// converges quadratically and keeps relative accuracy near machine epsilon.
inline std::vector<double> jacobi_singular_values(DenseBlock m) {
  if (m.rows == 0 || m.cols == 0) return {};
  if (m.rows < m.cols) {  // operate on the transpose: same singular values
    DenseBlock t(m.cols, m.rows);
    for (std::size_t r = 0; r < m.rows; ++r)
      for (std::size_t c = 0; c < m.cols; ++c) t.at(c, r) = m.at(r, c);
    m = std::move(t);
  }
  const std::size_t n = m.cols;
  const double tol = 1e-15;
  for (int sweep = 0; sweep < 128; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double app = 0.0, aqq = 0.0, apq = 0.0;
        for (std::size_t r = 0; r < m.rows; ++r) {
          const double x = m.at(r, p);
          const double y = m.at(r, q);
          app += x * x;
          aqq += y * y;
          apq += x * y;
        }
        if (std::fabs(apq) <= tol * std::sqrt(app * aqq) || apq == 0.0) continue;
        rotated = true;
        const double zeta = (aqq - app) / (2.0 * apq);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::fabs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double cs = 1.0 / std::sqrt(1.0 + t * t);
        const double sn = cs * t;
        for (std::size_t r = 0; r < m.rows; ++r) {
          const double x = m.at(r, p);
          const double y = m.at(r, q);
          m.at(r, p) = cs * x - sn * y;
          m.at(r, q) = sn * x + cs * y;
        }
      }
    }
    if (!rotated) break;
  }
  std::vector<double> sv(n, 0.0);
  for (std::size_t c = 0; c < n; ++c) {
    double s = 0.0;
    for (std::size_t r = 0; r < m.rows; ++r) s += m.at(r, c) * m.at(r, c);
    sv[c] = std::sqrt(s);
  }
  std::sort(sv.begin(), sv.end(), std::greater<double>());
  return sv;
}

}  // namespace elop::detail

#endif  // ELOP_DENSE_SVD_HPP
