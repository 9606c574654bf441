// Copyright 2026 The fpcoord Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FPCOORD_TESTS_SUPPORT_TEXTBOOK_EKF_H_
#define FPCOORD_TESTS_SUPPORT_TEXTBOOK_EKF_H_

// Reference extended Kalman filter written with plain loops over nested
// vectors. It shares no code with the library.

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace fpcoord::testing {

using Vec = std::vector<double>;
using Mat = std::vector<std::vector<double>>;

inline Mat Zeros(std::size_t n) { return Mat(n, Vec(n, 0.0)); }

inline Vec Softmax(const Vec& x, double tau) {
  double top = x[0];
  for (double v : x) top = v > top ? v : top;
  Vec out(x.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    out[i] = std::exp((x[i] - top) / tau);
    sum += out[i];
  }
  for (double& v : out) v /= sum;
  return out;
}

inline Mat Multiply(const Mat& a, const Mat& b) {
  const std::size_t n = a.size(), m = b[0].size(), k = b.size();
  Mat out(n, Vec(m, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t l = 0; l < k; ++l) out[i][j] += a[i][l] * b[l][j];
  return out;
}

inline Mat Transpose(const Mat& a) {
  Mat out(a[0].size(), Vec(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[0].size(); ++j) out[j][i] = a[i][j];
  return out;
}

// Gauss-Jordan with partial pivoting.
inline Mat Inverse(Mat a) {
  const std::size_t n = a.size();
  Mat inv = Zeros(n);
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    if (std::abs(a[pivot][col]) < 1e-300) throw std::runtime_error("singular");
    std::swap(a[col], a[pivot]);
    std::swap(inv[col], inv[pivot]);
    const double d = a[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      a[col][j] /= d;
      inv[col][j] /= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = a[r][col];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] -= f * a[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

struct OracleBelief {
  Vec mean;
  Mat cov;
};

// Measurement update with h = softmax(x / tau), H its exact Jacobian,
// innovation e_observed - h(mean) and observation noise r.
inline OracleBelief TextbookEkfUpdate(const OracleBelief& prior, std::size_t observed, double tau,
                                      const Mat& r) {
  const std::size_t n = prior.mean.size();
  const Vec s = Softmax(prior.mean, tau);
  Mat h = Zeros(n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t m = 0; m < n; ++m) h[k][m] = s[k] * ((k == m ? 1.0 : 0.0) - s[m]) / tau;
  Vec v(n);
  for (std::size_t k = 0; k < n; ++k) v[k] = (k == observed ? 1.0 : 0.0) - s[k];

  const Mat pht = Multiply(prior.cov, Transpose(h));
  Mat innov_cov = Multiply(h, pht);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) innov_cov[i][j] += r[i][j];
  const Mat gain = Multiply(pht, Inverse(innov_cov));

  OracleBelief post{prior.mean, Zeros(n)};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) post.mean[i] += gain[i][k] * v[k];
  Mat i_minus_kh = Multiply(gain, h);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) i_minus_kh[i][j] = (i == j ? 1.0 : 0.0) - i_minus_kh[i][j];
  const Mat raw = Multiply(i_minus_kh, prior.cov);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) post.cov[i][j] = 0.5 * (raw[i][j] + raw[j][i]);
  return post;
}

}  // namespace fpcoord::testing

#endif  // FPCOORD_TESTS_SUPPORT_TEXTBOOK_EKF_H_
