// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace oracle {

using libags::Matrix;

Matrix knn(const Matrix& queries, const Matrix& refs, std::size_t k,
           bool exclude_self) {
  Matrix out(queries.rows(), k);
  for (std::size_t q = 0; q < queries.rows(); ++q) {
    std::vector<std::pair<double, std::size_t>> all;
    for (std::size_t r = 0; r < refs.rows(); ++r) {
      if (exclude_self && r == q) continue;
      double s = 0.0;
      for (std::size_t c = 0; c < refs.cols(); ++c) {
        const double d = queries(q, c) - refs(r, c);
        s += d * d;
      }
      all.emplace_back(std::sqrt(s), r);
    }
    std::sort(all.begin(), all.end());
    for (std::size_t i = 0; i < k; ++i) out(q, i) = all[i].first;
  }
  return out;
}

double auroc_pairs(std::span<const double> scores,
                   std::span<const std::size_t> labels) {
  double wins = 0.0;
  double pairs = 0.0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (labels[i] != 1) continue;
    for (std::size_t j = 0; j < scores.size(); ++j) {
      if (labels[j] != 0) continue;
      pairs += 1.0;
      if (scores[i] > scores[j]) {
        wins += 1.0;
      } else if (scores[i] == scores[j]) {
        wins += 0.5;
      }
    }
  }
  return wins / pairs;
}

double best_subset_value(std::span<const double> values,
                         const Matrix& similarity, std::size_t size) {
  const std::size_t m = values.size();
  std::vector<bool> mask(m, false);
  std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(size),
            true);
  double best = 0.0;
  // prev_permutation walks every combination of `size` trues.
  do {
    double total = 0.0;
    for (std::size_t u = 0; u < m; ++u) {
      double cover = 0.0;
      for (std::size_t j = 0; j < m; ++j) {
        if (mask[j]) cover = std::max(cover, similarity(u, j));
      }
      total += values[u] * cover;
    }
    best = std::max(best, total);
  } while (std::prev_permutation(mask.begin(), mask.end()));
  return best;
}

std::vector<double> project_simplex(std::span<const double> v) {
  std::vector<double> u(v.begin(), v.end());
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumulative = 0.0;
  double theta = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    cumulative += u[i];
    const double t = (cumulative - 1.0) / static_cast<double>(i + 1);
    if (u[i] - t > 0.0) theta = t;
  }
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::max(v[i] - theta, 0.0);
  return out;
}

AllocationResult continuous_allocation(std::span<const double> r,
                                       std::span<const double> p, double n,
                                       double m, double width, double tol,
                                       int max_iter) {
  const std::size_t b = r.size();
  // Work with bin masses s_i = width * q_i on the unit simplex.
  auto objective = [&](const std::vector<double>& s) {
    double j = 0.0;
    for (std::size_t i = 0; i < b; ++i) {
      j += width * r[i] / (n * p[i] + m * s[i] / width);
    }
    return j;
  };
  auto gradient = [&](const std::vector<double>& s) {
    std::vector<double> g(b);
    for (std::size_t i = 0; i < b; ++i) {
      const double den = n * p[i] + m * s[i] / width;
      g[i] = -r[i] * m / (den * den);
    }
    return g;
  };
  auto residual = [&](const std::vector<double>& s,
                      const std::vector<double>& g) {
    // Unit-scaled gradient so the tolerance does not depend on r, n, m.
    double gmax = 0.0;
    for (double v : g) gmax = std::max(gmax, std::abs(v));
    if (gmax == 0.0) return 0.0;
    std::vector<double> step(b);
    for (std::size_t i = 0; i < b; ++i) step[i] = s[i] - g[i] / gmax;
    const auto proj = project_simplex(step);
    double res = 0.0;
    for (std::size_t i = 0; i < b; ++i) res += std::abs(s[i] - proj[i]);
    return res;
  };

  // The Hessian is diagonal with entries 2 r m^2 / (width den^3), largest at
  // s = 0, so 1/L is a safe fixed step and every iterate decreases f.
  double lipschitz = 0.0;
  for (std::size_t i = 0; i < b; ++i) {
    const double den = n * p[i];
    lipschitz = std::max(lipschitz, 2.0 * r[i] * m * m / (width * den * den * den));
  }
  const double step = 1.0 / lipschitz;

  std::vector<double> s(b, 1.0 / static_cast<double>(b));
  AllocationResult out;
  for (int it = 0; it < max_iter; ++it) {
    const auto g = gradient(s);
    const double res = residual(s, g);
    if (res < tol) {
      out.iterations = it;
      out.kkt_residual = res;
      out.objective = objective(s);
      out.q.resize(b);
      for (std::size_t i = 0; i < b; ++i) out.q[i] = s[i] / width;
      return out;
    }
    for (std::size_t i = 0; i < b; ++i) s[i] -= step * g[i];
    s = project_simplex(s);
  }
  throw std::runtime_error("allocation oracle did not converge");
}

std::vector<double> numeric_gradient(
    const std::function<double(std::span<const double>)>& f,
    std::vector<double> x, double h) {
  std::vector<double> g(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double keep = x[i];
    x[i] = keep + h;
    const double up = f(x);
    x[i] = keep - h;
    const double down = f(x);
    x[i] = keep;
    g[i] = (up - down) / (2.0 * h);
  }
  return g;
}

std::vector<double> random_distribution(libags::Rng& rng, std::size_t k) {
  std::vector<double> v(k);
  double total = 0.0;
  for (double& x : v) {
    x = -std::log(1.0 - rng.uniform());
    total += x;
  }
  for (double& x : v) x /= total;
  return v;
}

Matrix random_matrix(libags::Rng& rng, std::size_t rows, std::size_t cols,
                     double lo, double hi) {
  Matrix out(rows, cols);
  for (double& v : out.values()) v = rng.uniform(lo, hi);
  return out;
}

}  // namespace oracle
