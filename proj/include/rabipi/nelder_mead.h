// Copyright 2026 The rabipi Authors
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

#ifndef RABIPI_NELDER_MEAD_H
#define RABIPI_NELDER_MEAD_H

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <Eigen/Core>

namespace rabipi {

template <typename Scalar, int N>
struct SimplexResult {
    Eigen::Matrix<Scalar, N, 1> x;
    Scalar value;
    int evaluations;
    bool converged;
};

/// Derivative-free minimization with the Nelder-Mead simplex (standard
/// reflection 1, expansion 2, contraction 1/2, shrink 1/2).
///
/// Stops when the spread of the simplex values falls below
/// rel_tol * |best| + abs_tol, or after max_evals evaluations.
template <typename Scalar, int N, typename F>
SimplexResult<Scalar, N> nelder_mead(F &&f, const Eigen::Matrix<Scalar, N, 1> &x0,
                                     const Eigen::Matrix<Scalar, N, 1> &initial_step, Scalar rel_tol, Scalar abs_tol,
                                     int max_evals) {
    using Vec = Eigen::Matrix<Scalar, N, 1>;
    const int n = static_cast<int>(x0.size());
    std::vector<Vec> pts(n + 1, x0);
    std::vector<Scalar> vals(n + 1);
    int evals = 0;
    auto eval = [&](const Vec &x) {
        ++evals;
        return f(x);
    };
    for (int i = 0; i < n; ++i) {
        pts[i + 1][i] += initial_step[i];
    }
    for (int i = 0; i <= n; ++i) {
        vals[i] = eval(pts[i]);
    }

    std::vector<int> order(n + 1);
    bool converged = false;
    while (true) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return vals[a] < vals[b]; });
        const int best = order.front();
        const int worst = order.back();
        const int second = order[n - 1];
        if (vals[worst] - vals[best] <= rel_tol * std::abs(vals[best]) + abs_tol) {
            converged = true;
            break;
        }
        if (evals >= max_evals) {
            break;
        }

        Vec centroid = Vec::Zero(n);
        for (int i = 0; i <= n; ++i) {
            if (i != worst) {
                centroid += pts[i];
            }
        }
        centroid /= Scalar(n);

        const Vec reflected = centroid + (centroid - pts[worst]);
        const Scalar f_r = eval(reflected);
        if (f_r < vals[best]) {
            const Vec expanded = centroid + Scalar(2) * (centroid - pts[worst]);
            const Scalar f_e = eval(expanded);
            if (f_e < f_r) {
                pts[worst] = expanded;
                vals[worst] = f_e;
            } else {
                pts[worst] = reflected;
                vals[worst] = f_r;
            }
            continue;
        }
        if (f_r < vals[second]) {
            pts[worst] = reflected;
            vals[worst] = f_r;
            continue;
        }
        const bool outside = f_r < vals[worst];
        const Vec contracted = outside ? Vec(centroid + Scalar(0.5) * (reflected - centroid))
                                       : Vec(centroid + Scalar(0.5) * (pts[worst] - centroid));
        const Scalar f_c = eval(contracted);
        if (f_c < (outside ? f_r : vals[worst])) {
            pts[worst] = contracted;
            vals[worst] = f_c;
            continue;
        }
        for (int i = 0; i <= n; ++i) {
            if (i != best) {
                pts[i] = pts[best] + Scalar(0.5) * (pts[i] - pts[best]);
                vals[i] = eval(pts[i]);
            }
        }
    }
    const auto it = std::min_element(vals.begin(), vals.end());
    return {pts[static_cast<std::size_t>(it - vals.begin())], *it, evals, converged};
}

}  // namespace rabipi

#endif  // RABIPI_NELDER_MEAD_H
