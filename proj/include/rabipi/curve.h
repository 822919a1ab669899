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

#ifndef RABIPI_CURVE_H
#define RABIPI_CURVE_H

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Core>
#include <Eigen/QR>

namespace rabipi {

/// Thrown by find_crossing when the interpolant never reaches the level.
struct NoCrossingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Samples (t_i, y_i) with strictly increasing, finite times and finite values.
/// Between samples the curve is the linear interpolant.
template <typename Scalar>
class Curve {
  public:
    using Array = Eigen::Array<Scalar, Eigen::Dynamic, 1>;

    Curve(Array times, Array values) : t_(std::move(times)), y_(std::move(values)) {
        if (t_.size() != y_.size()) {
            throw std::invalid_argument("curve: times and values differ in length");
        }
        if (t_.size() < 2) {
            throw std::invalid_argument("curve: need at least 2 samples");
        }
        if (!t_.allFinite() || !y_.allFinite()) {
            throw std::invalid_argument("curve: non-finite sample");
        }
        for (Eigen::Index i = 1; i < t_.size(); ++i) {
            if (!(t_[i] > t_[i - 1])) {
                throw std::invalid_argument("curve: times must be strictly increasing");
            }
        }
    }

    const Array &times() const { return t_; }
    const Array &values() const { return y_; }
    Eigen::Index size() const { return t_.size(); }
    Scalar t_min() const { return t_[0]; }
    Scalar t_max() const { return t_[t_.size() - 1]; }

  private:
    Array t_;
    Array y_;
};

using NormalizedCurve = Curve<double>;

namespace detail {

// Index i of the segment [t_i, t_{i+1}] containing t; t must be in range.
template <typename Scalar>
Eigen::Index segment_of(const Curve<Scalar> &curve, Scalar t) {
    const auto &ts = curve.times();
    const Scalar *begin = ts.data();
    const Scalar *end = begin + ts.size();
    Eigen::Index i = std::upper_bound(begin, end, t) - begin - 1;
    return std::clamp<Eigen::Index>(i, 0, ts.size() - 2);
}

}  // namespace detail

/// Piecewise-linear interpolant of the samples, exact at sample times.
template <typename Scalar>
Scalar interpolate(const Curve<Scalar> &curve, Scalar t) {
    if (!(t >= curve.t_min() && t <= curve.t_max())) {
        throw std::out_of_range("interpolate: t outside [min T, max T]");
    }
    const auto &ts = curve.times();
    const auto &ys = curve.values();
    const Eigen::Index i = detail::segment_of(curve, t);
    if (t == ts[i]) {
        return ys[i];
    }
    if (t == ts[i + 1]) {
        return ys[i + 1];
    }
    const Scalar w = (t - ts[i]) / (ts[i + 1] - ts[i]);
    return ys[i] + w * (ys[i + 1] - ys[i]);
}

/// Time where the interpolant crosses `level`, searched outward from `start`.
///
/// The bracket [lo, hi] starts degenerate at `start` and grows by one grid
/// step, alternately to the right and to the left, until the interpolant
/// minus level changes sign over it. The bracket is then bisected.
template <typename Scalar>
Scalar find_crossing(const Curve<Scalar> &curve, Scalar start, Scalar level) {
    using std::abs;
    if (!(start >= curve.t_min() && start <= curve.t_max())) {
        throw std::out_of_range("find_crossing: start outside the data range");
    }
    const auto g = [&](Scalar t) { return interpolate(curve, t) - level; };
    const Scalar step = (curve.t_max() - curve.t_min()) / Scalar(curve.size() - 1);

    Scalar lo = start;
    Scalar hi = start;
    Scalar g_lo = g(lo);
    Scalar g_hi = g_lo;
    if (g_lo == Scalar(0)) {
        return start;
    }
    bool grow_right = true;
    while (g_lo * g_hi > Scalar(0)) {
        const bool right_done = hi >= curve.t_max();
        const bool left_done = lo <= curve.t_min();
        if (right_done && left_done) {
            throw NoCrossingError("no crossing of level " + std::to_string(level) + " within the data range");
        }
        if ((grow_right && !right_done) || left_done) {
            hi = std::min(hi + step, curve.t_max());
            g_hi = g(hi);
        } else {
            lo = std::max(lo - step, curve.t_min());
            g_lo = g(lo);
        }
        grow_right = !grow_right;
    }
    if (g_lo == Scalar(0)) {
        return lo;
    }
    if (g_hi == Scalar(0)) {
        return hi;
    }

    constexpr Scalar time_tol = Scalar(1e-10);
    constexpr Scalar residual_tol = Scalar(1e-9);
    Scalar mid = (lo + hi) / Scalar(2);
    Scalar g_mid = g(mid);
    for (int iter = 0; iter < 200; ++iter) {
        if (hi - lo <= time_tol && abs(g_mid) <= residual_tol) {
            break;
        }
        if (g_mid == Scalar(0)) {
            break;
        }
        if ((g_lo < Scalar(0)) == (g_mid < Scalar(0))) {
            lo = mid;
            g_lo = g_mid;
        } else {
            hi = mid;
        }
        mid = (lo + hi) / Scalar(2);
        g_mid = g(mid);
    }
    return mid;
}

/// Integral of (interpolant - level) over [t1, t2].
///
/// Composite trapezoid over the samples strictly inside (t1, t2) plus partial
/// panels at both ends built from interpolated endpoint values. This is the
/// exact integral of the piecewise-linear interpolant.
template <typename Scalar>
Scalar trapezoid_integral(const Curve<Scalar> &curve, Scalar t1, Scalar t2, Scalar level) {
    if (!(t1 >= curve.t_min() && t2 <= curve.t_max())) {
        throw std::out_of_range("trapezoid_integral: limits outside [min T, max T]");
    }
    if (!(t1 < t2)) {
        throw std::invalid_argument("trapezoid_integral: need t1 < t2");
    }
    const auto &ts = curve.times();
    const auto &ys = curve.values();

    Scalar sum = Scalar(0);
    Scalar prev_t = t1;
    Scalar prev_y = interpolate(curve, t1) - level;
    for (Eigen::Index i = 0; i < ts.size(); ++i) {
        if (ts[i] <= t1 || ts[i] >= t2) {
            continue;
        }
        const Scalar y = ys[i] - level;
        sum += (ts[i] - prev_t) * (prev_y + y) / Scalar(2);
        prev_t = ts[i];
        prev_y = y;
    }
    const Scalar y2 = interpolate(curve, t2) - level;
    sum += (t2 - prev_t) * (prev_y + y2) / Scalar(2);
    return sum;
}

/// Least-squares line y = slope * t + intercept.
template <typename Scalar>
struct Line {
    Scalar slope;
    Scalar intercept;
};

template <typename DerivedT, typename DerivedY>
Line<typename DerivedT::Scalar> fit_line(const Eigen::DenseBase<DerivedT> &t, const Eigen::DenseBase<DerivedY> &y) {
    using Scalar = typename DerivedT::Scalar;
    const Eigen::Index n = t.size();
    if (n < 2 || y.size() != n) {
        throw std::invalid_argument("fit_line: need at least 2 points");
    }
    Eigen::Matrix<Scalar, Eigen::Dynamic, 2> design(n, 2);
    design.col(0) = t.derived().matrix().template cast<Scalar>();
    design.col(1).setOnes();
    const Eigen::Matrix<Scalar, 2, 1> coef =
        design.colPivHouseholderQr().solve(y.derived().matrix().template cast<Scalar>());
    return {coef[0], coef[1]};
}

/// Refines a crossing estimate near t_i: fits a line to the samples with
/// |t - t_i| <= window and solves slope * t + intercept = level.
template <typename Scalar>
Scalar refine_crossing_linear(const Curve<Scalar> &curve, Scalar t_i, Scalar window, Scalar level) {
    using std::abs;
    if (!(window > Scalar(0))) {
        throw std::invalid_argument("refine_crossing_linear: window must be positive");
    }
    const auto &ts = curve.times();
    const auto mask = (ts - t_i).abs() <= window;
    const Eigen::Index n = mask.count();
    if (n < 2) {
        throw std::domain_error("refine_crossing_linear: fewer than 2 samples within the window");
    }
    typename Curve<Scalar>::Array wt(n), wy(n);
    for (Eigen::Index i = 0, k = 0; i < ts.size(); ++i) {
        if (mask[i]) {
            wt[k] = ts[i];
            wy[k] = curve.values()[i];
            ++k;
        }
    }
    const Line<Scalar> line = fit_line(wt, wy);
    if (!(abs(line.slope) >= Scalar(1e-12))) {
        throw std::domain_error("refine_crossing_linear: fitted slope is zero, no crossing defined");
    }
    return (level - line.intercept) / line.slope;
}

}  // namespace rabipi

#endif  // RABIPI_CURVE_H
