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

#ifndef RABIPI_MODEL_H
#define RABIPI_MODEL_H

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Core>

namespace rabipi {

/// Affine distortion of the ideal Rabi curve:
///
///   P(t) = alpha * (1 - cos(c t + phi0)) / 2 + beta
///
/// alpha and beta absorb state-preparation and readout imperfections, c maps
/// the controlled time t onto a rotation angle and phi0 is a constant offset
/// of that angle. The ideal qubit is (1, 0, 0, 1).
template <typename Scalar>
struct NoiseModel {
    Scalar alpha = Scalar(1);
    Scalar beta = Scalar(0);
    Scalar phi0 = Scalar(0);
    Scalar c = Scalar(1);

    static NoiseModel ideal() { return {}; }

    bool valid() const {
        using std::isfinite;
        return isfinite(alpha) && isfinite(beta) && isfinite(phi0) && isfinite(c) && alpha >= Scalar(0) &&
               beta >= Scalar(0) && alpha + beta <= Scalar(1) && c > Scalar(0);
    }

    // Throws std::invalid_argument if any invariant is broken.
    void check() const {
        if (!valid()) {
            throw std::invalid_argument(
                "invalid noise model: need alpha >= 0, beta >= 0, alpha + beta <= 1, c > 0, all finite");
        }
    }

    bool operator==(const NoiseModel &) const = default;
};

using NoiseModeld = NoiseModel<double>;

/// Probability of measuring |1> after rotating |0> by phi about the y axis.
template <typename Scalar>
Scalar ideal_prob(Scalar phi) {
    using std::cos;
    using std::isfinite;
    if (!isfinite(phi)) {
        throw std::invalid_argument("ideal_prob: angle must be finite");
    }
    return (Scalar(1) - cos(phi)) / Scalar(2);
}

template <typename Scalar>
Scalar noisy_prob(const NoiseModel<Scalar> &model, Scalar t) {
    using std::cos;
    using std::isfinite;
    model.check();
    if (!isfinite(t)) {
        throw std::invalid_argument("noisy_prob: time must be finite");
    }
    return model.alpha * (Scalar(1) - cos(model.c * t + model.phi0)) / Scalar(2) + model.beta;
}

/// Coefficient-wise version over an array of times; returns an expression.
template <typename Derived>
auto noisy_prob(const NoiseModel<typename Derived::Scalar> &model, const Eigen::ArrayBase<Derived> &t) {
    using Scalar = typename Derived::Scalar;
    model.check();
    return model.alpha * (Scalar(1) - (model.c * t.derived() + model.phi0).cos()) / Scalar(2) + model.beta;
}

namespace detail {
template <typename Scalar>
void require_normalized(const NoiseModel<Scalar> &model, const char *what) {
    model.check();
    if (model.alpha != Scalar(1) || model.beta != Scalar(0)) {
        throw std::invalid_argument(std::string(what) + ": closed form only holds for alpha = 1, beta = 0");
    }
}
}  // namespace detail

/// First two non-negative-phase solutions of P(t) = 1/2 for the normalized
/// curve: c t + phi0 = pi/2 and 3 pi/2.
template <typename Scalar>
std::pair<Scalar, Scalar> analytic_half_crossings(const NoiseModel<Scalar> &model) {
    detail::require_normalized(model, "analytic_half_crossings");
    const Scalar pi = std::numbers::pi_v<Scalar>;
    return {(pi / Scalar(2) - model.phi0) / model.c, (Scalar(3) * pi / Scalar(2) - model.phi0) / model.c};
}

/// Exact area of P(t) - 1/2 between the analytic half crossings, i.e. 1/c.
template <typename Scalar>
Scalar analytic_integral_reciprocal_c(const NoiseModel<Scalar> &model) {
    using std::sin;
    const auto [t1, t2] = analytic_half_crossings(model);
    // Antiderivative of -cos(c t + phi0) / 2 evaluated at the limits.
    const auto antiderivative = [&](Scalar t) { return -sin(model.c * t + model.phi0) / (Scalar(2) * model.c); };
    return antiderivative(t2) - antiderivative(t1);
}

}  // namespace rabipi

#endif  // RABIPI_MODEL_H
