#pragma once

#include "epdyn/types.hpp"

namespace epdyn {

// The five model constants of H(lambda) = diag(omega1, omega2) + lambda * V
struct ModelParams {
    Complex omega1{};
    Complex omega2{};
    Complex epsilon1{};
    Complex epsilon2{};
    Complex delta{};
};

inline bool is_finite(const ModelParams& p) {
    return is_finite(p.omega1) && is_finite(p.omega2) && is_finite(p.epsilon1) &&
           is_finite(p.epsilon2) && is_finite(p.delta);
}

/// H(lambda) in the canonical basis:
///   [[omega1 + lambda*eps1, lambda*delta], [lambda*delta, omega2 + lambda*eps2]]
Matrix2 hamiltonian(const ModelParams& params, Complex lambda);

/// H(lambda) conjugated into the observational basis, R(pi/4) H R(pi/4)^T.
///
/// Convention (fixed once, validated against the series propagator):
/// R(theta) = [[cos, -sin], [sin, cos]] and the observational components are
/// obtained from canonical ones by rotate_state(psi, +pi/4).  Explicitly,
///   H_obs = [[mean - lambda*delta, Delta/2], [Delta/2, mean + lambda*delta]]
/// with mean the half-trace and Delta = omega1 - omega2 + lambda*(eps1 - eps2).
Matrix2 rotated_hamiltonian(const ModelParams& params, Complex lambda);

/// Apply the real plane rotation R(angle) to the component pair.
StateVector rotate_state(const StateVector& state, double angle);

// Angle taking canonical components to observational ones
inline constexpr double kObservationalAngle = 0.78539816339744830961;  // pi/4

inline StateVector to_observational(const StateVector& s) {
    return rotate_state(s, kObservationalAngle);
}

inline StateVector from_observational(const StateVector& s) {
    return rotate_state(s, -kObservationalAngle);
}

}  // namespace epdyn
