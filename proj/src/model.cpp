#include "epdyn/model.hpp"

#include <cmath>

namespace epdyn {

namespace {

void require_finite(const ModelParams& params, Complex lambda, const char* who) {
    if (!is_finite(params) || !is_finite(lambda)) {
        throw InvalidInput(std::string(who) + ": non-finite input");
    }
}

}  // namespace

Matrix2 hamiltonian(const ModelParams& params, Complex lambda) {
    require_finite(params, lambda, "hamiltonian");
    return {params.omega1 + lambda * params.epsilon1, lambda * params.delta,
            lambda * params.delta, params.omega2 + lambda * params.epsilon2};
}

Matrix2 rotated_hamiltonian(const ModelParams& params, Complex lambda) {
    require_finite(params, lambda, "rotated_hamiltonian");
    const Matrix2 h = hamiltonian(params, lambda);
    const double c = std::cos(kObservationalAngle);
    const double s = std::sin(kObservationalAngle);
    const Matrix2 r{c, -s, s, c};
    const Matrix2 rt{c, s, -s, c};
    return r * h * rt;
}

StateVector rotate_state(const StateVector& state, double angle) {
    if (!is_finite(state) || !is_finite(angle)) {
        throw InvalidInput("rotate_state: non-finite input");
    }
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return {c * state.z1 - s * state.z2, s * state.z1 + c * state.z2};
}

}  // namespace epdyn
