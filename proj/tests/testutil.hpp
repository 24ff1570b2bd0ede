#pragma once

#include <random>

#include "epdyn/model.hpp"
#include "epdyn/types.hpp"

namespace epdyn::testutil {

// The parameter set used throughout the reference runs
inline ModelParams paper_params() {
    return {{1.55, -0.007}, {1.1, -0.007}, {-0.4, -0.0006}, {0.4, 0.0005}, {0.0, 0.0115}};
}

// Deterministic draws of physically shaped parameters: O(1) real parts,
// small decaying imaginary parts.  Keeps exp(Im(E) * t) representable for
// t up to a few hundred.
class ParamGen {
  public:
    explicit ParamGen(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng_);
    }

    Complex resonance_energy() { return {uniform(-1.5, 1.5), uniform(-0.02, 0.0)}; }

    Complex perturbation_energy() { return {uniform(-1.0, 1.0), uniform(-0.002, 0.002)}; }

    Complex coupling() { return {uniform(-0.5, 0.5), uniform(-0.5, 0.5)}; }

    Complex unit_box() { return {uniform(-1.0, 1.0), uniform(-1.0, 1.0)}; }

    ModelParams params() {
        return {resonance_energy(), resonance_energy(), perturbation_energy(),
                perturbation_energy(), coupling()};
    }

    // rejects draws whose discriminant coefficient nearly vanishes, so the
    // EP formulas stay well conditioned
    ModelParams params_with_cc() {
        for (;;) {
            ModelParams p = params();
            const Complex et = p.epsilon1 - p.epsilon2;
            const Complex cc = 4.0 * p.delta * p.delta + et * et;
            if (std::abs(cc) > 1e-3) return p;
        }
    }

    Complex lambda() { return {uniform(0.0, 1.0), uniform(-0.05, 0.05)}; }

    StateVector state() { return {unit_box(), unit_box()}; }

  private:
    std::mt19937_64 rng_;
};

}  // namespace epdyn::testutil
