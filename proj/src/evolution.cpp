#include "epdyn/evolution.hpp"

#include <cmath>

#include "epdyn/numerics.hpp"

namespace epdyn {

namespace {

void require_finite_inputs(const ModelParams& params, Complex lambda, const StateVector& psi0,
                           double t, const char* who) {
    if (!is_finite(params) || !is_finite(lambda) || !is_finite(psi0) || !std::isfinite(t)) {
        throw InvalidInput(std::string(who) + ": non-finite input");
    }
}

}  // namespace

StateVector evolve_closed(const ModelParams& params, Complex lambda, const StateVector& psi0,
                          double t) {
    require_finite_inputs(params, lambda, psi0, t, "evolve_closed");

    const Complex mean =
        0.5 * (params.omega1 + params.omega2 + lambda * (params.epsilon1 + params.epsilon2));
    const Complex dl =
        params.omega1 - params.omega2 + lambda * (params.epsilon1 - params.epsilon2);
    const Complex ld = lambda * params.delta;
    const Complex d = std::sqrt(dl * dl + 4.0 * ld * ld);

    const Complex phase = std::exp(-kImag * mean * t);
    const Complex half_sum = phase * std::cos(0.5 * d * t);
    const Complex q = kImag * t * phase * sinc_c(0.5 * d * t);

    StateVector out;
    out.z1 = psi0.z1 * (half_sum + ld * q) - psi0.z2 * (0.5 * dl) * q;
    out.z2 = psi0.z2 * (half_sum - ld * q) - psi0.z1 * (0.5 * dl) * q;
    return out;
}

StateVector evolve_at_ep(const ModelParams& params, EpBranch branch, const StateVector& psi0,
                         double t) {
    if (!is_finite(psi0) || !std::isfinite(t)) {
        throw InvalidInput("evolve_at_ep: non-finite input");
    }
    const EPPair eps = exceptional_points(params);
    const Complex lambda = (branch == EpBranch::ep1) ? eps.ep1 : eps.ep2;
    const Complex e_ep =
        0.5 * (params.omega1 + params.omega2 + lambda * (params.epsilon1 + params.epsilon2));
    const Complex ld = lambda * params.delta;
    // Delta collapses to +2i*lambda*delta at EP1 and -2i*lambda*delta at EP2,
    // making N = H_obs - E_EP exactly nilpotent:
    //   N = [[-ld, hd], [hd, ld]] with hd = Delta/2 = +-i*ld.
    const Complex hd = (branch == EpBranch::ep1) ? kImag * ld : -kImag * ld;

    const Complex phase = std::exp(-kImag * e_ep * t);
    const Complex it = kImag * t;
    StateVector out;
    out.z1 = phase * (psi0.z1 - it * (-ld * psi0.z1 + hd * psi0.z2));
    out.z2 = phase * (psi0.z2 - it * (hd * psi0.z1 + ld * psi0.z2));
    return out;
}

Eigen::VectorXcd evolve_spectral(const Eigen::MatrixXcd& generator, const Eigen::VectorXcd& c0,
                                 double t) {
    if (generator.rows() != generator.cols()) {
        throw DimensionMismatch("evolve_spectral: generator must be square");
    }
    if (generator.cols() != c0.size() || c0.size() == 0) {
        throw DimensionMismatch("evolve_spectral: generator/state dimension mismatch");
    }
    if (!generator.allFinite() || !c0.allFinite() || !std::isfinite(t)) {
        throw InvalidInput("evolve_spectral: non-finite input");
    }

    const auto n = generator.rows();
    const double gnorm = generator.norm();

    // exact scalar matrices are diagonalizable however degenerate
    const Complex diag0 = generator(0, 0);
    if ((generator - diag0 * Eigen::MatrixXcd::Identity(n, n)).norm() == 0.0) {
        return std::exp(diag0 * t) * c0;
    }

    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(generator);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("evolve_spectral: eigen decomposition failed");
    }
    const Eigen::VectorXcd& evs = solver.eigenvalues();
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            if (std::abs(evs(i) - evs(j)) <= 1e-8 * gnorm) {
                throw DefectiveSpectrum(
                    "evolve_spectral: eigenvalues coalesce within tolerance; "
                    "the generator is defective, use the jordan module");
            }
        }
    }

    const Eigen::MatrixXcd& right = solver.eigenvectors();
    // rows of right^{-1} are the left eigenvectors, bi-orthogonal to the columns
    const Eigen::MatrixXcd left = right.partialPivLu().solve(Eigen::MatrixXcd::Identity(n, n));

    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const Complex weight = left.row(k) * c0;
        const Complex norm_lr = left.row(k) * right.col(k);
        out += std::exp(evs(k) * t) * (weight / norm_lr) * right.col(k);
    }
    return out;
}

EvolutionResult evolve_auto(const ModelParams& params, Complex lambda, const StateVector& psi0,
                            double t) {
    require_finite_inputs(params, lambda, psi0, t, "evolve_auto");

    bool have_eps = true;
    EPPair eps;
    try {
        eps = exceptional_points(params);
    } catch (const DegenerateParameters&) {
        have_eps = false;  // CC = 0: no EPs at finite coupling
    }

    if (have_eps) {
        const double tol = ep_tolerance(eps);
        const double d1 = std::abs(lambda - eps.ep1);
        const double d2 = std::abs(lambda - eps.ep2);
        if (std::min(d1, d2) < tol) {
            const EpBranch branch = (d1 <= d2) ? EpBranch::ep1 : EpBranch::ep2;
            return {evolve_at_ep(params, branch, psi0, t), EvolutionMethod::ep_limit};
        }
    }
    return {evolve_closed(params, lambda, psi0, t), EvolutionMethod::closed_form};
}

}  // namespace epdyn
