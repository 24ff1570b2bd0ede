#pragma once

#include "epdyn/model.hpp"
#include "epdyn/types.hpp"

namespace epdyn {

// The two eigenvalues plus the discriminant root at a fixed coupling.
// Labeling convention: e1 = mean - d/2, e2 = mean + d/2, so e2 - e1 = d.
struct Spectrum {
    Complex e1{};
    Complex e2{};
    Complex d{};
    Complex mean{};
};

// The two exceptional couplings and the discriminant leading coefficient:
// cc * (lambda - ep1) * (lambda - ep2) equals the discriminant for all lambda.
struct EPPair {
    Complex ep1{};
    Complex ep2{};
    Complex cc{};
};

// Unnormalized eigenvectors of the observational-basis Hamiltonian, with the
// c-norms n_k = sqrt(c_product(v_k, v_k)) that collapse at the EPs.
struct EigenSystem {
    Spectrum spectrum;
    StateVector v1;
    StateVector v2;
    Complex n1{};
    Complex n2{};
};

/// CC = 4*delta^2 + (eps1 - eps2)^2.
Complex discriminant_coefficient(const ModelParams& params);

/// (omega1 - omega2 + lambda*(eps1 - eps2))^2 + 4*lambda^2*delta^2.
Complex discriminant(const ModelParams& params, Complex lambda);

/// Eigenvalues at one coupling; d is the principal square root of the
/// discriminant (path queries track the branch via sqrt_continuous instead).
Spectrum eigenvalues(const ModelParams& params, Complex lambda);

/// Both exceptional couplings, ep1 = i(w1-w2)/(-2*delta - i(eps1-eps2)) and
/// ep2 with the sign of delta flipped.  Requires CC != 0.
EPPair exceptional_points(const ModelParams& params);

/// Bilinear product u1*v1 + u2*v2 (no conjugation).
Complex c_product(const StateVector& u, const StateVector& v);

// Distance below which a coupling counts as sitting on an EP; under it the
// c-norms lose all significant digits (n ~ |lambda - EP|^(1/4))
inline double ep_tolerance(const EPPair& eps) {
    return 1e-8 * (std::abs(eps.ep1) + std::abs(eps.ep2));
}

/// Closed-form eigenvectors in the observational basis:
///   v1 = (d + 2*lambda*delta, -Delta)  for e1,
///   v2 = (d - 2*lambda*delta, +Delta)  for e2,
/// with Delta = omega1 - omega2 + lambda*(eps1 - eps2).  They are c-orthogonal
/// and their c-norms vanish like |lambda - EP|^(1/4) toward either EP.
/// Refuses within ep_tolerance of an EP (use the jordan module there).
EigenSystem eigenvectors(const ModelParams& params, Complex lambda);

/// The real coupling in [lo, hi] maximizing max(Im e1, Im e2) — the pole
/// closest to the real axis — via grid scan plus golden-section refinement
/// to 1e-6 absolute in lambda.
double critical_lambda(const ModelParams& params, double lo, double hi, int grid);

}  // namespace epdyn
