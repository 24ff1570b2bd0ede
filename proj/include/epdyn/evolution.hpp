#pragma once

#include <Eigen/Dense>

#include "epdyn/model.hpp"
#include "epdyn/spectral.hpp"
#include "epdyn/types.hpp"

namespace epdyn {

enum class EvolutionMethod { closed_form, ep_limit, jordan, spectral_general };
enum class EpBranch { ep1, ep2 };

struct EvolutionResult {
    StateVector state;
    EvolutionMethod method;
};

/// Closed-form solution of i d/dt psi = H_obs psi in the observational basis:
///   z1(t) = C1*(S/2 + lambda*delta*Q) - C2*(Delta/2)*Q
///   z2(t) = C2*(S/2 - lambda*delta*Q) - C1*(Delta/2)*Q
/// with S = exp(-i*E1*t) + exp(-i*E2*t) and Q = (exp(-i*E1*t) - exp(-i*E2*t))/d.
/// Q is evaluated through i*t*exp(-i*mean*t)*sinc(d*t/2), so the formula stays
/// exact through d -> 0 and is independent of the branch of d.
StateVector evolve_closed(const ModelParams& params, Complex lambda, const StateVector& psi0,
                          double t);

/// The finite EP limit: a degree-1 polynomial in t times exp(-i*E_EP*t),
///   psi(t) = exp(-i*E_EP*t) * (I - i*t*N) * psi0,
/// where N = H_obs(EP) - E_EP is exactly nilpotent (Delta = +-2i*lambda*delta
/// at the two branches).  Requires CC != 0.
StateVector evolve_at_ep(const ModelParams& params, EpBranch branch, const StateVector& psi0,
                         double t);

/// General diagonalizable propagation of d/dt chi = O chi through the left and
/// right eigensystem of O.  Refuses (pointing to the jordan module) when the
/// minimum eigenvalue gap falls below 1e-8 * ||O||; exact scalar matrices are
/// propagated directly.
Eigen::VectorXcd evolve_spectral(const Eigen::MatrixXcd& generator, const Eigen::VectorXcd& c0,
                                 double t);

/// Dispatcher: evolve_at_ep within ep_tolerance of either EP, evolve_closed
/// otherwise; the method field records the path taken.
EvolutionResult evolve_auto(const ModelParams& params, Complex lambda, const StateVector& psi0,
                            double t);

}  // namespace epdyn
