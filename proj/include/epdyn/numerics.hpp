#pragma once

#include <Eigen/Dense>
#include <vector>

#include "epdyn/types.hpp"

namespace epdyn {

// A discretized path in the complex plane (couplings or discriminant values)
using PathSamples = std::vector<Complex>;

/// exp(o*t) * v by scaling-and-squaring with a truncated Taylor series.
///
/// Series-based on purpose: this is the independent oracle for every spectral
/// code path, so it must not share an eigensolver with them.  Scaling brings
/// the 1-norm of o*t below 0.5 before squaring; terms are summed until they
/// fall under 1e-18 of the running result.
Eigen::VectorXcd expm_apply(const Eigen::MatrixXcd& o, const Eigen::VectorXcd& v, double t);

/// sin(z)/z, stable at the origin (Taylor polynomial below |z| = 1e-4).
Complex sinc_c(Complex z);

/// One square root per sample, chosen so consecutive roots have non-negative
/// real inner product; the first sample uses the principal branch.  A root
/// whose continuation is ambiguous (consecutive roots nearly perpendicular)
/// raises StepTooCoarse naming the offending index.
PathSamples sqrt_continuous(const PathSamples& path);

}  // namespace epdyn
