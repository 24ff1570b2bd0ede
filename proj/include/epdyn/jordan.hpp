#pragma once

#include <Eigen/Dense>
#include <vector>

#include "epdyn/types.hpp"

namespace epdyn {

// Jordan decomposition O = S J S^{-1} of a defective generator, together with
// the coalesced eigenvalue, its eigenvector and the associate vector solving
// (O - e_ep) phi_assoc = phi_ep.  Columns of s are (phi_ep, phi_assoc, ...).
struct JordanForm {
    Eigen::MatrixXcd s;
    Eigen::MatrixXcd j;
    Complex e_ep{};
    Eigen::VectorXcd phi_ep;
    Eigen::VectorXcd phi_assoc;
};

struct JordanBlock {
    Complex eigenvalue{};
    int size = 1;
};

// Block structure of J in block order; sizes sum to the matrix dimension
struct BlockSpec {
    std::vector<JordanBlock> blocks;

    int dimension() const {
        int n = 0;
        for (const auto& b : blocks) n += b.size;
        return n;
    }
};

/// O = -i * H, so the first-order form d/dt chi = O chi describes
/// Schroedinger evolution under H.
Matrix2 schrodinger_generator(const Matrix2& h);
Eigen::MatrixXcd schrodinger_generator(const Eigen::MatrixXcd& h);

/// Jordan decomposition of a 2x2 whose eigenvalues coincide within
/// tolerance * ||o||.  J = [[e_ep, 1], [0, e_ep]]; the first column of s is an
/// eigenvector, the second the minimum-norm associate vector.  Exact scalar
/// multiples of the identity are rejected as DiagonalDegenerate (a true
/// degeneracy, not an EP); separated eigenvalues raise NotDefective.
JordanForm jordan_decompose_2x2(const Matrix2& o, double tolerance = 1e-8);

/// Minimum-Euclidean-norm solution of (o - e_ep) x = phi_ep.  Requires rank
/// deficiency exactly 1; an inconsistent right-hand side raises RankError.
Eigen::VectorXcd associate_vector(const Eigen::MatrixXcd& o, Complex e_ep,
                                  const Eigen::VectorXcd& phi_ep);

/// Propagate d/dt xi = J xi with prescribed block structure: component m of a
/// size-k block (0-based within the block) picks up
///   exp(E t) * sum_{j >= m} t^(j-m)/(j-m)! * xi0_j,
/// mapped back through s.  Degenerate exponentials thus carry polynomial
/// prefactors of degree < k.
Eigen::VectorXcd evolve_jordan(const BlockSpec& blocks, const Eigen::MatrixXcd& s,
                               const Eigen::VectorXcd& c0, double t);

}  // namespace epdyn
