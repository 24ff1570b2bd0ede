#include "epdyn/jordan.hpp"

#include <cmath>
#include <limits>

namespace epdyn {

namespace {

Eigen::Matrix2cd to_eigen(const Matrix2& m) {
    Eigen::Matrix2cd out;
    out << m.a11, m.a12, m.a21, m.a22;
    return out;
}

}  // namespace

Matrix2 schrodinger_generator(const Matrix2& h) {
    return (-kImag) * h;
}

Eigen::MatrixXcd schrodinger_generator(const Eigen::MatrixXcd& h) {
    if (h.rows() != h.cols()) {
        throw DimensionMismatch("schrodinger_generator: matrix must be square");
    }
    return -kImag * h;
}

JordanForm jordan_decompose_2x2(const Matrix2& o, double tolerance) {
    if (!is_finite(o) || !std::isfinite(tolerance) || tolerance < 0.0) {
        throw InvalidInput("jordan_decompose_2x2: non-finite input");
    }
    const double scale = o.frobenius_norm();
    const Complex gap =
        std::sqrt((o.a11 - o.a22) * (o.a11 - o.a22) + 4.0 * o.a12 * o.a21);
    if (std::abs(gap) > tolerance * scale) {
        throw NotDefective("jordan_decompose_2x2: eigenvalues separated beyond tolerance");
    }

    const Complex e_ep = 0.5 * o.trace();
    const Matrix2 n = o - e_ep * identity2();
    if (n.frobenius_norm() <= 4.0 * std::numeric_limits<double>::epsilon() * scale) {
        throw DiagonalDegenerate(
            "jordan_decompose_2x2: scalar multiple of the identity has no Jordan block");
    }

    // kernel of the (numerically) nilpotent part, from whichever row is better
    // conditioned; n is traceless so n = [[a, b], [c, -a]]
    const Complex a = n.a11;
    const Complex b = n.a12;
    const Complex c = n.a21;
    StateVector kernel{b, -a};
    const StateVector alt{a, c};
    if (std::norm(alt.z1) + std::norm(alt.z2) > std::norm(kernel.z1) + std::norm(kernel.z2)) {
        kernel = alt;
    }

    // deterministic normalization: unit norm, dominant component real positive
    Eigen::Vector2cd phi(kernel.z1, kernel.z2);
    phi.normalize();
    const int lead = std::abs(phi(0)) >= std::abs(phi(1)) ? 0 : 1;
    const double lead_mag = std::abs(phi(lead));
    phi *= std::conj(phi(lead)) / lead_mag;

    JordanForm out;
    out.e_ep = e_ep;
    out.phi_ep = phi;
    out.phi_assoc = associate_vector(to_eigen(o), e_ep, out.phi_ep);
    out.s.resize(2, 2);
    out.s.col(0) = out.phi_ep;
    out.s.col(1) = out.phi_assoc;
    out.j.resize(2, 2);
    out.j << e_ep, 1.0, 0.0, e_ep;
    return out;
}

Eigen::VectorXcd associate_vector(const Eigen::MatrixXcd& o, Complex e_ep,
                                  const Eigen::VectorXcd& phi_ep) {
    if (o.rows() != o.cols()) {
        throw DimensionMismatch("associate_vector: matrix must be square");
    }
    if (o.rows() != phi_ep.size()) {
        throw DimensionMismatch("associate_vector: matrix/vector dimension mismatch");
    }
    if (!o.allFinite() || !is_finite(e_ep) || !phi_ep.allFinite()) {
        throw InvalidInput("associate_vector: non-finite input");
    }
    if (phi_ep.norm() == 0.0) {
        throw InvalidInput("associate_vector: phi_ep must be nonzero");
    }

    const auto n = o.rows();
    const Eigen::MatrixXcd shifted = o - e_ep * Eigen::MatrixXcd::Identity(n, n);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(shifted, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sigma = svd.singularValues();
    const double smax = sigma(0);
    const double threshold = 1e-8 * smax;

    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (sigma(i) > threshold) ++rank;
    }
    if (n - rank != 1) {
        throw RankError("associate_vector: (o - e_ep) must have rank deficiency exactly 1");
    }

    // minimum-norm solution over the numerically nonzero singular directions
    Eigen::VectorXcd x = Eigen::VectorXcd::Zero(n);
    for (Eigen::Index i = 0; i < rank; ++i) {
        x += (svd.matrixU().col(i).dot(phi_ep) / sigma(i)) * svd.matrixV().col(i);
    }

    const double residual = (shifted * x - phi_ep).norm();
    if (residual > 1e-8 * (phi_ep.norm() + smax * x.norm())) {
        throw RankError("associate_vector: phi_ep is not in the range of (o - e_ep)");
    }
    return x;
}

Eigen::VectorXcd evolve_jordan(const BlockSpec& blocks, const Eigen::MatrixXcd& s,
                               const Eigen::VectorXcd& c0, double t) {
    const int dim = blocks.dimension();
    if (dim <= 0 || s.rows() != s.cols() || s.rows() != dim || c0.size() != dim) {
        throw DimensionMismatch("evolve_jordan: block sizes, s, and c0 must agree");
    }
    for (const auto& blk : blocks.blocks) {
        if (blk.size < 1 || !is_finite(blk.eigenvalue)) {
            throw InvalidInput("evolve_jordan: invalid block");
        }
    }
    if (!s.allFinite() || !c0.allFinite() || !std::isfinite(t)) {
        throw InvalidInput("evolve_jordan: non-finite input");
    }

    Eigen::FullPivLU<Eigen::MatrixXcd> lu(s);
    if (!lu.isInvertible()) {
        throw SingularMatrix("evolve_jordan: transformation s is singular");
    }
    const Eigen::VectorXcd xi0 = lu.solve(c0);

    Eigen::VectorXcd xi(dim);
    int offset = 0;
    for (const auto& blk : blocks.blocks) {
        const Complex grow = std::exp(blk.eigenvalue * t);
        for (int m = 0; m < blk.size; ++m) {
            Complex acc{};
            double weight = 1.0;  // t^(j-m)/(j-m)!
            for (int j = m; j < blk.size; ++j) {
                acc += weight * xi0(offset + j);
                weight *= t / static_cast<double>(j - m + 1);
            }
            xi(offset + m) = grow * acc;
        }
        offset += blk.size;
    }
    return s * xi;
}

}  // namespace epdyn
