#include "epdyn/numerics.hpp"

#include <cmath>

namespace epdyn {

namespace {

double one_norm(const Eigen::MatrixXcd& m) {
    return m.cwiseAbs().colwise().sum().maxCoeff();
}

}  // namespace

Eigen::VectorXcd expm_apply(const Eigen::MatrixXcd& o, const Eigen::VectorXcd& v, double t) {
    if (o.rows() != o.cols()) {
        throw DimensionMismatch("expm_apply: matrix must be square");
    }
    if (o.cols() != v.size()) {
        throw DimensionMismatch("expm_apply: matrix/vector dimension mismatch");
    }
    if (!o.allFinite() || !v.allFinite() || !std::isfinite(t)) {
        throw InvalidInput("expm_apply: non-finite input");
    }

    Eigen::MatrixXcd b = o * t;
    const double norm1 = one_norm(b);
    if (!std::isfinite(norm1)) {
        throw InvalidInput("expm_apply: ||o*t|| overflows");
    }

    int squarings = 0;
    if (norm1 > 0.5) {
        squarings = static_cast<int>(std::ceil(std::log2(norm1 / 0.5)));
        b /= std::ldexp(1.0, squarings);
    }

    const auto n = o.rows();
    Eigen::MatrixXcd result = Eigen::MatrixXcd::Identity(n, n);
    Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(n, n);
    for (int k = 1; k <= 40; ++k) {
        term = term * b / static_cast<double>(k);
        result += term;
        if (term.norm() < 1e-18 * result.norm()) {
            break;
        }
    }
    for (int s = 0; s < squarings; ++s) {
        result = result * result;
    }
    return result * v;
}

Complex sinc_c(Complex z) {
    if (!is_finite(z)) {
        throw InvalidInput("sinc_c: non-finite input");
    }
    if (std::abs(z) >= 1e-4) {
        return std::sin(z) / z;
    }
    const Complex z2 = z * z;
    // 1 - z^2/3! + z^4/5! - z^6/7! + z^8/9!
    return 1.0 + z2 * (-1.0 / 6.0 + z2 * (1.0 / 120.0 + z2 * (-1.0 / 5040.0 + z2 / 362880.0)));
}

PathSamples sqrt_continuous(const PathSamples& path) {
    if (path.empty()) {
        throw InvalidInput("sqrt_continuous: empty path");
    }
    PathSamples roots(path.size());
    Complex ref{};  // last nonzero chosen root
    for (std::size_t i = 0; i < path.size(); ++i) {
        if (!is_finite(path[i])) {
            throw InvalidInput("sqrt_continuous: non-finite sample");
        }
        Complex r = std::sqrt(path[i]);
        if (ref != Complex{} && r != Complex{}) {
            const double inner = std::real(std::conj(ref) * r);
            if (std::abs(inner) <= 1e-12 * std::abs(ref) * std::abs(r)) {
                throw StepTooCoarse(i, "consecutive roots nearly perpendicular");
            }
            if (inner < 0.0) {
                r = -r;
            }
        }
        roots[i] = r;
        if (r != Complex{}) {
            ref = r;
        }
    }
    return roots;
}

}  // namespace epdyn
