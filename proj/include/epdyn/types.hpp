#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace epdyn {

using Complex = std::complex<double>;

inline constexpr Complex kImag{0.0, 1.0};

inline bool is_finite(double x) { return std::isfinite(x); }
inline bool is_finite(const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

// Relative distance with a floor so comparisons against ~0 stay meaningful
inline double rel_err(const Complex& a, const Complex& b, double floor = 1e-300) {
    const double scale = std::max({std::abs(a), std::abs(b), floor});
    return std::abs(a - b) / scale;
}

// ------------------------------- error kinds --------------------------------

struct InvalidInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// CC = 4*delta^2 + (eps1-eps2)^2 vanished: the EP formulas break down
struct DegenerateParameters : std::domain_error {
    using std::domain_error::domain_error;
};

// Eigenvector machinery refused because the operator is (numerically) defective
struct DefectiveSpectrum : std::domain_error {
    using std::domain_error::domain_error;
};

struct NotDefective : std::domain_error {
    using std::domain_error::domain_error;
};

// Scalar multiple of the identity: a true degeneracy, not an exceptional point
struct DiagonalDegenerate : std::domain_error {
    using std::domain_error::domain_error;
};

struct RankError : std::domain_error {
    using std::domain_error::domain_error;
};

struct SingularMatrix : std::domain_error {
    using std::domain_error::domain_error;
};

struct StepTooCoarse : std::runtime_error {
    std::size_t index;
    explicit StepTooCoarse(std::size_t i, const std::string& hint = "")
        : std::runtime_error("branch tracking ambiguous at sample " + std::to_string(i) +
                             (hint.empty() ? "" : ": " + hint)),
          index(i) {}
};

struct InsufficientData : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ------------------------------- small types --------------------------------

// Two complex amplitudes; which basis they live in is the caller's contract
struct StateVector {
    Complex z1{};
    Complex z2{};
};

inline bool is_finite(const StateVector& s) { return is_finite(s.z1) && is_finite(s.z2); }

inline double norm(const StateVector& s) {
    return std::sqrt(std::norm(s.z1) + std::norm(s.z2));
}

// Complex symmetric 2x2 matrices are the workhorse; entries kept by name
struct Matrix2 {
    Complex a11{}, a12{}, a21{}, a22{};

    Complex trace() const { return a11 + a22; }
    Complex det() const { return a11 * a22 - a12 * a21; }

    StateVector apply(const StateVector& v) const {
        return {a11 * v.z1 + a12 * v.z2, a21 * v.z1 + a22 * v.z2};
    }

    double frobenius_norm() const {
        return std::sqrt(std::norm(a11) + std::norm(a12) + std::norm(a21) + std::norm(a22));
    }
};

inline bool is_finite(const Matrix2& m) {
    return is_finite(m.a11) && is_finite(m.a12) && is_finite(m.a21) && is_finite(m.a22);
}

inline Matrix2 operator*(const Matrix2& a, const Matrix2& b) {
    return {a.a11 * b.a11 + a.a12 * b.a21, a.a11 * b.a12 + a.a12 * b.a22,
            a.a21 * b.a11 + a.a22 * b.a21, a.a21 * b.a12 + a.a22 * b.a22};
}

inline Matrix2 operator*(const Complex& c, const Matrix2& m) {
    return {c * m.a11, c * m.a12, c * m.a21, c * m.a22};
}

inline Matrix2 operator-(const Matrix2& a, const Matrix2& b) {
    return {a.a11 - b.a11, a.a12 - b.a12, a.a21 - b.a21, a.a22 - b.a22};
}

inline Matrix2 identity2() { return {1.0, 0.0, 0.0, 1.0}; }

}  // namespace epdyn
