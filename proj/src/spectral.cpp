#include "epdyn/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace epdyn {

namespace {

void require_finite(const ModelParams& params, const char* who) {
    if (!is_finite(params)) {
        throw InvalidInput(std::string(who) + ": non-finite parameters");
    }
}

}  // namespace

Complex discriminant_coefficient(const ModelParams& params) {
    require_finite(params, "discriminant_coefficient");
    const Complex et = params.epsilon1 - params.epsilon2;
    return 4.0 * params.delta * params.delta + et * et;
}

Complex discriminant(const ModelParams& params, Complex lambda) {
    require_finite(params, "discriminant");
    if (!is_finite(lambda)) {
        throw InvalidInput("discriminant: non-finite lambda");
    }
    const Complex dl = params.omega1 - params.omega2 + lambda * (params.epsilon1 - params.epsilon2);
    const Complex ld = lambda * params.delta;
    return dl * dl + 4.0 * ld * ld;
}

Spectrum eigenvalues(const ModelParams& params, Complex lambda) {
    require_finite(params, "eigenvalues");
    if (!is_finite(lambda)) {
        throw InvalidInput("eigenvalues: non-finite lambda");
    }
    Spectrum s;
    s.mean = 0.5 * (params.omega1 + params.omega2 + lambda * (params.epsilon1 + params.epsilon2));
    s.d = std::sqrt(discriminant(params, lambda));
    s.e1 = s.mean - 0.5 * s.d;
    s.e2 = s.mean + 0.5 * s.d;
    return s;
}

EPPair exceptional_points(const ModelParams& params) {
    const Complex cc = discriminant_coefficient(params);
    if (cc == Complex{}) {
        throw DegenerateParameters("exceptional_points: CC = 0, EPs collide at infinity");
    }
    const Complex num = kImag * (params.omega1 - params.omega2);
    const Complex et = params.epsilon1 - params.epsilon2;
    EPPair eps;
    eps.ep1 = num / (-2.0 * params.delta - kImag * et);
    eps.ep2 = num / (+2.0 * params.delta - kImag * et);
    eps.cc = cc;
    if (!is_finite(eps.ep1) || !is_finite(eps.ep2)) {
        throw DegenerateParameters("exceptional_points: EP formula overflow (CC nearly 0)");
    }
    return eps;
}

Complex c_product(const StateVector& u, const StateVector& v) {
    if (!is_finite(u) || !is_finite(v)) {
        throw InvalidInput("c_product: non-finite input");
    }
    return u.z1 * v.z1 + u.z2 * v.z2;
}

EigenSystem eigenvectors(const ModelParams& params, Complex lambda) {
    const EPPair eps = exceptional_points(params);
    const double tol = ep_tolerance(eps);
    if (std::abs(lambda - eps.ep1) < tol || std::abs(lambda - eps.ep2) < tol) {
        throw DefectiveSpectrum(
            "eigenvectors: coupling is at an exceptional point; "
            "the spectrum is defective there, use jordan_decompose_2x2");
    }
    EigenSystem sys;
    sys.spectrum = eigenvalues(params, lambda);
    const Complex dl = params.omega1 - params.omega2 + lambda * (params.epsilon1 - params.epsilon2);
    const Complex two_ld = 2.0 * lambda * params.delta;
    sys.v1 = {sys.spectrum.d + two_ld, -dl};
    sys.v2 = {sys.spectrum.d - two_ld, dl};
    sys.n1 = std::sqrt(c_product(sys.v1, sys.v1));
    sys.n2 = std::sqrt(c_product(sys.v2, sys.v2));
    return sys;
}

double critical_lambda(const ModelParams& params, double lo, double hi, int grid) {
    require_finite(params, "critical_lambda");
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
        throw InvalidInput("critical_lambda: need finite lo < hi");
    }
    if (grid < 3) {
        throw InvalidInput("critical_lambda: grid must be >= 3");
    }

    const auto pole_height = [&](double x) {
        const Spectrum s = eigenvalues(params, Complex(x, 0.0));
        return std::max(s.e1.imag(), s.e2.imag());
    };

    int best = 0;
    double fbest = -std::numeric_limits<double>::infinity();
    const double step = (hi - lo) / (grid - 1);
    for (int i = 0; i < grid; ++i) {
        const double x = (i == grid - 1) ? hi : lo + step * i;
        const double fx = pole_height(x);
        if (fx > fbest) {
            fbest = fx;
            best = i;
        }
    }

    double a = lo + step * std::max(0, best - 1);
    double b = std::min(hi, lo + step * (best + 1));

    // golden-section ascent on the bracketing cell pair
    constexpr double kGolden = 0.6180339887498949;
    double c = b - kGolden * (b - a);
    double d = a + kGolden * (b - a);
    double fc = pole_height(c);
    double fd = pole_height(d);
    while (b - a > 1e-6) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kGolden * (b - a);
            fc = pole_height(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kGolden * (b - a);
            fd = pole_height(d);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace epdyn
