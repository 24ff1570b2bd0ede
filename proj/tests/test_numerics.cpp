#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "epdyn/numerics.hpp"
#include "testutil.hpp"

using namespace epdyn;

namespace {

Eigen::MatrixXcd random_matrix(testutil::ParamGen& gen, int n) {
    Eigen::MatrixXcd m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = gen.unit_box();
    return m;
}

}  // namespace

TEST_CASE("expm_apply on the zero generator is the identity") {
    Eigen::VectorXcd v(3);
    v << Complex(1.0, 2.0), Complex(-0.5, 0.25), Complex(0.0, -1.0);
    const Eigen::VectorXcd out = expm_apply(Eigen::MatrixXcd::Zero(3, 3), v, 12.5);
    CHECK((out - v).norm() < 1e-15);
}

TEST_CASE("expm_apply on a diagonal generator scales component-wise") {
    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(2, 2);
    d(0, 0) = Complex(0.1, -2.0);
    d(1, 1) = Complex(-0.3, 1.5);
    Eigen::VectorXcd v(2);
    v << Complex(0.7, 0.1), Complex(-0.4, 0.9);
    const double t = 7.0;
    const Eigen::VectorXcd out = expm_apply(d, v, t);
    CHECK(rel_err(out(0), std::exp(d(0, 0) * t) * v(0)) < 1e-13);
    CHECK(rel_err(out(1), std::exp(d(1, 1) * t) * v(1)) < 1e-13);
}

TEST_CASE("expm_apply on a nilpotent generator terminates the series") {
    Eigen::MatrixXcd n = Eigen::MatrixXcd::Zero(2, 2);
    n(0, 1) = 1.0;
    Eigen::VectorXcd v(2);
    v << Complex(0.2, -0.4), Complex(1.0, 0.5);
    const double t = 3.75;
    const Eigen::VectorXcd out = expm_apply(n, v, t);
    CHECK(rel_err(out(0), v(0) + t * v(1)) < 1e-14);
    CHECK(rel_err(out(1), v(1)) < 1e-15);
}

TEST_CASE("expm_apply reproduces a plane rotation") {
    Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(2, 2);
    g(0, 1) = -1.0;
    g(1, 0) = 1.0;
    Eigen::VectorXcd v(2);
    v << 1.0, 0.0;
    const double theta = 2.1;
    const Eigen::VectorXcd out = expm_apply(g, v, theta);
    CHECK(rel_err(out(0), Complex(std::cos(theta), 0.0)) < 1e-13);
    CHECK(rel_err(out(1), Complex(std::sin(theta), 0.0)) < 1e-13);
}

TEST_CASE("expm_apply semigroup property") {
    testutil::ParamGen gen(404);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + trial % 3;
        const Eigen::MatrixXcd o = random_matrix(gen, n);
        Eigen::VectorXcd v(n);
        for (int i = 0; i < n; ++i) v(i) = gen.unit_box();
        const double t1 = gen.uniform(0.0, 4.0);
        const double t2 = gen.uniform(0.0, 4.0);
        const Eigen::VectorXcd direct = expm_apply(o, v, t1 + t2);
        const Eigen::VectorXcd stepped = expm_apply(o, expm_apply(o, v, t1), t2);
        CHECK((direct - stepped).norm() < 1e-11 * direct.norm());
    }
}

TEST_CASE("expm_apply rejects dimension mismatch") {
    CHECK_THROWS_AS(expm_apply(Eigen::MatrixXcd::Zero(2, 3), Eigen::VectorXcd::Zero(3), 1.0),
                    DimensionMismatch);
    CHECK_THROWS_AS(expm_apply(Eigen::MatrixXcd::Zero(2, 2), Eigen::VectorXcd::Zero(3), 1.0),
                    DimensionMismatch);
}

TEST_CASE("sinc_c special values") {
    CHECK(sinc_c(Complex(0.0, 0.0)) == Complex(1.0, 0.0));
    CHECK(std::abs(sinc_c(Complex(3.14159265358979323846, 0.0))) < 1e-15);
    // frozen from an extended-precision evaluation
    const Complex tiny = sinc_c(Complex(1e-6, 1e-6));
    CHECK(rel_err(tiny, Complex(1.0, -3.333333333333333e-13)) < 1e-15);
}

TEST_CASE("sinc_c agrees with the direct quotient on the overlap region") {
    testutil::ParamGen gen(505);
    for (int i = 0; i < 500; ++i) {
        const double mag = std::pow(10.0, gen.uniform(-3.0, 1.0));
        const double arg = gen.uniform(0.0, 6.283185307179586);
        const Complex z = std::polar(mag, arg);
        CHECK(rel_err(sinc_c(z), std::sin(z) / z) < 1e-14);
    }
}

TEST_CASE("sqrt_continuous on a constant path") {
    const PathSamples roots = sqrt_continuous({4.0, 4.0, 4.0});
    for (const auto& r : roots) CHECK(rel_err(r, Complex(2.0, 0.0)) < 1e-15);
}

TEST_CASE("sqrt_continuous picks up the monodromy of a loop around zero") {
    PathSamples loop;
    const int n = 500;
    for (int i = 0; i <= n; ++i) {
        loop.push_back(std::polar(1.0, 6.283185307179586 * i / n));
    }
    const PathSamples roots = sqrt_continuous(loop);
    CHECK(rel_err(roots.front(), Complex(1.0, 0.0)) < 1e-14);
    CHECK(rel_err(roots.back(), Complex(-1.0, 0.0)) < 1e-12);
}

TEST_CASE("sqrt_continuous squares back to the input") {
    testutil::ParamGen gen(606);
    PathSamples path;
    Complex w = gen.unit_box();
    for (int i = 0; i < 200; ++i) {
        w += 0.05 * gen.unit_box();
        path.push_back(w);
    }
    const PathSamples roots = sqrt_continuous(path);
    for (std::size_t i = 0; i < path.size(); ++i) {
        CHECK(rel_err(roots[i] * roots[i], path[i], 1e-14) < 1e-15);
    }
}

TEST_CASE("sqrt_continuous flags an ambiguous step with its index") {
    // sqrt(1) = 1 and sqrt(-1) = i are exactly perpendicular
    try {
        sqrt_continuous({Complex(1.0, 0.0), Complex(-1.0, 0.0)});
        FAIL("expected StepTooCoarse");
    } catch (const StepTooCoarse& e) {
        CHECK(e.index == 1);
    }
}

TEST_CASE("sqrt_continuous rejects empty and non-finite paths") {
    CHECK_THROWS_AS(sqrt_continuous({}), InvalidInput);
    CHECK_THROWS_AS(sqrt_continuous({Complex(std::nan(""), 0.0)}), InvalidInput);
}
