#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "epdyn/model.hpp"
#include "epdyn/spectral.hpp"
#include "testutil.hpp"

using namespace epdyn;
using testutil::paper_params;

TEST_CASE("discriminant coefficient closed form") {
    ModelParams p = paper_params();
    SUBCASE("vanishes for delta = 0 and equal perturbations") {
        p.delta = 0.0;
        p.epsilon1 = p.epsilon2 = Complex(0.3, 0.0);
        CHECK(std::abs(discriminant_coefficient(p)) == 0.0);
    }
    SUBCASE("unit value for delta = 1/2 with equal perturbations") {
        p.delta = 0.5;
        p.epsilon1 = p.epsilon2 = Complex(-0.1, 0.0);
        CHECK(rel_err(discriminant_coefficient(p), Complex(1.0, 0.0)) < 1e-15);
    }
    SUBCASE("reference parameter value") {
        CHECK(rel_err(discriminant_coefficient(p), Complex(0.63946979, 0.00176)) < 1e-14);
    }
}

TEST_CASE("eigenvalues decouple at delta = 0") {
    ModelParams p = paper_params();
    p.delta = 0.0;
    const Complex lam(0.8, 0.0);
    const Spectrum s = eigenvalues(p, lam);
    const Complex a = p.omega1 + lam * p.epsilon1;
    const Complex b = p.omega2 + lam * p.epsilon2;
    const double match_direct = std::abs(s.e1 - a) + std::abs(s.e2 - b);
    const double match_swapped = std::abs(s.e1 - b) + std::abs(s.e2 - a);
    CHECK(std::min(match_direct, match_swapped) < 1e-14);
}

TEST_CASE("eigenvalues at lambda = 0 are the bare energies") {
    const Spectrum s = eigenvalues(paper_params(), 0.0);
    const double match = std::min(std::abs(s.e1 - Complex(1.55, -0.007)),
                                  std::abs(s.e1 - Complex(1.1, -0.007)));
    CHECK(match < 1e-15);
    CHECK(rel_err(s.e1 + s.e2, Complex(2.65, -0.014)) < 1e-15);
}

TEST_CASE("eigenvalues at lambda = 0.53 match the independent quadratic solve") {
    // frozen from a quadratic-formula solve of det(H - E) = 0
    const Spectrum s = eigenvalues(paper_params(), 0.53);
    CHECK(rel_err(s.e1, Complex(1.3135163204423055, -0.0066965099492536416)) < 1e-13);
    CHECK(rel_err(s.e2, Complex(1.3364836795576949, -0.0073564900507463579)) < 1e-13);
    const double de = std::abs(s.e1.real() - s.e2.real());
    CHECK(de == doctest::Approx(0.025).epsilon(0.15));  // beat scale of the reference runs
    CHECK(rel_err(s.e2 - s.e1, s.d) < 1e-14);
    CHECK(rel_err(s.e1 + s.e2, 2.0 * s.mean) < 1e-14);
}

TEST_CASE("eigenvalue pair matches trace and determinant") {
    testutil::ParamGen gen(707);
    for (int i = 0; i < 1000; ++i) {
        const ModelParams p = gen.params();
        const Complex lam = gen.lambda();
        const Spectrum s = eigenvalues(p, lam);
        const Matrix2 h = hamiltonian(p, lam);
        CHECK(rel_err(s.e1 + s.e2, h.trace()) < 1e-12);
        CHECK(rel_err(s.e1 * s.e2, h.det(), 1e-8) < 1e-12);
    }
}

TEST_CASE("exceptional points collapse to zero for equal bare energies") {
    ModelParams p = paper_params();
    p.omega2 = p.omega1;
    const EPPair eps = exceptional_points(p);
    CHECK(std::abs(eps.ep1) == 0.0);
    CHECK(std::abs(eps.ep2) == 0.0);
}

TEST_CASE("exceptional points of the reference parameters") {
    // frozen from an independent root solve of the discriminant polynomial
    const EPPair eps = exceptional_points(paper_params());
    CHECK(rel_err(eps.ep1, Complex(0.57914941841323453, -0.00081990265155026758)) < 1e-12);
    CHECK(rel_err(eps.ep2, Complex(0.5467790961221114, -0.00073081045654231158)) < 1e-12);
    CHECK(eps.ep1.real() > 0.53);
    CHECK(eps.ep1.real() < 0.59);
    CHECK(eps.ep2.real() > 0.53);
    CHECK(eps.ep2.real() < 0.59);
}

TEST_CASE("flipping the coupling sign swaps the exceptional points") {
    ModelParams p = paper_params();
    const EPPair eps = exceptional_points(p);
    p.delta = -p.delta;
    const EPPair swapped = exceptional_points(p);
    CHECK(rel_err(swapped.ep1, eps.ep2) < 1e-15);
    CHECK(rel_err(swapped.ep2, eps.ep1) < 1e-15);
}

TEST_CASE("exceptional points refuse degenerate parameters") {
    ModelParams p = paper_params();
    p.delta = 0.0;
    p.epsilon1 = p.epsilon2 = Complex(0.25, 0.0);
    CHECK_THROWS_AS(exceptional_points(p), DegenerateParameters);
}

TEST_CASE("discriminant factorizes through the exceptional points") {
    testutil::ParamGen gen(808);
    for (int i = 0; i < 1000; ++i) {
        const ModelParams p = gen.params_with_cc();
        const EPPair eps = exceptional_points(p);
        for (int j = 0; j < 20; ++j) {
            const Complex lam = gen.lambda();
            const Complex factored = eps.cc * (lam - eps.ep1) * (lam - eps.ep2);
            CHECK(rel_err(factored, discriminant(p, lam), 1e-6) < 1e-12);
        }
    }
}

TEST_CASE("c_product is the bilinear form without conjugation") {
    CHECK(std::abs(c_product({Complex(1, 0), Complex(0, 1)}, {Complex(1, 0), Complex(0, 1)})) ==
          0.0);
    CHECK(std::abs(c_product({Complex(1, 0), Complex(0, 0)}, {Complex(0, 0), Complex(1, 0)})) ==
          0.0);
    const StateVector u{Complex(0.3, 0.7), Complex(-0.2, 0.4)};
    const StateVector v{Complex(-1.1, 0.6), Complex(0.9, -0.8)};
    CHECK(rel_err(c_product(u, v), u.z1 * v.z1 + u.z2 * v.z2) < 1e-16);
}

TEST_CASE("eigenvectors solve the rotated eigenproblem") {
    const ModelParams p = paper_params();
    const Complex lam(0.53, 0.0);
    const EigenSystem sys = eigenvectors(p, lam);
    const Matrix2 h = rotated_hamiltonian(p, lam);
    const double hnorm = h.frobenius_norm();

    const StateVector r1 = h.apply(sys.v1);
    const StateVector want1{sys.spectrum.e1 * sys.v1.z1, sys.spectrum.e1 * sys.v1.z2};
    CHECK(std::abs(r1.z1 - want1.z1) + std::abs(r1.z2 - want1.z2) < 1e-10 * hnorm * norm(sys.v1));

    const StateVector r2 = h.apply(sys.v2);
    const StateVector want2{sys.spectrum.e2 * sys.v2.z1, sys.spectrum.e2 * sys.v2.z2};
    CHECK(std::abs(r2.z1 - want2.z1) + std::abs(r2.z2 - want2.z2) < 1e-10 * hnorm * norm(sys.v2));
}

TEST_CASE("eigenvectors are c-orthogonal away from the exceptional points") {
    testutil::ParamGen gen(909);
    int checked = 0;
    while (checked < 500) {
        const ModelParams p = gen.params_with_cc();
        const Complex lam = gen.lambda();
        EigenSystem sys;
        try {
            sys = eigenvectors(p, lam);
        } catch (const DefectiveSpectrum&) {
            continue;
        }
        if (std::abs(sys.spectrum.d) <= 1e-6 * std::abs(sys.spectrum.mean)) continue;
        ++checked;
        const double scale = norm(sys.v1) * norm(sys.v2);
        CHECK(std::abs(c_product(sys.v1, sys.v2)) < 1e-10 * scale);

        // eigen-residual against the rotated operator for both vectors
        const Matrix2 h = rotated_hamiltonian(p, lam);
        const StateVector r1 = h.apply(sys.v1);
        CHECK(std::abs(r1.z1 - sys.spectrum.e1 * sys.v1.z1) +
                  std::abs(r1.z2 - sys.spectrum.e1 * sys.v1.z2) <
              1e-10 * h.frobenius_norm() * norm(sys.v1));
    }
}

TEST_CASE("eigenvector closed forms and the coupling-flip map") {
    const ModelParams p = paper_params();
    const Complex lam(0.55, 0.0);
    const EigenSystem sys = eigenvectors(p, lam);
    const Complex dl = p.omega1 - p.omega2 + lam * (p.epsilon1 - p.epsilon2);
    const Complex two_ld = 2.0 * lam * p.delta;
    CHECK(rel_err(sys.v1.z1, sys.spectrum.d + two_ld) < 1e-14);
    CHECK(rel_err(sys.v1.z2, -dl) < 1e-14);
    CHECK(rel_err(sys.v2.z1, sys.spectrum.d - two_ld) < 1e-14);
    CHECK(rel_err(sys.v2.z2, dl) < 1e-14);

    // under delta -> -delta the c-norms swap exactly and the rays map through
    // the component swap sigma_x (the rotated operators are sigma_x conjugate)
    ModelParams q = p;
    q.delta = -q.delta;
    const EigenSystem flipped = eigenvectors(q, lam);
    CHECK(rel_err(flipped.n1 * flipped.n1, sys.n2 * sys.n2) < 1e-12);
    CHECK(rel_err(flipped.n2 * flipped.n2, sys.n1 * sys.n1) < 1e-12);
    const StateVector swapped1{flipped.v1.z2, flipped.v1.z1};
    const Complex cross1 = swapped1.z1 * sys.v1.z2 - swapped1.z2 * sys.v1.z1;
    CHECK(std::abs(cross1) < 1e-12 * norm(swapped1) * norm(sys.v1));
    const StateVector swapped2{flipped.v2.z2, flipped.v2.z1};
    const Complex cross2 = swapped2.z1 * sys.v2.z2 - swapped2.z2 * sys.v2.z1;
    CHECK(std::abs(cross2) < 1e-12 * norm(swapped2) * norm(sys.v2));
}

TEST_CASE("delta = 0 eigenvectors are the diagonal channels rotated") {
    ModelParams p = paper_params();
    p.delta = 0.0;
    const Complex lam(0.3, 0.0);
    const EigenSystem sys = eigenvectors(p, lam);
    // both are (1, -1)- or (1, 1)-type directions with zero cross product
    CHECK(std::abs(c_product(sys.v1, sys.v2)) < 1e-12 * norm(sys.v1) * norm(sys.v2));
    CHECK(rel_err(sys.v1.z1, -sys.v1.z2) < 1e-12);
    CHECK(rel_err(sys.v2.z1, sys.v2.z2) < 1e-12);
}

TEST_CASE("eigenvectors refuse couplings at an exceptional point") {
    const EPPair eps = exceptional_points(paper_params());
    CHECK_THROWS_AS(eigenvectors(paper_params(), eps.ep1), DefectiveSpectrum);
    CHECK_THROWS_AS(eigenvectors(paper_params(), eps.ep2), DefectiveSpectrum);
}

TEST_CASE("c-norm collapse toward EP1") {
    const ModelParams p = paper_params();
    const EPPair eps = exceptional_points(p);

    SUBCASE("frozen magnitudes on the ray ep1 * (1 + 1e-4 k)") {
        const double expected[] = {0.005412843128, 0.006451091222, 0.007154875144,
                                   0.007705116964};
        for (int k = 1; k <= 4; ++k) {
            const Complex lam = eps.ep1 * (1.0 + 1e-4 * k);
            const EigenSystem sys = eigenvectors(p, lam);
            CHECK(std::abs(std::abs(sys.n1) - expected[k - 1]) < 1e-9);
        }
    }

    SUBCASE("log-log slope is the quarter power") {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int n = 0;
        for (double r = 1e-6; r <= 1.0001e-3; r *= 1.778279410038923) {
            const Complex lam = eps.ep1 + r;
            const EigenSystem sys = eigenvectors(p, lam);
            const double x = std::log(r);
            const double y = std::log(std::abs(sys.n1));
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
            ++n;
        }
        const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        CHECK(slope == doctest::Approx(0.25).epsilon(0.08));
    }
}

TEST_CASE("critical coupling search") {
    const ModelParams p = paper_params();

    SUBCASE("reference window") {
        const double lc = critical_lambda(p, 0.53, 0.59, 601);
        CHECK(lc == doctest::Approx(0.563).epsilon(0.002));
        CHECK(std::abs(lc - 0.562965430018) < 1e-5);
    }

    SUBCASE("window excluding the peak returns the nearer endpoint") {
        const double lc = critical_lambda(p, 0.53, 0.55, 601);
        CHECK(std::abs(lc - 0.55) < 2e-6);
    }

    SUBCASE("affine imaginary parts peak at an endpoint") {
        ModelParams q = paper_params();
        q.delta = 0.0;
        q.epsilon1 = Complex(-0.4, 0.01);  // Im e1 grows with lambda
        const double lc = critical_lambda(q, 0.1, 0.9, 101);
        CHECK(std::abs(lc - 0.9) < 2e-6);
    }

    SUBCASE("input validation") {
        CHECK_THROWS_AS(critical_lambda(p, 0.6, 0.5, 100), InvalidInput);
        CHECK_THROWS_AS(critical_lambda(p, 0.5, 0.6, 2), InvalidInput);
    }
}
