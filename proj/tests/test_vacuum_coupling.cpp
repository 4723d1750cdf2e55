#include "doctest.h"

#include <cmath>
#include <random>

#include "coop/errors.hpp"
#include "coop/vacuum_coupling.hpp"
#include "oracles.hpp"

using namespace coop;

TEST_CASE("F small-argument limit") {
    for (double c : {0.0, 0.3, 1.0}) {
        CHECK(f_kernel(0.0, c) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
        CHECK(f_kernel(1e-9, c) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
        // continuity across the series switch
        CHECK(f_kernel(0.99e-4, c) == doctest::Approx(f_kernel(1.01e-4, c)).epsilon(1e-9));
    }
    CHECK_THROWS_AS(f_kernel(-1.0, 0.0), Error);
}

TEST_CASE("F at one wavelength, perpendicular dipoles") {
    const double ref = oracle::f_quadrature(2 * oracle::pi, 0.0);
    CHECK(ref == doctest::Approx(1.0 / (4 * oracle::pi * oracle::pi)).epsilon(1e-12));
    CHECK(f_kernel(2 * kPi, 0.0) == doctest::Approx(ref).epsilon(1e-12));
    CHECK(f_kernel(2 * kPi, 0.0) == doctest::Approx(0.025330).epsilon(1e-4));
}

TEST_CASE("F far field bound") {
    for (double c : {0.0, 0.5, 1.0}) CHECK(std::abs(f_kernel(1e3, c)) < 3e-3);
}

TEST_CASE("G closed form checks") {
    const double x = 2 * oracle::pi;
    const double ref = (double)oracle::g_closed_long(x, 0.0L);
    CHECK(g_kernel(x, 0.0) == doctest::Approx(ref).epsilon(1e-13));
    CHECK(g_kernel(x, 0.0) == doctest::Approx(1 / (2 * oracle::pi) - 1 / (8 * std::pow(oracle::pi, 3))).epsilon(1e-13));
    CHECK(g_kernel(x, 0.0) == doctest::Approx(0.155121).epsilon(1e-5));
    CHECK(std::abs(g_kernel(1e6, 0.0)) < 1e-5);
    const double magic = 1.0 / std::sqrt(3.0);
    for (double kr : {0.3, 1.7, 9.0}) CHECK(g_kernel(kr, magic) == doctest::Approx((2.0 / 3.0) * std::cos(kr) / kr).epsilon(1e-12));
    CHECK_THROWS_AS(g_kernel(0.0, 0.0), Error);
}

TEST_CASE("kernels agree with quadrature and differential-operator oracles") {
    for (double c : {0.0, 1.0, 0.4}) {
        for (double kr = 0.1; kr <= 50.0; kr *= 1.37) {
            const double fq = oracle::f_quadrature(kr, c);
            const double fo = oracle::f_operator(kr, c);
            const double go = oracle::g_operator(kr, c);
            CHECK(oracle::rel_close(f_kernel(kr, c), fq, 1e-8, 1e-6));
            CHECK(oracle::rel_close(f_kernel(kr, c), fo, 1e-8, 1e-6));
            CHECK(oracle::rel_close(g_kernel(kr, c), go, 1e-8, 1e-6));
        }
    }
}

TEST_CASE("kernel parity in cos theta") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> ukr(0.01, 60.0), uc(-1.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        double kr = ukr(rng), c = uc(rng);
        CHECK(f_kernel(kr, c) == f_kernel(kr, -c));
        CHECK(g_kernel(kr, c) == g_kernel(kr, -c));
    }
}

TEST_CASE("coupling matrices basics") {
    auto one = build_chain(1, 1.0, axis_z(), 0.0, 1.0);
    auto m1 = coupling_matrices(one);
    CHECK(m1.omega(0, 0) == 0.0);
    CHECK(m1.gamma(0, 0) == 1.0);

    auto far = build_chain(2, 400.0, axis_z());
    auto mf = coupling_matrices(far);
    CHECK(std::abs(mf.omega(0, 1)) < 1e-2);
    CHECK(std::abs(mf.gamma(0, 1)) < 1e-2);

    // separation along x, dipole along z: theta = pi/2
    auto pair = build_chain(2, 1.0, axis_z(), 0.0, 1.0);
    auto mp = coupling_matrices(pair);
    CHECK(mp.gamma(0, 1) == doctest::Approx(3.0 / (8 * kPi * kPi)).epsilon(1e-12));
    CHECK(mp.omega(0, 1) == doctest::Approx(-1.5 * g_kernel(2 * kPi, 0.0)).epsilon(1e-12));
}

TEST_CASE("contact divergence is an error") {
    EmitterEnsemble e = build_chain(2, 1.0, axis_z());
    e.positions[1] = Eigen::Vector3d(1e-8, 0, 0);
    try {
        coupling_matrices(e);
        FAIL("expected divergence");
    } catch (const Error& err) {
        CHECK(err.kind() == ErrorKind::Divergence);
        CHECK(std::string(err.what()).find("0 and 1") != std::string::npos);
    }
}

TEST_CASE("Gamma positive semidefinite over geometries") {
    for (double a : {0.05, 0.1, 0.25, 0.5, 0.8, 1.3, 2.0}) {
        for (auto orient : {axis_x(), axis_z()}) {
            std::vector<EmitterEnsemble> shapes{build_chain(200, a, orient), build_ring(60, a, true, orient),
                                                build_square_array(14, 14, a, orient)};
            for (const auto& e : shapes) {
                auto m = coupling_matrices(e);
                CHECK((m.gamma - m.gamma.transpose()).cwiseAbs().maxCoeff() < 1e-12);
                CHECK((m.omega - m.omega.transpose()).cwiseAbs().maxCoeff() < 1e-12);
                CHECK(m.min_gamma_eigenvalue() >= -1e-10 * e.gamma);
                for (Eigen::Index i = 0; i < m.size(); ++i) CHECK(m.gamma(i, i) == e.gamma);
            }
        }
    }
}
