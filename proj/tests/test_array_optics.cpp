#include "doctest.h"

#include <cmath>

#include "coop/array_optics.hpp"
#include "coop/errors.hpp"
#include "oracles.hpp"

using namespace coop;

namespace {

// Gaussian-windowed real-space sum of exp(ikr)/r over a (2h+1)^2 patch.
cplx windowed_patch_sum(double z, double k, double a, int h, double w) {
    cplx s = 0.0;
    for (int i = -h; i <= h; ++i)
        for (int j = -h; j <= h; ++j) {
            const double rho2 = a * a * (double(i) * i + double(j) * j);
            const double r = std::sqrt(rho2 + z * z);
            s += std::exp(-rho2 / (w * w)) * std::exp(cplx(0.0, k * r)) / r;
        }
    return s;
}

} // namespace

TEST_CASE("lattice sum: single propagating order below the wavelength") {
    const double a = 0.8, k = kK0;
    for (double z : {5.0, -6.0, 8.0}) {
        const cplx ls = lattice_sum(z, k, a, 20);
        const cplx zero = (kTwoPi * cplx(0, 1) / (a * a)) * std::exp(cplx(0, k * std::abs(z))) / k;
        CHECK(std::abs(ls - zero) <= 1e-6 * std::abs(zero));
    }
}

TEST_CASE("lattice sum agrees with a 400x400 real-space patch") {
    // three window widths and Richardson extrapolation in 1/w^2 remove the window blur
    const double a = 0.8, k = kK0, z = 4.0;
    const double ws[3] = {20 * a, 20 * std::sqrt(2.0) * a, 40 * a};
    cplx v[3];
    for (int i = 0; i < 3; ++i) v[i] = windowed_patch_sum(z, k, a, 200, ws[i]);
    Eigen::Matrix3d A;
    for (int i = 0; i < 3; ++i) {
        const double h = 1.0 / (ws[i] * ws[i]);
        A(i, 0) = 1.0;
        A(i, 1) = h;
        A(i, 2) = h * h;
    }
    Eigen::Vector3d re, im;
    for (int i = 0; i < 3; ++i) {
        re(i) = v[i].real();
        im(i) = v[i].imag();
    }
    const cplx extrap(A.lu().solve(re)(0), A.lu().solve(im)(0));
    const cplx ls = lattice_sum(z, k, a, 20);
    CHECK(std::abs(extrap - ls) <= 1e-6 * std::abs(ls));
}

TEST_CASE("evanescent part of the lattice sum decays away from the plane") {
    const double a = 0.8, k = 1e-3;
    auto evanescent = [&](double z) {
        const cplx zero = (kTwoPi * cplx(0, 1) / (a * a)) * std::exp(cplx(0, k * z)) / k;
        return std::abs(lattice_sum(z, k, a, 20) - zero);
    };
    double prev = evanescent(0.1);
    for (double z : {0.3, 0.6, 1.2}) {
        const double cur = evanescent(z);
        CHECK(cur < prev);
        prev = cur;
    }
}

TEST_CASE("lattice sum converges in the cutoff") {
    for (double a : {0.3, 0.8, 1.7}) {
        for (double z : {a, 2 * a}) {
            const cplx s1 = lattice_sum(z, kK0, a, 12);
            const cplx s2 = lattice_sum(z, kK0, a, 18);
            CHECK(std::abs(s1 - s2) < 1e-8 * std::abs(s2));
        }
    }
    CHECK_THROWS_AS(lattice_sum(0.0, kK0, 0.8, 10), Error);
    // a = lambda makes the (1,0) order exactly grazing
    CHECK_THROWS_AS(lattice_sum(1.0, kK0, 1.0, 10), Error);
}

TEST_CASE("effective rates") {
    auto one = build_square_array(1, 1, 0.8, axis_x());
    auto r1 = effective_rates(one, 1, 1);
    CHECK(r1.omega_eff == 0.0);
    CHECK(r1.gamma_eff == 1.0);

    // row sums of the center emitter against an independent kernel evaluation
    const std::size_t n = 9;
    const double a = 0.55;
    auto arr = build_square_array(n, n, a, axis_x());
    auto r = effective_rates(arr, n, n);
    double om = 0, ga = 1;
    const Eigen::Vector3d c0 = arr.positions[4 * n + 4];
    for (const auto& p : arr.positions) {
        const Eigen::Vector3d d = p - c0;
        if (d.norm() == 0) continue;
        const double kr = kK0 * d.norm(), ct = d.x() / d.norm();
        om += -1.5 * oracle::g_operator(kr, ct);
        ga += 1.5 * oracle::f_operator(kr, ct);
    }
    CHECK(r.omega_eff == doctest::Approx(om).epsilon(1e-10));
    CHECK(r.gamma_eff == doctest::Approx(ga).epsilon(1e-10));
    CHECK(gamma_eff_approx(0.8) == doctest::Approx(1.0 / 2.6808).epsilon(1e-4));
}

TEST_CASE("effective rates: sign change of the shift at the diffraction maximum of the decay") {
    std::vector<double> as, oms, gas;
    for (double a = 0.90; a <= 1.15; a += 0.005) {
        auto arr = build_square_array(20, 20, a, axis_x());
        auto r = effective_rates(arr, 20, 20);
        as.push_back(a);
        oms.push_back(r.omega_eff);
        gas.push_back(r.gamma_eff);
    }
    std::size_t imax = 0;
    for (std::size_t i = 0; i < gas.size(); ++i)
        if (gas[i] > gas[imax]) imax = i;
    REQUIRE(imax > 0);
    REQUIRE(imax + 1 < gas.size());
    bool sign_change = false;
    for (std::size_t i = 0; i + 1 < as.size(); ++i)
        if (std::abs(as[i] - as[imax]) <= 0.05 && oms[i] * oms[i + 1] < 0) sign_change = true;
    CHECK(sign_change);
}

TEST_CASE("steady dipoles") {
    auto arr = build_square_array(6, 6, 0.4, axis_x());
    auto c = coupling_matrices(arr);
    auto f = drive_pattern(6, 6, DrivePattern::Uniform);
    const double eta = 0.3, delta = 0.2;
    auto beta = steady_dipoles(c, f, eta, delta);
    Eigen::MatrixXcd sys = cplx(0, 1) * c.omega.cast<cplx>() + c.gamma.cast<cplx>();
    sys.diagonal().array() -= cplx(0, delta);
    CHECK((sys * beta + cplx(0, eta) * f).norm() < 1e-10 * eta * f.norm());
    CHECK(steady_dipoles(c, f, 0.0, delta).norm() == 0.0);

    auto cb = drive_pattern(6, 6, DrivePattern::Checkerboard);
    auto bcb = steady_dipoles(c, cb, eta, delta);
    CHECK(std::abs(f.dot(bcb)) < 1e-6 * bcb.norm());
}

TEST_CASE("uniform drive on a translation-invariant ring gives equal amplitudes") {
    auto ring = build_ring(10, 0.3, false, axis_z());
    auto c = coupling_matrices(ring);
    const double eta = 0.1, delta = -0.4;
    auto beta = steady_dipoles(c, Eigen::VectorXcd::Ones(10), eta, delta);
    auto r = effective_rates(c, {0});
    const cplx expected = eta / (cplx(delta - r.omega_eff, 0.0) + cplx(0, r.gamma_eff));
    for (Eigen::Index j = 0; j < 10; ++j) CHECK(std::abs(beta(j) - expected) < 1e-10);
}

TEST_CASE("reflectivity") {
    const double om = 0.1, ga = 0.37;
    auto perfect = reflectivity(om, ga, 0.0, om);
    CHECK(std::abs(perfect.r + 1.0) < 1e-14);
    CHECK(std::abs(perfect.t) < 1e-14);
    auto far = reflectivity(om, ga, 0.0, 1e9);
    CHECK(std::abs(far.r) < 1e-8);
    for (double wl = -3; wl <= 3; wl += 0.1) {
        auto x = reflectivity(om, ga, 0.0, wl);
        CHECK(std::abs(x.t - (1.0 + x.r)) < 1e-12);
        CHECK(std::norm(x.r) + std::norm(x.t) == doctest::Approx(1.0).epsilon(1e-12));
        auto lossy = reflectivity(om, ga, 0.0, wl, 0.05);
        CHECK(std::norm(lossy.r) + std::norm(lossy.t) <= 1.0 + 1e-9);
    }
}

TEST_CASE("intensity profile") {
    auto arr = build_square_array(3, 3, 0.8, axis_x());
    std::vector<Eigen::Vector3d> pts{{0.3, 0.2, 1.0}, {1.0, 1.0, -2.0}, {5.0, 0.0, 3.0}};
    auto flat = intensity_profile(arr, Eigen::VectorXcd::Zero(9), 0.7, kK0, pts);
    for (double v : flat) CHECK(v == doctest::Approx(0.49));
    CHECK_THROWS_AS(intensity_profile(arr, Eigen::VectorXcd::Zero(9), 1.0, kK0, {Eigen::Vector3d(0.8, 0, 0)}), Error);

    auto single = build_square_array(1, 1, 0.8, axis_x());
    Eigen::VectorXcd b(1);
    b(0) = cplx(0.2, -0.1);
    for (double z : {2.0, 5.0, 17.0}) {
        const cplx e = dipole_field(single, b, kK0, {0, 0, z});
        CHECK(std::abs(e) * kK0 * z == doctest::Approx(1.5 * std::abs(b(0))).epsilon(1e-12));
    }
}

TEST_CASE("phased illumination scaling") {
    auto cb = phased_subradiance(0.2, {2, 4, 6, 8, 10, 12}, DrivePattern::Checkerboard);
    CHECK(cb.exponent_vs_side == doctest::Approx(-5.5).epsilon(1.5 / 5.5));
    CHECK(cb.exponent_vs_n == doctest::Approx(0.5 * cb.exponent_vs_side).epsilon(1e-12));
    for (std::size_t i = 1; i < cb.rates.size(); ++i) CHECK(cb.rates[i] < cb.rates[i - 1]);

    auto sparse = phased_subradiance(5.0, {2, 4, 6, 8}, DrivePattern::Checkerboard);
    CHECK(std::abs(sparse.exponent_vs_n) < 0.1);

    CHECK_THROWS_AS(phased_subradiance(0.2, {2, 3, 4}, DrivePattern::Checkerboard), Error);
    CHECK_THROWS_AS(phased_subradiance(0.2, {2, 4}, DrivePattern::Checkerboard), Error);
}

TEST_CASE("uniform pattern addresses the bright mode") {
    const std::size_t n = 12;
    const double a = 0.5;
    auto arr = build_square_array(n, n, a, axis_x());
    auto c = coupling_matrices(arr);
    const double bright = addressed_mode_decay(c, drive_pattern(n, n, DrivePattern::Uniform));
    const double geff = effective_rates(arr, n, n, true).gamma_eff;
    MESSAGE("bright mode decay " << bright << " center gamma_eff " << geff);
    CHECK(bright == doctest::Approx(geff).epsilon(0.15));
}
