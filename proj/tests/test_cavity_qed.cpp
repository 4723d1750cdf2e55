#include "doctest.h"

#include <cmath>
#include <random>

#include "coop/cavity_qed.hpp"
#include "coop/collective_modes.hpp"
#include "coop/errors.hpp"
#include "coop/geometry.hpp"
#include "oracles.hpp"

using namespace coop;

namespace {

const cplx I1{0.0, 1.0};

// steady state of the mean-field amplitude equations, laser frame, returns kappa alpha / eta
cplx direct_transmission(const CavitySystem& s, double wl) {
    const Eigen::Index n = Eigen::Index(s.g.size());
    Eigen::MatrixXcd sys = Eigen::MatrixXcd::Zero(n + 1, n + 1);
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(n + 1);
    const double eta = 1.0;
    sys(0, 0) = -(s.kappa() + I1 * (s.omega_c - wl));
    for (Eigen::Index j = 0; j < n; ++j) {
        const cplx g = s.g[std::size_t(j)];
        const double wj = s.omega0 + (s.detuning.empty() ? 0.0 : s.detuning[std::size_t(j)]);
        sys(0, j + 1) = -I1 * std::conj(g);
        sys(j + 1, 0) = -I1 * g;
        sys(j + 1, j + 1) = -I1 * (wj - wl);
        for (Eigen::Index k = 0; k < n; ++k)
            sys(j + 1, k + 1) -= I1 * s.coupling->omega(j, k) + s.coupling->gamma(j, k);
    }
    rhs(0) = -eta;
    const Eigen::VectorXcd x = sys.partialPivLu().solve(rhs);
    return s.kappa() * x(0) / eta;
}

Eigen::MatrixXcd random_stable(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> nd(0.0, 1.0);
    Eigen::MatrixXcd a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = cplx(nd(rng), nd(rng));
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(a, false);
    const double shift = es.eigenvalues().real().maxCoeff() + 0.5;
    a.diagonal().array() -= shift;
    return a;
}

} // namespace

TEST_CASE("empty cavity is a Lorentzian of width kappa") {
    auto s = make_cavity({}, 2.0, 0.3);
    CHECK(std::abs(cavity_transmission(s, 0.3)) == doctest::Approx(1.0).epsilon(1e-15));
    for (double wl = -5; wl <= 5; wl += 0.25) {
        const double t2 = std::norm(cavity_transmission(s, wl));
        CHECK(t2 == doctest::Approx(4.0 / (4.0 + (wl - 0.3) * (wl - 0.3))).epsilon(1e-13));
    }
}

TEST_CASE("transmission matches a direct steady solve of the amplitude equations") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (std::size_t n : {1u, 3u, 8u, 20u}) {
        auto chain = build_chain(n, 0.17, Eigen::Vector3d(0.3, 0.0, 1.0).normalized());
        std::vector<cplx> g(n);
        std::vector<double> det(n);
        for (std::size_t j = 0; j < n; ++j) {
            g[j] = cplx(u(rng), u(rng));
            det[j] = 0.5 * u(rng);
        }
        auto s = make_cavity(g, 3.0, 0.4);
        s.detuning = det;
        s.coupling = coupling_matrices(chain);
        for (double wl : {-2.0, -0.3, 0.0, 0.7, 4.0}) {
            const cplx t = cavity_transmission(s, wl);
            const cplx ref = direct_transmission(s, wl);
            CHECK(std::abs(t - ref) < 1e-10 * std::max(1.0, std::abs(ref)));
        }
    }
}

TEST_CASE("transmission without dipole-dipole coupling uses independent emitters") {
    std::vector<cplx> g{0.5, cplx(0.2, 0.3), -0.4};
    auto s = make_cavity(g, 1.5, -0.2, 0.7);
    s.detuning = {0.1, -0.4, 0.9};
    s.coupling = coupling_matrices(build_chain(3, 0.1, axis_z(), 0.0, 0.7));
    for (double wl : {-1.0, 0.0, 0.35}) {
        cplx den = 1.5 + I1 * (-0.2 - wl);
        for (std::size_t j = 0; j < 3; ++j) den += std::norm(g[j]) / (0.7 + I1 * (s.detuning[j] - wl));
        CHECK(std::abs(cavity_transmission(s, wl, false) - 1.5 / den) < 1e-14);
    }
}

TEST_CASE("single emitter: normal-mode peaks") {
    // |t|^2 maxima sit at Delta^2 = g sqrt(g^2 + 2 gamma (kappa + gamma)) - gamma^2 for omega_c = omega0
    const double kappa = 1.0, gamma = 0.1;
    for (double g : {1.0, 3.0, 20.0}) {
        auto s = make_cavity({g}, kappa, 0.0, gamma);
        const double d = std::sqrt(g * std::sqrt(g * g + 2 * gamma * (kappa + gamma)) - gamma * gamma);
        const double t0 = std::norm(cavity_transmission(s, d));
        for (double e : {-1e-3, 1e-3}) CHECK(std::norm(cavity_transmission(s, d + e)) < t0);
        CHECK(std::norm(cavity_transmission(s, -d)) == doctest::Approx(t0).epsilon(1e-12));
        if (g >= 20.0) {
            const double vrs = std::sqrt(g * g + (kappa - gamma) * (kappa - gamma) / 4);
            CHECK(d == doctest::Approx(vrs).epsilon(1e-3));
        }
    }
}

TEST_CASE("antisymmetric addressing of four emitters: dips at the addressed subradiant energies") {
    const double kappa = 20.0, g = 2.0;
    auto chain = build_chain(4, 0.08, axis_z());
    auto s = make_cavity(alternating_couplings(4, g), kappa);
    s.coupling = coupling_matrices(chain);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s.coupling->omega);
    const Eigen::VectorXcd gv = s.g_vector();
    int addressed = 0;
    for (int k = 0; k < 4; ++k) {
        const Eigen::VectorXd v = es.eigenvectors().col(k);
        if (std::abs(gv.dot(v.cast<cplx>())) < 1e-8) continue;
        ++addressed;
        // a local minimum of |t| within a small window around the mode energy
        const double e = es.eigenvalues()(k);
        double best = 1e300, at = 0;
        for (double wl = e - 0.5; wl <= e + 0.5; wl += 1e-4) {
            const double t2 = std::norm(cavity_transmission(s, wl));
            if (t2 < best) {
                best = t2;
                at = wl;
            }
        }
        CHECK(std::abs(at - e) < 0.2);
        auto empty = make_cavity({}, kappa);
        CHECK(best < 0.95 * std::norm(cavity_transmission(empty, at)));
    }
    CHECK(addressed == 2);
}

TEST_CASE("effective cooperativity") {
    const double kappa = 5.0, g = 0.4, gamma = 1.0;
    auto one = make_cavity({g}, kappa, 0.0, gamma);
    CHECK(effective_cooperativity(one, 0.0) == doctest::Approx(g * g / (kappa * gamma)).epsilon(1e-14));
    auto many = make_cavity(symmetric_couplings(6, g), kappa, 0.0, gamma);
    for (double d : {-2.0, 0.0, 1.3})
        CHECK(effective_cooperativity(many, d) == doctest::Approx(6 * g * g / (kappa * gamma)).epsilon(1e-13));

    // G appears in numerator and denominator only through ratios
    auto chain = build_chain(6, 0.1, axis_z());
    auto s1 = make_cavity(alternating_couplings(6, 0.2), 20.0);
    s1.coupling = coupling_matrices(chain);
    auto s2 = s1;
    s2.g = alternating_couplings(6, 0.4);
    const std::size_t grid = 4001;
    auto p1 = max_cooperativity(s1, -15, 15, grid);
    auto p2 = max_cooperativity(s2, -15, 15, grid);
    CHECK(std::abs(p1.delta - p2.delta) < 30.0 / double(grid - 1));
    CHECK(p2.value == doctest::Approx(4 * p1.value).epsilon(1e-6));
}

TEST_CASE("cooperativity scaling is superlinear for alternating couplings") {
    auto sym = cooperativity_scaling(0.1, 20.0, 0.2, {2, 4, 6, 8, 10}, false);
    auto alt = cooperativity_scaling(0.1, 20.0, 0.2, {2, 4, 6, 8, 10}, true);
    MESSAGE("symmetric slope " << sym.slope << " alternating slope " << alt.slope);
    CHECK(sym.slope < 1.0);
    CHECK(alt.slope > 3.0);
}

TEST_CASE("drift matrix") {
    auto s = make_cavity(std::vector<cplx>(3, 0.0), 2.0, 0.5);
    auto q = build_qle_system(s, 1.0);
    CHECK(q.size() == 8);
    CHECK(q.drift(0, 0) == cplx(-2.0, 0.5));
    CHECK(q.drift(1, 1) == cplx(-2.0, -0.5));
    CHECK(q.drift.block(0, 2, 2, 6).norm() == 0.0);
    CHECK(q.drift.block(2, 0, 6, 2).norm() == 0.0);

    // N = 1 polariton rates
    for (auto [g, dc, d] : {std::tuple{0.7, 0.0, 0.0}, {2.0, 0.3, -0.5}, {0.1, 1.0, 1.0}}) {
        auto one = make_cavity({g}, 1.0, 0.0, 0.3);
        one.omega0 = dc - d;
        auto q1 = build_qle_system(one, dc);
        CHECK(q1.size() == 4);
        const cplx p = cplx(-1.0, dc), e = cplx(-0.3, d);
        const cplx root = std::sqrt((p - e) * (p - e) / 4.0 - g * g);
        const cplx lp = (p + e) / 2.0 + root, lm = (p + e) / 2.0 - root;
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(q1.drift, false);
        for (cplx l : {lp, lm}) {
            double best = 1e300;
            for (Eigen::Index k = 0; k < 4; ++k) best = std::min(best, std::abs(es.eigenvalues()(k) - l));
            CHECK(best < 1e-12);
        }
    }

    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.05, 2.0);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 1 + trial % 6;
        auto chain = n >= 3 ? build_ring(n, u(rng) * 0.5, false, axis_z()) : build_chain(n, u(rng) * 0.5, axis_z());
        auto sys = make_cavity(symmetric_couplings(n, u(rng)), u(rng), u(rng) - 1.0);
        if (n > 1) sys.coupling = coupling_matrices(chain);
        auto qq = build_qle_system(sys, u(rng) - 1.0);
        CHECK(max_real_eigenvalue(qq.drift) < 0.0);
    }
}

TEST_CASE("Lyapunov covariance") {
    Eigen::MatrixXcd a = -Eigen::MatrixXcd::Identity(3, 3);
    Eigen::MatrixXcd d = 2.0 * Eigen::MatrixXcd::Identity(3, 3);
    CHECK((lyapunov_covariance(a, d) - Eigen::MatrixXcd::Identity(3, 3)).norm() < 1e-14);

    auto empty = make_cavity({}, 1.7, 0.2);
    auto q = build_qle_system(empty, -0.4);
    auto v = lyapunov_covariance(q.drift, q.diffusion);
    CHECK(std::abs(v(0, 1) - 1.0) < 1e-13);
    CHECK(std::abs(v(0, 0)) < 1e-14);
    CHECK(std::abs(v(1, 0)) < 1e-14);
    CHECK(std::abs(v(1, 1)) < 1e-14);

    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 2 + trial % 9;
        auto ar = random_stable(n, rng);
        Eigen::MatrixXcd b = random_stable(n, rng);
        Eigen::MatrixXcd dr = b * b.adjoint();
        auto vr = lyapunov_covariance(ar, dr);
        CHECK((ar * vr + vr * ar.transpose() + dr).norm() < 1e-10 * dr.norm());
    }
    Eigen::MatrixXcd unstable = Eigen::MatrixXcd::Identity(2, 2);
    CHECK_THROWS_AS(lyapunov_covariance(unstable, d.topLeftCorner(2, 2)), Error);
}

TEST_CASE("covariance equals the integrated intracavity spectrum") {
    auto one = make_cavity({0.8}, 1.0, 0.0, 0.4);
    one.omega0 = 0.3;
    auto q = build_qle_system(one, 0.1);
    auto v = lyapunov_covariance(q.drift, q.diffusion);
    // omega = tan(theta), composite Gauss-Legendre over theta in (-pi/2, pi/2)
    auto [x, wt] = oracle::gauss_legendre(24);
    const int panels = 200;
    const double h = kPi / panels;
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(4, 4);
    for (int p = 0; p < panels; ++p)
        for (std::size_t k = 0; k < x.size(); ++k) {
            const double th = -kPi / 2 + h * (p + 0.5 * (x[k] + 1));
            const double c = std::cos(th);
            acc += (0.5 * h * wt[k] / (c * c)) * intracavity_spectrum(q, std::tan(th));
        }
    CHECK((acc / (2 * kPi) - v).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("output spectrum") {
    const double kappa = 0.9, dc = 0.35;
    auto empty = make_cavity({}, kappa, 0.0);
    auto q = build_qle_system(empty, dc);
    for (double w : {-2.0, 0.0, 0.35, 1.1}) {
        const auto f = output_transfer(q, w);
        const cplx expected = 2 * kappa / (kappa + I1 * (w - dc)) - 1.0;
        CHECK(std::abs(f(0, 0) - expected) < 1e-13);
        CHECK(std::abs(std::abs(f(0, 0)) - 1.0) < 1e-13);
    }
    auto one = make_cavity({0.5}, 1.0, 0.0, 0.2);
    auto q1 = build_qle_system(one, 0.0);
    const auto far = output_spectrum(q1, 1e9);
    CHECK((far - q1.input_cor).norm() < 1e-8);

    // strong coupling: the intracavity photon spectrum has two peaks split by the normal-mode splitting
    const double g = 4.0, k = 1.0, ga = 0.2;
    auto strong = make_cavity({g}, k, 0.0, ga);
    auto qs = build_qle_system(strong, 0.0);
    double best = -1, at = 0;
    for (double w = 0.01; w < 8; w += 1e-3) {
        const double sv = intracavity_spectrum(qs, w)(0, 1).real();
        if (sv > best) {
            best = sv;
            at = w;
        }
    }
    CHECK(2 * at == doctest::Approx(2 * std::sqrt(g * g - (k - ga) * (k - ga) / 4)).epsilon(0.01));
    CHECK(intracavity_spectrum(qs, 0.0)(0, 1).real() < 0.1 * best);
}

TEST_CASE("Jaynes-Cummings g2 at weak drive") {
    JcParams free;
    free.g = 0.0;
    auto coh = jaynes_cummings_g2(free);
    CHECK(coh.g2 == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(coh.photons == doctest::Approx(free.eta * free.eta / (free.kappa * free.kappa)).epsilon(1e-6));

    // pure-state amplitudes up to two excitations
    for (double det : {0.0, 0.5, -1.2}) {
        JcParams p;
        p.cavity_detuning = det;
        auto r = jaynes_cummings_g2(p);
        const cplx hc = cplx(p.cavity_detuning, -p.kappa), he = cplx(p.emitter_detuning, -p.gamma);
        Eigen::Matrix2cd h1;
        h1 << hc, p.g, p.g, he;
        Eigen::Vector2cd c1 = h1.partialPivLu().solve(Eigen::Vector2cd(-p.eta, 0.0));
        Eigen::Matrix2cd h2; // |2g>, |1e>
        h2 << 2.0 * hc, std::sqrt(2.0) * p.g, std::sqrt(2.0) * p.g, hc + he;
        Eigen::Vector2cd c2 = h2.partialPivLu().solve(Eigen::Vector2cd(-p.eta * std::sqrt(2.0) * c1(0), -p.eta * c1(1)));
        const double g2 = 2.0 * std::norm(c2(0)) / std::pow(std::norm(c1(0)), 2);
        CHECK(r.g2 == doctest::Approx(g2).epsilon(2e-3));
    }
}

TEST_CASE("disorder: dark-state elimination") {
    auto zero = disorder_dark_rates(std::vector<double>(10, 0.0), 1.0);
    CHECK(zero.gamma_dark == 0.0);
    CHECK(zero.delta_dark == 0.0);

    // dense elimination as written with the Fourier dark modes
    std::mt19937_64 rng(5);
    std::normal_distribution<double> nd(0.0, 0.8);
    for (int n : {2, 5, 16}) {
        std::vector<double> d(n);
        for (auto& x : d) x = nd(rng);
        const double gamma = 0.3;
        auto delta_kk = [&](int k, int kp) {
            cplx s = 0;
            for (int j = 1; j <= n; ++j) s += d[std::size_t(j - 1)] * std::exp(-I1 * (2 * kPi * j * (k - kp) / n));
            return s / double(n);
        };
        Eigen::MatrixXcd a(n - 1, n - 1);
        for (int k = 1; k < n; ++k)
            for (int kp = 1; kp < n; ++kp) a(k - 1, kp - 1) = (k == kp) ? delta_kk(k, k) - I1 * gamma : delta_kk(k, kp);
        Eigen::VectorXcd left(n - 1), right(n - 1);
        for (int k = 1; k < n; ++k) {
            left(k - 1) = delta_kk(n, k);
            right(k - 1) = delta_kk(k, n);
        }
        const cplx x = left.transpose() * a.partialPivLu().solve(right);
        auto r = disorder_dark_rates(d, gamma);
        CHECK(std::abs(cplx(r.delta_dark, r.gamma_dark) - x) < 1e-12 * std::max(1.0, std::abs(x)));
    }
}

TEST_CASE("disorder: mesoscopic scaling laws") {
    const double gamma = 1.0;
    auto weak = sample_dark_rates(0.1, gamma, 2000, 40, 100);
    CHECK(weak.mean_gamma_dark == doctest::Approx(0.01 / gamma).epsilon(0.15));
    auto strong = sample_dark_rates(10.0, gamma, 2000, 40, 200);
    CHECK(strong.mean_gamma_dark == doctest::Approx(kPi * 10.0 / 4).epsilon(0.15));
    CHECK(mesoscopic_gamma_dark(0.1, gamma) == doctest::Approx(0.01));
    CHECK(mesoscopic_gamma_dark(10.0, gamma) == doctest::Approx(kPi * 2.5));
    double prev = 0;
    for (double w = 0.05; w < 5; w *= 1.1) {
        const double x = mesoscopic_gamma_dark(w, gamma);
        CHECK(x > prev);
        prev = x;
    }
}

TEST_CASE("disordered VRS") {
    const double kappa = 1.0, gamma = 0.1;
    CHECK(disordered_vrs(0.0, 2.0, kappa, gamma) ==
          doctest::Approx(2 * std::sqrt(4.0 - (gamma - kappa) * (gamma - kappa) / 4)));
    CHECK(disordered_vrs(0.0, 0.3, kappa, gamma) == 0.0);
    CHECK(disordered_vrs(0.0, 1e6, kappa, gamma) == doctest::Approx(2e6).epsilon(1e-10));
    CHECK(disordered_vrs(40.0, 1.0, kappa, gamma) == 0.0);
    CHECK(direct_vrs(std::vector<double>(50, 0.0), 2.0, kappa, gamma) ==
          doctest::Approx(disordered_vrs(0.0, 2.0, kappa, gamma)).epsilon(1e-10));
}

TEST_CASE("memory kernel") {
    CHECK(memory_kernel(-0.1, 2.0, 0.3, 0.0) == cplx(0.0));
    CHECK(std::abs(memory_kernel(0.0, 2.0, 0.3, 0.5) - 4.0) < 1e-15);
    for (auto [w, g] : {std::pair{1.0, 0.5}, {30.0, 0.2}}) {
        auto re = [&](double t) { return memory_kernel(t, w, g, 0.0).real(); };
        auto im = [&](double t) { return memory_kernel(t, w, g, 0.0).imag(); };
        // Gauss-Legendre on every half period of the sinc up to e^{-gamma t} ~ 1e-16
        auto [x, wt] = oracle::gauss_legendre(20);
        const double h = kPi / (2 * w), tmax = 37.0 / g;
        double ir = 0, ii = 0;
        for (double t0 = 0; t0 < tmax; t0 += h)
            for (std::size_t q = 0; q < x.size(); ++q) {
                const double t = t0 + 0.5 * h * (x[q] + 1);
                ir += 0.5 * h * wt[q] * re(t);
                ii += 0.5 * h * wt[q] * im(t);
            }
        CHECK(ir == doctest::Approx(0.5 * w * std::atan(2 * w / g)).epsilon(1e-7));
        CHECK(std::abs(ii) < 1e-8);
        if (w > 10 * g) CHECK(ir == doctest::Approx(kPi * w / 4).epsilon(0.01));
    }
}

TEST_CASE("laser thresholds and steady state") {
    const double g = 1.0, kappa = 0.1, gamma = 0.01, n = 200;
    auto th = laser_thresholds(g, kappa, gamma, n);
    REQUIRE(th.exists);
    for (double gp : {th.lower, th.upper}) {
        auto st = laser_steady({g, kappa, gamma, gp, n});
        CHECK(std::abs(st.photons) < 1e-9 * n);
    }
    CHECK(th.lower == doctest::Approx(gamma).epsilon(1e-3));
    CHECK(th.upper == doctest::Approx(n * g * g / kappa).epsilon(1e-3));
    CHECK_FALSE(laser_steady({g, kappa, gamma, 0.5 * th.lower, n}).lasing);
    CHECK_FALSE(laser_steady({g, kappa, gamma, 1.1 * th.upper, n}).lasing);
    CHECK(laser_steady({g, kappa, gamma, 10.0, n}).lasing);
    CHECK_FALSE(laser_thresholds(g, 1e4, gamma, n).exists);

    for (double kap : {0.1, 40.0}) {
        LaserParams p{1.0, kap, 0.01, 0.0, 200};
        auto t2 = laser_thresholds(p.g, p.kappa, p.gamma, p.n);
        p.gamma_p = std::sqrt(t2.lower * t2.upper);
        auto st = laser_steady(p);
        REQUIRE(st.lasing);
        CHECK(std::sqrt(st.coherence / st.photons) == doctest::Approx(kap / p.g).epsilon(1e-12));
        auto traj = laser_meanfield(p, linspace(0.0, 4000.0 / std::min(p.kappa, p.gamma + p.gamma_p), 5),
                                    {cplx(0.0, 0.0), cplx(1.0, 0.0), 0.0});
        const auto& last = traj.states.back();
        CHECK(last.sz == doctest::Approx(st.sz).epsilon(1e-6));
        CHECK(std::norm(last.alpha) == doctest::Approx(st.photons).epsilon(1e-6));
        CHECK(std::norm(last.s) == doctest::Approx(st.coherence).epsilon(1e-6));
    }
}

TEST_CASE("cavity-mediated superradiance") {
    CHECK(cavity_superradiance_rate(0.0, 2.0) == 0.0);
    CHECK(cavity_superradiance_rate(0.1, 1.0) == doctest::Approx(0.01));
    const double rate = cavity_superradiance_rate(0.2, 4.0);
    const int n = 20;
    auto t1 = linspace(0.0, 1.0, 201);
    std::vector<double> t2;
    for (double t : t1) t2.push_back(t / rate);
    auto unit = dicke_evolve(n, 1.0, t1);
    auto cav = dicke_evolve(n, rate, t2);
    for (std::size_t i = 0; i < t1.size(); i += 20)
        CHECK(cav.spsm[i] == doctest::Approx(unit.spsm[i]).epsilon(1e-6));
}
