#include "coop/cavity_qed.hpp"

#include <algorithm>
#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <numeric>
#include <random>

#include "coop/collective_modes.hpp"
#include "coop/errors.hpp"
#include "coop/geometry.hpp"
#include "coop/lindblad.hpp"

namespace coop {

namespace {
const cplx I1{0.0, 1.0};
}

Eigen::VectorXcd CavitySystem::g_vector() const {
    Eigen::VectorXcd v(Eigen::Index(g.size()));
    for (std::size_t j = 0; j < g.size(); ++j) v(Eigen::Index(j)) = g[j];
    return v;
}

void CavitySystem::validate() const {
    require(kappa_l >= 0.0 && kappa_r >= 0.0, "cavity loss rates must be non-negative");
    require(kappa() > 0.0, "cavity needs kappa > 0");
    require(gamma >= 0.0, "emitter decay must be non-negative");
    require(detuning.empty() || detuning.size() == g.size(), "one detuning per emitter");
    if (coupling) require(std::size_t(coupling->size()) == g.size(), "coupling matrices must match the coupling vector");
}

Eigen::MatrixXcd CavitySystem::m_matrix(double delta, bool include_dd) const {
    const Eigen::Index n = Eigen::Index(g.size());
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    if (include_dd && coupling) {
        m = I1 * coupling->omega.cast<cplx>() + coupling->gamma.cast<cplx>();
    } else {
        m.diagonal().setConstant(gamma);
    }
    for (Eigen::Index j = 0; j < n; ++j) {
        m(j, j) -= I1 * delta;
        if (!detuning.empty()) m(j, j) += I1 * detuning[std::size_t(j)];
    }
    return m;
}

CavitySystem make_cavity(const std::vector<cplx>& g, double kappa, double omega_c, double gamma) {
    CavitySystem s;
    s.g = g;
    s.kappa_l = s.kappa_r = 0.5 * kappa;
    s.omega_c = omega_c;
    s.gamma = gamma;
    return s;
}

std::vector<cplx> symmetric_couplings(std::size_t n, double g) { return std::vector<cplx>(n, cplx(g, 0.0)); }

std::vector<cplx> alternating_couplings(std::size_t n, double g) {
    std::vector<cplx> out(n);
    for (std::size_t j = 0; j < n; ++j) out[j] = (j % 2 == 0) ? g : -g;
    return out;
}

namespace {

// G^+ M^-1 G
cplx projected_resolvent(const CavitySystem& s, double delta, bool include_dd) {
    const Eigen::VectorXcd gv = s.g_vector();
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(s.m_matrix(delta, include_dd));
    if (!(lu.rcond() > 1e-15)) fail(ErrorKind::Numerical, "M(Delta) is singular at this detuning");
    return gv.dot(lu.solve(gv));
}

} // namespace

cplx cavity_transmission(const CavitySystem& s, double omega_l, bool include_dd) {
    s.validate();
    const double kappa = s.kappa();
    cplx denom = kappa + I1 * (s.omega_c - omega_l);
    if (!s.g.empty()) denom += projected_resolvent(s, omega_l - s.omega0, include_dd);
    return kappa / denom;
}

CollectiveResponse collective_response(const CavitySystem& s, double delta) {
    s.validate();
    require(!s.g.empty(), "collective response needs at least one emitter");
    const double gg = s.g_vector().squaredNorm();
    require(gg > 0.0, "coupling vector is zero");
    const cplx y = projected_resolvent(s, delta, true);
    if (std::abs(y) == 0.0) fail(ErrorKind::Numerical, "coupling vector is orthogonal to the response");
    const cplx r = gg / y;
    return {r.real(), r.imag()};
}

double effective_cooperativity(const CavitySystem& s, double delta) {
    const auto r = collective_response(s, delta);
    if (!(r.gamma_eff > 0.0)) fail(ErrorKind::Numerical, "effective linewidth vanished: resonance singularity");
    return s.g_vector().squaredNorm() / (s.kappa() * r.gamma_eff);
}

CooperativityPeak max_cooperativity(const CavitySystem& s, double lo, double hi, std::size_t grid) {
    require(hi > lo && grid >= 3, "need a non-empty detuning window");
    const double step = (hi - lo) / double(grid - 1);
    std::vector<double> v(grid);
    for (std::size_t i = 0; i < grid; ++i) v[i] = effective_cooperativity(s, lo + step * double(i));

    std::vector<std::size_t> peaks;
    for (std::size_t i = 0; i < grid; ++i) {
        const bool left = i == 0 || v[i] >= v[i - 1];
        const bool right = i + 1 == grid || v[i] >= v[i + 1];
        if (left && right) peaks.push_back(i);
    }
    std::sort(peaks.begin(), peaks.end(), [&](auto a, auto b) { return v[a] > v[b]; });
    if (peaks.size() > 12) peaks.resize(12);

    CooperativityPeak best{lo, -1.0};
    for (auto i : peaks) {
        if (v[i] > best.value) best = {lo + step * double(i), v[i]};
        const double a = lo + step * double(i == 0 ? 0 : i - 1);
        const double b = lo + step * double(std::min(i + 1, grid - 1));
        auto neg = [&](double d) { return -effective_cooperativity(s, d); };
        auto [dx, fx] = boost::math::tools::brent_find_minima(neg, a, b, 50);
        if (-fx > best.value) best = {dx, -fx};
    }
    return best;
}

CooperativityScaling cooperativity_scaling(double a, double kappa, double g, const std::vector<int>& n_list,
                                           bool alternating, double gamma) {
    require(n_list.size() >= 3, "scaling fit needs at least three sizes");
    CooperativityScaling out;
    std::vector<double> ns;
    for (int n : n_list) {
        require(n >= 1, "emitter count must be positive");
        auto chain = build_chain(std::size_t(n), a, axis_z(), 0.0, gamma);
        auto s = make_cavity(alternating ? alternating_couplings(std::size_t(n), g)
                                         : symmetric_couplings(std::size_t(n), g),
                             kappa, 0.0, gamma);
        s.coupling = coupling_matrices(chain);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s.coupling->omega, Eigen::EigenvaluesOnly);
        const double lo = es.eigenvalues().minCoeff() - 10.0 * gamma;
        const double hi = es.eigenvalues().maxCoeff() + 10.0 * gamma;
        const auto pk = max_cooperativity(s, lo, hi);
        out.n.push_back(n);
        out.peak.push_back(pk.value);
        out.peak_delta.push_back(pk.delta);
        ns.push_back(double(n));
    }
    out.slope = loglog_slope(ns, out.peak);
    return out;
}

LinearQleSystem build_qle_system(const CavitySystem& s, double omega_l) {
    s.validate();
    const Eigen::Index n = Eigen::Index(s.g.size());
    const Eigen::Index dim = 2 * n + 2;
    const double kappa = s.kappa();
    const double delta_c = omega_l - s.omega_c;
    const Eigen::VectorXcd g = s.g_vector();
    const Eigen::MatrixXcd m = s.m_matrix(omega_l - s.omega0, true);

    LinearQleSystem q;
    q.drift = Eigen::MatrixXcd::Zero(dim, dim);
    q.drift(0, 0) = -(kappa - I1 * delta_c);
    q.drift(1, 1) = -(kappa + I1 * delta_c);
    q.drift.block(0, 2, 1, n) = -I1 * g.adjoint();
    q.drift.block(1, 2 + n, 1, n) = I1 * g.transpose();
    q.drift.block(2, 0, n, 1) = -I1 * g;
    q.drift.block(2 + n, 1, n, 1) = I1 * g.conjugate();
    q.drift.block(2, 2, n, n) = -m;
    q.drift.block(2 + n, 2 + n, n, n) = -m.conjugate();

    q.noise = Eigen::MatrixXcd::Zero(dim, dim);
    q.noise(0, 0) = q.noise(1, 1) = std::sqrt(2.0 * kappa);
    const double sg = std::sqrt(2.0 * s.gamma);
    for (Eigen::Index j = 2; j < dim; ++j) q.noise(j, j) = sg;

    q.input_cor = Eigen::MatrixXcd::Zero(dim, dim);
    q.input_cor(0, 1) = 1.0;
    if (n > 0) {
        if (s.coupling) {
            require(s.gamma > 0.0, "collective noise needs gamma > 0");
            q.input_cor.block(2, 2 + n, n, n) = s.coupling->gamma.cast<cplx>() / s.gamma;
        } else {
            q.input_cor.block(2, 2 + n, n, n).setIdentity();
        }
    }
    q.diffusion = q.noise * q.input_cor * q.noise.transpose();
    return q;
}

double max_real_eigenvalue(const Eigen::MatrixXcd& a) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(a, false);
    return es.eigenvalues().real().maxCoeff();
}

Eigen::MatrixXcd lyapunov_covariance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& d) {
    require(a.rows() == a.cols() && d.rows() == a.rows() && d.cols() == a.cols(), "Lyapunov operands must be square and equal size");
    if (!(max_real_eigenvalue(a) < 0.0)) fail(ErrorKind::Numerical, "no steady state: drift matrix is not stable");
    const Eigen::Index n = a.rows();
    // column-major vec: vec(A V) = (1 x A) vec V, vec(V A^T) = (A x 1) vec V
    Eigen::MatrixXcd k = Eigen::MatrixXcd::Zero(n * n, n * n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) k.block(i * n, j * n, n, n).diagonal().array() += a(i, j);
    for (Eigen::Index i = 0; i < n; ++i) k.block(i * n, i * n, n, n) += a;
    Eigen::VectorXcd rhs = -Eigen::Map<const Eigen::VectorXcd>(d.data(), n * n);
    Eigen::VectorXcd v = k.partialPivLu().solve(rhs);
    return Eigen::Map<Eigen::MatrixXcd>(v.data(), n, n);
}

Eigen::MatrixXcd output_transfer(const LinearQleSystem& q, double omega) {
    const Eigen::Index n = q.size();
    Eigen::MatrixXcd res = I1 * omega * Eigen::MatrixXcd::Identity(n, n) - q.drift;
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(res);
    if (!(lu.rcond() > 1e-15)) fail(ErrorKind::Numerical, "pole of the transfer function on the real axis");
    return q.noise.transpose() * lu.solve(q.noise) - Eigen::MatrixXcd::Identity(n, n);
}

Eigen::MatrixXcd output_spectrum(const LinearQleSystem& q, double omega) {
    return output_transfer(q, omega) * q.input_cor * output_transfer(q, -omega).transpose();
}

Eigen::MatrixXcd intracavity_spectrum(const LinearQleSystem& q, double omega) {
    const Eigen::Index n = q.size();
    const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
    const Eigen::MatrixXcd left = (I1 * omega * id - q.drift).partialPivLu().solve(id);
    const Eigen::MatrixXcd right = (-I1 * omega * id - q.drift).partialPivLu().solve(id);
    return left * q.diffusion * right.transpose();
}

JcResult jaynes_cummings_g2(const JcParams& p) {
    require(p.n_fock >= 3, "photon truncation must keep at least two photons");
    require(p.kappa > 0.0 && p.gamma >= 0.0, "loss rates must be non-negative with kappa > 0");
    const std::vector<int> dims{p.n_fock, 2};
    const cmat a = embed(destroy(p.n_fock), 0, dims);
    const cmat sm = embed(sigma_minus(), 1, dims);
    LindbladModel m;
    m.site_dims = dims;
    m.hamiltonian = p.cavity_detuning * a.adjoint() * a + p.emitter_detuning * sm.adjoint() * sm +
                    p.g * (a.adjoint() * sm + sm.adjoint() * a) + p.eta * (a + cmat(a.adjoint()));
    m.collapse.push_back({a, p.kappa});
    if (p.gamma > 0.0) m.collapse.push_back({sm, p.gamma});
    const cmat rho = steady_state(m);
    const cmat n_op = a.adjoint() * a;
    const double n = expect(rho, n_op).real();
    const double aa = expect(rho, cmat(a.adjoint() * a.adjoint() * a * a)).real();
    if (!(n > 0.0)) fail(ErrorKind::Domain, "cavity is empty, g2 undefined");
    return {n, aa / (n * n)};
}

DarkRates disorder_dark_rates(const std::vector<double>& deltas, double gamma) {
    require(deltas.size() >= 2, "dark-state elimination needs at least two emitters");
    require(gamma >= 0.0, "gamma must be non-negative");
    const double n = double(deltas.size());
    DarkRates r;
    r.delta_bar = std::accumulate(deltas.begin(), deltas.end(), 0.0) / n;
    // Schur complement of the bright mode in U diag(delta - i gamma) U^+
    cplx mean_inv = 0.0;
    for (double d : deltas) {
        const cplx z(d, -gamma);
        if (z == cplx(0.0)) fail(ErrorKind::Numerical, "degenerate disorder: dark-state matrix is singular");
        mean_inv += 1.0 / z;
    }
    mean_inv /= n;
    if (std::abs(mean_inv) == 0.0) fail(ErrorKind::Numerical, "degenerate disorder: dark-state matrix is singular");
    const cplx x = cplx(r.delta_bar, -gamma) - 1.0 / mean_inv;
    r.delta_dark = x.real();
    r.gamma_dark = x.imag();
    return r;
}

std::vector<double> gaussian_detunings(std::size_t n, double w, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> dist(0.0, w);
    std::vector<double> out(n);
    for (auto& d : out) d = dist(rng);
    return out;
}

DarkRateStats sample_dark_rates(double w, double gamma, std::size_t n, std::size_t draws, std::uint64_t seed) {
    require(draws >= 1, "need at least one draw");
    std::vector<double> gd(draws), dd(draws);
    for (std::size_t i = 0; i < draws; ++i) {
        const auto r = disorder_dark_rates(gaussian_detunings(n, w, seed + i), gamma);
        gd[i] = r.gamma_dark;
        dd[i] = r.delta_dark;
    }
    DarkRateStats s;
    s.mean_gamma_dark = std::accumulate(gd.begin(), gd.end(), 0.0) / double(draws);
    s.mean_delta_dark = std::accumulate(dd.begin(), dd.end(), 0.0) / double(draws);
    double var = 0.0;
    for (double x : gd) var += (x - s.mean_gamma_dark) * (x - s.mean_gamma_dark);
    s.std_gamma_dark = draws > 1 ? std::sqrt(var / double(draws - 1)) : 0.0;
    return s;
}

double mesoscopic_gamma_dark(double w, double gamma) {
    require(w >= 0.0 && gamma > 0.0, "need w >= 0 and gamma > 0");
    if (w == 0.0) return 0.0;
    const double lo = gamma / 3.0, hi = 3.0 * gamma;
    if (w <= lo) return w * w / gamma;
    if (w >= hi) return kPi * w / 4.0;
    const double t = std::log(w / lo) / std::log(hi / lo);
    const double ylo = std::log(lo * lo / gamma), yhi = std::log(kPi * hi / 4.0);
    return std::exp((1.0 - t) * ylo + t * yhi);
}

double disordered_vrs(double w, double g_n, double kappa, double gamma) {
    require(g_n > 0.0 && kappa > 0.0 && gamma > 0.0 && w >= 0.0, "VRS inputs must be positive");
    const double gd = mesoscopic_gamma_dark(w, gamma);
    const double x = gamma + gd - kappa;
    const cplx root = std::sqrt(cplx(x * x / 4.0 - g_n * g_n, 0.0));
    return (2.0 * root).imag();
}

double direct_vrs(const std::vector<double>& deltas, double g_n, double kappa, double gamma) {
    const Eigen::Index n = Eigen::Index(deltas.size());
    require(n >= 1, "need emitters");
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n + 1, n + 1);
    h(0, 0) = cplx(0.0, -kappa);
    const double g = g_n / std::sqrt(double(n));
    for (Eigen::Index j = 0; j < n; ++j) {
        h(0, j + 1) = h(j + 1, 0) = g;
        h(j + 1, j + 1) = cplx(deltas[std::size_t(j)], -gamma);
    }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(h);
    std::vector<std::pair<double, double>> wl; // cavity weight, frequency
    for (Eigen::Index k = 0; k <= n; ++k) {
        const auto v = es.eigenvectors().col(k);
        wl.push_back({std::norm(v(0)) / v.squaredNorm(), es.eigenvalues()(k).real()});
    }
    std::partial_sort(wl.begin(), wl.begin() + 2, wl.end(), [](auto& a, auto& b) { return a.first > b.first; });
    return std::abs(wl[0].second - wl[1].second);
}

cplx memory_kernel(double tau, double w, double gamma, double delta_bar) {
    if (tau < 0.0) return 0.0;
    const double x = 2.0 * w * tau;
    const double sinc = std::abs(x) < 1e-8 ? 1.0 - x * x / 6.0 : std::sin(x) / x;
    return w * w * std::exp(-I1 * cplx(delta_bar, -gamma) * tau) * sinc;
}

namespace {

void check_laser(const LaserParams& p) {
    require(p.g > 0.0 && p.kappa > 0.0 && p.gamma > 0.0 && p.gamma_p > 0.0 && p.n > 0.0,
            "laser rates and emitter number must be positive");
}

} // namespace

LaserTrajectory laser_meanfield(const LaserParams& p, const std::vector<double>& t_grid, const LaserState& init,
                                const OdeOptions& opt) {
    check_laser(p);
    const double gt = p.gamma + p.gamma_p;
    auto rhs = [&](double, const Eigen::VectorXd& y) {
        const cplx al(y(0), y(1)), s(y(2), y(3));
        const double sz = y(4);
        const cplx da = -p.kappa * al - I1 * p.g * s;
        const cplx ds = -gt * s + 2.0 * I1 * p.g * al * sz;
        const double dsz = -2.0 * gt * sz + (I1 * p.g * (std::conj(al) * s - al * std::conj(s))).real() +
                           p.n * (p.gamma_p - p.gamma);
        Eigen::VectorXd out(5);
        out << da.real(), da.imag(), ds.real(), ds.imag(), dsz;
        return out;
    };
    Eigen::VectorXd y0(5);
    y0 << init.alpha.real(), init.alpha.imag(), init.s.real(), init.s.imag(), init.sz;
    LaserTrajectory tr;
    integrate_dopri5(rhs, y0, t_grid,
                     [&](std::size_t, double t, const Eigen::VectorXd& y) {
                         tr.t.push_back(t);
                         tr.states.push_back({cplx(y(0), y(1)), cplx(y(2), y(3)), y(4)});
                     },
                     opt);
    return tr;
}

LaserSteady laser_steady(const LaserParams& p) {
    check_laser(p);
    LaserSteady st;
    const double gt = p.gamma + p.gamma_p;
    st.pump_cooperativity = p.g * p.g / (p.kappa * gt);
    const double photons = (p.n * (p.gamma_p - p.gamma) / 2.0 - gt / (2.0 * st.pump_cooperativity)) / p.kappa;
    if (photons > 0.0) {
        st.lasing = true;
        st.sz = 1.0 / (2.0 * st.pump_cooperativity);
        st.photons = photons;
        st.coherence = photons * (p.kappa / p.g) * (p.kappa / p.g);
    } else {
        st.sz = p.n * (p.gamma_p - p.gamma) / (2.0 * gt);
    }
    return st;
}

LaserThresholds laser_thresholds(double g, double kappa, double gamma, double n) {
    require(g > 0.0 && kappa > 0.0 && gamma > 0.0 && n > 0.0, "threshold inputs must be positive");
    const double k = g * g * n / kappa;
    const double disc = k * (k / 4.0 - 2.0 * gamma);
    LaserThresholds t;
    if (disc < 0.0) return t;
    t.exists = true;
    // roots in x = gamma + gamma_p; the smaller one from the product 2 gamma k to avoid cancellation
    const double x_hi = k / 2.0 + std::sqrt(disc);
    t.upper = x_hi - gamma;
    t.lower = 2.0 * gamma * k / x_hi - gamma;
    return t;
}

double cavity_superradiance_rate(double g, double kappa) {
    require(kappa > 0.0, "kappa must be positive");
    return g * g / kappa;
}

} // namespace coop
