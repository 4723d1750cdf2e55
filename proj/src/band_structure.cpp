#include "coop/band_structure.hpp"

#include <cmath>
#include <string>

#include "coop/errors.hpp"
#include "coop/vacuum_coupling.hpp"

namespace coop {

std::vector<double> single_cell_grid(int n, double a) {
    require(n >= 2 && n % 2 == 0, "Brillouin grid needs an even N");
    require(a > 0.0, "lattice constant must be positive");
    std::vector<double> q;
    for (int m = -n / 2; m <= n / 2; ++m) q.push_back(kTwoPi * m / (n * a));
    return q;
}

std::vector<double> double_cell_grid(int n, double a) {
    require(n >= 2 && n % 2 == 0, "Brillouin grid needs an even N");
    require(a > 0.0, "lattice constant must be positive");
    std::vector<double> q;
    for (int m = -n / 2; m <= n / 2; ++m) q.push_back(kPi * m / (n * a));
    return q;
}

BandResult dispersion_nn(double omega0, double omega_nn, double a, int n) {
    BandResult r;
    r.a = a;
    r.q = single_cell_grid(n, a);
    for (double q : r.q) r.branches.push_back({omega0 + 2.0 * omega_nn * std::cos(q * a)});
    return r;
}

double light_cone(double a) { return kK0 * a / kPi; }

BandResult dispersion_full(const EmitterEnsemble& chain, const FullDispersionOptions& opt) {
    chain.validate();
    const int n = int(chain.size());
    require(n >= 2, "dispersion needs at least two emitters");
    const Eigen::Vector3d axis = (chain.positions[1] - chain.positions[0]);
    const double a = axis.norm();
    const Eigen::Vector3d u = axis / a;
    const double c = chain.dipole.dot(u);
    // lattice sum coefficients for displacement d = 1..n-1 under minimum image
    std::vector<std::complex<double>> coef(std::size_t(n), 0.0);
    for (int d = 1; d < n; ++d) {
        const int img = std::min(d, n - d);
        const double kr = kK0 * img * a;
        const double om = -1.5 * chain.gamma * g_kernel(kr, c);
        const double ga = 1.5 * chain.gamma * f_kernel(kr, c);
        coef[std::size_t(d)] = {om, -ga};
    }
    BandResult r;
    r.a = a;
    if (opt.q_points > 0) {
        for (int i = 0; i < opt.q_points; ++i) r.q.push_back(-kPi / a + 2.0 * kPi / a * i / (opt.q_points - 1));
    } else {
        r.q = single_cell_grid(n, a);
    }
    for (double q : r.q) {
        std::complex<double> w(chain.omega0, -chain.gamma);
        for (int d = 1; d < n; ++d) w += coef[std::size_t(d)] * std::exp(std::complex<double>(0.0, q * a * d));
        r.branches.push_back({w});
    }
    return r;
}

TwoBandKind parse_two_band_kind(const std::string& name) {
    if (name == "alternating-frequency") return TwoBandKind::AlternatingFrequency;
    if (name == "alternating-sign") return TwoBandKind::AlternatingSign;
    if (name == "ssh") return TwoBandKind::Ssh;
    fail(ErrorKind::InvalidArgument, "unknown two-band kind '" + name + "'");
}

std::pair<double, double> two_band_dispersion(TwoBandKind kind, const TwoBandParams& p, double q, double a) {
    double mid, root;
    switch (kind) {
    case TwoBandKind::AlternatingFrequency: {
        mid = 0.5 * (p.p1 + p.p2);
        const double h = 0.5 * (p.p1 - p.p2), cq = std::cos(q * a);
        root = std::sqrt(h * h + 4.0 * p.p3 * p.p3 * cq * cq);
        break;
    }
    case TwoBandKind::AlternatingSign: {
        mid = 0.5 * (p.p1 + p.p2);
        const double h = 0.5 * (p.p1 - p.p2), sq = std::sin(q * a);
        root = std::sqrt(h * h + 4.0 * p.p3 * p.p3 * sq * sq);
        break;
    }
    case TwoBandKind::Ssh: {
        mid = p.p1;
        const double d = p.p2 - p.p3, cq = std::cos(q * a);
        root = std::sqrt(d * d + 4.0 * p.p2 * p.p3 * cq * cq);
        break;
    }
    default: fail(ErrorKind::InvalidArgument, "unknown two-band kind");
    }
    return {mid - root, mid + root};
}

double ssh_phase(double omega1, double omega2, double q, double a) {
    return std::atan2(omega2 * std::sin(2.0 * q * a), omega1 + omega2 * std::cos(2.0 * q * a));
}

WindingResult berry_phase_and_winding(double omega1, double omega2, const std::vector<double>& q, double a) {
    require(q.size() >= 64, "winding integral needs at least 64 grid points");
    require(a > 0.0, "lattice constant must be positive");
    const double span = q.back() - q.front();
    require(std::abs(span - kPi / a) < 1e-9 / a, "grid must span one double-cell Brillouin zone");
    if (std::abs(omega1 - omega2) <= 1e-12 * std::max(std::abs(omega1), std::abs(omega2)))
        fail(ErrorKind::Domain, "winding undefined: the gap closes at Omega1 = Omega2");
    WindingResult w;
    w.q = q;
    double acc = 0.0;
    double prev = ssh_phase(omega1, omega2, q.front(), a);
    w.accumulated.push_back(0.0);
    for (std::size_t i = 1; i < q.size(); ++i) {
        const double cur = ssh_phase(omega1, omega2, q[i], a);
        double d = cur - prev;
        while (d > kPi) d -= kTwoPi;
        while (d < -kPi) d += kTwoPi;
        acc += 0.5 * d; // A_- = (1/2) d phi / dq
        w.accumulated.push_back(acc);
        prev = cur;
    }
    w.raw = acc / kPi;
    const double r = std::round(w.raw);
    if (std::abs(w.raw - r) > 1e-3) fail(ErrorKind::Numerical, "winding integral not converged on this grid");
    w.winding = int(r);
    return w;
}

} // namespace coop
