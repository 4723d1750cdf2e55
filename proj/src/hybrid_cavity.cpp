#include "coop/hybrid_cavity.hpp"

#include <algorithm>
#include <boost/math/tools/roots.hpp>
#include <cmath>

#include "coop/errors.hpp"
#include "coop/geometry.hpp"

namespace coop {

namespace {
const cplx I1{0.0, 1.0};
}

MirrorSpec MirrorSpec::flat(double zeta0) {
    MirrorSpec m;
    m.kind = Kind::Flat;
    m.zeta0 = zeta0;
    return m;
}

MirrorSpec MirrorSpec::array(double gamma_d, double omega_d) {
    require(gamma_d > 0.0, "array mirror needs gamma_d > 0");
    MirrorSpec m;
    m.kind = Kind::LorentzianArray;
    m.gamma_d = gamma_d;
    m.omega_d = omega_d;
    return m;
}

double MirrorSpec::zeta(double omega) const {
    if (kind == Kind::Flat) return zeta0;
    if (omega == omega_d)
        fail(ErrorKind::Domain, "array mirror pole at omega = omega_d; evaluate at a small offset");
    return gamma_d / (omega_d - omega);
}

Eigen::Matrix2cd mirror_transfer(double z) {
    Eigen::Matrix2cd t;
    t << 1.0 + I1 * z, I1 * z, -I1 * z, 1.0 - I1 * z;
    return t;
}

Eigen::Matrix2cd free_transfer(double theta) {
    Eigen::Matrix2cd t = Eigen::Matrix2cd::Zero();
    t(0, 0) = std::exp(I1 * theta);
    t(1, 1) = std::exp(-I1 * theta);
    return t;
}

Scatterer mirror_coefficients(double z) {
    const cplx t = 1.0 / (1.0 - I1 * z);
    return {t, I1 * z * t};
}

cplx transfer_matrix_transmission(const MirrorSpec& left, const MirrorSpec& right, double length, double omega) {
    require(length >= 0.0, "cavity length must be non-negative");
    const Eigen::Matrix2cd t = mirror_transfer(right.zeta(omega)) * free_transfer(omega * length) *
                               mirror_transfer(left.zeta(omega));
    return 1.0 / t(1, 1);
}

cplx coupled_mode_transmission(const CoupledModeParams& p, double omega) {
    require(p.kappa_l >= 0.0 && p.kappa_r >= 0.0 && p.gamma_d > 0.0, "coupled-mode rates must be positive");
    const double kappa = p.kappa_l + p.kappa_r;
    const cplx inv_ea = kappa + I1 * (p.omega_a - omega);
    const cplx ed = 1.0 / (p.gamma_d + I1 * (p.omega_d - omega));
    const double g = p.coupling;
    return std::sqrt(2.0 * p.kappa_r) * (ed * g * std::sqrt(2.0 * p.gamma_d) - std::sqrt(2.0 * p.kappa_l)) /
           (inv_ea - g * g * ed);
}

double flat_linewidth(double zeta0, double omega_fsr) {
    require(zeta0 > 0.0 && omega_fsr > 0.0, "need zeta0 > 0 and omega_fsr > 0");
    return omega_fsr / (2.0 * kPi * zeta0 * zeta0);
}

HybridDesign design_hybrid(double zeta0, double gamma_d, double omega_fsr, int m) {
    if (!(zeta0 > 1.0)) fail(ErrorKind::Domain, "hybrid cavity parameters assume zeta0 >> 1");
    require(gamma_d > 0.0 && omega_fsr > 0.0 && m >= 1, "need gamma_d > 0, omega_fsr > 0, m >= 1");
    HybridDesign d;
    d.zeta0 = zeta0;
    d.gamma_d = gamma_d;
    d.omega_fsr = omega_fsr;
    d.m = m;
    d.omega_m = double(m) * omega_fsr;
    // zeta_L(omega_m) = -zeta0 makes theta = m pi the unit-transmission point
    d.omega_d = d.omega_m - gamma_d / zeta0;
    d.length = kPi / omega_fsr;
    d.kappa_flat = flat_linewidth(zeta0, omega_fsr);
    return d;
}

CoupledModeParams extract_parameters(const HybridDesign& d) {
    if (!(d.zeta0 > 1.0)) fail(ErrorKind::Domain, "hybrid cavity parameters assume zeta0 >> 1");
    CoupledModeParams p;
    p.gamma_d = d.gamma_d;
    p.omega_d = d.omega_d;
    p.kappa_r = 0.5 * d.kappa_flat * d.gamma_d * d.zeta0 / (d.omega_fsr + d.gamma_d * d.zeta0);
    p.kappa_l = p.kappa_r * (1.0 + d.zeta0 * d.zeta0);
    p.omega_a = d.omega_m + d.zeta0 * p.kappa_r;
    p.coupling = std::sqrt(p.kappa_l * d.gamma_d);
    return p;
}

CrossCheck cross_theory(const HybridDesign& d, double half_width, std::size_t points) {
    require(points >= 2 && half_width > 0.0, "need a non-empty window");
    const auto p = extract_parameters(d);
    CrossCheck c;
    for (std::size_t i = 0; i < points; ++i) {
        const double x = -half_width + 2.0 * half_width * double(i) / double(points - 1);
        const double w = d.omega_m + x * d.gamma_d;
        if (w == d.omega_d) continue;
        const double diff = std::abs(std::norm(transfer_matrix_transmission(d.left(), d.right(), d.length, w)) -
                                     std::norm(coupled_mode_transmission(p, w)));
        if (diff > c.max_abs_diff) {
            c.max_abs_diff = diff;
            c.at = x;
        }
    }
    return c;
}

double transmission_hwhm(const MirrorSpec& left, const MirrorSpec& right, double length, double omega_peak) {
    auto t2 = [&](double w) { return std::norm(transfer_matrix_transmission(left, right, length, w)); };
    const double half = 0.5 * t2(omega_peak);
    auto f = [&](double w) { return t2(w) - half; };
    auto edge = [&](double dir) {
        double step = 1e-9 * std::max(1.0, std::abs(omega_peak));
        double inner = omega_peak, outer = omega_peak + dir * step;
        int guard = 0;
        while (f(outer) > 0.0) {
            inner = outer;
            step *= 2.0;
            outer = omega_peak + dir * step;
            if (++guard > 200) fail(ErrorKind::Numerical, "transmission peak has no half-maximum edge");
        }
        boost::math::tools::eps_tolerance<double> tol(50);
        auto r = boost::math::tools::bisect(f, std::min(inner, outer), std::max(inner, outer), tol);
        return 0.5 * (r.first + r.second);
    };
    return 0.5 * (edge(1.0) - edge(-1.0));
}

std::vector<double> fan_grid(double lo, double hi, const std::vector<double>& centres, std::size_t uniform,
                             std::size_t per_decade, double min_offset) {
    require(hi > lo && uniform >= 2 && min_offset > 0.0, "invalid sweep window");
    std::vector<double> g;
    for (std::size_t i = 0; i < uniform; ++i) g.push_back(lo + (hi - lo) * double(i) / double(uniform - 1));
    for (double c : centres) {
        const double span = std::max(hi - c, c - lo);
        if (!(span > min_offset)) continue;
        const double decades = std::log10(span / min_offset);
        const std::size_t n = std::max<std::size_t>(2, std::size_t(std::ceil(decades * double(per_decade))));
        for (std::size_t i = 0; i < n; ++i) {
            const double off = min_offset * std::pow(10.0, decades * double(i) / double(n - 1));
            for (double s : {-1.0, 1.0}) {
                const double w = c + s * off;
                if (w >= lo && w <= hi) g.push_back(w);
            }
        }
    }
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    return g;
}

} // namespace coop
