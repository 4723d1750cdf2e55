#include "coop/molecular.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "coop/errors.hpp"
#include "coop/lindblad.hpp"

namespace coop {

namespace {
const cplx I1{0.0, 1.0};

std::vector<VibronicLine> lines_or_ground(const std::vector<VibrationalMode>& modes, const LatticeOptions& opt) {
    if (modes.empty()) return {VibronicLine{0.0, 0.0, 1.0}};
    return vibronic_lines(modes, opt);
}
} // namespace

void VibrationalMode::validate() const {
    require(std::isfinite(nu), "vibrational frequency must be finite");
    require(huang_rhys >= 0.0, "Huang-Rhys factor must be >= 0");
    require(damping > 0.0, "vibrational damping must be > 0");
    require(thermal_occupancy >= 0.0, "thermal occupancy must be >= 0");
}

double VibrationalMode::occupancy_at(double nu, double kt) {
    require(nu > 0.0 && kt >= 0.0, "need nu > 0 and kT >= 0");
    if (kt == 0.0) return 0.0;
    return 1.0 / std::expm1(nu / kt);
}

void MolecularModel::validate() const {
    require(gamma > 0.0, "electronic decay must be > 0");
    for (const auto& m : modes) m.validate();
}

double MolecularModel::total_huang_rhys() const {
    double s = 0.0;
    for (const auto& m : modes) s += m.huang_rhys;
    return s;
}

double MolecularModel::bare_frequency() const {
    double w = omega0;
    for (const auto& m : modes) w += m.huang_rhys * m.nu;
    return w;
}

double franck_condon(double s, int n) {
    require(s >= 0.0 && n >= 0, "need S >= 0 and n >= 0");
    if (s == 0.0) return n == 0 ? 1.0 : 0.0;
    return std::exp(-s + n * std::log(s) - std::lgamma(n + 1.0));
}

cplx displacement_correlation(const VibrationalMode& m, double tau, bool zero_temperature) {
    m.validate();
    if (tau < 0.0) return std::conj(displacement_correlation(m, -tau, zero_temperature));
    const double s = m.huang_rhys;
    if (zero_temperature) return std::exp(-s + s * std::exp(-(m.damping + I1 * m.nu) * tau));
    const double var = m.thermal_occupancy + 0.5;
    const cplx pp = (var * std::cos(m.nu * tau) - 0.5 * I1 * std::sin(m.nu * tau)) * std::exp(-m.damping * tau);
    return std::exp(-2.0 * s * (var - pp));
}

double static_displacement(const VibrationalMode& m) {
    m.validate();
    return std::exp(-m.huang_rhys * (m.thermal_occupancy + 0.5));
}

std::vector<VibronicLine> vibronic_lines(const std::vector<VibrationalMode>& modes, const LatticeOptions& opt) {
    std::vector<int> cap;
    for (const auto& m : modes) {
        m.validate();
        int n = 0;
        double cum = franck_condon(m.huang_rhys, 0);
        while (1.0 - cum > opt.mode_tail) {
            ++n;
            cum += franck_condon(m.huang_rhys, n);
            if (n > 100000) fail(ErrorKind::Capacity, "Franck-Condon cap exceeded; Huang-Rhys factor too large");
        }
        cap.push_back(n);
    }

    std::vector<VibronicLine> out;
    std::function<void(std::size_t, VibronicLine)> walk = [&](std::size_t k, VibronicLine cur) {
        if (k == modes.size()) {
            if (out.size() >= opt.max_lines)
                fail(ErrorKind::Capacity, "vibronic lattice exceeds " + std::to_string(opt.max_lines) +
                                              " lines; raise max_lines or prune");
            out.push_back(cur);
            return;
        }
        const auto& m = modes[k];
        for (int n = 0; n <= cap[k]; ++n) {
            const double w = cur.weight * franck_condon(m.huang_rhys, n);
            if (w < opt.prune) continue;
            walk(k + 1, {cur.shift + n * m.nu, cur.width + n * m.damping, w});
        }
    };
    walk(0, {0.0, 0.0, 1.0});

    double total = 0.0;
    for (const auto& l : out) total += l.weight;
    if (1.0 - total > opt.max_missing)
        fail(ErrorKind::Capacity, "vibronic truncation not converged, missing weight " + std::to_string(1.0 - total) +
                                      "; lower prune or mode_tail");
    return out;
}

std::vector<double> vibronic_spectrum(const MolecularModel& m, SpectrumKind kind, const std::vector<double>& grid,
                                      double eta, const LatticeOptions& opt) {
    m.validate();
    const auto lines = lines_or_ground(m.modes, opt);
    std::vector<double> out(grid.size(), 0.0);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        double acc = 0.0;
        for (const auto& l : lines) {
            const double w = m.gamma + l.width;
            const double d = kind == SpectrumKind::Absorption ? grid[i] - l.shift : grid[i] - m.omega0 + l.shift;
            acc += l.weight * w / (w * w + d * d);
        }
        out[i] = kind == SpectrumKind::Absorption ? eta * eta / m.gamma * acc : 2.0 * acc;
    }
    return out;
}

double branching_ratio(const std::vector<VibrationalMode>& modes, double c00) {
    require(c00 >= 0.0, "cooperativity must be >= 0");
    double s = 0.0;
    for (const auto& m : modes) {
        m.validate();
        s += m.huang_rhys;
    }
    if (std::isinf(c00)) return 1.0;
    const double z = std::exp(-s);
    return (1.0 + c00) * z / (1.0 + c00 * z);
}

double brownian_thermal_spectrum(double omega, double nu, double damping, double kt) {
    require(nu > 0.0 && damping > 0.0 && kt >= 0.0, "need nu > 0, Gamma > 0, kT >= 0");
    if (kt == 0.0) return omega > 0.0 ? 4.0 * omega * damping / nu : 0.0;
    if (omega == 0.0) return 4.0 * damping * kt / nu;
    const double x = omega / (2.0 * kt);
    return 2.0 * damping * omega / nu * (1.0 / std::tanh(x) + 1.0);
}

std::vector<DimerPoint> dimer_surfaces(double s, double nu, double omega, const std::vector<double>& q_minus,
                                       double q_plus) {
    require(s >= 0.0, "Huang-Rhys factor must be >= 0");
    std::vector<DimerPoint> out;
    out.reserve(q_minus.size());
    for (double q : q_minus) {
        const double base = 0.5 * nu * (q_plus * q_plus + q * q) - std::sqrt(s) * nu * q_plus;
        const double split = std::sqrt(s * nu * nu * q * q + omega * omega);
        out.push_back({base + split, base - split});
    }
    return out;
}

double dimer_minimum(double s, double nu, double omega) {
    require(s >= 0.0, "Huang-Rhys factor must be >= 0");
    if (!(std::abs(omega) < s * std::abs(nu))) return 0.0;
    return std::sqrt(s * (1.0 - omega * omega / (s * s * nu * nu)));
}

double spectral_density(double omega, const std::vector<VibrationalMode>& modes) {
    double j = 0.0;
    for (const auto& m : modes) {
        m.validate();
        const double d = omega - m.nu;
        j += 2.0 * m.huang_rhys * m.nu * m.nu * m.damping / (m.damping * m.damping + d * d);
    }
    return j;
}

std::vector<VibronicLine> fret_lines(const MolecularModel& donor, const MolecularModel& acceptor,
                                     const LatticeOptions& opt) {
    donor.validate();
    acceptor.validate();
    auto ld = lines_or_ground(donor.modes, opt);
    auto la = lines_or_ground(acceptor.modes, opt);
    auto heavier = [](const VibronicLine& a, const VibronicLine& b) { return a.weight > b.weight; };
    std::sort(ld.begin(), ld.end(), heavier);
    std::sort(la.begin(), la.end(), heavier);

    std::vector<VibronicLine> pairs;
    for (const auto& d : ld) {
        for (const auto& a : la) {
            const double w = d.weight * a.weight;
            if (w < opt.prune) break;
            pairs.push_back({d.shift + a.shift, d.width + a.width, w});
            if (pairs.size() > opt.max_lines)
                fail(ErrorKind::Capacity, "donor-acceptor line pairs exceed " + std::to_string(opt.max_lines));
        }
    }
    std::sort(pairs.begin(), pairs.end(), [](const VibronicLine& a, const VibronicLine& b) {
        return a.shift != b.shift ? a.shift < b.shift : a.width < b.width;
    });
    std::vector<VibronicLine> merged;
    auto close = [](double x, double y) { return std::abs(x - y) <= 1e-12 * (1.0 + std::abs(x)); };
    for (const auto& p : pairs) {
        if (!merged.empty() && close(merged.back().shift, p.shift) && close(merged.back().width, p.width))
            merged.back().weight += p.weight;
        else
            merged.push_back(p);
    }
    return merged;
}

double fret_rate_from_lines(const std::vector<VibronicLine>& lines, double omega, double delta) {
    double k = 0.0;
    for (const auto& l : lines) {
        if (l.width == 0.0) continue;
        const double d = delta - l.shift;
        k += l.weight * l.width / (l.width * l.width + d * d);
    }
    return 2.0 * omega * omega * k;
}

FretRate fret_rate(const MolecularModel& donor, const MolecularModel& acceptor, double omega, bool single_mode,
                   const LatticeOptions& opt) {
    if (donor.gamma != acceptor.gamma)
        fail(ErrorKind::InvalidArgument, "transfer rate assumes equal electronic decay for donor and acceptor");
    if (single_mode)
        require(donor.modes.size() == 1 && acceptor.modes.size() == 1,
                "single-mode transfer rate needs exactly one mode per molecule");
    const auto lines = fret_lines(donor, acceptor, opt);
    FretRate r;
    r.rate = fret_rate_from_lines(lines, omega, donor.omega0 - acceptor.omega0);
    for (const auto& l : lines)
        if (l.width == 0.0) r.elastic_weight += l.weight;
    r.fast_relaxation = true;
    for (const auto* m : {&donor, &acceptor})
        for (const auto& v : m->modes)
            if (v.damping < 10.0 * m->gamma) r.fast_relaxation = false;
    return r;
}

FretSimulationResult fret_master_equation(const FretSimulationParams& p) {
    require(p.levels >= 2 && p.levels <= 12, "vibrational truncation must be 2..12 levels");
    require(p.s >= 0.0 && p.damping > 0.0 && p.gamma > 0.0, "need S >= 0, Gamma > 0, gamma > 0");
    require(p.t_end > p.t_start && p.t_start > 0.0 && p.samples >= 2, "invalid sampling window");
    const int L = p.levels;
    const std::vector<int> dims{2, L, 2, L};
    const cmat sm = sigma_minus(), b = destroy(L);
    const cmat sd = embed(sm, 0, dims), bd = embed(b, 1, dims);
    const cmat sa = embed(sm, 2, dims), ba = embed(b, 3, dims);
    const cmat nd = sd.adjoint() * sd, na = sa.adjoint() * sa;
    const double rs = std::sqrt(p.s);

    LindbladModel m;
    m.site_dims = dims;
    m.hamiltonian = p.delta * nd + p.nu * (bd.adjoint() * bd + ba.adjoint() * ba) -
                    rs * p.nu * ((bd + bd.adjoint()) * nd + (ba + ba.adjoint()) * na) + p.s * p.nu * (nd + na) +
                    p.omega * (sd.adjoint() * sa + sa.adjoint() * sd);
    m.collapse = {{sd, p.gamma}, {sa, p.gamma}, {bd - rs * nd, p.damping}, {ba - rs * na, p.damping}};

    // relaxed excited donor: coherent state of amplitude sqrt(S), truncated and renormalized
    cvec vib = cvec::Zero(L);
    for (int n = 0; n < L; ++n) vib(n) = std::sqrt(franck_condon(p.s, n));
    vib.normalize();
    // site order: donor electron, donor vibration, acceptor electron, acceptor vibration
    cvec psi = cvec::Zero(4 * L * L);
    for (int n = 0; n < L; ++n) psi((1 * L + n) * 2 * L) = vib(n);
    const cmat rho0 = pure_state(psi);

    std::vector<double> times{0.0};
    for (int i = 0; i < p.samples; ++i)
        times.push_back(p.t_start + (p.t_end - p.t_start) * double(i) / double(p.samples - 1));
    EvolveOptions eo;
    eo.monitor_positivity = false;
    eo.ode = {1e-8, 1e-10};
    const auto rhos = evolve_density(m, rho0, times, eo);

    FretSimulationResult r;
    double lo = 1e300, hi = -1e300, sum = 0.0;
    for (std::size_t i = 1; i < times.size(); ++i) {
        const double pd = expect(rhos[i], nd).real(), pa = expect(rhos[i], na).real();
        const double dpa = expect(m.rhs(rhos[i]), na).real();
        const double k = (dpa + 2.0 * p.gamma * pa) / pd;
        r.t.push_back(times[i]);
        r.donor.push_back(pd);
        r.acceptor.push_back(pa);
        sum += k;
        lo = std::min(lo, k);
        hi = std::max(hi, k);
    }
    r.rate = sum / double(p.samples);
    r.rate_spread = hi - lo;
    return r;
}

} // namespace coop
