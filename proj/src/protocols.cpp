#include "coop/protocols.hpp"

#include <algorithm>
#include <boost/math/tools/minima.hpp>
#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include "coop/collective_modes.hpp"
#include "coop/errors.hpp"

namespace coop {

namespace {

const cplx I1{0.0, 1.0};

cmat kron(const cmat& a, const cmat& b) {
    cmat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

cmat kron_all(const std::vector<cmat>& ops) {
    cmat out = ops.front();
    for (std::size_t i = 1; i < ops.size(); ++i) out = kron(out, ops[i]);
    return out;
}

// exp(i phi sigma_mu / 2) in the {g, e} basis, sigma_z = |e><e| - |g><g|
cmat rot_y(double phi) {
    cmat sy(2, 2);
    sy << 0.0, I1, -I1, 0.0;
    return std::cos(phi / 2) * cmat::Identity(2, 2) + I1 * std::sin(phi / 2) * sy;
}

cmat rot_z(double phi) {
    cmat r = cmat::Zero(2, 2);
    r(0, 0) = std::exp(-I1 * phi / 2.0);
    r(1, 1) = std::exp(I1 * phi / 2.0);
    return r;
}

int excitations(Eigen::Index basis) { return std::popcount(static_cast<unsigned long long>(basis)); }

struct RamseyPrep {
    LindbladModel model;
    cmat rho0;
    cmat sz;  // R2^+ S_z R2
    cmat sz2; // R2^+ S_z^2 R2
    int n = 0;
};

RamseyPrep ramsey_prep(const EmitterEnsemble& e, const CouplingMatrices& c, int m, const RamseyOptions& opt) {
    const std::size_t n = e.size();
    if (n > opt.max_emitters)
        fail(ErrorKind::Capacity, "Ramsey simulation limited to " + std::to_string(opt.max_emitters) +
                                      " emitters, got " + std::to_string(n));
    require(n >= 1, "Ramsey needs at least one emitter");
    require(m >= 0 && m <= int(n / 2), "phase pattern index must be in 0..floor(N/2)");
    CollectiveModelOptions mo;
    mo.max_emitters = opt.max_emitters;
    RamseyPrep p;
    p.n = int(n);
    p.model = build_collective_model(e, c, std::nullopt, mo);
    std::vector<cmat> r1, r2;
    for (std::size_t j = 0; j < n; ++j) {
        const double phi = ramsey_phase(n, m, j) + opt.phase_offset;
        r1.push_back(rot_z(phi) * rot_y(kPi / 2));
        r2.push_back(rot_y(kPi / 2) * rot_z(-phi));
    }
    const cmat u1 = kron_all(r1), u2 = kron_all(r2);
    const Eigen::Index d = u1.rows();
    p.rho0 = u1.col(0) * u1.col(0).adjoint();
    cmat sz = cmat::Zero(d, d);
    for (Eigen::Index b = 0; b < d; ++b) sz(b, b) = excitations(b) - 0.5 * double(n);
    p.sz = u2.adjoint() * sz * u2;
    p.sz2 = u2.adjoint() * (sz * sz) * u2;
    return p;
}

// <X>(omega) = sum_k c_k exp(-i k omega tau), k = n_a - n_b
struct TrigSeries {
    std::vector<cplx> sz, sz2;
    int n = 0;
};

TrigSeries ramsey_series(const RamseyPrep& p, const cmat& rho) {
    TrigSeries s;
    s.n = p.n;
    s.sz.assign(std::size_t(2 * p.n + 1), 0.0);
    s.sz2.assign(std::size_t(2 * p.n + 1), 0.0);
    for (Eigen::Index a = 0; a < rho.rows(); ++a)
        for (Eigen::Index b = 0; b < rho.cols(); ++b) {
            const std::size_t k = std::size_t(excitations(a) - excitations(b) + p.n);
            s.sz[k] += p.sz(b, a) * rho(a, b);
            s.sz2[k] += p.sz2(b, a) * rho(a, b);
        }
    return s;
}

RamseySignal eval_series(const TrigSeries& s, double tau, double omega) {
    RamseySignal r;
    double sz2 = 0.0;
    for (int k = -s.n; k <= s.n; ++k) {
        const cplx ph = std::exp(-I1 * double(k) * omega * tau);
        const std::size_t i = std::size_t(k + s.n);
        r.sz += (s.sz[i] * ph).real();
        sz2 += (s.sz2[i] * ph).real();
        r.slope += (s.sz[i] * ph * (-I1 * double(k) * tau)).real();
    }
    r.variance = std::max(0.0, sz2 - r.sz * r.sz);
    return r;
}

double ratio(const RamseySignal& s) {
    const double den = std::abs(s.slope);
    if (den == 0.0) return std::numeric_limits<double>::infinity();
    return std::sqrt(s.variance) / den;
}

RamseyPoint minimize_series(const TrigSeries& s, double tau, std::size_t points) {
    require(tau > 0.0, "interrogation time must be > 0");
    require(points >= 8, "need at least 8 scan points");
    // the signal is 2 pi periodic in omega * tau
    const double step = kTwoPi / double(points);
    std::size_t best = 0;
    double best_v = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < points; ++i) {
        const double v = ratio(eval_series(s, tau, double(i) * step / tau));
        if (v < best_v) {
            best_v = v;
            best = i;
        }
    }
    if (!std::isfinite(best_v)) fail(ErrorKind::Numerical, "Ramsey signal has no frequency dependence");
    auto f = [&](double x) { return ratio(eval_series(s, tau, x / tau)); };
    const double x0 = double(best) * step;
    auto r = boost::math::tools::brent_find_minima(f, x0 - step, x0 + step, 52);
    if (r.second > best_v) return {best_v, x0 / tau};
    return {r.second, r.first / tau};
}

EvolveOptions evolve_options(const RamseyOptions& opt) {
    EvolveOptions eo;
    eo.ode = opt.ode;
    eo.monitor_positivity = false;
    return eo;
}

} // namespace

CouplingMatrices independent_couplings(std::size_t n, double gamma) {
    require(n >= 1 && gamma > 0.0, "need N >= 1 and gamma > 0");
    CouplingMatrices c;
    c.omega = Eigen::MatrixXd::Zero(Eigen::Index(n), Eigen::Index(n));
    c.gamma = gamma * Eigen::MatrixXd::Identity(Eigen::Index(n), Eigen::Index(n));
    return c;
}

double ramsey_phase(std::size_t n, int m, std::size_t j) { return kTwoPi * double(m) * double(j) / double(n); }

RamseySignal ramsey_signal(const EmitterEnsemble& e, const CouplingMatrices& c, int m, double tau, double omega,
                           const RamseyOptions& opt) {
    require(tau >= 0.0, "interrogation time must be >= 0");
    const auto p = ramsey_prep(e, c, m, opt);
    cmat rho = p.rho0;
    if (tau > 0.0) rho = evolve_density(p.model, p.rho0, {0.0, tau}, evolve_options(opt)).back();
    return eval_series(ramsey_series(p, rho), tau, omega);
}

RamseyPoint ramsey_sensitivity(const EmitterEnsemble& e, const CouplingMatrices& c, int m, double tau,
                               const RamseyOptions& opt) {
    require(tau > 0.0, "interrogation time must be > 0");
    const auto p = ramsey_prep(e, c, m, opt);
    const cmat rho = evolve_density(p.model, p.rho0, {0.0, tau}, evolve_options(opt)).back();
    return minimize_series(ramsey_series(p, rho), tau, opt.scan_points);
}

RamseyResult ramsey_scan(const EmitterEnsemble& e, const CouplingMatrices& c, int m, const std::vector<double>& tau,
                         const RamseyOptions& opt) {
    require(!tau.empty(), "empty interrogation-time grid");
    require(std::is_sorted(tau.begin(), tau.end()) && tau.front() > 0.0, "tau grid must be positive and sorted");
    const auto p = ramsey_prep(e, c, m, opt);
    std::vector<double> times{0.0};
    times.insert(times.end(), tau.begin(), tau.end());
    const auto eo = evolve_options(opt);
    const auto rhos = evolve_density(p.model, p.rho0, times, eo);
    RamseyResult r;
    r.m = m;
    r.tau = tau;
    for (std::size_t i = 0; i < tau.size(); ++i)
        r.sensitivity.push_back(minimize_series(ramsey_series(p, rhos[i + 1]), tau[i], opt.scan_points).sensitivity);
    const auto it = std::min_element(r.sensitivity.begin(), r.sensitivity.end());
    const std::size_t i = std::size_t(it - r.sensitivity.begin());
    r.optimal_tau = tau[i];
    r.optimal_sensitivity = *it;
    if (i > 0 && i + 1 < tau.size()) {
        // vertex of the parabola through the three grid points around the minimum
        const double x0 = tau[i - 1], x1 = tau[i], x2 = tau[i + 1];
        const double y0 = r.sensitivity[i - 1], y1 = r.sensitivity[i], y2 = r.sensitivity[i + 1];
        const double num = (x1 - x0) * (x1 - x0) * (y1 - y2) - (x1 - x2) * (x1 - x2) * (y1 - y0);
        const double den = (x1 - x0) * (y1 - y2) - (x1 - x2) * (y1 - y0);
        if (den != 0.0) {
            const double xv = x1 - 0.5 * num / den;
            if (xv > x0 && xv < x2) {
                const cmat rho = evolve_density(p.model, p.rho0, {0.0, xv}, eo).back();
                const double v = minimize_series(ramsey_series(p, rho), xv, opt.scan_points).sensitivity;
                if (v < r.optimal_sensitivity) {
                    r.optimal_tau = xv;
                    r.optimal_sensitivity = v;
                }
            }
        }
    }
    return r;
}

TargetedDriveResult targeted_drive_evolution(const EmitterEnsemble& e, const CouplingMatrices& c, int k, double eta,
                                             double duration, const std::vector<double>& times) {
    const int n = int(e.size());
    require(k >= 1 && k <= n, "target mode k must be in 1..N");
    require(duration >= 0.0, "pulse duration must be >= 0");
    require(!times.empty() && std::is_sorted(times.begin(), times.end()) && times.front() >= 0.0,
            "output times must be sorted and non-negative");
    const auto spec = single_excitation_spectrum(c, 0.0);
    Eigen::VectorXd sine(n);
    for (int j = 1; j <= n; ++j) sine(j - 1) = sine_mode(n, j, k);
    Eigen::Index col = 0;
    (spec.modes.transpose() * sine).cwiseAbs().maxCoeff(&col);

    TargetedDriveResult r;
    r.target = k;
    r.target_column = col;
    r.drive_frequency = spec.energies(col);
    r.k_label = spec.k_label;
    r.mode_rates = spec.decay_rates;

    CollectiveDrive drive;
    for (int j = 1; j <= n; ++j) drive.eta.push_back(eta * std::sin(kPi * k * j / double(n + 1)));
    drive.detuning.assign(std::size_t(n), -r.drive_frequency);
    CollectiveDrive off = drive;
    std::fill(off.eta.begin(), off.eta.end(), cplx(0.0));
    const auto on_model = build_collective_model(e, c, drive);
    const auto off_model = build_collective_model(e, c, off);

    const Eigen::Index d = on_model.dim();
    cmat rho0 = cmat::Zero(d, d);
    rho0(0, 0) = 1.0;

    std::vector<double> t_on{0.0}, t_off{duration};
    for (double t : times) (t <= duration ? t_on : t_off).push_back(t);
    t_on.push_back(duration);
    const auto on = evolve_density(on_model, rho0, t_on);
    std::vector<cmat> states(on.begin() + 1, on.end() - 1);
    if (t_off.size() > 1) {
        const auto offr = evolve_density(off_model, on.back(), t_off);
        states.insert(states.end(), offr.begin() + 1, offr.end());
    }

    std::vector<cvec> kets;
    for (int q = 0; q < n; ++q) {
        cvec v = cvec::Zero(d);
        for (int j = 0; j < n; ++j) v(Eigen::Index(1) << (n - 1 - j)) = spec.modes(j, q);
        kets.push_back(v);
    }
    r.t = times;
    r.populations.resize(Eigen::Index(times.size()), n);
    for (std::size_t i = 0; i < states.size(); ++i) {
        for (int q = 0; q < n; ++q)
            r.populations(Eigen::Index(i), q) = (kets[std::size_t(q)].adjoint() * states[i] * kets[std::size_t(q)])(0, 0).real();
        r.ground.push_back(states[i](0, 0).real());
    }
    return r;
}

LindbladModel gradient_model(const CouplingMatrices& c, const GradientSegment& seg) {
    require(c.size() == 2, "gradient transfer is defined for two emitters");
    require(seg.duration >= 0.0, "segment duration must be >= 0");
    const std::vector<int> dims{2, 2};
    const cmat s0 = embed(sigma_minus(), 0, dims), s1 = embed(sigma_minus(), 1, dims);
    LindbladModel m;
    m.site_dims = dims;
    m.hamiltonian = -seg.laser_detuning * (s0.adjoint() * s0 + s1.adjoint() * s1) + seg.delta_b * s1.adjoint() * s1 +
                    c.omega(0, 1) * (s0.adjoint() * s1 + s1.adjoint() * s0) +
                    seg.eta * (s0 + s0.adjoint() + s1 + s1.adjoint());
    const auto ch = decay_channels(c.gamma);
    for (Eigen::Index k = 0; k < ch.rates.size(); ++k) {
        if (ch.rates(k) == 0.0) continue;
        m.collapse.push_back({ch.vectors(0, k) * s0 + ch.vectors(1, k) * s1, ch.rates(k)});
    }
    m.basis_labels = {"gg", "ge", "eg", "ee"};
    return m;
}

GradientTrajectory gradient_transfer(const CouplingMatrices& c, const std::vector<GradientSegment>& schedule,
                                     std::size_t samples_per_segment) {
    require(!schedule.empty(), "empty pulse schedule");
    require(samples_per_segment >= 1, "need at least one sample per segment");
    cvec plus = cvec::Zero(4), minus = cvec::Zero(4);
    plus(2) = plus(1) = minus(2) = 1.0 / std::sqrt(2.0);
    minus(1) = -1.0 / std::sqrt(2.0);
    cmat rho = cmat::Zero(4, 4);
    rho(0, 0) = 1.0;

    GradientTrajectory tr;
    auto record = [&](double t, const cmat& r) {
        tr.t.push_back(t);
        tr.symmetric.push_back((plus.adjoint() * r * plus)(0, 0).real());
        tr.antisymmetric.push_back((minus.adjoint() * r * minus)(0, 0).real());
        tr.doubly_excited.push_back(r(3, 3).real());
        tr.excitation.push_back(r(1, 1).real() + r(2, 2).real() + 2.0 * r(3, 3).real());
    };
    record(0.0, rho);
    double t0 = 0.0;
    for (const auto& seg : schedule) {
        const auto m = gradient_model(c, seg);
        if (seg.duration == 0.0) continue;
        std::vector<double> ts{0.0};
        for (std::size_t i = 1; i <= samples_per_segment; ++i)
            ts.push_back(seg.duration * double(i) / double(samples_per_segment));
        const auto rs = evolve_density(m, rho, ts);
        for (std::size_t i = 1; i < rs.size(); ++i) record(t0 + ts[i], rs[i]);
        rho = rs.back();
        t0 += seg.duration;
    }
    return tr;
}

Eigen::Matrix4cd gradient_pulse_unitary(double delta_b_tau) {
    Eigen::Matrix4cd u = Eigen::Matrix4cd::Identity();
    u(1, 1) = u(3, 3) = std::exp(-I1 * delta_b_tau);
    return u;
}

std::vector<GradientSegment> default_gradient_schedule(const CouplingMatrices& c, double eta, double delta_b,
                                                       double hold) {
    require(c.size() == 2, "gradient transfer is defined for two emitters");
    require(eta > 0.0 && delta_b > 0.0 && hold >= 0.0, "need eta > 0, Delta_B > 0, hold >= 0");
    const double om = c.omega(0, 1);
    // <+|H|G> = sqrt(2) eta, so a pi pulse lasts pi / (2 sqrt(2) eta)
    GradientSegment drive{kPi / (2.0 * std::sqrt(2.0) * eta), eta, om, 0.0};
    GradientSegment grad{kPi / delta_b, 0.0, om, delta_b};
    GradientSegment wait{hold, 0.0, om, 0.0};
    return {drive, grad, wait};
}

CouplingMatrices symmetric_mode_couplings(const CouplingMatrices& c) {
    const Eigen::Index n = c.size() - 1;
    require(n >= 1, "need a center and at least one ring site");
    Eigen::MatrixXd v = Eigen::MatrixXd::Zero(n + 1, 2);
    v(0, 0) = 1.0;
    v.col(1).tail(n).setConstant(1.0 / std::sqrt(double(n)));
    CouplingMatrices r;
    r.omega = v.transpose() * c.omega * v;
    r.gamma = v.transpose() * c.gamma * v;
    return r;
}

RingLaserResult ring_laser(const EmitterEnsemble& e, const std::vector<double>& gamma_p, RingModel model) {
    require(e.size() >= 3, "ring laser needs a center and at least two ring sites");
    const auto c = coupling_matrices(e);
    const Eigen::Index n = c.size() - 1;
    RingLaserResult out;
    for (Eigen::Index j = 2; j <= n; ++j) out.omega_sym += c.omega(1, j);

    CouplingMatrices cm = c;
    EmitterEnsemble em = e;
    std::vector<WeightedOp> field;
    if (model == RingModel::SymmetricMode) {
        cm = symmetric_mode_couplings(c);
        em.positions = {e.positions[0], e.positions[1]};
    }
    const auto base = build_collective_model(em, cm);
    const std::vector<int>& dims = base.site_dims;
    std::vector<cmat> sm;
    for (std::size_t j = 0; j < dims.size(); ++j) sm.push_back(embed(sigma_minus(), int(j), dims));
    if (model == RingModel::SymmetricMode)
        field = {{1.0, sm[0]}, {std::sqrt(double(n)), sm[1]}};
    else
        for (const auto& s : sm) field.push_back({1.0, s});

    for (double gp : gamma_p) {
        require(gp >= 0.0, "pump rate must be >= 0");
        LindbladModel m = base;
        if (gp > 0.0) m.collapse.push_back({sm[0].adjoint(), gp});
        const cmat rho = steady_state(m);
        RingLaserPoint pt;
        pt.gamma_p = gp;
        pt.g2 = g2_zero(rho, field);
        double rate = 0.0;
        for (std::size_t i = 0; i < sm.size(); ++i)
            for (std::size_t j = 0; j < sm.size(); ++j)
                rate += cm.gamma(Eigen::Index(i), Eigen::Index(j)) * expect(rho, sm[i].adjoint() * sm[j]).real();
        pt.emission_rate = 2.0 * rate;
        pt.center_population = expect(rho, sm[0].adjoint() * sm[0]).real();
        for (std::size_t j = 1; j < sm.size(); ++j) pt.ring_population += expect(rho, sm[j].adjoint() * sm[j]).real();
        out.points.push_back(pt);
    }
    return out;
}

} // namespace coop
