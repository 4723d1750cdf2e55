#include <cmath>
#include <random>

#include "coop/array_optics.hpp"
#include "coop/band_structure.hpp"
#include "coop/cavity_qed.hpp"
#include "coop/collective_modes.hpp"
#include "coop/errors.hpp"
#include "coop/geometry.hpp"
#include "coop/hybrid_cavity.hpp"
#include "coop/molecular.hpp"
#include "coop/ode.hpp"
#include "coop/protocols.hpp"
#include "coop/vacuum_coupling.hpp"
#include "ensemble_io.hpp"
#include "scenario.hpp"

namespace coopsim {

using coop::cplx;
using coop::require;

namespace {

const char* kEmitterUnits = "lengths in lambda0 (k0 = 2 pi / lambda0), rates and frequencies in gamma, times in 1/gamma";

ParamSpec real_p(std::string key, std::string def, std::string unit, std::string help) {
    return {std::move(key), ParamType::Real, std::move(def), std::move(unit), std::move(help), {}};
}
ParamSpec int_p(std::string key, std::string def, std::string help) {
    return {std::move(key), ParamType::Integer, std::move(def), "1", std::move(help), {}};
}
ParamSpec text_p(std::string key, std::string def, std::string help, std::vector<std::string> choices) {
    return {std::move(key), ParamType::Text, std::move(def), "", std::move(help), std::move(choices)};
}
ParamSpec reals_p(std::string key, std::string def, std::string unit, std::string help) {
    return {std::move(key), ParamType::RealList, std::move(def), std::move(unit), std::move(help), {}};
}
ParamSpec ints_p(std::string key, std::string def, std::string help) {
    return {std::move(key), ParamType::IntList, std::move(def), "1", std::move(help), {}};
}
ParamSpec orientation_p(std::string def) {
    return text_p("orientation", std::move(def), "dipole axis", {"x", "y", "z"});
}

Eigen::Vector3d axis(const std::string& s) {
    if (s == "x") return coop::axis_x();
    if (s == "y") return coop::axis_y();
    return coop::axis_z();
}

std::size_t count(const ParamTable& p, const std::string& key, int min) {
    const int n = p.integer(key);
    require(n >= min, "parameter '" + key + "' must be >= " + std::to_string(min));
    return std::size_t(n);
}

std::vector<double> logspace(double lo, double hi, std::size_t n) {
    require(lo > 0.0 && hi > lo, "log grid needs 0 < min < max");
    auto v = coop::linspace(std::log(lo), std::log(hi), n);
    for (auto& x : v) x = std::exp(x);
    return v;
}

Table make_table(std::string name, std::vector<Column> cols) {
    Table t;
    t.name = std::move(name);
    t.columns = std::move(cols);
    return t;
}

// ---- vacuum coupling ----

std::vector<Table> run_couplings(const ParamTable& p, const RunContext&) {
    const std::string geom = p.text("geometry");
    const std::size_t n = count(p, "n", 1);
    const double a = p.real("a");
    const auto o = axis(p.text("orientation"));
    coop::EmitterEnsemble e;
    if (geom == "file") {
        require(p.text("ensemble_file") != "-", "geometry = file needs 'ensemble_file'");
        e = load_ensemble(p.text("ensemble_file"));
    } else if (geom == "chain")
        e = coop::build_chain(n, a, o);
    else if (geom == "ring")
        e = coop::build_ring(n, a, false, o);
    else if (geom == "ring_center")
        e = coop::build_ring(n, a, true, o);
    else
        e = coop::build_square_array(n, n, a, o);
    if (p.text("save_ensemble") != "-") save_ensemble(p.text("save_ensemble"), e);
    const auto c = coop::coupling_matrices(e);
    Table t = make_table("", {{"i", "1"}, {"j", "1"}, {"omega_ij", "gamma"}, {"gamma_ij", "gamma"}});
    for (Eigen::Index i = 0; i < c.size(); ++i)
        for (Eigen::Index j = 0; j < c.size(); ++j) t.add_row({double(i), double(j), c.omega(i, j), c.gamma(i, j)});
    t.note("emitters", double(e.size()));
    t.note("min_gamma_eigenvalue", c.min_gamma_eigenvalue());
    return {t};
}

std::vector<Table> run_fig22b(const ParamTable& p, const RunContext&) {
    const auto kr = coop::linspace(p.real("kr_min"), p.real("kr_max"), count(p, "points", 2));
    require(kr.front() > 0.0, "kr_min must be > 0");
    Table t = make_table("", {{"k0a", "1"},
                              {"omega12_parallel", "gamma"},
                              {"gamma12_parallel", "gamma"},
                              {"omega12_perpendicular", "gamma"},
                              {"gamma12_perpendicular", "gamma"}});
    for (double x : kr) {
        const double a = x / coop::kK0;
        const auto par = coop::coupling_matrices(coop::build_chain(2, a, coop::axis_x()));
        const auto perp = coop::coupling_matrices(coop::build_chain(2, a, coop::axis_z()));
        t.add_row({x, par.omega(0, 1), par.gamma(0, 1), perp.omega(0, 1), perp.gamma(0, 1)});
    }
    return {t};
}

// ---- collective modes ----

std::vector<Table> run_fig23b(const ParamTable& p, const RunContext& ctx) {
    const double a = p.real("a");
    const auto o = axis(p.text("orientation"));
    const int lo = p.integer("n_min"), hi = p.integer("n_max");
    require(lo >= 2 && hi > lo, "need 2 <= n_min < n_max");
    std::vector<int> ns;
    for (int n = lo; n <= hi; ++n) ns.push_back(n);
    auto full = coop::subradiance_scaling(a, o, ns, coop::SubradianceMode::HamiltonianEigenstates);
    // eigenvalues of the decay matrix alone sit at roundoff level for a < lambda0/2, so no fit
    auto extra = parallel_map<std::pair<double, double>>(ns.size(), ctx.jobs, [&](std::size_t i) {
        const auto c = coop::coupling_matrices(coop::build_chain(std::size_t(ns[i]), a, o));
        return std::make_pair(c.min_gamma_eigenvalue(), coop::single_excitation_spectrum(c, 0.0).decay_rates.maxCoeff());
    });
    Table t = make_table("", {{"N", "1"}, {"gamma_min", "gamma"}, {"gamma_min_decay_matrix", "gamma"}, {"gamma_max", "gamma"}});
    for (std::size_t i = 0; i < ns.size(); ++i) t.add_row({double(ns[i]), full.min_rates[i], extra[i].first, extra[i].second});
    t.note("exponent_gamma_min", full.exponent);
    return {t};
}

std::vector<Table> run_fig24b(const ParamTable& p, const RunContext&) {
    const int n = p.integer("n");
    require(n >= 1, "n must be >= 1");
    const auto ts = coop::linspace(0.0, p.real("t_max"), count(p, "points", 2));
    const auto tr = coop::dicke_evolve(n, 1.0, ts);
    Table t = make_table("", {{"t", "1/gamma"},
                              {"sz", "1"},
                              {"spsm", "1"},
                              {"emission_rate", "gamma"},
                              {"gamma_sup", "gamma"},
                              {"sz_independent", "1"}});
    double peak = 0.0, at = 0.0;
    for (std::size_t i = 0; i < tr.t.size(); ++i) {
        const double rate = 2.0 * tr.spsm[i];
        if (rate > peak) {
            peak = rate;
            at = tr.t[i];
        }
        t.add_row({tr.t[i], tr.sz[i], tr.spsm[i], rate, tr.gamma_sup[i], n * (std::exp(-2.0 * tr.t[i]) - 0.5)});
    }
    t.note("initial_emission_rate", 2.0 * tr.spsm.front());
    t.note("peak_emission_rate", peak);
    t.note("peak_time", at);
    t.note("gamma_n2_over_2", 0.5 * double(n) * n);
    return {t};
}

// ---- band structure ----

void add_band_rows(Table& t, const std::vector<double>& q, double a, const std::vector<std::vector<cplx>>& branches,
                   int branch_offset = 0) {
    for (std::size_t i = 0; i < q.size(); ++i)
        for (std::size_t b = 0; b < branches[i].size(); ++b)
            t.add_row({q[i] * a / coop::kPi, branches[i][b].real(), branches[i][b].imag(), double(int(b) + branch_offset)});
}

std::vector<Column> band_columns() {
    return {{"q_a_over_pi", "1"}, {"re_omega", "gamma"}, {"im_omega", "gamma"}, {"branch", "1"}};
}

std::vector<Table> run_fig31(const ParamTable& p, const RunContext&) {
    const int n = p.integer("n");
    const double a = p.real("a");
    const int qp = p.integer("q_points");
    require(n >= 2 && n % 2 == 0, "n must be even and >= 2");
    require(qp >= 8, "q_points must be >= 8");
    const double om_perp = coop::coupling_matrices(coop::build_chain(2, a, coop::axis_z())).omega(0, 1);
    const double om_par = coop::coupling_matrices(coop::build_chain(2, a, coop::axis_x())).omega(0, 1);

    Table nn = make_table("nn", band_columns());
    const auto bp = coop::dispersion_nn(0.0, om_perp, a, n);
    const auto bl = coop::dispersion_nn(0.0, om_par, a, n);
    add_band_rows(nn, bp.q, a, bp.branches, 0);
    add_band_rows(nn, bl.q, a, bl.branches, 1);
    nn.note("branch", "0 = dipoles perpendicular to the chain, 1 = parallel");
    nn.note("omega_nn_perpendicular", om_perp);
    nn.note("omega_nn_parallel", om_par);

    Table full = make_table("full", band_columns());
    coop::FullDispersionOptions fo;
    fo.q_points = qp;
    const auto bf = coop::dispersion_full(coop::build_chain(std::size_t(n), a, coop::axis_z()), fo);
    add_band_rows(full, bf.q, a, bf.branches);
    full.note("light_cone_q_a_over_pi", coop::light_cone(a));
    full.note("orientation", "dipoles perpendicular to the chain");

    Table two = make_table("two_species", band_columns());
    coop::TwoBandParams tp{p.real("omega1"), p.real("omega2"), om_perp};
    const auto q2 = coop::linspace(-coop::kPi / (2.0 * a), coop::kPi / (2.0 * a), std::size_t(qp));
    for (double q : q2) {
        const auto [lo, hi] = coop::two_band_dispersion(coop::TwoBandKind::AlternatingFrequency, tp, q, a);
        two.add_row({q * a / coop::kPi, lo, 0.0, 0.0});
        two.add_row({q * a / coop::kPi, hi, 0.0, 1.0});
    }
    two.note("gap", std::abs(tp.p1 - tp.p2));
    return {nn, full, two};
}

std::vector<Table> run_fig32c(const ParamTable& p, const RunContext&) {
    const double o1 = p.real("omega1"), o2 = p.real("omega2"), a = p.real("a");
    const auto q = coop::linspace(-coop::kPi / (2.0 * a), coop::kPi / (2.0 * a), count(p, "q_points", 64));
    const auto w1 = coop::berry_phase_and_winding(o1, o2, q, a);
    const auto w2 = coop::berry_phase_and_winding(o2, o1, q, a);
    Table t = make_table("", {{"q_a_over_pi", "1"},
                              {"phase_omega1_gt_omega2", "rad"},
                              {"phase_omega1_lt_omega2", "rad"},
                              {"lower_band", "gamma"},
                              {"upper_band", "gamma"}});
    const coop::TwoBandParams tp{0.0, std::max(o1, o2), std::min(o1, o2)};
    for (std::size_t i = 0; i < q.size(); ++i) {
        const auto [lo, hi] = coop::two_band_dispersion(coop::TwoBandKind::Ssh, tp, q[i], a);
        t.add_row({q[i] * a / coop::kPi, w1.accumulated[i], w2.accumulated[i], lo, hi});
    }
    t.note("winding_omega1_gt_omega2", double(w1.winding));
    t.note("winding_omega1_lt_omega2", double(w2.winding));
    return {t};
}

// ---- protocols ----

std::vector<Table> run_fig33a(const ParamTable& p, const RunContext& ctx) {
    const std::size_t n = count(p, "n", 2);
    const int m = p.integer("m");
    const auto e = coop::build_chain(n, p.real("a"), axis(p.text("orientation")));
    const auto c = coop::coupling_matrices(e);
    const auto tau = coop::linspace(p.real("tau_min"), p.real("tau_max"), count(p, "tau_points", 3));
    const auto runs = parallel_map<coop::RamseyResult>(3, ctx.jobs, [&](std::size_t i) {
        if (i == 0) return coop::ramsey_scan(e, c, 0, tau);
        if (i == 1) return coop::ramsey_scan(e, c, m, tau);
        return coop::ramsey_scan(e, coop::independent_couplings(n), 0, tau);
    });
    Table t = make_table("", {{"tau", "1/gamma"},
                              {"sensitivity_symmetric", "gamma"},
                              {"sensitivity_phased", "gamma"},
                              {"sensitivity_independent", "gamma"},
                              {"independent_law", "gamma"}});
    for (std::size_t i = 0; i < tau.size(); ++i)
        t.add_row({tau[i], runs[0].sensitivity[i], runs[1].sensitivity[i], runs[2].sensitivity[i],
                   std::exp(tau[i]) / (tau[i] * std::sqrt(double(n)))});
    const char* label[] = {"symmetric", "phased", "independent"};
    for (int i = 0; i < 3; ++i) {
        t.note(std::string("optimal_tau_") + label[i], runs[std::size_t(i)].optimal_tau);
        t.note(std::string("optimal_sensitivity_") + label[i], runs[std::size_t(i)].optimal_sensitivity);
    }
    return {t};
}

std::vector<Table> run_fig33b(const ParamTable& p, const RunContext&) {
    const auto c = coop::coupling_matrices(coop::build_chain(2, p.real("a"), axis(p.text("orientation"))));
    const auto sch = coop::default_gradient_schedule(c, p.real("eta"), p.real("delta_b"), p.real("hold"));
    const auto tr = coop::gradient_transfer(c, sch, count(p, "samples", 2));
    Table t = make_table("", {{"t", "1/gamma"},
                              {"p_symmetric", "1"},
                              {"p_antisymmetric", "1"},
                              {"p_doubly_excited", "1"},
                              {"excitation", "1"}});
    for (std::size_t i = 0; i < tr.t.size(); ++i)
        t.add_row({tr.t[i], tr.symmetric[i], tr.antisymmetric[i], tr.doubly_excited[i], tr.excitation[i]});
    t.note("omega12", c.omega(0, 1));
    t.note("gamma12", c.gamma(0, 1));
    t.note("pulse_end", sch[0].duration + sch[1].duration);
    t.note("antisymmetric_decay_rate", 2.0 * (c.gamma(0, 0) - c.gamma(0, 1)));
    t.note("independent_decay_rate", 2.0 * c.gamma(0, 0));
    return {t};
}

std::vector<Table> run_fig33c(const ParamTable& p, const RunContext& ctx) {
    const auto ring = coop::build_ring(count(p, "n", 2), p.real("a"), true, axis(p.text("orientation")));
    const auto model = p.text("model") == "full" ? coop::RingModel::Full : coop::RingModel::SymmetricMode;
    const auto gp = logspace(p.real("gamma_p_min"), p.real("gamma_p_max"), count(p, "points", 2));
    const auto pts = parallel_map<coop::RingLaserResult>(gp.size(), ctx.jobs, [&](std::size_t i) {
        return coop::ring_laser(ring, {gp[i]}, model);
    });
    Table t = make_table("", {{"gamma_p", "gamma"},
                              {"g2", "1"},
                              {"emission_rate", "gamma"},
                              {"center_population", "1"},
                              {"ring_population", "1"}});
    for (const auto& r : pts) {
        const auto& q = r.points.front();
        t.add_row({q.gamma_p, q.g2, q.emission_rate, q.center_population, q.ring_population});
    }
    t.note("omega_sym", pts.front().omega_sym);
    return {t};
}

// ---- array optics ----

std::vector<Table> run_array_sweep(const ParamTable& p, const RunContext& ctx, bool reflection) {
    const std::size_t n = count(p, "n", 1);
    const auto o = axis(p.text("orientation"));
    const auto as = coop::linspace(p.real("a_min"), p.real("a_max"), count(p, "points", 2));
    require(as.front() > 0.0, "a_min must be > 0");
    const auto rates = parallel_map<coop::EffectiveRates>(as.size(), ctx.jobs, [&](std::size_t i) {
        return coop::effective_rates(coop::build_square_array(n, n, as[i], o), n, n);
    });
    Table t;
    if (reflection)
        t = make_table("", {{"a", "lambda0"}, {"omega_eff", "gamma"}, {"gamma_eff", "gamma"}, {"r2", "1"}, {"t2", "1"}});
    else
        t = make_table("", {{"a", "lambda0"}, {"omega_eff", "gamma"}, {"gamma_eff", "gamma"}, {"gamma_eff_approx", "gamma"}});
    for (std::size_t i = 0; i < as.size(); ++i) {
        const auto& r = rates[i];
        if (reflection) {
            const auto rt = coop::reflectivity(r.omega_eff, r.gamma_eff, 0.0, 0.0);
            t.add_row({as[i], r.omega_eff, r.gamma_eff, std::norm(rt.r), std::norm(rt.t)});
        } else {
            t.add_row({as[i], r.omega_eff, r.gamma_eff, coop::gamma_eff_approx(as[i])});
        }
    }
    return {t};
}

std::vector<Table> run_fig34e(const ParamTable& p, const RunContext& ctx) {
    const std::size_t n = count(p, "n", 1);
    const double a = p.real("a"), step = p.real("step");
    require(step > 0.0, "step must be > 0");
    const auto arr = coop::build_square_array(n, n, a, axis(p.text("orientation")));
    const auto c = coop::coupling_matrices(arr);
    const Eigen::VectorXcd beta = coop::steady_dipoles(c, Eigen::VectorXcd::Ones(Eigen::Index(n * n)), 1.0, p.real("delta"));
    const double xc = 0.5 * a * double(n - 1), yc = xc;
    const double yh = p.real("y_half");
    const auto ys = coop::linspace(yc - yh, yc + yh, std::size_t(std::floor(2.0 * yh / step + 1e-9)) + 1);
    const auto zs = coop::linspace(p.real("z_min"), p.real("z_max"),
                                   std::size_t(std::floor((p.real("z_max") - p.real("z_min")) / step + 1e-9)) + 1);
    const auto rows = parallel_map<std::vector<double>>(zs.size(), ctx.jobs, [&](std::size_t iz) {
        std::vector<double> out;
        for (double y : ys) {
            const Eigen::Vector3d pt(xc, y, zs[iz]);
            bool near = false;
            for (const auto& r : arr.positions) near = near || (pt - r).norm() < 0.02;
            out.push_back(near ? std::nan("") : coop::intensity_profile(arr, beta, 1.0, coop::kK0, {pt}).front());
        }
        return out;
    });
    Table t = make_table("", {{"y", "lambda0"}, {"z", "lambda0"}, {"intensity", "incident"}});
    for (std::size_t iz = 0; iz < zs.size(); ++iz)
        for (std::size_t iy = 0; iy < ys.size(); ++iy) t.add_row({ys[iy] - yc, zs[iz], rows[iz][iy]});
    const double side = a * double(n - 1);
    t.note("mean_intensity_behind", coop::mean_intensity_behind(arr, beta, 1.0, coop::kK0, side / 4.0, 2.0, 8.0, 0.25));
    t.note("shadow_window", "x = array centre, |y| <= side/4, 2 <= z <= 8 lambda0");
    return {t};
}

std::vector<Table> run_fig34f(const ParamTable& p, const RunContext&) {
    const double a = p.real("a");
    const auto sides = p.integers("sides");
    const auto o = axis(p.text("orientation"));
    const auto cb = coop::phased_subradiance(a, sides, coop::DrivePattern::Checkerboard, o);
    const auto un = coop::phased_subradiance(a, sides, coop::DrivePattern::Uniform, o);
    Table t = make_table("", {{"side", "1"}, {"N", "1"}, {"rate_checkerboard", "gamma"}, {"rate_uniform", "gamma"}});
    for (std::size_t i = 0; i < sides.size(); ++i)
        t.add_row({double(sides[i]), double(sides[i]) * sides[i], cb.rates[i], un.rates[i]});
    t.note("exponent_checkerboard_vs_side", cb.exponent_vs_side);
    t.note("exponent_checkerboard_vs_n", cb.exponent_vs_n);
    t.note("exponent_uniform_vs_n", un.exponent_vs_n);
    return {t};
}

// ---- cavity QED ----

std::vector<Table> run_fig41(const ParamTable& p, const RunContext& ctx) {
    const auto det = coop::linspace(p.real("det_min"), p.real("det_max"), count(p, "points", 2));
    const auto res = parallel_map<coop::JcResult>(det.size(), ctx.jobs, [&](std::size_t i) {
        coop::JcParams jp;
        jp.g = p.real("g");
        jp.kappa = p.real("kappa");
        jp.gamma = p.real("gamma");
        jp.eta = p.real("eta");
        jp.n_fock = p.integer("n_fock");
        jp.cavity_detuning = det[i];
        jp.emitter_detuning = 0.0;
        return coop::jaynes_cummings_g2(jp);
    });
    Table t = make_table("", {{"cavity_detuning", "kappa"}, {"g2", "1"}, {"photons", "1"}});
    for (std::size_t i = 0; i < det.size(); ++i) t.add_row({det[i], res[i].g2, res[i].photons});
    t.note("laser", "resonant with the emitter; cavity_detuning = omega_c - omega0");
    return {t};
}

std::vector<Table> run_fig51(const ParamTable& p, const RunContext& ctx) {
    const double kappa = p.real("kappa"), gamma = p.real("gamma");
    const int lo = p.integer("n_min"), hi = p.integer("n_max");
    require(lo >= 1 && hi >= lo, "need 1 <= n_min <= n_max");
    std::vector<int> ns;
    for (int n = lo; n <= hi; ++n) ns.push_back(n);
    const auto sc = parallel_map<coop::CooperativityScaling>(2, ctx.jobs, [&](std::size_t i) {
        return coop::cooperativity_scaling(p.real("a"), kappa, p.real("g"), ns, i == 1, gamma);
    });
    Table ce = make_table("cooperativity", {{"N", "1"},
                                            {"ceff_symmetric", "1"},
                                            {"delta_symmetric", "kappa"},
                                            {"ceff_alternating", "1"},
                                            {"delta_alternating", "kappa"}});
    for (std::size_t i = 0; i < ns.size(); ++i)
        ce.add_row({double(ns[i]), sc[0].peak[i], sc[0].peak_delta[i], sc[1].peak[i], sc[1].peak_delta[i]});
    ce.note("slope_symmetric", sc[0].slope);
    ce.note("slope_alternating", sc[1].slope);

    const std::size_t nt = count(p, "trans_n", 1);
    const double gt = p.real("trans_g");
    const auto chain = coop::build_chain(nt, p.real("trans_a"), coop::axis_z(), 0.0, gamma);
    const auto cm = coop::coupling_matrices(chain);
    auto system = [&](bool alternating, bool coupled) {
        auto s = coop::make_cavity(alternating ? coop::alternating_couplings(nt, gt) : coop::symmetric_couplings(nt, gt),
                                   kappa, 0.0, gamma);
        if (coupled) s.coupling = cm;
        return s;
    };
    const auto sa = system(true, true), ss = system(false, true), ia = system(true, false), is = system(false, false);
    const double span = p.real("delta_span");
    const auto dl = coop::linspace(-span, span, count(p, "points", 2));
    Table tr = make_table("transmission", {{"delta", "kappa"},
                                           {"t2_alternating", "1"},
                                           {"t2_symmetric", "1"},
                                           {"t2_independent_alternating", "1"},
                                           {"t2_independent_symmetric", "1"}});
    for (double d : dl)
        tr.add_row({d, std::norm(coop::cavity_transmission(sa, d)), std::norm(coop::cavity_transmission(ss, d)),
                    std::norm(coop::cavity_transmission(ia, d)), std::norm(coop::cavity_transmission(is, d))});
    tr.note("delta", "omega_l - omega_c, emitters and cavity resonant");
    return {ce, tr};
}

// ---- hybrid cavity ----

std::vector<Table> run_hybrid(const ParamTable& p, const RunContext&, bool double_sided) {
    const double zeta0 = p.real("zeta0"), fsr = p.real("omega_fsr"), span = p.real("span");
    const int m = p.integer("m");
    const std::size_t pts = count(p, "points", 2);
    std::vector<Column> cols{{"gamma_d_over_fsr", "1"}, {"detuning_over_gamma_d", "1"}, {"t2", "1"}, {"arg_t", "rad"}};
    if (!double_sided) {
        cols.push_back({"t2_coupled_mode", "1"});
        cols.push_back({"t2_flat_lorentzian", "1"});
    }
    Table t = make_table("", cols);
    for (double ratio : p.reals("gamma_d_ratios")) {
        const auto d = coop::design_hybrid(zeta0, ratio * fsr, fsr, m);
        const auto right = double_sided ? d.right_array() : d.right();
        const auto cm = coop::extract_parameters(d);
        for (double x : coop::linspace(-span, span, pts)) {
            const double w = d.omega_m + x * d.gamma_d;
            if (w == d.omega_d || (double_sided && w == right.omega_d)) {
                // mirror pole: the array is a perfect reflector here
                std::vector<double> row{ratio, x, 0.0, std::nan("")};
                if (!double_sided) {
                    row.push_back(std::norm(coop::coupled_mode_transmission(cm, w)));
                    row.push_back(std::nan(""));
                }
                t.add_row(row);
                continue;
            }
            const cplx tt = coop::transfer_matrix_transmission(d.left(), right, d.length, w);
            std::vector<double> row{ratio, x, std::norm(tt), std::arg(tt)};
            if (!double_sided) {
                const double dw = w - d.omega_m;
                row.push_back(std::norm(coop::coupled_mode_transmission(cm, w)));
                row.push_back(d.kappa_flat * d.kappa_flat / (dw * dw + d.kappa_flat * d.kappa_flat));
            }
            t.add_row(row);
        }
        const std::string tag = format_number(ratio);
        if (!double_sided)
            t.note("hwhm_over_gamma_d[" + tag + "]", coop::transmission_hwhm(d.left(), right, d.length, d.omega_m) / d.gamma_d);
        t.note("kappa_flat_over_gamma_d[" + tag + "]", d.kappa_flat / d.gamma_d);
    }
    return {t};
}

// ---- superradiant laser ----

std::vector<Table> run_fig53(const ParamTable& p, const RunContext& ctx) {
    coop::LaserParams lp;
    lp.g = p.real("g");
    lp.kappa = p.real("kappa");
    lp.gamma = p.real("gamma");
    lp.n = p.real("n");
    const auto th = coop::laser_thresholds(lp.g, lp.kappa, lp.gamma, lp.n);
    const auto gp = logspace(p.real("gamma_p_min"), p.real("gamma_p_max"), count(p, "points", 2));
    Table st = make_table("steady", {{"gamma_p", "g"}, {"photons", "1"}, {"coherence", "1"}, {"sz", "1"}, {"lasing", "1"}});
    for (double x : gp) {
        auto q = lp;
        q.gamma_p = x;
        const auto s = coop::laser_steady(q);
        st.add_row({x, s.photons, s.coherence, s.sz, s.lasing ? 1.0 : 0.0});
    }
    st.note("lower_threshold", th.lower);
    st.note("upper_threshold", th.upper);

    auto q = lp;
    q.gamma_p = p.real("traj_gamma_p");
    if (q.gamma_p <= 0.0) {
        require(th.exists, "no lasing window for these parameters; set traj_gamma_p explicitly");
        q.gamma_p = std::sqrt(th.lower * th.upper);
    }
    std::mt19937_64 rng(ctx.seed);
    std::uniform_real_distribution<double> phase(0.0, coop::kTwoPi);
    const double amp = p.real("seed_amplitude");
    coop::LaserState init;
    init.alpha = std::polar(amp, phase(rng));
    init.s = std::polar(amp, phase(rng));
    init.sz = -0.5 * lp.n;
    const auto ts = coop::linspace(0.0, p.real("t_max"), count(p, "t_points", 2));
    const auto tr = coop::laser_meanfield(q, ts, init);
    Table tj = make_table("trajectory", {{"t", "1/g"}, {"photons", "1"}, {"coherence", "1"}, {"sz", "1"}});
    for (std::size_t i = 0; i < tr.t.size(); ++i) {
        const auto& s = tr.states[i];
        tj.add_row({tr.t[i], std::norm(s.alpha), std::norm(s.s), s.sz});
    }
    const auto ss = coop::laser_steady(q);
    tj.note("gamma_p", q.gamma_p);
    tj.note("steady_photons", ss.photons);
    tj.note("steady_coherence", ss.coherence);
    tj.note("coherence_over_photons", ss.photons > 0.0 ? ss.coherence / ss.photons : std::nan(""));
    return {st, tj};
}

// ---- disorder ----

std::vector<Table> run_disorder(const ParamTable& p, const RunContext& ctx) {
    const double gamma = p.real("gamma");
    const std::size_t n = count(p, "n", 2), draws = count(p, "draws", 1);
    const auto ws = logspace(p.real("w_min"), p.real("w_max"), count(p, "points", 2));
    const auto stats = parallel_map<coop::DarkRateStats>(ws.size(), ctx.jobs, [&](std::size_t i) {
        return coop::sample_dark_rates(ws[i], gamma, n, draws, ctx.seed + i);
    });
    Table t = make_table("", {{"w", "gamma"},
                              {"gamma_dark", "gamma"},
                              {"gamma_dark_std", "gamma"},
                              {"w2_over_gamma", "gamma"},
                              {"pi_w_over_4", "gamma"},
                              {"mesoscopic", "gamma"}});
    for (std::size_t i = 0; i < ws.size(); ++i)
        t.add_row({ws[i], stats[i].mean_gamma_dark, stats[i].std_gamma_dark, ws[i] * ws[i] / gamma, coop::kPi * ws[i] / 4.0,
                   coop::mesoscopic_gamma_dark(ws[i], gamma)});
    t.note("seeds", "draws at point i use seed + i");
    return {t};
}

// ---- molecular ----

std::vector<coop::VibrationalMode> fret_modes(const ParamTable& p) {
    std::vector<coop::VibrationalMode> modes;
    const int k = p.integer("modes");
    require(k >= 1, "modes must be >= 1");
    for (int i = 0; i < k; ++i) {
        coop::VibrationalMode m;
        m.nu = p.real("nu_min") + p.real("nu_step") * i;
        m.huang_rhys = p.real("huang_rhys");
        m.damping = p.real("damping");
        modes.push_back(m);
    }
    return modes;
}

std::vector<Table> run_fig64(const ParamTable& p, const RunContext&) {
    coop::MolecularModel mol;
    mol.modes = fret_modes(p);
    coop::LatticeOptions lo;
    lo.prune = p.real("prune");
    lo.max_missing = 1e-5;
    const auto lines = coop::fret_lines(mol, mol, lo);
    const double om = p.real("omega");
    const auto ds = coop::linspace(p.real("delta_min"), p.real("delta_max"), count(p, "points", 2));
    Table r = make_table("rate", {{"delta", "gamma"}, {"rate", "gamma"}, {"rate_reverse", "gamma"}});
    double best = 0.0, at = 0.0, ratio = 0.0;
    for (double d : ds) {
        const double f = coop::fret_rate_from_lines(lines, om, d), b = coop::fret_rate_from_lines(lines, om, -d);
        r.add_row({d, f, b});
        if (f > best) {
            best = f;
            at = d;
            ratio = f / b;
        }
    }
    r.note("delta", "donor minus acceptor transition frequency");
    r.note("peak_rate", best);
    r.note("peak_delta", at);
    r.note("peak_forward_over_reverse", ratio);

    const double wmax = p.real("nu_min") + p.real("nu_step") * double(mol.modes.size());
    const auto grid = coop::linspace(-1.2 * wmax, 1.2 * wmax, count(p, "spectrum_points", 2));
    const auto absn = coop::vibronic_spectrum(mol, coop::SpectrumKind::Absorption, grid, 1.0, lo);
    const auto emis = coop::vibronic_spectrum(mol, coop::SpectrumKind::Emission, grid, 1.0, lo);
    Table s = make_table("spectra", {{"omega", "gamma"}, {"absorption", "1/gamma"}, {"emission", "1/gamma"}, {"spectral_density", "gamma"}});
    for (std::size_t i = 0; i < grid.size(); ++i)
        s.add_row({grid[i], absn[i], emis[i], grid[i] > 0.0 ? coop::spectral_density(grid[i], mol.modes) : 0.0});
    s.note("omega", "measured from the zero-phonon line");
    return {r, s};
}

std::vector<Scenario> build_registry() {
    std::vector<Scenario> r;
    const std::string laser_units = "rates, frequencies and pump in g, times in 1/g";

    r.push_back({"couplings", "vacuum_coupling", "-", "Omega and Gamma matrices of a built-in geometry", kEmitterUnits,
                 {text_p("geometry", "chain", "emitter arrangement", {"chain", "ring", "ring_center", "square", "file"}),
                  int_p("n", "4", "emitters (per side for square)"), real_p("a", "0.25", "lambda0", "lattice constant or chord"),
                  orientation_p("z"), text_p("ensemble_file", "-", "ensemble INI to load when geometry = file", {}),
                  text_p("save_ensemble", "-", "write the ensemble as INI to this path", {})},
                 {}, "", run_couplings});
    r.push_back({"fig22b", "vacuum_coupling", "fig22b", "two-emitter Omega12 and gamma12 against k0 a", kEmitterUnits,
                 {real_p("kr_min", "0.2", "1", "smallest k0 a"), real_p("kr_max", "20", "1", "largest k0 a"),
                  int_p("points", "400", "samples")},
                 {}, "", run_fig22b});
    r.push_back({"fig23b", "collective_modes", "fig23b", "most sub- and superradiant single-excitation rates of a chain",
                 kEmitterUnits,
                 {real_p("a", "0.25", "lambda0", "spacing"), orientation_p("z"), int_p("n_min", "4", "smallest chain"),
                  int_p("n_max", "40", "largest chain")},
                 {}, "", run_fig23b});
    r.push_back({"fig24b", "collective_modes", "fig24b", "Dicke superradiant burst from the fully excited state",
                 kEmitterUnits,
                 {int_p("n", "100", "emitters"), real_p("t_max", "0.15", "1/gamma", "end time"),
                  int_p("points", "301", "samples")},
                 {}, "", run_fig24b});
    r.push_back({"fig31", "band_structure", "fig31", "chain band structures: nearest neighbour, full coupling, two species",
                 kEmitterUnits,
                 {int_p("n", "200", "emitters (even)"), real_p("a", "0.2", "lambda0", "spacing"),
                  int_p("q_points", "512", "uniform quasimomentum samples"),
                  real_p("omega1", "1", "gamma", "species 1 detuning"), real_p("omega2", "-1", "gamma", "species 2 detuning")},
                 {}, "", run_fig31});
    r.push_back({"fig32c", "band_structure", "fig32c", "SSH accumulated Berry phase for both coupling orderings",
                 kEmitterUnits,
                 {real_p("omega1", "1", "gamma", "intra-cell coupling"), real_p("omega2", "0.5", "gamma", "inter-cell coupling"),
                  real_p("a", "0.25", "lambda0", "spacing"), int_p("q_points", "512", "samples over the double-cell zone")},
                 {}, "", run_fig32c});
    r.push_back({"fig33a", "protocols", "fig33a", "phased Ramsey sensitivity against interrogation time", kEmitterUnits,
                 {int_p("n", "6", "emitters"), real_p("a", "0.2", "lambda0", "spacing"), orientation_p("z"),
                  int_p("m", "3", "phase pattern index"), real_p("tau_min", "0.25", "1/gamma", "first tau"),
                  real_p("tau_max", "6", "1/gamma", "last tau"), int_p("tau_points", "24", "tau samples")},
                 {}, "", run_fig33a});
    r.push_back({"fig33b", "protocols", "fig33b", "gradient transfer of two emitters into the antisymmetric state",
                 kEmitterUnits,
                 {real_p("a", "0.1", "lambda0", "spacing"), orientation_p("z"), real_p("eta", "2", "gamma", "drive amplitude"),
                  real_p("delta_b", "300", "gamma", "gradient strength"), real_p("hold", "5", "1/gamma", "free decay time"),
                  int_p("samples", "50", "samples per segment")},
                 {}, "", run_fig33b});
    r.push_back({"fig33c", "protocols", "fig33c", "pumped ring nanolaser g2(0) against pump rate", kEmitterUnits,
                 {int_p("n", "5", "ring emitters"), real_p("a", "0.5", "lambda0", "chord"), orientation_p("z"),
                  real_p("gamma_p_min", "0.01", "gamma", "smallest pump"), real_p("gamma_p_max", "1000", "gamma", "largest pump"),
                  int_p("points", "21", "pump samples (log spaced)"),
                  text_p("model", "full", "full Hilbert space or symmetric-mode reduction", {"full", "symmetric"})},
                 {}, "", run_fig33c});
    r.push_back({"fig34c", "array_optics", "fig34c", "effective shift and decay of a square array against lattice constant",
                 kEmitterUnits,
                 {int_p("n", "20", "emitters per side"), real_p("a_min", "0.1", "lambda0", "smallest spacing"),
                  real_p("a_max", "1.0", "lambda0", "largest spacing"), int_p("points", "46", "samples"), orientation_p("x")},
                 {}, "", [](const ParamTable& p, const RunContext& c) { return run_array_sweep(p, c, false); }});
    r.push_back({"fig34d", "array_optics", "fig34d", "resonant reflection and transmission of a square array", kEmitterUnits,
                 {int_p("n", "20", "emitters per side"), real_p("a_min", "0.1", "lambda0", "smallest spacing"),
                  real_p("a_max", "1.0", "lambda0", "largest spacing"), int_p("points", "46", "samples"), orientation_p("x")},
                 {}, "", [](const ParamTable& p, const RunContext& c) { return run_array_sweep(p, c, true); }});
    r.push_back({"fig34e", "array_optics", "fig34e", "intensity map around a plane-wave driven array", kEmitterUnits,
                 {int_p("n", "12", "emitters per side"), real_p("a", "0.8", "lambda0", "spacing"), orientation_p("x"),
                  real_p("delta", "0", "gamma", "laser detuning from omega0"), real_p("y_half", "8", "lambda0", "half width in y"),
                  real_p("z_min", "-6", "lambda0", "first z"), real_p("z_max", "12", "lambda0", "last z"),
                  real_p("step", "0.1", "lambda0", "grid step")},
                 {}, "", run_fig34e});
    r.push_back({"fig34f", "array_optics", "fig34f", "decay of the checkerboard-addressed mode against array size",
                 kEmitterUnits,
                 {real_p("a", "0.2", "lambda0", "spacing"), ints_p("sides", "2,4,6,8,10,12", "even side lengths"),
                  orientation_p("x")},
                 {}, "", run_fig34f});
    r.push_back({"fig41", "cavity_qed", "fig41", "g2(0) of a driven emitter-cavity system against cavity detuning",
                 "rates and detunings in kappa",
                 {real_p("g", "0.3", "kappa", "coupling"), real_p("kappa", "1", "kappa", "cavity loss"),
                  real_p("gamma", "0.1", "kappa", "emitter decay"), real_p("eta", "0.005", "kappa", "drive"),
                  real_p("det_min", "-1", "kappa", "first detuning"), real_p("det_max", "1", "kappa", "last detuning"),
                  int_p("points", "201", "samples"), int_p("n_fock", "5", "photon cutoff")},
                 {}, "", run_fig41});
    r.push_back({"fig51", "cavity_qed", "fig51", "effective cooperativity scaling and chain transmission",
                 "rates and detunings in kappa, lengths in lambda0",
                 {real_p("a", "0.1", "lambda0", "spacing"), real_p("kappa", "1", "kappa", "cavity loss"),
                  real_p("gamma", "0.05", "kappa", "emitter decay"), real_p("g", "0.01", "kappa", "coupling"),
                  int_p("n_min", "2", "smallest chain"), int_p("n_max", "10", "largest chain"),
                  int_p("trans_n", "4", "emitters for the transmission table"),
                  real_p("trans_a", "0.08", "lambda0", "spacing for the transmission table"),
                  real_p("trans_g", "0.1", "kappa", "coupling for the transmission table"),
                  real_p("delta_span", "1.5", "kappa", "half width of the transmission scan"),
                  int_p("points", "601", "transmission samples")},
                 {}, "", run_fig51});
    const std::vector<ParamSpec> hybrid_params{
        real_p("zeta0", "10", "1", "flat mirror polarizability"), real_p("omega_fsr", "1", "omega_fsr", "free spectral range"),
        int_p("m", "10", "longitudinal mode index"), reals_p("gamma_d_ratios", "1,0.1,0.01", "omega_fsr", "array linewidths"),
        real_p("span", "5", "gamma_d", "half width of the scan"), int_p("points", "1001", "samples per linewidth")};
    r.push_back({"fig52b", "hybrid_cavity", "fig52b", "array-flat cavity transmission for several array linewidths",
                 "frequencies in omega_fsr, detunings in gamma_d", hybrid_params, {}, "",
                 [](const ParamTable& p, const RunContext& c) { return run_hybrid(p, c, false); }});
    r.push_back({"fig52c", "hybrid_cavity", "fig52c", "double-array cavity transmission", "frequencies in omega_fsr, detunings in gamma_d",
                 hybrid_params, {}, "", [](const ParamTable& p, const RunContext& c) { return run_hybrid(p, c, true); }});
    r.push_back({"fig53", "cavity_qed", "fig53", "mean-field laser: steady state against pump and one trajectory",
                 laser_units,
                 {real_p("g", "1", "g", "coupling"), real_p("kappa", "", "g", "cavity loss (set by the regime)"),
                  real_p("gamma", "0.01", "g", "emitter decay"), real_p("n", "200", "1", "emitters"),
                  real_p("gamma_p_min", "0.001", "g", "smallest pump"), real_p("gamma_p_max", "10000", "g", "largest pump"),
                  int_p("points", "141", "pump samples (log spaced)"),
                  real_p("traj_gamma_p", "0", "g", "trajectory pump, 0 = geometric mean of the thresholds"),
                  real_p("t_max", "200", "1/g", "trajectory end"), int_p("t_points", "401", "trajectory samples"),
                  real_p("seed_amplitude", "0.01", "1", "initial |alpha| and |s|, phases drawn from the seed")},
                 {{"bad", {{"kappa", "40"}}}, {"good", {{"kappa", "0.1"}}}}, "bad", run_fig53});
    r.push_back({"disorder", "cavity_qed", "-", "Monte-Carlo dark-mode decay against disorder width", kEmitterUnits,
                 {real_p("gamma", "1", "gamma", "emitter decay"), int_p("n", "2000", "emitters"), int_p("draws", "200", "samples"),
                  real_p("w_min", "0.01", "gamma", "smallest width"), real_p("w_max", "100", "gamma", "largest width"),
                  int_p("points", "17", "widths (log spaced)")},
                 {}, "", run_disorder});
    r.push_back({"fig64", "molecular", "fig64", "donor-acceptor transfer rate against detuning with 8 vibrational modes",
                 kEmitterUnits,
                 {int_p("modes", "8", "vibrational modes per molecule"), real_p("nu_min", "100", "gamma", "lowest mode"),
                  real_p("nu_step", "100", "gamma", "mode spacing"), real_p("huang_rhys", "0.05", "1", "per-mode Huang-Rhys factor"),
                  real_p("damping", "20", "gamma", "vibrational damping"), real_p("omega", "3", "gamma", "donor-acceptor coupling"),
                  real_p("delta_min", "-1000", "gamma", "first detuning"), real_p("delta_max", "1000", "gamma", "last detuning"),
                  int_p("points", "801", "rate samples"), int_p("spectrum_points", "1001", "spectrum samples"),
                  real_p("prune", "1e-10", "1", "line weight cutoff")},
                 {}, "", run_fig64});
    return r;
}

} // namespace

const std::vector<Scenario>& registry() {
    static const std::vector<Scenario> r = build_registry();
    return r;
}

} // namespace coopsim
