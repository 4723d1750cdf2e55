#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "coop/ode.hpp"
#include "coop/vacuum_coupling.hpp"

namespace coop {

using cplx = std::complex<double>;

// Single cavity mode coupled to N emitters. Frequencies are absolute; emitter j sits at
// omega0 + detuning[j]. Without couplings the emitters decay independently at gamma.
struct CavitySystem {
    double omega_c = 0.0;
    double kappa_l = 0.5;
    double kappa_r = 0.5;
    double omega0 = 0.0;
    double gamma = 1.0;
    std::vector<cplx> g;
    std::vector<double> detuning;
    std::optional<CouplingMatrices> coupling;

    double kappa() const { return kappa_l + kappa_r; }
    std::size_t size() const { return g.size(); }
    Eigen::VectorXcd g_vector() const;
    void validate() const;
    // M(Delta) = -i Delta + i diag(detuning) + i Omega + Gamma, Delta = omega_l - omega0
    Eigen::MatrixXcd m_matrix(double delta, bool include_dipole_dipole = true) const;
};

CavitySystem make_cavity(const std::vector<cplx>& g, double kappa, double omega_c = 0.0,
                         double gamma = 1.0);

std::vector<cplx> symmetric_couplings(std::size_t n, double g);
std::vector<cplx> alternating_couplings(std::size_t n, double g); // (-1)^j g, j from 0

// normalized transmission kappa <a> / eta in linear response
cplx cavity_transmission(const CavitySystem& s, double omega_l, bool include_dipole_dipole = true);

struct CollectiveResponse {
    double gamma_eff = 0.0;
    double omega_eff = 0.0;
};

// gamma_eff + i Omega_eff = G^+ G / (G^+ M^-1 G)
CollectiveResponse collective_response(const CavitySystem& s, double delta);

double effective_cooperativity(const CavitySystem& s, double delta);

struct CooperativityPeak {
    double delta = 0.0;
    double value = 0.0;
};

// dense scan over [lo, hi] followed by Brent refinement of the best brackets
CooperativityPeak max_cooperativity(const CavitySystem& s, double lo, double hi,
                                    std::size_t grid = 20001);

struct CooperativityScaling {
    std::vector<int> n;
    std::vector<double> peak;
    std::vector<double> peak_delta;
    double slope = 0.0;
};

// chain along x with dipoles along z, alternating or symmetric couplings
CooperativityScaling cooperativity_scaling(double a, double kappa, double g, const std::vector<int>& n_list,
                                           bool alternating, double gamma = 1.0);

struct LinearQleSystem {
    Eigen::MatrixXcd drift;     // A
    Eigen::MatrixXcd noise;     // N
    Eigen::MatrixXcd input_cor; // C
    Eigen::MatrixXcd diffusion; // D = N C N^T
    Eigen::Index size() const { return drift.rows(); }
};

// fluctuation vector (a, a^+, sigma, sigma^+) with Delta_c = omega_l - omega_c
LinearQleSystem build_qle_system(const CavitySystem& s, double omega_l);

// A V + V A^T = -D by vectorization
Eigen::MatrixXcd lyapunov_covariance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& d);

double max_real_eigenvalue(const Eigen::MatrixXcd& a);

// F(w) = N^T (i w - A)^-1 N - 1
Eigen::MatrixXcd output_transfer(const LinearQleSystem& q, double omega);
// F(w) C F^T(-w)
Eigen::MatrixXcd output_spectrum(const LinearQleSystem& q, double omega);
// (i w - A)^-1 D (-i w - A)^-T, integrates to 2 pi V
Eigen::MatrixXcd intracavity_spectrum(const LinearQleSystem& q, double omega);

// Jaynes-Cummings steady state with a driven cavity, truncated at n_fock photons.
// Detunings are omega - omega_l.
struct JcParams {
    double g = 0.3;
    double kappa = 1.0;
    double gamma = 0.1;
    double eta = 5e-3;
    double cavity_detuning = 0.0;
    double emitter_detuning = 0.0;
    int n_fock = 5;
};

struct JcResult {
    double photons = 0.0;
    double g2 = 0.0;
};

JcResult jaynes_cummings_g2(const JcParams& p);

struct DarkRates {
    double delta_dark = 0.0;
    double gamma_dark = 0.0;
    double delta_bar = 0.0;
};

// Markovian elimination of the N - 1 Fourier dark modes
DarkRates disorder_dark_rates(const std::vector<double>& deltas, double gamma);

struct DarkRateStats {
    double mean_gamma_dark = 0.0;
    double std_gamma_dark = 0.0;
    double mean_delta_dark = 0.0;
};

DarkRateStats sample_dark_rates(double w, double gamma, std::size_t n, std::size_t draws,
                                std::uint64_t seed);

std::vector<double> gaussian_detunings(std::size_t n, double w, std::uint64_t seed);

// mesoscopic gamma_dark: w^2/gamma below w = gamma/3, pi w/4 above 3 gamma, log-log interpolation between
double mesoscopic_gamma_dark(double w, double gamma);

double disordered_vrs(double w, double g_n, double kappa, double gamma);

// splitting of the two eigenvalues with largest cavity weight of the (N+1)-mode problem
double direct_vrs(const std::vector<double>& deltas, double g_n, double kappa, double gamma);

cplx memory_kernel(double tau, double w, double gamma, double delta_bar);

struct LaserState {
    cplx alpha{0.0, 0.0};
    cplx s{0.0, 0.0};
    double sz = 0.0;
};

struct LaserParams {
    double g = 1.0;
    double kappa = 1.0;
    double gamma = 0.01;
    double gamma_p = 1.0;
    double n = 200.0;
};

struct LaserTrajectory {
    std::vector<double> t;
    std::vector<LaserState> states;
};

LaserTrajectory laser_meanfield(const LaserParams& p, const std::vector<double>& t_grid,
                                const LaserState& initial, const OdeOptions& opt = {1e-10, 1e-12});

struct LaserSteady {
    bool lasing = false;
    double sz = 0.0;
    double photons = 0.0; // |alpha|^2
    double coherence = 0.0; // |s|^2
    double pump_cooperativity = 0.0;
};

LaserSteady laser_steady(const LaserParams& p);

struct LaserThresholds {
    double lower = 0.0;
    double upper = 0.0;
    bool exists = false;
};

LaserThresholds laser_thresholds(double g, double kappa, double gamma, double n);

double cavity_superradiance_rate(double g, double kappa);

} // namespace coop
