#pragma once

#include <complex>
#include <vector>

namespace coop {

using cplx = std::complex<double>;

struct VibrationalMode {
    double nu = 1.0;
    double huang_rhys = 0.0;
    double damping = 0.1;
    double thermal_occupancy = 0.0;

    void validate() const;
    static double occupancy_at(double nu, double kt); // Bose-Einstein, kt = 0 gives 0
};

struct MolecularModel {
    double omega0 = 0.0;
    double gamma = 1.0;
    std::vector<VibrationalMode> modes;

    void validate() const;
    double total_huang_rhys() const;
    double bare_frequency() const; // omega0 + sum S_k nu_k
};

// e^-S S^n / n!, evaluated in log space
double franck_condon(double s, int n);

// <D(t) D^+(t')> for tau = t - t'. Negative tau returns the conjugate of the tau > 0 value.
cplx displacement_correlation(const VibrationalMode& m, double tau, bool zero_temperature);
double static_displacement(const VibrationalMode& m); // e^{-S (nbar + 1/2)}

// One vibronic line of the multi-index sum: position sum n_k nu_k, extra width sum n_k Gamma_k,
// weight prod f^{n_k}_{S_k}.
struct VibronicLine {
    double shift = 0.0;
    double width = 0.0;
    double weight = 0.0;
};

struct LatticeOptions {
    double mode_tail = 1e-8;    // per-mode cap where the Poisson tail drops below this
    double prune = 1e-14;       // drop products lighter than this
    std::size_t max_lines = 2000000;
    double max_missing = 1e-6;  // truncation error above this missing weight
};

std::vector<VibronicLine> vibronic_lines(const std::vector<VibrationalMode>& modes, const LatticeOptions& opt = {});

enum class SpectrumKind { Absorption, Emission };

// Absorption is evaluated at Delta = omega_l - omega0, emission at absolute omega.
std::vector<double> vibronic_spectrum(const MolecularModel& m, SpectrumKind kind, const std::vector<double>& grid,
                                      double eta = 1.0, const LatticeOptions& opt = {});

double branching_ratio(const std::vector<VibrationalMode>& modes, double c00);

// (2 Gamma w / nu)[coth(w / 2kT) + 1]; kt = 0 gives (4 w Gamma / nu) theta(w)
double brownian_thermal_spectrum(double omega, double nu, double damping, double kt);

struct DimerPoint {
    double eps_plus = 0.0;
    double eps_minus = 0.0;
};

std::vector<DimerPoint> dimer_surfaces(double s, double nu, double omega, const std::vector<double>& q_minus,
                                       double q_plus);

// positive double-well minimum of the lower surface, 0 when it has a single minimum
double dimer_minimum(double s, double nu, double omega);

double spectral_density(double omega, const std::vector<VibrationalMode>& modes);

struct FretRate {
    double rate = 0.0;
    double elastic_weight = 0.0; // Franck-Condon weight of the excluded zero-width (0, 0) term
    bool fast_relaxation = false; // every Gamma_k >= 10 gamma
};

// Pair lines of donor emission and acceptor absorption, merged on equal (shift, width).
std::vector<VibronicLine> fret_lines(const MolecularModel& donor, const MolecularModel& acceptor,
                                     const LatticeOptions& opt = {});
double fret_rate_from_lines(const std::vector<VibronicLine>& lines, double omega, double delta);

// Delta = donor.omega0 - acceptor.omega0. single_mode insists on exactly one mode per molecule.
FretRate fret_rate(const MolecularModel& donor, const MolecularModel& acceptor, double omega, bool single_mode,
                   const LatticeOptions& opt = {});

// Two electronic two-level systems, each with one truncated vibrational mode relaxing towards
// its own electronic-state equilibrium. Starts in the relaxed excited donor and measures
// (dP_A/dt + 2 gamma P_A) / P_D averaged over the window.
struct FretSimulationParams {
    double s = 0.5;
    double nu = 50.0;
    double damping = 20.0;
    double omega = 3.0;
    double delta = 50.0;
    double gamma = 1.0;
    int levels = 6;
    double t_start = 0.3;
    double t_end = 2.0;
    int samples = 35;
};

struct FretSimulationResult {
    double rate = 0.0;
    double rate_spread = 0.0; // max - min over the window
    std::vector<double> t;
    std::vector<double> donor;
    std::vector<double> acceptor;
};

FretSimulationResult fret_master_equation(const FretSimulationParams& p);

} // namespace coop
