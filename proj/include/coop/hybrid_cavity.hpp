#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace coop {

using cplx = std::complex<double>;

// Mirror polarizability: constant zeta0, or zeta(w) = gamma_d / (omega_d - w) for an emitter array.
struct MirrorSpec {
    enum class Kind { Flat, LorentzianArray };
    Kind kind = Kind::Flat;
    double zeta0 = 0.0;
    double gamma_d = 0.0;
    double omega_d = 0.0;

    static MirrorSpec flat(double zeta0);
    static MirrorSpec array(double gamma_d, double omega_d);
    double zeta(double omega) const;
};

// single scatterer transfer matrix [[1 + i z, i z], [-i z, 1 - i z]]
Eigen::Matrix2cd mirror_transfer(double zeta);
Eigen::Matrix2cd free_transfer(double theta);

struct Scatterer {
    cplx t;
    cplx r;
};
Scatterer mirror_coefficients(double zeta);

// t = 1 / T22 for T = T_R T_f T_L, theta = omega * length (c = 1)
cplx transfer_matrix_transmission(const MirrorSpec& left, const MirrorSpec& right, double length, double omega);

struct CoupledModeParams {
    double omega_a = 0.0;
    double omega_d = 0.0;
    double kappa_l = 0.0;
    double kappa_r = 0.0;
    double gamma_d = 0.0;
    double coupling = 0.0; // G
};

cplx coupled_mode_transmission(const CoupledModeParams& p, double omega);

// Array-flat cavity with omega_m = m omega_fsr and the array resonance placed at omega_m - gamma_d / zeta0.
struct HybridDesign {
    double zeta0 = 0.0;
    double gamma_d = 0.0;
    double omega_fsr = 0.0;
    int m = 0;
    double omega_m = 0.0;
    double omega_d = 0.0;
    double length = 0.0;
    double kappa_flat = 0.0;

    MirrorSpec left() const { return MirrorSpec::array(gamma_d, omega_d); }
    MirrorSpec right() const { return MirrorSpec::flat(zeta0); }
    // second array for the double-sided cavity, mirrored about omega_m
    MirrorSpec right_array() const { return MirrorSpec::array(gamma_d, omega_m + gamma_d / zeta0); }
};

HybridDesign design_hybrid(double zeta0, double gamma_d, double omega_fsr, int m);

double flat_linewidth(double zeta0, double omega_fsr);

CoupledModeParams extract_parameters(const HybridDesign& d);

struct CrossCheck {
    double max_abs_diff = 0.0; // max | |t_tm|^2 - |t_cm|^2 |
    double at = 0.0;           // (omega - omega_m) / gamma_d of the maximum
};

// compares both theories on a uniform grid over omega_m +- half_width_in_gamma_d * gamma_d
CrossCheck cross_theory(const HybridDesign& d, double half_width_in_gamma_d, std::size_t points);

// half width at half maximum of |t|^2 around the peak nearest omega_guess, by bisection on both flanks
double transmission_hwhm(const MirrorSpec& left, const MirrorSpec& right, double length, double omega_peak);

// dense-near-features sweep: log fan-out around each centre plus a uniform background
std::vector<double> fan_grid(double lo, double hi, const std::vector<double>& centres, std::size_t uniform,
                             std::size_t per_decade, double min_offset);

} // namespace coop
