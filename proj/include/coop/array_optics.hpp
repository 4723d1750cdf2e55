#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "coop/geometry.hpp"
#include "coop/vacuum_coupling.hpp"

namespace coop {

using cplx = std::complex<double>;

// (2 pi i / a^2) sum_{m,n} exp(i k_mn |z|) / k_mn, evanescent orders decaying
cplx lattice_sum(double z, double k, double a, int cutoff);

struct EffectiveRates {
    double omega_eff = 0.0;
    double gamma_eff = 0.0;
};

// row sums of Omega and Gamma at the array center; quasi_infinite averages the central 2x2 block
EffectiveRates effective_rates(const EmitterEnsemble& array, std::size_t nx, std::size_t ny,
                               bool quasi_infinite = false);
EffectiveRates effective_rates(const CouplingMatrices& c, const std::vector<Eigen::Index>& reference);

// reference indices used by effective_rates for an nx x ny grid
std::vector<Eigen::Index> center_sites(std::size_t nx, std::size_t ny, bool quasi_infinite);

// approximate infinite-lattice rate 3 gamma (lambda0 / a)^2 / (4 pi)
double gamma_eff_approx(double a, double gamma = 1.0);

// steady state of beta' = i Delta beta - M beta - i eta f, Delta = omega_l - omega0
Eigen::VectorXcd steady_dipoles(const CouplingMatrices& c, const Eigen::VectorXcd& f, double eta,
                                double delta);

struct Reflection {
    cplx r;
    cplx t;
};

Reflection reflectivity(double omega_eff, double gamma_eff, double omega0, double omega_l,
                        double gamma_nr = 0.0);

// |E_in e^{ikz} + E_dip|^2 with the scalar spherical-wave dipole field, dipole moment set to one
std::vector<double> intensity_profile(const EmitterEnsemble& array, const Eigen::VectorXcd& beta,
                                      double e_in, double k, const std::vector<Eigen::Vector3d>& points);

// mean |E|^2 on the plane x = x_c through the array centre, |y - y_c| <= half_width, z in [z_min, z_max]
double mean_intensity_behind(const EmitterEnsemble& array, const Eigen::VectorXcd& beta, double e_in, double k,
                             double half_width, double z_min, double z_max, double step);

cplx dipole_field(const EmitterEnsemble& array, const Eigen::VectorXcd& beta, double k,
                  const Eigen::Vector3d& point);

enum class DrivePattern { Uniform, Checkerboard };

Eigen::VectorXcd drive_pattern(std::size_t nx, std::size_t ny, DrivePattern p);

struct PhasedScaling {
    std::vector<int> sides;
    std::vector<double> rates;
    double exponent_vs_n = 0.0;    // slope against the emitter count N = side^2
    double exponent_vs_side = 0.0; // slope against the side length sqrt(N)
};

// decay of the eigenmode of M = i Omega + Gamma with the largest overlap with the pattern
double addressed_mode_decay(const CouplingMatrices& c, const Eigen::VectorXcd& pattern);

PhasedScaling phased_subradiance(double a, const std::vector<int>& sides, DrivePattern pattern,
                                 const Eigen::Vector3d& orientation = axis_x(), double gamma = 1.0);

} // namespace coop
