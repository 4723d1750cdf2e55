#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "coop/geometry.hpp"
#include "coop/lindblad.hpp"
#include "coop/vacuum_coupling.hpp"

namespace coop {

// Gamma = gamma * 1, Omega = 0
CouplingMatrices independent_couplings(std::size_t n, double gamma = 1.0);

// phi_j = 2 pi m j / N with j from 0
double ramsey_phase(std::size_t n, int m, std::size_t j);

struct RamseyOptions {
    double phase_offset = 0.0; // added to every phi_j
    std::size_t scan_points = 1440; // per 2 pi of omega * tau
    std::size_t max_emitters = 8;
    OdeOptions ode{1e-8, 1e-10};
};

struct RamseySignal {
    double sz = 0.0;
    double variance = 0.0;
    double slope = 0.0; // d<S_z>/d omega
};

// omega = omega0 - omega_l
RamseySignal ramsey_signal(const EmitterEnsemble& e, const CouplingMatrices& c, int m, double tau, double omega,
                           const RamseyOptions& opt = {});

struct RamseyPoint {
    double sensitivity = 0.0;
    double omega = 0.0; // minimizing detuning
};

RamseyPoint ramsey_sensitivity(const EmitterEnsemble& e, const CouplingMatrices& c, int m, double tau,
                               const RamseyOptions& opt = {});

struct RamseyResult {
    int m = 0;
    std::vector<double> tau;
    std::vector<double> sensitivity;
    double optimal_tau = 0.0;
    double optimal_sensitivity = 0.0;
};

// one density evolution over the whole tau grid; the optimum is refined at the parabola vertex of the best grid triple
RamseyResult ramsey_scan(const EmitterEnsemble& e, const CouplingMatrices& c, int m, const std::vector<double>& tau,
                         const RamseyOptions& opt = {});

struct TargetedDriveResult {
    int target = 0;            // sine label k
    double drive_frequency = 0.0;
    std::vector<double> t;
    Eigen::MatrixXd populations; // rows follow t, columns follow the energy-ordered eigenmodes
    std::vector<int> k_label;
    Eigen::VectorXd mode_rates;
    Eigen::Index target_column = 0;
    std::vector<double> ground;
};

// H_k = eta sum_j sin(pi k j / (N + 1)) (sigma_j + sigma_j^+), resonant with the eigenmode closest to
// sine mode k, switched off after `duration`.
TargetedDriveResult targeted_drive_evolution(const EmitterEnsemble& e, const CouplingMatrices& c, int k, double eta,
                                             double duration, const std::vector<double>& times);

// Piecewise-constant control for two emitters: laser detuning from omega0, drive amplitude on both
// emitters, and gradient Delta_B shifting emitter j by Delta_B j.
struct GradientSegment {
    double duration = 0.0;
    double eta = 0.0;
    double laser_detuning = 0.0; // omega_l - omega0
    double delta_b = 0.0;
};

struct GradientTrajectory {
    std::vector<double> t;
    std::vector<double> symmetric;     // <+|rho|+>
    std::vector<double> antisymmetric; // <-|rho|->
    std::vector<double> doubly_excited;
    std::vector<double> excitation;    // <n1 + n2>
};

LindbladModel gradient_model(const CouplingMatrices& c, const GradientSegment& seg);

GradientTrajectory gradient_transfer(const CouplingMatrices& c, const std::vector<GradientSegment>& schedule,
                                     std::size_t samples_per_segment = 50);

// exp(-i Delta_B tau n_2) on the two-emitter space
Eigen::Matrix4cd gradient_pulse_unitary(double delta_b_tau);

// drive |+> with a pi pulse at its resonance, gradient pulse with Delta_B tau = pi, then free decay
std::vector<GradientSegment> default_gradient_schedule(const CouplingMatrices& c, double eta, double delta_b,
                                                       double hold);

struct RingLaserPoint {
    double gamma_p = 0.0;
    double g2 = 0.0;
    double emission_rate = 0.0; // 2 sum_ij Gamma_ij <sigma_i^+ sigma_j>
    double center_population = 0.0;
    double ring_population = 0.0;
};

struct RingLaserResult {
    double omega_sym = 0.0; // sum_{j >= 2} Omega_1j over the ring
    std::vector<RingLaserPoint> points;
};

enum class RingModel { Full, SymmetricMode };

// ring built with the center at index 0; the pump acts on the center as sigma^+ at rate gamma_p
RingLaserResult ring_laser(const EmitterEnsemble& ring_with_center, const std::vector<double>& gamma_p,
                           RingModel model = RingModel::Full);

// compression of the couplings onto {center, symmetric ring mode}
CouplingMatrices symmetric_mode_couplings(const CouplingMatrices& c);

} // namespace coop
