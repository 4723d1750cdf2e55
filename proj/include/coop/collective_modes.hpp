#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "coop/geometry.hpp"
#include "coop/ode.hpp"
#include "coop/vacuum_coupling.hpp"

namespace coop {

struct SingleExcitationSpectrum {
    Eigen::VectorXd energies;    // ascending
    Eigen::MatrixXd modes;       // columns f_{.k}
    Eigen::VectorXd decay_rates; // f_k^T Gamma f_k
    std::vector<int> k_label;    // 1-based index of the closest sine mode
};

// closed-form sine mode f_jk with 1-based j, k
double sine_mode(int n, int j, int k);

SingleExcitationSpectrum single_excitation_spectrum(const CouplingMatrices& c, double omega0,
                                                    bool nn_only = false);

// collective rates of arbitrary real orthonormal modes
Eigen::VectorXd mode_decay_rates(const Eigen::MatrixXd& gamma_mat, const Eigen::MatrixXd& modes);

struct SubradianceScaling {
    double exponent = 0.0;
    std::vector<int> n_values;
    std::vector<double> min_rates;
};

enum class SubradianceMode { HamiltonianEigenstates, DecayMatrixOnly };

SubradianceScaling subradiance_scaling(double a, const Eigen::Vector3d& orientation,
                                       const std::vector<int>& n_list,
                                       SubradianceMode mode = SubradianceMode::HamiltonianEigenstates,
                                       double gamma = 1.0);

// least-squares slope of log y vs log x
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

// Weak-drive amplitude equations beta' = -i delta beta - (i Omega + Gamma) beta - i eta.
std::vector<Eigen::VectorXcd> single_excitation_evolve(const CouplingMatrices& c,
                                                       const std::vector<double>& detuning,
                                                       const std::vector<std::complex<double>>& eta,
                                                       const Eigen::VectorXcd& beta0,
                                                       const std::vector<double>& times,
                                                       const OdeOptions& opt = {1e-11, 1e-13});

struct DickeTrajectory {
    std::vector<double> t;
    std::vector<Eigen::VectorXd> p; // index i <-> m = i - N/2
    std::vector<double> sz;
    std::vector<double> spsm;      // <S^+ S^->
    std::vector<double> gamma_sup; // -d<Sz>/dt / (<Sz> + N/2)
};

DickeTrajectory dicke_evolve(int n, double gamma, const std::vector<double>& times,
                             const Eigen::VectorXd& initial = Eigen::VectorXd());

double dicke_down_rate(int n, double gamma, double m);

double pair_correlation(int n, double m);

} // namespace coop
