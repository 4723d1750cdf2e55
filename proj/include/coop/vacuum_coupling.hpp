#pragma once

#include <Eigen/Dense>

#include "coop/geometry.hpp"

namespace coop {

// Free-space kernels. cos_theta is the angle between dipole axis and separation.
double f_kernel(double kr, double cos_theta);
double g_kernel(double kr, double cos_theta);

struct CouplingMatrices {
    Eigen::MatrixXd omega; // coherent exchange, zero diagonal
    Eigen::MatrixXd gamma; // collective decay, diagonal = gamma

    Eigen::Index size() const { return gamma.rows(); }
    double min_gamma_eigenvalue() const;
};

struct CouplingOptions {
    double contact_threshold = 1e-6; // lambda0 units
};

CouplingMatrices coupling_matrices(const EmitterEnsemble& e, const CouplingOptions& opt = {});

} // namespace coop
