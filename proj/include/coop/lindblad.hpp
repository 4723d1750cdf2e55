#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "coop/geometry.hpp"
#include "coop/ode.hpp"
#include "coop/vacuum_coupling.hpp"

namespace coop {

using cplx = std::complex<double>;
using cmat = Eigen::MatrixXcd;
using cvec = Eigen::VectorXcd;

struct CollapseTerm {
    cmat op;
    double rate = 0.0; // enters as rate*(2 O rho O^+ - {O^+ O, rho})
};

struct LindbladModel {
    cmat hamiltonian;
    std::vector<CollapseTerm> collapse;
    std::vector<int> site_dims; // tensor factorization, first site most significant
    std::vector<std::string> basis_labels;

    Eigen::Index dim() const { return hamiltonian.rows(); }
    void validate() const;
    cmat rhs(const cmat& rho) const;
    // column-major vectorized generator, dim^2 x dim^2
    cmat liouvillian() const;
};

// local operators on a tensor product; site 0 is the most significant factor
cmat embed(const cmat& local, int site, const std::vector<int>& dims);
cmat sigma_minus(); // |g><e| with basis {g, e}
cmat destroy(int levels);
cmat identity(Eigen::Index n);

struct DecayChannels {
    Eigen::VectorXd rates; // ascending
    Eigen::MatrixXd vectors; // columns are T_{.k}
};

// orthogonal diagonalization of Gamma, tiny negative eigenvalues clipped to zero
DecayChannels decay_channels(const Eigen::MatrixXd& gamma_mat, double tol = 1e-10);

struct CollectiveDrive {
    std::vector<cplx> eta;      // per-emitter amplitude of eta_j sigma_j^+ + h.c.
    std::vector<double> detuning; // omega_j - omega_frame per emitter
};

struct CollectiveModelOptions {
    std::size_t max_emitters = 12;
};

LindbladModel build_collective_model(const EmitterEnsemble& e, const CouplingMatrices& c,
                                     const std::optional<CollectiveDrive>& drive = std::nullopt,
                                     const CollectiveModelOptions& opt = {});

struct EvolveOptions {
    OdeOptions ode{1e-10, 1e-12};
    bool monitor_positivity = true;
    double positivity_tol = 1e-6;
};

std::vector<cmat> evolve_density(const LindbladModel& m, const cmat& rho0,
                                 const std::vector<double>& times, const EvolveOptions& opt = {});

struct SteadyStateOptions {
    double uniqueness_ratio = 1e-10;
};

cmat steady_state(const LindbladModel& m, const SteadyStateOptions& opt = {});

cplx expect(const cmat& rho, const cmat& op);

// log2 of the trace norm of the partial transpose over the listed sites
double log_negativity(const cmat& rho, const std::vector<int>& site_dims,
                      const std::vector<int>& partition);

cmat partial_transpose(const cmat& rho, const std::vector<int>& site_dims,
                       const std::vector<int>& partition);

struct WeightedOp {
    cplx weight{1.0, 0.0};
    cmat op;
};

// <A+ A+ A A> / <A+ A>^2 for A = sum of weighted lowering operators
double g2_zero(const cmat& rho_ss, const std::vector<WeightedOp>& ops);
double g2_zero(const LindbladModel& m, const std::vector<WeightedOp>& ops);

cmat projector(Eigen::Index dim, Eigen::Index k);
cmat pure_state(const cvec& psi);
void check_density(const cmat& rho, double trace_tol = 1e-9);

} // namespace coop
