#include "coop/vacuum_coupling.hpp"

#include <cmath>
#include <string>

#include "coop/errors.hpp"

namespace coop {

namespace {

// (x cos x - sin x) / x^3 by its Taylor series, used where the closed form cancels
double near_field_bracket_series(double x) {
    const double x2 = x * x;
    double term = 1.0, sum = 0.0, fact = 6.0; // fact = (2n+1)!
    for (int n = 1; n <= 12; ++n) {
        if (n > 1) {
            term *= -x2;
            fact *= double(2 * n) * double(2 * n + 1);
        }
        sum += (n % 2 ? -1.0 : 1.0) * std::abs(term) * 2.0 * n / fact;
    }
    return sum;
}

} // namespace

double f_kernel(double kr, double cos_theta) {
    if (!(kr >= 0.0)) fail(ErrorKind::InvalidArgument, "f_kernel needs kR >= 0");
    const double c2 = cos_theta * cos_theta;
    if (kr < 1e-4) {
        const double x2 = kr * kr;
        return 2.0 / 3.0 + x2 * (c2 - 2.0) / 15.0 + x2 * x2 * (6.0 - 4.0 * c2) / 840.0;
    }
    const double s = std::sin(kr), c = std::cos(kr);
    const double bracket = kr < 0.5 ? near_field_bracket_series(kr) : (kr * c - s) / (kr * kr * kr);
    return (1.0 - c2) * s / kr + (1.0 - 3.0 * c2) * bracket;
}

double g_kernel(double kr, double cos_theta) {
    if (!(kr > 0.0)) fail(ErrorKind::InvalidArgument, "g_kernel diverges at kR <= 0");
    const double c2 = cos_theta * cos_theta;
    const double s = std::sin(kr), c = std::cos(kr);
    return (1.0 - c2) * c / kr - (1.0 - 3.0 * c2) * (s / (kr * kr) + c / (kr * kr * kr));
}

double CouplingMatrices::min_gamma_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gamma, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

CouplingMatrices coupling_matrices(const EmitterEnsemble& e, const CouplingOptions& opt) {
    e.validate();
    const auto n = static_cast<Eigen::Index>(e.size());
    CouplingMatrices m;
    m.omega = Eigen::MatrixXd::Zero(n, n);
    m.gamma = Eigen::MatrixXd::Zero(n, n);
    const double pref = 1.5 * e.gamma;
    for (Eigen::Index i = 0; i < n; ++i) {
        m.gamma(i, i) = e.gamma;
        for (Eigen::Index j = i + 1; j < n; ++j) {
            Eigen::Vector3d r = e.positions[j] - e.positions[i];
            const double dist = r.norm();
            if (dist < opt.contact_threshold)
                fail(ErrorKind::Divergence, "emitters " + std::to_string(i) + " and " +
                                                std::to_string(j) + " closer than contact threshold");
            const double ct = e.dipole.dot(r) / dist;
            const double kr = kK0 * dist;
            m.gamma(i, j) = m.gamma(j, i) = pref * f_kernel(kr, ct);
            m.omega(i, j) = m.omega(j, i) = -pref * g_kernel(kr, ct);
        }
    }
    return m;
}

} // namespace coop
