#include "coop/geometry.hpp"

#include <cmath>
#include <string>

#include "coop/errors.hpp"

namespace coop {

namespace {

Eigen::Vector3d checked_orientation(const Eigen::Vector3d& o) {
    double n = o.norm();
    require(n > 0.0 && std::isfinite(n), "dipole orientation must be a nonzero vector");
    return o / n;
}

} // namespace

Eigen::MatrixXd EmitterEnsemble::distances() const {
    const auto n = static_cast<Eigen::Index>(positions.size());
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j)
            d(i, j) = d(j, i) = (positions[i] - positions[j]).norm();
    return d;
}

void EmitterEnsemble::validate() const {
    require(!positions.empty(), "ensemble needs at least one emitter");
    require(gamma > 0.0, "gamma must be positive");
    require(std::abs(dipole.norm() - 1.0) < 1e-12, "dipole orientation must have unit norm");
    for (std::size_t i = 0; i < positions.size(); ++i)
        for (std::size_t j = i + 1; j < positions.size(); ++j)
            if ((positions[i] - positions[j]).norm() == 0.0)
                fail(ErrorKind::InvalidArgument,
                     "coincident emitters " + std::to_string(i) + " and " + std::to_string(j));
}

EmitterEnsemble build_chain(std::size_t n, double a, const Eigen::Vector3d& orientation,
                            double omega0, double gamma) {
    require(n >= 1, "chain needs N >= 1");
    require(a > 0.0, "lattice constant must be positive");
    EmitterEnsemble e;
    e.dipole = checked_orientation(orientation);
    e.omega0 = omega0;
    e.gamma = gamma;
    e.positions.reserve(n);
    for (std::size_t j = 0; j < n; ++j) e.positions.emplace_back(a * double(j), 0.0, 0.0);
    e.validate();
    return e;
}

EmitterEnsemble build_ring(std::size_t n, double a, bool center,
                           const Eigen::Vector3d& orientation, double omega0, double gamma) {
    require(n >= 3, "ring needs N >= 3");
    require(a > 0.0, "chord length must be positive");
    EmitterEnsemble e;
    e.dipole = checked_orientation(orientation);
    e.omega0 = omega0;
    e.gamma = gamma;
    const double radius = a / (2.0 * std::sin(kPi / double(n)));
    if (center) e.positions.emplace_back(0.0, 0.0, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        double phi = kTwoPi * double(j) / double(n);
        e.positions.emplace_back(radius * std::cos(phi), radius * std::sin(phi), 0.0);
    }
    e.validate();
    return e;
}

EmitterEnsemble build_square_array(std::size_t nx, std::size_t ny, double a,
                                   const Eigen::Vector3d& orientation, double omega0,
                                   double gamma) {
    require(nx >= 1 && ny >= 1, "array needs Nx, Ny >= 1");
    require(a > 0.0, "lattice constant must be positive");
    EmitterEnsemble e;
    e.dipole = checked_orientation(orientation);
    e.omega0 = omega0;
    e.gamma = gamma;
    e.positions.reserve(nx * ny);
    for (std::size_t iy = 0; iy < ny; ++iy)
        for (std::size_t ix = 0; ix < nx; ++ix)
            e.positions.emplace_back(a * double(ix), a * double(iy), 0.0);
    e.validate();
    return e;
}

EmitterEnsemble translated(const EmitterEnsemble& e, const Eigen::Vector3d& shift) {
    EmitterEnsemble out = e;
    for (auto& p : out.positions) p += shift;
    return out;
}

} // namespace coop
