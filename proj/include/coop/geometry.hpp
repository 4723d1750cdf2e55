#pragma once

#include <Eigen/Dense>
#include <vector>

namespace coop {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;
// wavenumber in units where the resonant wavelength is one
constexpr double kK0 = kTwoPi;

struct EmitterEnsemble {
    std::vector<Eigen::Vector3d> positions; // units of lambda0
    Eigen::Vector3d dipole{1.0, 0.0, 0.0};
    double omega0 = 0.0;
    double gamma = 1.0; // amplitude rate; population decays at 2*gamma

    std::size_t size() const { return positions.size(); }
    Eigen::MatrixXd distances() const;
    void validate() const;
};

EmitterEnsemble build_chain(std::size_t n, double a, const Eigen::Vector3d& orientation,
                            double omega0 = 0.0, double gamma = 1.0);

// chord length a between neighbours; with center the extra site sits at index 0
EmitterEnsemble build_ring(std::size_t n, double a, bool center,
                           const Eigen::Vector3d& orientation, double omega0 = 0.0,
                           double gamma = 1.0);

// sites in the xy plane, row-major (ix fastest)
EmitterEnsemble build_square_array(std::size_t nx, std::size_t ny, double a,
                                   const Eigen::Vector3d& orientation, double omega0 = 0.0,
                                   double gamma = 1.0);

EmitterEnsemble translated(const EmitterEnsemble& e, const Eigen::Vector3d& shift);

inline Eigen::Vector3d axis_x() { return {1.0, 0.0, 0.0}; }
inline Eigen::Vector3d axis_y() { return {0.0, 1.0, 0.0}; }
inline Eigen::Vector3d axis_z() { return {0.0, 0.0, 1.0}; }

} // namespace coop
