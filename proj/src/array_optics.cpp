#include "coop/array_optics.hpp"

#include <cmath>

#include "coop/collective_modes.hpp"
#include "coop/errors.hpp"

namespace coop {

namespace {
const cplx I1{0.0, 1.0};
}

cplx lattice_sum(double z, double k, double a, int cutoff) {
    require(z != 0.0, "lattice sum needs z != 0");
    require(a > 0.0 && k >= 0.0, "lattice sum needs a > 0 and k >= 0");
    require(cutoff >= int(std::ceil(a * k / kTwoPi)) + 1, "cutoff must exceed the propagating orders");
    const double az = std::abs(z);
    cplx sum = 0.0;
    for (int m = -cutoff; m <= cutoff; ++m)
        for (int n = -cutoff; n <= cutoff; ++n) {
            const double qm = kTwoPi * m / a, qn = kTwoPi * n / a;
            const double s = k * k - qm * qm - qn * qn;
            if (s == 0.0) fail(ErrorKind::Domain, "grazing diffraction order: k_mn = 0");
            if (s > 0.0) {
                const double kz = std::sqrt(s);
                sum += std::exp(I1 * (kz * az)) / kz;
            } else {
                const double kappa = std::sqrt(-s);
                sum += std::exp(-kappa * az) / (I1 * kappa);
            }
        }
    return (kTwoPi * I1 / (a * a)) * sum;
}

std::vector<Eigen::Index> center_sites(std::size_t nx, std::size_t ny, bool quasi_infinite) {
    const Eigen::Index cx = Eigen::Index((nx - 1) / 2), cy = Eigen::Index((ny - 1) / 2);
    auto idx = [&](Eigen::Index ix, Eigen::Index iy) { return iy * Eigen::Index(nx) + ix; };
    if (!quasi_infinite) return {idx(Eigen::Index(nx / 2), Eigen::Index(ny / 2))};
    std::vector<Eigen::Index> out;
    for (Eigen::Index dy = 0; dy < 2; ++dy)
        for (Eigen::Index dx = 0; dx < 2; ++dx)
            if (cx + dx < Eigen::Index(nx) && cy + dy < Eigen::Index(ny)) out.push_back(idx(cx + dx, cy + dy));
    return out;
}

EffectiveRates effective_rates(const CouplingMatrices& c, const std::vector<Eigen::Index>& ref) {
    require(!ref.empty(), "need at least one reference emitter");
    EffectiveRates r;
    for (Eigen::Index j : ref) {
        require(j >= 0 && j < c.size(), "reference emitter out of range");
        r.omega_eff += c.omega.row(j).sum();
        r.gamma_eff += c.gamma.row(j).sum();
    }
    r.omega_eff /= double(ref.size());
    r.gamma_eff /= double(ref.size());
    return r;
}

EffectiveRates effective_rates(const EmitterEnsemble& array, std::size_t nx, std::size_t ny,
                               bool quasi_infinite) {
    require(nx * ny == array.size(), "grid shape does not match the ensemble");
    for (const auto& p : array.positions)
        require(std::abs(p.z() - array.positions[0].z()) < 1e-12, "array must lie in one plane");
    return effective_rates(coupling_matrices(array), center_sites(nx, ny, quasi_infinite));
}

double gamma_eff_approx(double a, double gamma) { return 3.0 * gamma / (4.0 * kPi * a * a); }

Eigen::VectorXcd steady_dipoles(const CouplingMatrices& c, const Eigen::VectorXcd& f, double eta,
                                double delta) {
    const Eigen::Index n = c.size();
    require(f.size() == n, "drive profile must match emitter count");
    Eigen::MatrixXcd sys = I1 * c.omega.cast<cplx>() + c.gamma.cast<cplx>();
    sys.diagonal().array() -= I1 * delta;
    Eigen::VectorXcd rhs = -I1 * eta * f;
    if (eta == 0.0) return Eigen::VectorXcd::Zero(n);
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(sys);
    if (!(lu.rcond() > 1e-14)) fail(ErrorKind::Numerical, "dipole system is singular at this detuning");
    return lu.solve(rhs);
}

Reflection reflectivity(double omega_eff, double gamma_eff, double omega0, double omega_l, double gamma_nr) {
    Reflection out;
    out.r = -I1 * gamma_eff / (cplx(omega_l - omega0 - omega_eff, 0.0) + I1 * (gamma_eff + gamma_nr));
    out.t = 1.0 + out.r;
    return out;
}

cplx dipole_field(const EmitterEnsemble& array, const Eigen::VectorXcd& beta, double k,
                  const Eigen::Vector3d& point) {
    cplx e = 0.0;
    for (std::size_t j = 0; j < array.size(); ++j) {
        const double r = (point - array.positions[j]).norm();
        require(r >= 1e-3, "field point closer than 1e-3 lambda0 to an emitter");
        e += beta(Eigen::Index(j)) * std::exp(I1 * (k * r)) / (k * r);
    }
    return -1.5 * array.gamma * e;
}

std::vector<double> intensity_profile(const EmitterEnsemble& array, const Eigen::VectorXcd& beta,
                                      double e_in, double k, const std::vector<Eigen::Vector3d>& points) {
    require(beta.size() == Eigen::Index(array.size()), "amplitudes must match emitter count");
    std::vector<double> out;
    out.reserve(points.size());
    for (const auto& p : points) {
        const cplx e = e_in * std::exp(I1 * (k * p.z())) + dipole_field(array, beta, k, p);
        out.push_back(std::norm(e));
    }
    return out;
}

double mean_intensity_behind(const EmitterEnsemble& array, const Eigen::VectorXcd& beta, double e_in, double k,
                             double half_width, double z_min, double z_max, double step) {
    require(step > 0.0 && half_width >= 0.0 && z_max >= z_min, "need step > 0 and a non-empty window");
    require(array.size() > 0, "empty array");
    Eigen::Vector3d centre = Eigen::Vector3d::Zero();
    for (const auto& p : array.positions) centre += p;
    centre /= double(array.size());
    std::vector<Eigen::Vector3d> pts;
    const int ny = int(std::floor(2.0 * half_width / step + 1e-9)), nz = int(std::floor((z_max - z_min) / step + 1e-9));
    for (int iz = 0; iz <= nz; ++iz)
        for (int iy = 0; iy <= ny; ++iy)
            pts.emplace_back(centre.x(), centre.y() - half_width + step * iy, centre.z() + z_min + step * iz);
    const auto v = intensity_profile(array, beta, e_in, k, pts);
    double sum = 0.0;
    for (double x : v) sum += x;
    return sum / double(v.size());
}

Eigen::VectorXcd drive_pattern(std::size_t nx, std::size_t ny, DrivePattern p) {
    Eigen::VectorXcd f(Eigen::Index(nx * ny));
    for (std::size_t iy = 0; iy < ny; ++iy)
        for (std::size_t ix = 0; ix < nx; ++ix)
            f(Eigen::Index(iy * nx + ix)) = (p == DrivePattern::Checkerboard && (ix + iy) % 2) ? -1.0 : 1.0;
    return f;
}

double addressed_mode_decay(const CouplingMatrices& c, const Eigen::VectorXcd& pattern) {
    Eigen::MatrixXcd m = I1 * c.omega.cast<cplx>() + c.gamma.cast<cplx>();
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m);
    if (es.info() != Eigen::Success) fail(ErrorKind::Numerical, "eigensolver failed for the coupling matrix");
    const Eigen::VectorXcd f = pattern.normalized();
    Eigen::Index best = 0;
    double best_ov = -1.0;
    for (Eigen::Index k = 0; k < m.rows(); ++k) {
        const double ov = std::abs(es.eigenvectors().col(k).normalized().dot(f));
        if (ov > best_ov + 1e-12 || (std::abs(ov - best_ov) <= 1e-12 && es.eigenvalues()(k).real() <
                                                                              es.eigenvalues()(best).real())) {
            best_ov = ov;
            best = k;
        }
    }
    return es.eigenvalues()(best).real();
}

PhasedScaling phased_subradiance(double a, const std::vector<int>& sides, DrivePattern pattern,
                                 const Eigen::Vector3d& orientation, double gamma) {
    if (sides.size() < 3) fail(ErrorKind::Numerical, "scaling fit needs at least three array sizes");
    PhasedScaling out;
    std::vector<double> ns, ss;
    for (int s : sides) {
        require(s >= 2 && s % 2 == 0, "array sides must be even");
        auto arr = build_square_array(std::size_t(s), std::size_t(s), a, orientation, 0.0, gamma);
        auto c = coupling_matrices(arr);
        const double r = addressed_mode_decay(c, drive_pattern(std::size_t(s), std::size_t(s), pattern));
        if (!(r > 0.0)) fail(ErrorKind::Numerical, "addressed mode has non-positive decay");
        out.sides.push_back(s);
        out.rates.push_back(r);
        ns.push_back(double(s) * s);
        ss.push_back(double(s));
    }
    out.exponent_vs_n = loglog_slope(ns, out.rates);
    out.exponent_vs_side = loglog_slope(ss, out.rates);
    return out;
}

} // namespace coop
