#include "coop/collective_modes.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "coop/errors.hpp"

namespace coop {

double sine_mode(int n, int j, int k) {
    return std::sqrt(2.0 / (n + 1)) * std::sin(kPi * double(k) * double(j) / double(n + 1));
}

Eigen::VectorXd mode_decay_rates(const Eigen::MatrixXd& g, const Eigen::MatrixXd& f) {
    return (f.transpose() * g * f).diagonal();
}

SingleExcitationSpectrum single_excitation_spectrum(const CouplingMatrices& c, double omega0,
                                                    bool nn_only) {
    const int n = int(c.size());
    require(n >= 1, "spectrum needs N >= 1");
    Eigen::MatrixXd sines(n, n);
    for (int j = 1; j <= n; ++j)
        for (int k = 1; k <= n; ++k) sines(j - 1, k - 1) = sine_mode(n, j, k);

    Eigen::VectorXd energies(n);
    Eigen::MatrixXd modes(n, n);
    std::vector<int> labels(n);
    if (nn_only) {
        const double om = n > 1 ? c.omega(0, 1) : 0.0;
        for (int k = 1; k <= n; ++k) energies(k - 1) = omega0 + 2.0 * om * std::cos(kPi * k / (n + 1));
        modes = sines;
        std::iota(labels.begin(), labels.end(), 1);
    } else {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(c.omega);
        energies = es.eigenvalues().array() + omega0;
        modes = es.eigenvectors();
        Eigen::MatrixXd ov = sines.transpose() * modes;
        for (int col = 0; col < n; ++col) {
            Eigen::Index best;
            ov.col(col).cwiseAbs().maxCoeff(&best);
            labels[col] = int(best) + 1;
            if (ov(best, col) < 0) modes.col(col) *= -1.0;
        }
    }
    // ascending energy, ties by ascending k label
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        const double da = energies(a), db = energies(b);
        if (std::abs(da - db) > 1e-12 * std::max(1.0, std::abs(da))) return da < db;
        return labels[a] < labels[b];
    });
    SingleExcitationSpectrum s;
    s.energies.resize(n);
    s.modes.resize(n, n);
    for (int i = 0; i < n; ++i) {
        s.energies(i) = energies(order[i]);
        s.modes.col(i) = modes.col(order[i]);
        s.k_label.push_back(labels[order[i]]);
    }
    s.decay_rates = mode_decay_rates(c.gamma, s.modes);
    return s;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    require(x.size() == y.size(), "fit arrays must match");
    if (x.size() < 3) fail(ErrorKind::Numerical, "power-law fit needs at least three points");
    const std::size_t n = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        require(x[i] > 0 && y[i] > 0, "log-log fit needs positive data");
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double den = n * sxx - sx * sx;
    if (den == 0.0) fail(ErrorKind::Numerical, "degenerate abscissae in power-law fit");
    return (n * sxy - sx * sy) / den;
}

SubradianceScaling subradiance_scaling(double a, const Eigen::Vector3d& orientation,
                                       const std::vector<int>& n_list, SubradianceMode mode,
                                       double gamma) {
    if (n_list.size() < 3) fail(ErrorKind::Numerical, "subradiance fit needs at least three N values");
    for (std::size_t i = 0; i < n_list.size(); ++i) {
        require(n_list[i] >= 1 && n_list[i] <= 500, "N must lie in [1, 500]");
        if (i) require(n_list[i] > n_list[i - 1], "N list must be increasing");
    }
    SubradianceScaling out;
    std::vector<double> xs;
    for (int n : n_list) {
        auto c = coupling_matrices(build_chain(std::size_t(n), a, orientation, 0.0, gamma));
        double rmin;
        if (mode == SubradianceMode::DecayMatrixOnly) {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(c.gamma, Eigen::EigenvaluesOnly);
            rmin = es.eigenvalues()(0);
        } else {
            rmin = single_excitation_spectrum(c, 0.0).decay_rates.minCoeff();
        }
        out.n_values.push_back(n);
        out.min_rates.push_back(rmin);
        xs.push_back(double(n));
    }
    out.exponent = loglog_slope(xs, out.min_rates);
    return out;
}

std::vector<Eigen::VectorXcd> single_excitation_evolve(const CouplingMatrices& c,
                                                       const std::vector<double>& detuning,
                                                       const std::vector<std::complex<double>>& eta,
                                                       const Eigen::VectorXcd& beta0,
                                                       const std::vector<double>& times,
                                                       const OdeOptions& opt) {
    const Eigen::Index n = c.size();
    require(beta0.size() == n, "initial amplitudes must match emitter count");
    const std::complex<double> I(0.0, 1.0);
    Eigen::MatrixXcd gen = -(I * c.omega.cast<std::complex<double>>() + c.gamma.cast<std::complex<double>>());
    Eigen::VectorXcd src = Eigen::VectorXcd::Zero(n);
    if (!detuning.empty()) {
        require(Eigen::Index(detuning.size()) == n, "detunings must match emitter count");
        for (Eigen::Index j = 0; j < n; ++j) gen(j, j) -= I * detuning[std::size_t(j)];
    }
    if (!eta.empty()) {
        require(Eigen::Index(eta.size()) == n, "drive must match emitter count");
        for (Eigen::Index j = 0; j < n; ++j) src(j) = -I * eta[std::size_t(j)];
    }
    auto rhs = [&](double, const Eigen::VectorXcd& b) -> Eigen::VectorXcd { return gen * b + src; };
    return integrate_dopri5<Eigen::VectorXcd>(rhs, beta0, times, opt);
}

double dicke_down_rate(int n, double gamma, double m) {
    const double s = 0.5 * n;
    return 2.0 * gamma * (s + m) * (s - m + 1.0);
}

DickeTrajectory dicke_evolve(int n, double gamma, const std::vector<double>& times,
                             const Eigen::VectorXd& initial) {
    require(n >= 1, "Dicke ladder needs N >= 1");
    require(gamma > 0.0, "gamma must be positive");
    const int levels = n + 1;
    const double s = 0.5 * n;
    Eigen::VectorXd p0;
    if (initial.size() == 0) {
        p0 = Eigen::VectorXd::Zero(levels);
        p0(levels - 1) = 1.0;
    } else {
        require(initial.size() == levels, "initial ladder distribution must have N+1 entries");
        require(initial.minCoeff() >= 0.0 && std::abs(initial.sum() - 1.0) < 1e-10,
                "initial ladder distribution must be a probability vector");
        p0 = initial;
    }
    Eigen::VectorXd w(levels), ladder(levels), mval(levels);
    for (int i = 0; i < levels; ++i) {
        mval(i) = i - s;
        w(i) = dicke_down_rate(n, gamma, mval(i));
        ladder(i) = (s + mval(i)) * (s - mval(i) + 1.0);
    }
    auto rhs = [&](double, const Eigen::VectorXd& p) -> Eigen::VectorXd {
        Eigen::VectorXd out = -w.cwiseProduct(p);
        out.head(levels - 1) += w.tail(levels - 1).cwiseProduct(p.tail(levels - 1));
        return out;
    };
    DickeTrajectory tr;
    integrate_dopri5<Eigen::VectorXd>(
        rhs, p0, times,
        [&](std::size_t, double t, const Eigen::VectorXd& p) {
            tr.t.push_back(t);
            tr.p.push_back(p);
            const double sz = mval.dot(p);
            const double sps = ladder.dot(p);
            tr.sz.push_back(sz);
            tr.spsm.push_back(sps);
            const double denom = sz + s;
            tr.gamma_sup.push_back(denom > 1e-300 ? 2.0 * gamma * sps / denom : 0.0);
        },
        OdeOptions{1e-10, 1e-13});
    return tr;
}

double pair_correlation(int n, double m) {
    require(n >= 2, "pair correlation needs N >= 2");
    const double s = 0.5 * n;
    require(std::abs(m) <= s + 1e-12, "|m| must not exceed N/2");
    return (s * s - m * m) / (double(n) * (n - 1));
}

} // namespace coop
