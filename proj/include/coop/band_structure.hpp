#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "coop/geometry.hpp"

namespace coop {

struct BandResult {
    std::vector<double> q;                                  // quasimomentum, lambda0 units
    std::vector<std::vector<std::complex<double>>> branches; // per q: omega - i gamma per branch
    int unit_cell = 1;
    double a = 0.0;
    double k0 = kK0;
};

// single-cell allowed grid q = 2 pi m / (N a), m = -N/2..N/2
std::vector<double> single_cell_grid(int n, double a);
// double-cell grid q = pi m / (N a), m = -N/2..N/2
std::vector<double> double_cell_grid(int n, double a);

BandResult dispersion_nn(double omega0, double omega_nn, double a, int n);

struct FullDispersionOptions {
    int q_points = 0; // 0 uses the allowed grid, otherwise uniform samples of [-pi/a, pi/a]
};

// PBC chain, minimum-image separations; ensemble must be a chain built by build_chain
BandResult dispersion_full(const EmitterEnsemble& chain, const FullDispersionOptions& opt = {});

// light-cone marker q0 a / pi
double light_cone(double a);

enum class TwoBandKind { AlternatingFrequency, AlternatingSign, Ssh };

struct TwoBandParams {
    double p1 = 0.0; // omega1 | omega1 | omega0
    double p2 = 0.0; // omega2 | omega2 | Omega1
    double p3 = 0.0; // Omega  | Omega  | Omega2
};

TwoBandKind parse_two_band_kind(const std::string& name);

// returns (omega_minus, omega_plus)
std::pair<double, double> two_band_dispersion(TwoBandKind kind, const TwoBandParams& p, double q, double a);

// SSH eigenvector phase, the angle of Omega1 + Omega2 exp(2 i q a)
double ssh_phase(double omega1, double omega2, double q, double a);

struct WindingResult {
    std::vector<double> q;
    std::vector<double> accumulated; // integral of A_-(q) from the first grid point
    double raw = 0.0;                // (1/pi) closed-loop integral of A_-
    int winding = 0;
};

// q_grid must cover the double-cell zone [-pi/(2a), pi/(2a)] with at least 64 points
WindingResult berry_phase_and_winding(double omega1, double omega2, const std::vector<double>& q_grid,
                                      double a);

} // namespace coop
