#pragma once

#include <complex>
#include <utility>

#include <Eigen/Dense>

#include "crsslab/crss.hpp"
#include "crsslab/spin.hpp"

namespace crsslab {

struct DriveParams {
    cplx omega;
    double delta;
    double gamma;

    DriveParams(cplx om, double de, double ga) : omega(om), delta(de), gamma(ga) {
        if (!(ga > 0.0)) throw std::domain_error("DriveParams: gamma must be positive");
    }
};

struct CavityParams {
    cplx g_coupling;
    double delta_c;
    double kappa;
    double delta_a;

    CavityParams(cplx g, double dc, double ka, double da = 0.0)
        : g_coupling(g), delta_c(dc), kappa(ka), delta_a(da) {
        if (!(ka > 0.0)) throw std::domain_error("CavityParams: kappa must be positive");
    }
};

struct DensityMatrix {
    SpinJ j;
    Eigen::MatrixXcd rho;
};

// alpha = Omega / (Delta - i gamma/2); throws on Delta = gamma = 0
cplx crss_amplitude(cplx omega, double delta, double gamma);
cplx crss_amplitude(const DriveParams& d);

// Omega_c = (N/4) sqrt(gamma^2 + 4 Delta^2)
double critical_drive(int n_atoms, double delta, double gamma);

// steady state of the resonant (Delta = 0) master equation, rho ~ [(J-alpha)^dag (J-alpha)]^{-1}
DensityMatrix steady_state_resonant(SpinJ j, cplx alpha);

// drive parameters on resonance with Omega real positive: alpha = i j r (phi = -pi/2)
DriveParams resonant_drive(SpinJ j, double r, double gamma = 1.0);

// exact right-hand side of the master equation
Eigen::MatrixXcd liouvillian_apply(const Eigen::MatrixXcd& rho, const DriveParams& d, SpinJ j);

// null vector of the vectorized generator (sparse), any Delta; capped dimension
DensityMatrix steady_state_general(SpinJ j, const DriveParams& d, int j_cap = 25);

// adaptive Dormand-Prince integration from |j,-j>; cross-validation oracle
DensityMatrix propagate_to_steady(SpinJ j, const DriveParams& d, double t_final,
                                  double tol = 1e-10);

// j r (1 - <ansatz| rho_s |ansatz>) at Delta = 0
double steadystate_infidelity(SpinJ j, double r);

// (Delta, gamma) from Delta - i gamma/2 = |g|^2 / (delta_c + i kappa/2)
std::pair<double, double> cavity_effective_params(const CavityParams& c);

double trace_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);
double purity(const DensityMatrix& rho);

}  // namespace crsslab
