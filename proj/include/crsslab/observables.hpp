#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "crsslab/crss.hpp"
#include "crsslab/spin.hpp"
#include "crsslab/superradiance.hpp"

namespace crsslab {

// second moments of the lowering operator J and of Jz; everything else
// (cartesian covariances, quadrature variances) is assembled from these
struct SpinMoments {
    cplx j1;     // <J>
    cplx j2;     // <J^2>
    cplx jjz;    // <J Jz>
    cplx jzj;    // <Jz J>
    double jdj;  // <J† J>
    double jjd;  // <J J†>
    double jz;   // <Jz>
    double jz2;  // <Jz^2>
};

SpinMoments spin_moments(const SpinState& state);
SpinMoments spin_moments(const DensityMatrix& rho);

struct SqueezingReport {
    SpinJ j;
    Eigen::Vector3d mean_spin;
    Eigen::Matrix3d covariance;  // symmetrized second moments
    Eigen::Vector3d e1, e2;      // deterministic basis of the plane perpendicular to the mean
    double xi_sq;
    double anti_xi_sq;
    double optimal_angle;  // direction of minimal variance, radians from e1, in [0, pi)
};

SqueezingReport squeezing_parameter(const SpinState& state);
SqueezingReport squeezing_parameter(const DensityMatrix& rho);

// variance ratio along cos(u) e1 + sin(u) e2, same 2j/|<J>|^2 normalization
double xi_sq_at(const SqueezingReport& rep, double angle);

// closed-form quadrature squeezing of the ansatz family; phi_quad is measured
// from the mean-spin azimuth, minimum sqrt(1-r^2) at phi_quad = pi/2
double crss_squeezing_analytic(double r, double phi_quad);

struct OptimalSqueezing {
    double xi_min;              // sqrt(1 - r_threshold^2)
    double r_at_min;            // r_threshold
    double xi_min_asymptotic;   // (3/2j)^(1/3)
};

OptimalSqueezing optimal_squeezing(SpinJ j);

struct DipoleQuadrature {
    double variance;   // Var[(e^{i phi} J + e^{-i phi} J†)/2]
    double threshold;  // |<Jz>|/2
    bool squeezed;     // variance < threshold
};

DipoleQuadrature dipole_quadrature_variance(const SpinState& state, double phi);
DipoleQuadrature dipole_quadrature_variance(const DensityMatrix& rho, double phi);

struct FieldCoupling {
    double g_factor;
    explicit FieldCoupling(double g = 1.0);
};

double field_quadrature_variance(const SpinState& state, double phi, FieldCoupling c = FieldCoupling());
double field_quadrature_variance(const DensityMatrix& rho, double phi, FieldCoupling c = FieldCoupling());

struct FieldMinimum {
    double min_variance;
    double optimal_phi;
};

FieldMinimum field_quadrature_minimum(const SpinState& state, FieldCoupling c = FieldCoupling());
FieldMinimum field_quadrature_minimum(const DensityMatrix& rho, FieldCoupling c = FieldCoupling());

// Var[J] = <J^2> - <J>^2 (complex; vanishes exactly on eigenstates of J)
cplx dipole_variance(const SpinState& state);

struct TwoLevelAmps {
    cplx c_g, c_e;
};

struct ProductState {
    std::vector<TwoLevelAmps> atoms;
};

struct VarianceDecomposition {
    cplx collective;   // Dicke-basis <J^2> - <J>^2
    cplx microscopic;  // -sum_n <sigma_n>^2
};

// works always, independent of the atoms being identical
cplx microscopic_dipole_variance(const ProductState& product);

// identical atoms only: maps the product state onto the symmetric sector and
// cross-checks the collective variance against the per-atom sum
VarianceDecomposition dipole_variance_decomposition(const ProductState& product);

}  // namespace crsslab
