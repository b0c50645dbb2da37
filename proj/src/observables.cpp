#include "crsslab/observables.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace crsslab {

SpinMoments spin_moments(const SpinState& state) {
    const SpinOperatorSet ops(state.j);
    const int n = state.j.dim();
    const auto& a = state.amps;
    if (static_cast<int>(a.size()) != n)
        throw std::invalid_argument("spin_moments: amplitude count mismatch");
    SpinMoments m{};
    for (int k = 0; k < n; ++k) {
        const double p = std::norm(a[k]);
        m.jdj += ops.c[k] * ops.c[k] * p;
        if (k + 1 < n) m.jjd += ops.c[k + 1] * ops.c[k + 1] * p;
        m.jz += ops.mz[k] * p;
        m.jz2 += ops.mz[k] * ops.mz[k] * p;
        if (k >= 1) {
            const cplx cross = std::conj(a[k - 1]) * a[k] * ops.c[k];
            m.j1 += cross;
            m.jjz += cross * ops.mz[k];
            m.jzj += cross * ops.mz[k - 1];
        }
        if (k >= 2) m.j2 += std::conj(a[k - 2]) * ops.c[k] * ops.c[k - 1] * a[k];
    }
    return m;
}

SpinMoments spin_moments(const DensityMatrix& dm) {
    const SpinOperatorSet ops(dm.j);
    const int n = dm.j.dim();
    if (dm.rho.rows() != n || dm.rho.cols() != n)
        throw std::invalid_argument("spin_moments: density matrix dimension mismatch");
    SpinMoments m{};
    for (int k = 0; k < n; ++k) {
        const double p = dm.rho(k, k).real();
        m.jdj += ops.c[k] * ops.c[k] * p;
        if (k + 1 < n) m.jjd += ops.c[k + 1] * ops.c[k + 1] * p;
        m.jz += ops.mz[k] * p;
        m.jz2 += ops.mz[k] * ops.mz[k] * p;
        if (k >= 1) {
            const cplx cross = ops.c[k] * dm.rho(k, k - 1);
            m.j1 += cross;
            m.jjz += cross * ops.mz[k];
            m.jzj += cross * ops.mz[k - 1];
        }
        if (k >= 2) m.j2 += ops.c[k] * ops.c[k - 1] * dm.rho(k, k - 2);
    }
    return m;
}

namespace {

SqueezingReport report_from_moments(SpinJ j, const SpinMoments& m) {
    const double jx = m.j1.real(), jy = -m.j1.imag();
    Eigen::Vector3d mean(jx, jy, m.jz);
    const double len = mean.norm();
    if (len <= 1e-9 * j.value())
        throw std::domain_error("squeezing_parameter: mean spin vanishes, "
                                "perpendicular plane undefined");

    Eigen::Matrix3d cov;
    const cplx s = m.jjz + m.jzj;
    cov(0, 0) = 0.25 * (2.0 * m.j2.real() + m.jdj + m.jjd) - jx * jx;
    cov(1, 1) = 0.25 * (-2.0 * m.j2.real() + m.jdj + m.jjd) - jy * jy;
    cov(2, 2) = m.jz2 - m.jz * m.jz;
    cov(0, 1) = cov(1, 0) = -0.5 * m.j2.imag() - jx * jy;
    cov(0, 2) = cov(2, 0) = 0.5 * s.real() - jx * m.jz;
    cov(1, 2) = cov(2, 1) = -0.5 * s.imag() - jy * m.jz;

    const Eigen::Vector3d v = mean / len;
    Eigen::Vector3d ref = Eigen::Vector3d::UnitZ();
    if (std::abs(v.z()) > 1.0 - 1e-6) ref = Eigen::Vector3d::UnitX();
    Eigen::Vector3d e1 = ref.cross(v).normalized();
    Eigen::Vector3d e2 = v.cross(e1);

    const double a = e1.dot(cov * e1);
    const double d = e2.dot(cov * e2);
    const double b = e1.dot(cov * e2);
    const double split = std::hypot(a - d, 2.0 * b);
    const double lmin = 0.5 * (a + d - split);
    const double lmax = 0.5 * (a + d + split);

    double angle;
    if (b == 0.0 && a <= d) angle = 0.0;
    else if (b == 0.0) angle = std::numbers::pi / 2;
    else angle = std::atan2(lmin - a, b);
    angle = std::fmod(angle, std::numbers::pi);
    if (angle < 0.0) angle += std::numbers::pi;

    const double scale = 2.0 * j.value() / (len * len);
    return {j, mean, cov, e1, e2, scale * lmin, scale * lmax, angle};
}

}  // namespace

SqueezingReport squeezing_parameter(const SpinState& state) {
    return report_from_moments(state.j, spin_moments(state));
}

SqueezingReport squeezing_parameter(const DensityMatrix& rho) {
    return report_from_moments(rho.j, spin_moments(rho));
}

double xi_sq_at(const SqueezingReport& rep, double angle) {
    const Eigen::Vector3d n = std::cos(angle) * rep.e1 + std::sin(angle) * rep.e2;
    const double var = n.dot(rep.covariance * n);
    const double len2 = rep.mean_spin.squaredNorm();
    return 2.0 * rep.j.value() * var / len2;
}

double crss_squeezing_analytic(double r, double phi_quad) {
    if (!(r > 0.0 && r < 1.0))
        throw std::domain_error("crss_squeezing_analytic: requires 0 < r < 1");
    const double c = std::sqrt(1.0 - r * r);
    return std::cos(2.0 * phi_quad) * (1.0 - c * c) / (2.0 * c) + (1.0 + c * c) / (2.0 * c);
}

OptimalSqueezing optimal_squeezing(SpinJ j) {
    if (j.value() < 2.0)
        throw std::domain_error("optimal_squeezing: requires j >= 2");
    const RThreshold rt = r_threshold(j);
    const double xi = std::sqrt(1.0 - rt.r_exact * rt.r_exact);
    return {xi, rt.r_exact, std::cbrt(3.0 / (2.0 * j.value()))};
}

namespace {

DipoleQuadrature dipole_from_moments(const SpinMoments& m, double phi) {
    const cplx e1p = std::polar(1.0, phi);
    const double mean = (e1p * m.j1).real();
    const double var =
        0.5 * (e1p * e1p * m.j2).real() + 0.25 * (m.jjd + m.jdj) - mean * mean;
    const double thr = 0.5 * std::abs(m.jz);
    return {var, thr, var < thr};
}

FieldMinimum field_min_from_moments(const SpinMoments& m, FieldCoupling c) {
    const cplx a = m.j2 - m.j1 * m.j1;
    const double b = 0.5 * (m.jjd + m.jdj) - std::norm(m.j1);
    const double g2 = c.g_factor * c.g_factor;
    const double vmin = 1.0 + 2.0 * g2 * (b - std::abs(a) + m.jz);
    const double phi = 0.5 * (std::numbers::pi - std::arg(a));
    return {vmin, phi};
}

}  // namespace

FieldCoupling::FieldCoupling(double g) : g_factor(g) {
    if (!(g > 0.0) || !std::isfinite(g))
        throw std::domain_error("FieldCoupling: G must be finite and positive");
}

DipoleQuadrature dipole_quadrature_variance(const SpinState& state, double phi) {
    return dipole_from_moments(spin_moments(state), phi);
}

DipoleQuadrature dipole_quadrature_variance(const DensityMatrix& rho, double phi) {
    return dipole_from_moments(spin_moments(rho), phi);
}

double field_quadrature_variance(const SpinState& state, double phi, FieldCoupling c) {
    const DipoleQuadrature q = dipole_quadrature_variance(state, phi);
    const SpinMoments m = spin_moments(state);
    return 1.0 + 4.0 * c.g_factor * c.g_factor * (q.variance + 0.5 * m.jz);
}

double field_quadrature_variance(const DensityMatrix& rho, double phi, FieldCoupling c) {
    const DipoleQuadrature q = dipole_quadrature_variance(rho, phi);
    const SpinMoments m = spin_moments(rho);
    return 1.0 + 4.0 * c.g_factor * c.g_factor * (q.variance + 0.5 * m.jz);
}

FieldMinimum field_quadrature_minimum(const SpinState& state, FieldCoupling c) {
    return field_min_from_moments(spin_moments(state), c);
}

FieldMinimum field_quadrature_minimum(const DensityMatrix& rho, FieldCoupling c) {
    return field_min_from_moments(spin_moments(rho), c);
}

cplx dipole_variance(const SpinState& state) {
    const SpinMoments m = spin_moments(state);
    return m.j2 - m.j1 * m.j1;
}

namespace {

void check_product(const ProductState& p) {
    if (p.atoms.empty())
        throw std::invalid_argument("product state: no atoms");
    for (const auto& at : p.atoms) {
        const double n = std::norm(at.c_g) + std::norm(at.c_e);
        if (std::abs(n - 1.0) > 1e-9)
            throw std::invalid_argument("product state: atom amplitudes not normalized");
    }
}

}  // namespace

cplx microscopic_dipole_variance(const ProductState& product) {
    check_product(product);
    cplx acc(0.0);
    for (const auto& at : product.atoms) {
        const cplx coh = std::conj(at.c_g) * at.c_e;  // <sigma_minus>
        acc -= coh * coh;
    }
    return acc;
}

VarianceDecomposition dipole_variance_decomposition(const ProductState& product) {
    check_product(product);
    const auto& first = product.atoms.front();
    const double pop0 = std::norm(first.c_e);
    const cplx coh0 = std::conj(first.c_g) * first.c_e;
    for (const auto& at : product.atoms) {
        if (std::abs(std::norm(at.c_e) - pop0) > 1e-9
            || std::abs(std::conj(at.c_g) * at.c_e - coh0) > 1e-9)
            throw std::runtime_error(
                "dipole_variance_decomposition: symmetric-sector path supports "
                "identical atoms only (microscopic_dipole_variance still applies)");
    }
    const int n_atoms = static_cast<int>(product.atoms.size());
    const SpinJ j(n_atoms);  // two_j = N
    const double theta = 2.0 * std::atan2(std::abs(first.c_e), std::abs(first.c_g));
    const double phi = (std::abs(coh0) > 0.0) ? -std::arg(coh0) : 0.0;
    SpinState css{j, css_amplitudes(j, theta, phi)};
    return {dipole_variance(css), microscopic_dipole_variance(product)};
}

}  // namespace crsslab
