#include "crsslab/spin.hpp"

#include <cmath>

namespace crsslab {

double ladder_coefficient(SpinJ j, int two_m) {
    if (two_m < -j.two_j || two_m > j.two_j || ((two_m - j.two_j) & 1))
        throw std::domain_error("ladder_coefficient: m outside [-j, j] or off the lattice");
    // j(j+1) - m(m-1) = (tj(tj+2) - tm(tm-2))/4, exact in int64 up to 2j ~ 1e9
    const long long tj = j.two_j, tm = two_m;
    const long long num = tj * (tj + 2) - tm * (tm - 2);
    return 0.5 * std::sqrt(static_cast<double>(num));
}

double ladder_coefficient(SpinJ j, double m) {
    int tm = static_cast<int>(std::lround(2.0 * m));
    if (std::abs(2.0 * m - tm) > 1e-9)
        throw std::domain_error("ladder_coefficient: m not on the half-integer lattice");
    return ladder_coefficient(j, tm);
}

double SpinState::norm() const {
    double s = 0;
    for (const auto& a : amps) s += std::norm(a);
    return std::sqrt(s);
}

SpinOperatorSet::SpinOperatorSet(SpinJ jj) : j(jj), c(jj.dim()), mz(jj.dim()) {
    for (int k = 0; k < j.dim(); ++k) {
        c[k] = ladder_coefficient(j, -j.two_j + 2 * k);
        mz[k] = j.m_of(k);
    }
}

SpinOperatorSet build_operators(SpinJ j) { return SpinOperatorSet(j); }

Eigen::MatrixXcd SpinOperatorSet::lowering_dense() const {
    const int n = j.dim();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (int k = 1; k < n; ++k) m(k - 1, k) = c[k];
    return m;
}

Eigen::MatrixXcd SpinOperatorSet::raising_dense() const {
    return lowering_dense().adjoint();
}

Eigen::MatrixXcd SpinOperatorSet::jx_dense() const {
    Eigen::MatrixXcd lo = lowering_dense();
    return 0.5 * (lo + lo.adjoint());
}

Eigen::MatrixXcd SpinOperatorSet::jy_dense() const {
    Eigen::MatrixXcd lo = lowering_dense();
    return 0.5 * cplx(0, 1) * (lo - lo.adjoint());
}

Eigen::MatrixXcd SpinOperatorSet::jz_dense() const {
    const int n = j.dim();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (int k = 0; k < n; ++k) m(k, k) = mz[k];
    return m;
}

std::vector<cplx> apply_lowering(const SpinOperatorSet& ops, const std::vector<cplx>& v) {
    const int n = ops.j.dim();
    if (static_cast<int>(v.size()) != n) throw std::invalid_argument("apply_lowering: dimension mismatch");
    std::vector<cplx> out(n, cplx(0));
    for (int k = 1; k < n; ++k) out[k - 1] = ops.c[k] * v[k];
    return out;
}

std::vector<cplx> apply_raising(const SpinOperatorSet& ops, const std::vector<cplx>& v) {
    const int n = ops.j.dim();
    if (static_cast<int>(v.size()) != n) throw std::invalid_argument("apply_raising: dimension mismatch");
    std::vector<cplx> out(n, cplx(0));
    for (int k = 0; k + 1 < n; ++k) out[k + 1] = ops.c[k + 1] * v[k];
    return out;
}

std::vector<cplx> apply_jz(const SpinOperatorSet& ops, const std::vector<cplx>& v) {
    const int n = ops.j.dim();
    if (static_cast<int>(v.size()) != n) throw std::invalid_argument("apply_jz: dimension mismatch");
    std::vector<cplx> out(n);
    for (int k = 0; k < n; ++k) out[k] = ops.mz[k] * v[k];
    return out;
}

cplx inner(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("inner: dimension mismatch");
    cplx s(0);
    for (size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

cplx expectation(const SpinState& psi, const Eigen::MatrixXcd& op) {
    const int n = psi.j.dim();
    if (op.rows() != n || op.cols() != n)
        throw std::invalid_argument("expectation: dimension mismatch");
    Eigen::Map<const Eigen::VectorXcd> v(psi.amps.data(), n);
    return v.dot(op * v);  // Eigen's dot conjugates the left argument
}

cplx expectation(const Eigen::MatrixXcd& rho, const Eigen::MatrixXcd& op) {
    if (rho.rows() != op.rows() || rho.cols() != op.cols() || rho.rows() != rho.cols())
        throw std::invalid_argument("expectation: dimension mismatch");
    return (rho * op).trace();
}

std::vector<cplx> css_amplitudes(SpinJ j, double theta, double phi) {
    const int n = j.dim(), tj = j.two_j;
    std::vector<cplx> a(n);
    if (theta <= 0.0) {  // exact south pole
        for (int k = 0; k < n; ++k) a[k] = cplx(0);
        a[0] = cplx(1);
        return a;
    }
    const double lc = std::log(std::cos(0.5 * theta));
    const double ls = std::log(std::sin(0.5 * theta));
    const double lg_all = std::lgamma(tj + 1.0);
    double nrm2 = 0;
    std::vector<double> mag(n);
    for (int k = 0; k < n; ++k) {
        // log sqrt(C(2j,k)) + (2j-k) log cos + k log sin
        const double lm = 0.5 * (lg_all - std::lgamma(k + 1.0) - std::lgamma(tj - k + 1.0))
                          + (tj - k) * lc + k * ls;
        mag[k] = std::exp(lm);
        nrm2 += mag[k] * mag[k];
    }
    const double inv = 1.0 / std::sqrt(nrm2);
    for (int k = 0; k < n; ++k)
        a[k] = mag[k] * inv * std::polar(1.0, -phi * k);
    return a;
}

SpinState coherent_spin_state(SpinJ j, const BlochAngles& angles) {
    return SpinState(j, css_amplitudes(j, angles.theta, angles.phi));
}

}  // namespace crsslab
