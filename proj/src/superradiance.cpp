#include "crsslab/superradiance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include "crsslab/tridiag.hpp"

namespace crsslab {

cplx crss_amplitude(cplx omega, double delta, double gamma) {
    if (delta == 0.0 && gamma == 0.0)
        throw std::invalid_argument("crss_amplitude: Delta and gamma both zero");
    return omega / cplx(delta, -0.5 * gamma);
}

cplx crss_amplitude(const DriveParams& d) {
    return crss_amplitude(d.omega, d.delta, d.gamma);
}

double critical_drive(int n_atoms, double delta, double gamma) {
    if (n_atoms < 1) throw std::domain_error("critical_drive: N must be positive");
    return 0.25 * n_atoms * std::sqrt(gamma * gamma + 4.0 * delta * delta);
}

DriveParams resonant_drive(SpinJ j, double r, double gamma) {
    const double omega = r * critical_drive(j.two_j, 0.0, gamma);
    return DriveParams(cplx(omega, 0.0), 0.0, gamma);
}

DensityMatrix steady_state_resonant(SpinJ j, cplx alpha) {
    const int n = j.dim();
    const double amag = std::abs(alpha);
    if (amag >= j.value())
        throw std::domain_error("steady_state_resonant: requires |alpha| < j");

    if (amag == 0.0) {
        Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(n, n);
        rho(0, 0) = 1.0;
        return {j, std::move(rho)};
    }

    const SpinOperatorSet ops(j);
    Tridiag t;
    t.diag.resize(n);
    t.off.resize(n - 1);
    for (int k = 0; k < n; ++k) t.diag[k] = ops.c[k] * ops.c[k] + amag * amag;
    for (int k = 0; k + 1 < n; ++k) t.off[k] = -amag * ops.c[k + 1];

    const double lam1 = std::max(eigenvalue_k(t, 0), 0.0);
    const double lam2 = eigenvalue_k(t, 1);
    if (!std::isfinite(lam1) || !(lam2 > 0.0))
        throw SolverError("steady_state_resonant: condition estimate overflow", 0,
                          lam2 / std::max(lam1, std::numeric_limits<double>::min()));

    // Bisection cannot resolve lam1 below ~eps*||T||, so the rank-one test uses
    // the log-domain residual bound lam1 <= |alpha a_s|^2, which never underflows.
    const double log_lam1_bound = 2.0 * proximity_error_ansatz(j, amag / j.value()).log_epsilon;
    const bool rank_one = log_lam1_bound - std::log(lam2) < -30.0 * std::log(10.0);

    Eigen::MatrixXd rho_real(n, n);
    if (rank_one) {
        EigenPair gp = ground_eigenpair(t);
        Eigen::Map<const Eigen::VectorXd> u(gp.vector.data(), n);
        rho_real = u * u.transpose();
    } else {
        std::vector<double> sub(t.off), sup(t.off), rhs(n, 0.0);
        const double scale = lam1 > 0.0 ? lam1 : 1.0;  // cancels in the normalization
        for (int col = 0; col < n; ++col) {
            rhs[col] = scale;
            std::vector<double> x = tridiag_solve_pivoted(sub, t.diag, sup, rhs);
            rhs[col] = 0.0;
            for (int row = 0; row < n; ++row) rho_real(row, col) = x[row];
        }
        rho_real = 0.5 * (rho_real + rho_real.transpose()).eval();
        // near the rank-one threshold the float trace can come out negative as a
        // whole; the normalization flips the sign back, so only zero/non-finite
        // traces are real failures
        const double tr = rho_real.trace();
        if (!std::isfinite(tr) || tr == 0.0)
            throw SolverError("steady_state_resonant: degenerate inverse trace", 0, tr);
        rho_real /= tr;
    }

    const double theta = std::arg(alpha);
    Eigen::MatrixXcd rho(n, n);
    for (int l = 0; l < n; ++l)
        for (int k = 0; k < n; ++k)
            rho(k, l) = rho_real(k, l) * std::polar(1.0, theta * (k - l));
    return {j, std::move(rho)};
}

Eigen::MatrixXcd liouvillian_apply(const Eigen::MatrixXcd& rho, const DriveParams& d, SpinJ j) {
    const int n = j.dim();
    if (rho.rows() != n || rho.cols() != n)
        throw std::invalid_argument("liouvillian_apply: dimension mismatch");
    const SpinOperatorSet ops(j);
    const cplx hc(d.delta, -0.5 * d.gamma);  // Delta - i gamma/2
    const cplx om = d.omega, omc = std::conj(d.omega);
    const cplx iu(0.0, 1.0);
    Eigen::MatrixXcd out(n, n);
    for (int k = 0; k < n; ++k) {
        const double ck = ops.c[k], ck1 = (k + 1 < n) ? ops.c[k + 1] : 0.0;
        for (int l = 0; l < n; ++l) {
            const double cl = ops.c[l], cl1 = (l + 1 < n) ? ops.c[l + 1] : 0.0;
            cplx hrho = hc * ck * ck * rho(k, l);
            if (k > 0) hrho -= om * ck * rho(k - 1, l);
            if (k + 1 < n) hrho -= omc * ck1 * rho(k + 1, l);
            cplx rhoh = std::conj(hc) * cl * cl * rho(k, l);
            if (l > 0) rhoh -= omc * cl * rho(k, l - 1);
            if (l + 1 < n) rhoh -= om * cl1 * rho(k, l + 1);
            cplx jump(0.0);
            if (k + 1 < n && l + 1 < n) jump = ck1 * cl1 * rho(k + 1, l + 1);
            out(k, l) = -iu * (hrho - rhoh) + d.gamma * jump;
        }
    }
    return out;
}

DensityMatrix steady_state_general(SpinJ j, const DriveParams& d, int j_cap) {
    if (j.value() > j_cap)
        throw std::domain_error("steady_state_general: j exceeds the configured cap");
    const int n = j.dim();
    const int nn = n * n;
    const SpinOperatorSet ops(j);
    const cplx hc(d.delta, -0.5 * d.gamma);
    const cplx om = d.omega, omc = std::conj(d.omega);
    const cplx iu(0.0, 1.0);

    // column-major vec: index k + n l <-> rho_{k,l}
    std::vector<Eigen::Triplet<cplx>> trip;
    trip.reserve(static_cast<size_t>(nn) * 6);
    auto idx = [n](int k, int l) { return k + n * l; };
    for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
            const int row = idx(k, l);
            trip.emplace_back(row, row,
                              -iu * hc * ops.c[k] * ops.c[k]
                                  + iu * std::conj(hc) * ops.c[l] * ops.c[l]);
            if (k > 0) trip.emplace_back(row, idx(k - 1, l), iu * om * ops.c[k]);
            if (k + 1 < n) trip.emplace_back(row, idx(k + 1, l), iu * omc * ops.c[k + 1]);
            if (l > 0) trip.emplace_back(row, idx(k, l - 1), -iu * omc * ops.c[l]);
            if (l + 1 < n) trip.emplace_back(row, idx(k, l + 1), -iu * om * ops.c[l + 1]);
            if (k + 1 < n && l + 1 < n)
                trip.emplace_back(row, idx(k + 1, l + 1),
                                  cplx(d.gamma * ops.c[k + 1] * ops.c[l + 1], 0.0));
        }
    }
    Eigen::SparseMatrix<cplx> L(nn, nn);
    L.setFromTriplets(trip.begin(), trip.end());

    // shifted inverse iteration toward the null vector
    const double sigma = 1e-6 * d.gamma;
    Eigen::SparseMatrix<cplx> Ls = L;
    for (int i = 0; i < nn; ++i) Ls.coeffRef(i, i) += sigma;
    Ls.makeCompressed();
    Eigen::SparseLU<Eigen::SparseMatrix<cplx>> lu(Ls);
    if (lu.info() != Eigen::Success)
        throw SolverError("steady_state_general: factorization failed", 0, 0.0);

    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(nn);
    v(0) = 1.0;  // vec of the ground-state projector
    for (int it = 0; it < 8; ++it) {
        v = lu.solve(v);
        v /= v.norm();
    }

    Eigen::Map<const Eigen::MatrixXcd> x(v.data(), n, n);
    const cplx tr = x.trace();
    if (std::abs(tr) < 1e-10)
        throw SolverError("steady_state_general: trace-deficient null vector "
                          "(degenerate null space?)", 8, std::abs(tr));
    Eigen::MatrixXcd rho = x / tr;
    rho = 0.5 * (rho + rho.adjoint()).eval();
    rho /= rho.trace().real();

    const double defect = liouvillian_apply(rho, d, j).cwiseAbs().maxCoeff();
    if (!(defect < 1e-9 * std::max(1.0, d.gamma * j.value() * j.value())))
        throw SolverError("steady_state_general: stationarity defect too large", 8, defect);
    return {j, std::move(rho)};
}

DensityMatrix propagate_to_steady(SpinJ j, const DriveParams& d, double t_final, double tol) {
    const int n = j.dim();
    Eigen::MatrixXcd y = Eigen::MatrixXcd::Zero(n, n);
    y(0, 0) = 1.0;

    // Dormand-Prince 5(4)
    static const double a21 = 1.0 / 5;
    static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                        a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                        b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static const double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                        e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    const double rtol = tol, atol = 1e-3 * tol;
    double t = 0.0;
    double h = 1e-3 / d.gamma;
    Eigen::MatrixXcd k1 = liouvillian_apply(y, d, j);
    int rejected_in_a_row = 0;
    while (t < t_final) {
        h = std::min(h, t_final - t);
        const Eigen::MatrixXcd k2 = liouvillian_apply(y + h * a21 * k1, d, j);
        const Eigen::MatrixXcd k3 = liouvillian_apply(y + h * (a31 * k1 + a32 * k2), d, j);
        const Eigen::MatrixXcd k4 =
            liouvillian_apply(y + h * (a41 * k1 + a42 * k2 + a43 * k3), d, j);
        const Eigen::MatrixXcd k5 = liouvillian_apply(
            y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4), d, j);
        const Eigen::MatrixXcd k6 = liouvillian_apply(
            y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5), d, j);
        const Eigen::MatrixXcd y5 =
            y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        const Eigen::MatrixXcd k7 = liouvillian_apply(y5, d, j);
        const Eigen::MatrixXcd err =
            h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

        double ratio = 0.0;
        for (int col = 0; col < n; ++col)
            for (int row = 0; row < n; ++row)
                ratio = std::max(ratio, std::abs(err(row, col))
                                            / (atol + rtol * std::abs(y5(row, col))));
        if (ratio <= 1.0) {
            t += h;
            y = y5;
            k1 = k7;  // first-same-as-last
            rejected_in_a_row = 0;
        } else if (++rejected_in_a_row > 60) {
            throw SolverError("propagate_to_steady: step control stalled",
                              rejected_in_a_row, ratio);
        }
        const double grow = 0.9 * std::pow(std::max(ratio, 1e-10), -0.2);
        h *= std::clamp(grow, 0.2, 5.0);
    }
    y = 0.5 * (y + y.adjoint()).eval();
    y /= y.trace().real();
    return {j, std::move(y)};
}

double steadystate_infidelity(SpinJ j, double r) {
    const cplx alpha = cplx(0.0, 1.0) * (j.value() * r);  // Omega real convention
    const DensityMatrix rho = steady_state_resonant(j, alpha);
    const SpinState ans = crss_ansatz(CrssParams(j, r, -std::numbers::pi / 2));
    Eigen::Map<const Eigen::VectorXcd> a(ans.amps.data(), j.dim());
    const double fid = (a.dot(rho.rho * a)).real();
    return j.value() * r * (1.0 - fid);
}

std::pair<double, double> cavity_effective_params(const CavityParams& c) {
    const double g2 = std::norm(c.g_coupling);
    const double denom = c.delta_c * c.delta_c + 0.25 * c.kappa * c.kappa;
    return {g2 * c.delta_c / denom, g2 * c.kappa / denom};
}

double trace_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("trace_distance: dimension mismatch");
    Eigen::MatrixXcd d = a - b;
    d = 0.5 * (d + d.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(d, Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double purity(const DensityMatrix& rho) {
    return rho.rho.squaredNorm();  // tr(rho^2) for Hermitian rho
}

}  // namespace crsslab
