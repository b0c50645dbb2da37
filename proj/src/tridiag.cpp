#include "crsslab/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace crsslab {

int sturm_count(const Tridiag& t, double x) {
    // count of negative pivots of T - xI in the LDL^T recurrence
    const int n = t.n();
    int count = 0;
    double d = t.diag[0] - x;
    if (d < 0) ++count;
    const double tiny = std::numeric_limits<double>::min();
    for (int i = 1; i < n; ++i) {
        double denom = d;
        if (std::abs(denom) < tiny) denom = (denom < 0 ? -tiny : tiny);
        d = (t.diag[i] - x) - t.off[i - 1] * t.off[i - 1] / denom;
        if (d < 0) ++count;
    }
    return count;
}

static void gershgorin(const Tridiag& t, double& lo, double& hi) {
    const int n = t.n();
    lo = std::numeric_limits<double>::infinity();
    hi = -lo;
    for (int i = 0; i < n; ++i) {
        double rad = 0;
        if (i > 0) rad += std::abs(t.off[i - 1]);
        if (i + 1 < n) rad += std::abs(t.off[i]);
        lo = std::min(lo, t.diag[i] - rad);
        hi = std::max(hi, t.diag[i] + rad);
    }
}

double eigenvalue_k(const Tridiag& t, int k) {
    if (k < 0 || k >= t.n()) throw std::invalid_argument("eigenvalue_k: index out of range");
    double lo, hi;
    gershgorin(t, lo, hi);
    const double scale = std::max({std::abs(lo), std::abs(hi), 1.0});
    for (int it = 0; it < 200 && hi - lo > 4e-16 * scale; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (sturm_count(t, mid) > k)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

std::vector<double> tridiag_solve_pivoted(std::vector<double> sub, std::vector<double> diag,
                                          std::vector<double> sup, std::vector<double> rhs) {
    // LU with row interchanges; second superdiagonal fill-in
    const int n = static_cast<int>(diag.size());
    std::vector<double> sup2(n, 0.0);
    for (int i = 0; i + 1 < n; ++i) {
        if (std::abs(sub[i]) > std::abs(diag[i])) {
            std::swap(diag[i], sub[i]);
            std::swap(sup[i], diag[i + 1]);
            if (i + 2 < n) {
                sup2[i] = sup[i + 1];
                sup[i + 1] = 0.0;
            }
            std::swap(rhs[i], rhs[i + 1]);
        }
        if (diag[i] == 0.0) diag[i] = std::numeric_limits<double>::min();
        const double m = sub[i] / diag[i];
        diag[i + 1] -= m * sup[i];
        if (i + 2 < n) sup[i + 1] -= m * sup2[i];
        rhs[i + 1] -= m * rhs[i];
    }
    if (diag[n - 1] == 0.0) diag[n - 1] = std::numeric_limits<double>::min();
    std::vector<double> x(n);
    x[n - 1] = rhs[n - 1] / diag[n - 1];
    if (n > 1) x[n - 2] = (rhs[n - 2] - sup[n - 2] * x[n - 1]) / diag[n - 2];
    for (int i = n - 3; i >= 0; --i)
        x[i] = (rhs[i] - sup[i] * x[i + 1] - sup2[i] * x[i + 2]) / diag[i];
    return x;
}

EigenPair ground_eigenpair(const Tridiag& t) {
    const int n = t.n();
    const double lam = eigenvalue_k(t, 0);
    double lo, hi;
    gershgorin(t, lo, hi);
    const double scale = std::max({std::abs(lo), std::abs(hi), 1.0});

    // inverse iteration on T - shift, shift slightly below the ground value
    const double shift = lam - 64e-16 * scale;
    std::vector<double> v(n, 1.0 / std::sqrt(static_cast<double>(n)));
    double resid = std::numeric_limits<double>::infinity();
    const int max_iters = 50;
    for (int it = 0; it < max_iters; ++it) {
        std::vector<double> sub(t.off), dia(t.diag), sup(t.off);
        for (auto& d : dia) d -= shift;
        std::vector<double> w = tridiag_solve_pivoted(std::move(sub), std::move(dia),
                                                      std::move(sup), v);
        double nrm = 0;
        for (double x : w) nrm += x * x;
        nrm = std::sqrt(nrm);
        if (!(nrm > 0) || !std::isfinite(nrm))
            throw SolverError("ground_eigenpair: inverse iteration breakdown", it, nrm);
        for (int i = 0; i < n; ++i) v[i] = w[i] / nrm;

        // residual ||(T - lam) v||
        resid = 0;
        for (int i = 0; i < n; ++i) {
            double y = (t.diag[i] - lam) * v[i];
            if (i > 0) y += t.off[i - 1] * v[i - 1];
            if (i + 1 < n) y += t.off[i] * v[i + 1];
            resid += y * y;
        }
        resid = std::sqrt(resid);
        if (resid <= 1e-13 * scale) break;
        if (it == max_iters - 1)
            throw SolverError("ground_eigenpair: inverse iteration did not converge",
                              max_iters, resid);
    }
    // sign gauge: make the first nonzero component positive
    for (int i = 0; i < n; ++i) {
        if (v[i] != 0.0) {
            if (v[i] < 0)
                for (auto& x : v) x = -x;
            break;
        }
    }
    return {lam, std::move(v)};
}

TridiagLdlt::TridiagLdlt(const Tridiag& t) : d(t.n()), l(std::max(t.n() - 1, 0)) {
    const int n = t.n();
    d[0] = t.diag[0];
    for (int i = 1; i < n; ++i) {
        if (d[i - 1] <= 0)
            throw SolverError("TridiagLdlt: matrix not positive definite", i, d[i - 1]);
        l[i - 1] = t.off[i - 1] / d[i - 1];
        d[i] = t.diag[i] - l[i - 1] * t.off[i - 1];
    }
    if (d[n - 1] <= 0)
        throw SolverError("TridiagLdlt: matrix not positive definite", n, d[n - 1]);
}

std::vector<double> TridiagLdlt::solve(const std::vector<double>& rhs) const {
    const int n = static_cast<int>(d.size());
    std::vector<double> x(rhs);
    for (int i = 1; i < n; ++i) x[i] -= l[i - 1] * x[i - 1];
    for (int i = 0; i < n; ++i) x[i] /= d[i];
    for (int i = n - 2; i >= 0; --i) x[i] -= l[i] * x[i + 1];
    return x;
}

double TridiagLdlt::min_pivot() const {
    double m = d[0];
    for (double x : d) m = std::min(m, x);
    return m;
}

}  // namespace crsslab
