#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace crsslab {

// Real symmetric tridiagonal matrix: diag[i] on the diagonal, off[i] couples i and i+1.
struct Tridiag {
    std::vector<double> diag;
    std::vector<double> off;  // size = diag.size() - 1 (empty allowed for 1x1)

    int n() const { return static_cast<int>(diag.size()); }
};

struct SolverError : std::runtime_error {
    int iterations;
    double residual;
    SolverError(const std::string& what, int iters, double res)
        : std::runtime_error(what + " (iterations=" + std::to_string(iters)
                             + ", residual=" + std::to_string(res) + ")"),
          iterations(iters), residual(res) {}
};

// number of eigenvalues strictly below x (Sturm sequence count)
int sturm_count(const Tridiag& t, double x);

// k-th smallest eigenvalue (k = 0 is the ground value), by bisection
double eigenvalue_k(const Tridiag& t, int k);

struct EigenPair {
    double value;
    std::vector<double> vector;  // unit norm
};

// ground eigenpair via bisection plus inverse iteration
EigenPair ground_eigenpair(const Tridiag& t);

// LDL^T factorization for positive definite tridiagonal systems; reusable across solves
struct TridiagLdlt {
    std::vector<double> d;  // pivot sequence
    std::vector<double> l;  // subdiagonal multipliers

    explicit TridiagLdlt(const Tridiag& t);
    std::vector<double> solve(const std::vector<double>& rhs) const;
    double min_pivot() const;
};

// general tridiagonal solve with partial pivoting (possibly indefinite / near-singular shifts)
std::vector<double> tridiag_solve_pivoted(std::vector<double> sub, std::vector<double> diag,
                                          std::vector<double> sup, std::vector<double> rhs);

}  // namespace crsslab
