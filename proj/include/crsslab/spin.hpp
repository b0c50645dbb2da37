#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace crsslab {

using cplx = std::complex<double>;

// Half-integer spin stored as 2j to keep all lattice arithmetic exact.
struct SpinJ {
    int two_j;

    explicit SpinJ(int tj) : two_j(tj) {
        if (tj < 1) throw std::invalid_argument("SpinJ: 2j must be a positive integer");
    }
    static SpinJ from_double(double j) {
        int tj = static_cast<int>(std::lround(2.0 * j));
        if (std::abs(2.0 * j - tj) > 1e-9)
            throw std::invalid_argument("SpinJ: j must be a half-integer");
        return SpinJ(tj);
    }
    double value() const { return 0.5 * two_j; }
    int dim() const { return two_j + 1; }
    // basis index k = 0..2j corresponds to m = k - j (ascending m order)
    double m_of(int k) const { return k - 0.5 * two_j; }
    bool operator==(const SpinJ& o) const { return two_j == o.two_j; }
};

// sqrt(j(j+1) - m(m-1)); the matrix element J|j,m> = c|j,m-1>. Zero at m = -j.
double ladder_coefficient(SpinJ j, int two_m);
double ladder_coefficient(SpinJ j, double m);

struct SpinState {
    SpinJ j;
    std::vector<cplx> amps;  // amps[k] = a_m, m = k - j

    SpinState(SpinJ jj, std::vector<cplx> a) : j(jj), amps(std::move(a)) {
        if (static_cast<int>(amps.size()) != j.dim())
            throw std::invalid_argument("SpinState: amplitude count != 2j+1");
    }
    double norm() const;
};

struct BlochAngles {
    double theta;  // from the south pole, [0, pi/2]
    double phi;    // [0, 2pi)

    BlochAngles(double th, double ph) : theta(th), phi(ph) {
        if (!(th >= 0.0 && th <= M_PI_2 + 1e-12))
            throw std::domain_error("BlochAngles: theta outside [0, pi/2]");
        if (!(ph >= 0.0 && ph < 2.0 * M_PI + 1e-12))
            throw std::domain_error("BlochAngles: phi outside [0, 2pi)");
    }
};

// Banded representation: lowering acts as (J psi)_{k-1} += c_k psi_k.
struct SpinOperatorSet {
    SpinJ j;
    std::vector<double> c;   // c[k] = ladder coefficient at m = k - j, c[0] = 0
    std::vector<double> mz;  // mz[k] = k - j

    explicit SpinOperatorSet(SpinJ jj);

    Eigen::MatrixXcd lowering_dense() const;
    Eigen::MatrixXcd raising_dense() const;
    Eigen::MatrixXcd jx_dense() const;
    Eigen::MatrixXcd jy_dense() const;
    Eigen::MatrixXcd jz_dense() const;
};

SpinOperatorSet build_operators(SpinJ j);

std::vector<cplx> apply_lowering(const SpinOperatorSet& ops, const std::vector<cplx>& v);
std::vector<cplx> apply_raising(const SpinOperatorSet& ops, const std::vector<cplx>& v);
std::vector<cplx> apply_jz(const SpinOperatorSet& ops, const std::vector<cplx>& v);

cplx inner(const std::vector<cplx>& a, const std::vector<cplx>& b);

cplx expectation(const SpinState& psi, const Eigen::MatrixXcd& op);
cplx expectation(const Eigen::MatrixXcd& rho, const Eigen::MatrixXcd& op);

// a_m = sqrt(C(2j, j+m)) cos^{j-m}(t/2) sin^{j+m}(t/2) e^{-i(j+m)phi}
SpinState coherent_spin_state(SpinJ j, const BlochAngles& angles);

// internal form valid for theta in [0, pi]; used by the product-state machinery
std::vector<cplx> css_amplitudes(SpinJ j, double theta, double phi);

}  // namespace crsslab
