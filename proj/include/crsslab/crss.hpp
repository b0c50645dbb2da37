#pragma once

#include <complex>
#include <vector>

#include "crsslab/spin.hpp"

namespace crsslab {

// alpha = j r e^{-i phi}
struct CrssParams {
    SpinJ j;
    double r;
    double phi;

    CrssParams(SpinJ jj, double rr, double ph = 0.0) : j(jj), r(rr), phi(ph) {
        if (!(rr > 0.0 && rr < 1.0))
            throw std::domain_error("CrssParams: r must lie in (0,1)");
    }
    cplx alpha() const { return std::polar(j.value() * r, -phi); }
};

// f[k] = log|a_m / a_{-j}|, k = m + j; phases e^{-i k phi} tracked separately
struct LogCoefficients {
    SpinJ j;
    std::vector<double> f;
    double phi;
    double log_norm_full;  // 0.5 * log sum exp(2 f) over the full support
};

LogCoefficients log_coefficients(const CrssParams& p);

struct TruncationPoints {
    double m_minus;  // lattice position of the interior maximum of |a_m|
    double m_plus;   // lattice position of the interior minimum of |a_m|
};

TruncationPoints truncation_points(SpinJ j, double r);

// truncated at m_plus and normalized
SpinState crss_ansatz(const CrssParams& p);
// arbitrary truncation point s on the m lattice
SpinState crss_truncated(const CrssParams& p, double s);

enum class ErrorMethod { numeric, ansatz_formula, analytic };

struct ProximityError {
    double epsilon;
    double log_epsilon;  // stays finite when epsilon underflows
    ErrorMethod method;
};

ProximityError proximity_error_numeric(const SpinState& psi, cplx alpha);
// jr |a_{m_+}| evaluated in log domain
ProximityError proximity_error_ansatz(SpinJ j, double r);

struct AnalyticError {
    double epsilon;
    double log_epsilon;
    double g;  // arctanh(sqrt(1-r^2)) - sqrt(1-r^2)
    double q;  // j^{3/4} (r^2 sqrt(1-r^2) / pi)^{1/4}
};

AnalyticError proximity_error_analytic(SpinJ j, double r);
double g_of_r(double r);
double analytic_log_epsilon(double j, double r);

struct RThreshold {
    double r_exact;       // root of analytic epsilon = 1/e
    double r_asymptotic;  // sqrt(1 - (3/2j)^{2/3})
    bool bracket_warning;
};

RThreshold r_threshold(SpinJ j);

struct MinimalResult {
    SpinState state;
    ProximityError error;
};

// ground eigenvector of (J - alpha)^dag (J - alpha); a_{-j} gauge-fixed real positive
MinimalResult crss_minimal(SpinJ j, cplx alpha);

struct GaussianMoments {
    double center;    // -j sqrt(1-r^2)
    double width_sq;  // j r^2 / (2 sqrt(1-r^2))
    double a2, a3, a4;
    bool valid;       // sqrt(1-r^2) j^{1/3} >= 1
};

GaussianMoments gaussian_moments(SpinJ j, double r);

// |a_j| relative to the largest coefficient, exp(f_j - max_m f_m), per j
std::vector<double> endpoint_ratio_trend(double r, const std::vector<SpinJ>& js);

// closed-form moments of the truncated ansatz (exact telescoping identities):
// <J> = alpha (1 - |a_s|^2),  Var[J] = alpha^2 [ |a_s|^2 (1 - |a_s|^2) - |a_{s-1}|^2 ]
struct AnsatzMomentIdentities {
    cplx mean_lowering;
    cplx var_lowering;
    double tail_weight;  // |a_s|^2
};

AnsatzMomentIdentities crss_ansatz_identities(const CrssParams& p);

}  // namespace crsslab
