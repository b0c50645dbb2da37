#include "crsslab/crss.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "crsslab/tridiag.hpp"

namespace crsslab {

static double logsumexp2(const std::vector<double>& f, int count) {
    // log sum_{k<count} exp(2 f_k)
    double m = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < count; ++k) m = std::max(m, 2.0 * f[k]);
    double s = 0;
    for (int k = 0; k < count; ++k) s += std::exp(2.0 * f[k] - m);
    return m + std::log(s);
}

LogCoefficients log_coefficients(const CrssParams& p) {
    const int n = p.j.dim();
    const double lrj = std::log(p.r * p.j.value());
    std::vector<double> f(n);
    f[0] = 0.0;
    for (int k = 1; k < n; ++k)
        f[k] = f[k - 1] + lrj - std::log(ladder_coefficient(p.j, -p.j.two_j + 2 * k));
    const double lz = 0.5 * logsumexp2(f, n);
    return {p.j, std::move(f), p.phi, lz};
}

// nearest point on the m lattice (integers for integer j, half-integers otherwise)
static double lattice_round(SpinJ j, double x) {
    const double v = (j.two_j & 1) ? std::round(x - 0.5) + 0.5 : std::round(x);
    return std::clamp(v, -j.value(), j.value());
}

TruncationPoints truncation_points(SpinJ j, double r) {
    if (!(r > 0.0 && r < 1.0))
        throw std::domain_error("truncation_points: r must lie in (0,1)");
    const double jj = j.value(), a2 = jj * r * jj * r;
    const double disc = 4.0 * jj * jj + 4.0 * jj + 1.0 - 4.0 * a2;
    const double root = std::sqrt(disc);
    double mm = lattice_round(j, 0.5 * (-1.0 - root));
    double mp = lattice_round(j, 0.5 * (-1.0 + root));
    // the rounded m_+ must be the discrete minimum: if |a| still decreases past it, shift
    if (mp + 1.0 <= jj && jj * r / ladder_coefficient(j, mp + 1.0) < 1.0) mp += 1.0;
    return {mm, mp};
}

static SpinState build_truncated(const CrssParams& p, double s) {
    const LogCoefficients lc = log_coefficients(p);
    const int cut = static_cast<int>(std::lround(s + p.j.value()));  // index of s
    const int n = p.j.dim();
    if (cut < 0 || cut >= n)
        throw std::domain_error("crss_truncated: truncation point off the lattice");
    const double lz = 0.5 * logsumexp2(lc.f, cut + 1);
    std::vector<cplx> amps(n, cplx(0));
    for (int k = 0; k <= cut; ++k)
        amps[k] = std::exp(lc.f[k] - lz) * std::polar(1.0, -p.phi * k);
    return SpinState(p.j, std::move(amps));
}

SpinState crss_ansatz(const CrssParams& p) {
    return build_truncated(p, truncation_points(p.j, p.r).m_plus);
}

SpinState crss_truncated(const CrssParams& p, double s) {
    return build_truncated(p, s);
}

ProximityError proximity_error_numeric(const SpinState& psi, cplx alpha) {
    const SpinOperatorSet ops(psi.j);
    std::vector<cplx> res = apply_lowering(ops, psi.amps);
    for (int k = 0; k < psi.j.dim(); ++k) res[k] -= alpha * psi.amps[k];
    double s = 0;
    for (const auto& x : res) s += std::norm(x);
    const double eps = std::sqrt(s);
    return {eps, std::log(eps), ErrorMethod::numeric};
}

ProximityError proximity_error_ansatz(SpinJ j, double r) {
    const CrssParams p(j, r);
    const LogCoefficients lc = log_coefficients(p);
    const TruncationPoints tp = truncation_points(j, r);
    const int cut = static_cast<int>(std::lround(tp.m_plus + j.value()));
    const double lz = 0.5 * logsumexp2(lc.f, cut + 1);
    const double log_eps = std::log(j.value() * r) + lc.f[cut] - lz;
    return {std::exp(log_eps), log_eps, ErrorMethod::ansatz_formula};
}

double g_of_r(double r) {
    const double c = std::sqrt(std::max(1.0 - r * r, 0.0));
    return std::atanh(c) - c;
}

double analytic_log_epsilon(double j, double r) {
    const double c = std::sqrt(1.0 - r * r);
    const double log_q = 0.75 * std::log(j) + 0.25 * std::log(r * r * c / M_PI);
    return log_q - 2.0 * j * g_of_r(r);
}

AnalyticError proximity_error_analytic(SpinJ j, double r) {
    if (!(r > 0.0))
        throw std::domain_error("proximity_error_analytic: r must be positive");
    if (r >= 1.0) {
        // g and the prefactor both vanish; the limit is 0, no singularity
        return {0.0, -std::numeric_limits<double>::infinity(), 0.0, 0.0};
    }
    const double jj = j.value();
    const double c = std::sqrt(1.0 - r * r);
    const double g = g_of_r(r);
    const double q = std::pow(jj, 0.75) * std::pow(r * r * c / M_PI, 0.25);
    const double le = analytic_log_epsilon(jj, r);
    return {std::exp(le), le, g, q};
}

RThreshold r_threshold(SpinJ j) {
    if (j.value() < 2.0)
        throw std::domain_error("r_threshold: requires j >= 2");
    const double jj = j.value();
    const double asym = std::sqrt(1.0 - std::pow(1.5 / jj, 2.0 / 3.0));

    // scan for the first upward crossing of log eps = -1, then bisect
    auto h = [&](double r) { return analytic_log_epsilon(jj, r) + 1.0; };
    double lo = 0.0, hi = 0.0;
    double prev = h(0.001);
    bool found = false;
    for (int i = 2; i < 1000; ++i) {
        const double r = 0.001 * i;
        const double cur = h(r);
        if (prev < 0.0 && cur >= 0.0) {
            lo = 0.001 * (i - 1);
            hi = r;
            found = true;
            break;
        }
        prev = cur;
    }
    if (!found) return {0.999, asym, true};
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (h(mid) >= 0.0)
            hi = mid;
        else
            lo = mid;
    }
    return {0.5 * (lo + hi), asym, false};
}

MinimalResult crss_minimal(SpinJ j, cplx alpha) {
    const double amag = std::abs(alpha);
    if (!(amag < j.value()))
        throw std::domain_error("crss_minimal: requires |alpha| < j");
    const int n = j.dim();
    const SpinOperatorSet ops(j);
    Tridiag t;
    t.diag.resize(n);
    t.off.resize(n - 1);
    for (int k = 0; k < n; ++k) t.diag[k] = ops.c[k] * ops.c[k] + amag * amag;
    for (int k = 0; k + 1 < n; ++k) t.off[k] = -amag * ops.c[k + 1];

    EigenPair gp = ground_eigenpair(t);
    const double theta = (amag > 0) ? std::arg(alpha) : 0.0;
    std::vector<cplx> amps(n);
    for (int k = 0; k < n; ++k) amps[k] = gp.vector[k] * std::polar(1.0, theta * k);
    const double eps = std::sqrt(std::max(gp.value, 0.0));
    return {SpinState(j, std::move(amps)),
            {eps, std::log(eps), ErrorMethod::numeric}};
}

GaussianMoments gaussian_moments(SpinJ j, double r) {
    if (!(r > 0.0 && r < 1.0))
        throw std::domain_error("gaussian_moments: r must lie in (0,1)");
    const double jj = j.value();
    const double c = std::sqrt(1.0 - r * r);
    GaussianMoments gm;
    gm.center = -jj * c;
    gm.width_sq = jj * r * r / (2.0 * c);
    gm.a2 = c / (2.0 * r * r * jj);
    gm.a3 = (1.0 / (3.0 * r * r * r * r) - 1.0 / (6.0 * r * r)) / (jj * jj);
    gm.a4 = c / (3.0 * r * r * r * r) * (0.25 - 1.0 / (r * r)) / (jj * jj * jj);
    gm.valid = c * std::cbrt(jj) >= 1.0;
    return gm;
}

std::vector<double> endpoint_ratio_trend(double r, const std::vector<SpinJ>& js) {
    std::vector<double> out;
    out.reserve(js.size());
    for (const SpinJ& j : js) {
        const LogCoefficients lc = log_coefficients(CrssParams(j, r));
        const double fmax = *std::max_element(lc.f.begin(), lc.f.end());
        out.push_back(std::exp(lc.f.back() - fmax));
    }
    return out;
}

AnsatzMomentIdentities crss_ansatz_identities(const CrssParams& p) {
    const LogCoefficients lc = log_coefficients(p);
    const TruncationPoints tp = truncation_points(p.j, p.r);
    const int cut = static_cast<int>(std::lround(tp.m_plus + p.j.value()));
    const double lz = 0.5 * logsumexp2(lc.f, cut + 1);
    const double as2 = std::exp(2.0 * (lc.f[cut] - lz));          // |a_s|^2
    const double asm12 = cut >= 1 ? std::exp(2.0 * (lc.f[cut - 1] - lz)) : 0.0;
    const cplx alpha = p.alpha();
    AnsatzMomentIdentities out;
    out.tail_weight = as2;
    out.mean_lowering = alpha * (1.0 - as2);
    out.var_lowering = alpha * alpha * (as2 * (1.0 - as2) - asm12);
    return out;
}

}  // namespace crsslab
