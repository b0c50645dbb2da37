#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <stdexcept>

#include "crsslab/crss.hpp"
#include "crsslab/csvio.hpp"
#include "crsslab/fit.hpp"
#include "crsslab/observables.hpp"
#include "crsslab/spin.hpp"
#include "crsslab/superradiance.hpp"
#include "crsslab/sweep.hpp"
#include "crsslab/tridiag.hpp"

namespace fs = std::filesystem;

namespace crsslab::cli {

const char* const kToolVersion = "1.0.0";

namespace {

class Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

std::string out_path(const Common& c, const std::string& name) {
    fs::create_directories(c.out);
    return (fs::path(c.out) / name).string();
}

// multiples of the step so reruns regenerate identical abscissas
std::vector<double> make_r_grid(double r_min, double r_max, double step) {
    if (!(step > 0.0)) throw std::invalid_argument("r grid: step must be positive");
    if (!(r_max > 0.0 && r_max < 1.0))
        throw std::invalid_argument("r grid: r-max must lie in (0,1)");
    std::vector<double> grid;
    for (int k = 1;; ++k) {
        const double r = k * step;
        if (r > r_max + 1e-12 || r >= 1.0) break;
        if (r + 1e-12 >= r_min) grid.push_back(r);
    }
    if (grid.empty()) throw std::invalid_argument("r grid: empty");
    return grid;
}

int resolve_jobs(const Common& c) { return c.jobs >= 1 ? c.jobs : default_jobs(); }

std::string fmt_param(double v) { return format_double(v); }

std::string join_list(const std::vector<double>& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += format_double(v[i]);
    }
    return s;
}

void finish_manifest(Manifest& m, const Common& c, const Timer& t,
                     const std::vector<std::string>& csv_paths,
                     const std::string& manifest_name) {
    m.tool_version = kToolVersion;
    m.wall_time_s = t.seconds();
    // record bare filenames: the manifest sits beside its outputs, and the
    // bytes must not depend on where --out pointed
    for (const auto& p : csv_paths)
        m.outputs.push_back({std::filesystem::path(p).filename().string(), fnv1a64_file(p)});
    write_manifest(m, out_path(c, manifest_name));
}

// steady state of the resonant drive at given r, through the analytic-inverse path
DensityMatrix resonant_steady(SpinJ j, double r) {
    return steady_state_resonant(j, cplx(0.0, j.value() * r));
}

// grid sweep with per-cell exception capture (OpenMP cannot propagate throws)
template <typename F>
std::vector<std::string> sweep_cells(int n, int jobs, F&& body) {
    std::vector<std::string> errors(n);
    run_indexed(n, jobs, [&](int i) {
        try {
            body(i);
        } catch (const std::exception& e) {
            errors[i] = e.what();
        }
    });
    return errors;
}

}  // namespace

int run_coeffs(const Common& c, const CoeffsArgs& a) {
    Timer timer;
    const SpinJ j = SpinJ::from_double(a.j);
    const CrssParams p(j, a.r);
    const LogCoefficients lc = log_coefficients(p);
    const TruncationPoints tp = truncation_points(j, a.r);

    const std::string csv = out_path(c, "coeffs.csv");
    CsvWriter w(csv);
    if (!a.normalized) {
        w.header({"m", "abs_ratio"});
        for (int k = 0; k < j.dim(); ++k) {
            w.cell(j.m_of(k));
            w.cell(std::exp(lc.f[k]));
            w.end_row();
        }
    } else {
        const SpinState psi = crss_ansatz(p);
        const GaussianMoments gm = gaussian_moments(j, a.r);
        w.header({"m", "abs_am", "gaussian_fit"});
        for (int k = 0; k < j.dim(); ++k) {
            const double m = j.m_of(k);
            const double fit = std::pow(2.0 * M_PI * gm.width_sq, -0.25)
                               * std::exp(-(m - gm.center) * (m - gm.center)
                                          / (4.0 * gm.width_sq));
            w.cell(m);
            w.cell(std::abs(psi.amps[k]));
            w.cell(fit);
            w.end_row();
        }
    }
    w.close();

    Manifest man;
    man.command = "coeffs";
    man.params = {{"j", fmt_param(a.j)}, {"r", fmt_param(a.r)},
                  {"normalized", a.normalized ? "true" : "false"}};
    man.extras = {{"m_minus", format_double(tp.m_minus)},
                  {"m_plus", format_double(tp.m_plus)}};
    finish_manifest(man, c, timer, {csv}, "coeffs_manifest.json");
    return 0;
}

int run_errormap(const Common& c, const ErrormapArgs& a) {
    Timer timer;
    const double step = a.r_step > 0.0 ? a.r_step : c.r_step;
    const std::vector<double> rs = make_r_grid(a.r_min, a.r_max, step);
    std::vector<SpinJ> js;
    for (double jv : a.j_list) js.push_back(SpinJ::from_double(jv));

    const int n = static_cast<int>(js.size() * rs.size());
    std::vector<double> eps_num(n, std::nan("")), eps_ana(n, std::nan(""));
    auto errors = sweep_cells(n, resolve_jobs(c), [&](int i) {
        const SpinJ j = js[i / rs.size()];
        const double r = rs[i % rs.size()];
        const CrssParams p(j, r);
        const SpinState psi = crss_ansatz(p);
        eps_num[i] = proximity_error_numeric(psi, p.alpha()).epsilon;
        eps_ana[i] = proximity_error_analytic(j, r).epsilon;
    });

    const std::string csv = out_path(c, "errormap.csv");
    CsvWriter w(csv);
    w.header({"j", "r", "eps_numeric", "eps_analytic"});
    for (int i = 0; i < n; ++i) {
        w.cell(js[i / rs.size()].value());
        w.cell(rs[i % rs.size()]);
        w.cell(eps_num[i]);
        w.cell(eps_ana[i]);
        w.end_row();
    }
    w.close();

    const std::string trace = out_path(c, "errormap_rj.csv");
    CsvWriter tw(trace);
    tw.header({"j", "r_j_exact", "r_j_asymptotic"});
    for (const SpinJ& j : js) {
        const RThreshold rt = r_threshold(j);
        tw.cell(j.value());
        tw.cell(rt.r_exact);
        tw.cell(rt.r_asymptotic);
        tw.end_row();
    }
    tw.close();

    Manifest man;
    man.command = "errormap";
    man.params = {{"j_list", join_list(a.j_list)}, {"r_min", fmt_param(a.r_min)},
                  {"r_max", fmt_param(a.r_max)}, {"r_step", fmt_param(step)}};
    int failed = 0;
    for (const auto& e : errors)
        if (!e.empty()) {
            ++failed;
            man.warnings.push_back("cell failed: " + e);
        }
    man.extras = {{"failed_cells", std::to_string(failed)}};
    finish_manifest(man, c, timer, {csv, trace}, "errormap_manifest.json");
    return 0;
}

int run_squeeze_scan(const Common& c, const SqueezeScanArgs& a) {
    Timer timer;
    const SpinJ j = SpinJ::from_double(a.j);
    if (a.delta != 0.0 && j.value() > c.j_cap)
        throw std::invalid_argument(
            "squeeze-scan: nonzero --delta runs the full Liouvillian solver, "
            "which is capped at j <= " + std::to_string(c.j_cap));
    const double step = a.r_step > 0.0 ? a.r_step : c.r_step;
    std::vector<double> rs = make_r_grid(a.r_min, a.r_max, step);
    const RThreshold rt = r_threshold(j);
    // marker row: the validity boundary itself, evaluated like any grid point
    rs.push_back(rt.r_exact);
    std::sort(rs.begin(), rs.end());

    const int n = static_cast<int>(rs.size());
    std::vector<double> xi(n, std::nan(""));
    auto solve_at = [&](double r) {
        if (a.delta == 0.0) return resonant_steady(j, r);
        const double omega = r * critical_drive(j.two_j, a.delta, c.gamma);
        return steady_state_general(j, DriveParams(cplx(omega, 0.0), a.delta, c.gamma),
                                    c.j_cap);
    };
    auto errors = sweep_cells(n, resolve_jobs(c), [&](int i) {
        xi[i] = squeezing_parameter(solve_at(rs[i])).xi_sq;
    });
    for (int i = 0; i < n; ++i)
        if (!errors[i].empty())
            throw SolverError("squeeze-scan at r=" + format_double(rs[i]) + ": " + errors[i],
                              0, 0.0);

    const std::string csv = out_path(c, "squeeze_scan.csv");
    CsvWriter w(csv);
    w.header({"r", "xi_exact", "xi_crss"});
    for (int i = 0; i < n; ++i) {
        w.cell(rs[i]);
        w.cell(xi[i]);
        w.cell(std::sqrt(1.0 - rs[i] * rs[i]));
        w.end_row();
    }
    w.close();

    Manifest man;
    man.command = "squeeze-scan";
    man.params = {{"j", fmt_param(a.j)}, {"delta", fmt_param(a.delta)},
                  {"gamma", fmt_param(c.gamma)}, {"r_min", fmt_param(a.r_min)},
                  {"r_max", fmt_param(a.r_max)}, {"r_step", fmt_param(step)}};
    man.extras = {{"r_j_exact", format_double(rt.r_exact)},
                  {"r_j_asymptotic", format_double(rt.r_asymptotic)}};
    finish_manifest(man, c, timer, {csv}, "squeeze_scan_manifest.json");
    return 0;
}

int run_minsqueeze(const Common& c, const MinSqueezeArgs& a) {
    Timer timer;
    std::vector<SpinJ> js;
    for (double jv : a.j_list) js.push_back(SpinJ::from_double(jv));
    const std::vector<double> rs = make_r_grid(0.0, 0.98, c.r_step);

    const int n = static_cast<int>(js.size() * rs.size());
    std::vector<double> xi(n, std::nan(""));
    auto errors = sweep_cells(n, resolve_jobs(c), [&](int i) {
        xi[i] = squeezing_parameter(
                    resonant_steady(js[i / rs.size()], rs[i % rs.size()]))
                    .xi_sq;
    });
    for (const auto& e : errors)
        if (!e.empty()) throw SolverError("minsqueeze: " + e, 0, 0.0);

    std::vector<double> xi_min_exact(js.size()), r_at_min(js.size()), xi_min_crss(js.size());
    for (size_t q = 0; q < js.size(); ++q) {
        int best = 0;
        for (size_t i = 1; i < rs.size(); ++i)
            if (xi[q * rs.size() + i] < xi[q * rs.size() + best]) best = static_cast<int>(i);
        xi_min_exact[q] = xi[q * rs.size() + best];
        r_at_min[q] = rs[best];
        xi_min_crss[q] = optimal_squeezing(js[q]).xi_min;
    }

    const std::string csv = out_path(c, "minsqueeze.csv");
    CsvWriter w(csv);
    w.header({"j", "xi_min_exact", "xi_min_crss"});
    for (size_t q = 0; q < js.size(); ++q) {
        w.cell(js[q].value());
        w.cell(xi_min_exact[q]);
        w.cell(xi_min_crss[q]);
        w.end_row();
    }
    w.close();

    std::vector<double> lj, le, lc_;
    for (size_t q = 0; q < js.size(); ++q) {
        lj.push_back(std::log(js[q].value()));
        le.push_back(std::log(xi_min_exact[q]));
        lc_.push_back(std::log(xi_min_crss[q]));
    }
    const double slope_exact = linear_slope(lj, le);
    const double slope_crss = linear_slope(lj, lc_);
    std::printf("slope_exact=%s slope_crss=%s\n", format_double(slope_exact).c_str(),
                format_double(slope_crss).c_str());

    Manifest man;
    man.command = "minsqueeze";
    man.params = {{"j_list", join_list(a.j_list)}, {"gamma", fmt_param(c.gamma)},
                  {"r_step", fmt_param(c.r_step)}};
    man.extras = {{"slope_exact", format_double(slope_exact)},
                  {"slope_crss", format_double(slope_crss)}};
    finish_manifest(man, c, timer, {csv}, "minsqueeze_manifest.json");
    return 0;
}

int run_infidelity(const Common& c, const InfidelityArgs& a) {
    Timer timer;
    const bool vs_min = a.mode == "ansatz-vs-min";
    if (!vs_min && a.mode != "ansatz-vs-steady")
        throw std::invalid_argument("infidelity: --mode must be ansatz-vs-min or ansatz-vs-steady");
    std::vector<SpinJ> js;
    for (double jv : a.j_list) js.push_back(SpinJ::from_double(jv));
    const double step = a.r_step > 0.0 ? a.r_step : c.r_step;
    const std::vector<double> rs = make_r_grid(a.r_min, a.r_max, step);

    const int n = static_cast<int>(js.size() * rs.size());
    std::vector<double> val(n, std::nan(""));
    auto errors = sweep_cells(n, resolve_jobs(c), [&](int i) {
        const SpinJ j = js[i / rs.size()];
        const double r = rs[i % rs.size()];
        if (vs_min) {
            const CrssParams p(j, r);
            const SpinState ans = crss_ansatz(p);
            const MinimalResult min = crss_minimal(j, p.alpha());
            val[i] = 1.0 - std::abs(inner(ans.amps, min.state.amps));
        } else {
            val[i] = steadystate_infidelity(j, r);
        }
    });
    for (const auto& e : errors)
        if (!e.empty()) throw SolverError("infidelity: " + e, 0, 0.0);

    int underflow = 0;
    for (double& v : val)
        if (v < 1e-14) {
            v = 0.0;
            ++underflow;
        }

    const std::string csv = out_path(c, "infidelity.csv");
    CsvWriter w(csv);
    w.header({"j", "r", vs_min ? "one_minus_overlap" : "jr_scaled_infidelity"});
    for (int i = 0; i < n; ++i) {
        w.cell(js[i / rs.size()].value());
        w.cell(rs[i % rs.size()]);
        w.cell(val[i]);
        w.end_row();
    }
    w.close();

    Manifest man;
    man.command = "infidelity";
    man.params = {{"mode", a.mode}, {"j_list", join_list(a.j_list)},
                  {"r_min", fmt_param(a.r_min)}, {"r_max", fmt_param(a.r_max)},
                  {"r_step", fmt_param(step)}};
    man.extras = {{"underflow_count", std::to_string(underflow)}};
    if (underflow > 0)
        man.warnings.push_back(std::to_string(underflow)
                               + " values below 1e-14 reported as 0");
    finish_manifest(man, c, timer, {csv}, "infidelity_manifest.json");
    return 0;
}

int run_steady_state(const Common& c, const SteadyStateArgs& a) {
    Timer timer;
    const SpinJ j = SpinJ::from_double(a.j);
    DensityMatrix dm = [&] {
        if (a.omega) {
            const DriveParams d(cplx(*a.omega, 0.0), a.delta, c.gamma);
            return steady_state_general(j, d, c.j_cap);
        }
        if (!(a.r > 0.0)) throw std::invalid_argument("steady-state: need --r or --omega");
        return resonant_steady(j, a.r);
    }();

    const std::string csv = out_path(c, "steady_state.csv");
    CsvWriter w(csv);
    w.header({"k", "l", "re", "im"});
    for (int k = 0; k < j.dim(); ++k)
        for (int l = 0; l < j.dim(); ++l) {
            w.cell(static_cast<long long>(k));
            w.cell(static_cast<long long>(l));
            w.cell(dm.rho(k, l).real());
            w.cell(dm.rho(k, l).imag());
            w.end_row();
        }
    w.close();

    Manifest man;
    man.command = "steady-state";
    man.params = {{"j", fmt_param(a.j)}, {"r", fmt_param(a.r)},
                  {"omega", a.omega ? fmt_param(*a.omega) : "none"},
                  {"delta", fmt_param(a.delta)}, {"gamma", fmt_param(c.gamma)}};
    man.extras = {{"purity", format_double(purity(dm))}};
    finish_manifest(man, c, timer, {csv}, "steady_state_manifest.json");
    return 0;
}

int run_observables(const Common& c, const ObservablesArgs& a) {
    Timer timer;
    const SpinJ j = SpinJ::from_double(a.j);

    SqueezingReport rep = [&] {
        if (a.mode == "ansatz") return squeezing_parameter(crss_ansatz(CrssParams(j, a.r)));
        if (a.mode == "steady") return squeezing_parameter(resonant_steady(j, a.r));
        throw std::invalid_argument("observables: --mode must be ansatz or steady");
    }();

    FieldMinimum fm{};
    DipoleQuadrature dq{};
    double pur = 1.0;
    if (a.mode == "ansatz") {
        const SpinState psi = crss_ansatz(CrssParams(j, a.r));
        fm = field_quadrature_minimum(psi);
        dq = dipole_quadrature_variance(psi, fm.optimal_phi);
    } else {
        const DensityMatrix dm = resonant_steady(j, a.r);
        fm = field_quadrature_minimum(dm);
        dq = dipole_quadrature_variance(dm, fm.optimal_phi);
        pur = purity(dm);
    }

    const std::string csv = out_path(c, "observables.csv");
    CsvWriter w(csv);
    w.header({"key", "value"});
    auto row = [&](const char* k, double v) {
        w.cell(std::string(k));
        w.cell(v);
        w.end_row();
    };
    row("mean_jx", rep.mean_spin.x());
    row("mean_jy", rep.mean_spin.y());
    row("mean_jz", rep.mean_spin.z());
    row("xi_sq", rep.xi_sq);
    row("anti_xi_sq", rep.anti_xi_sq);
    row("optimal_angle", rep.optimal_angle);
    row("dipole_var_min", dq.variance);
    row("dipole_threshold", dq.threshold);
    row("dipole_squeezed", dq.squeezed ? 1.0 : 0.0);
    row("field_var_min", fm.min_variance);
    row("field_opt_phi", fm.optimal_phi);
    row("purity", pur);
    w.close();

    Manifest man;
    man.command = "observables";
    man.params = {{"j", fmt_param(a.j)}, {"r", fmt_param(a.r)}, {"mode", a.mode}};
    finish_manifest(man, c, timer, {csv}, "observables_manifest.json");
    return 0;
}

}  // namespace crsslab::cli
