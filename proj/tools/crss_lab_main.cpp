#include <cstdio>
#include <exception>
#include <fstream>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "commands.hpp"
#include "crsslab/tridiag.hpp"

using namespace crsslab;
using namespace crsslab::cli;

namespace {

// config supplies defaults; explicit flags always win
void apply_config(Common& c, const std::string& path, bool out_set, bool jobs_set) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open " + path);
    nlohmann::json cfg;
    in >> cfg;
    if (cfg.contains("out") && !out_set) c.out = cfg["out"].get<std::string>();
    if (cfg.contains("jobs") && !jobs_set) c.jobs = cfg["jobs"].get<int>();
    if (cfg.contains("j_cap")) c.j_cap = cfg["j_cap"].get<int>();
    if (cfg.contains("gamma")) c.gamma = cfg["gamma"].get<double>();
    if (cfg.contains("r_step")) c.r_step = cfg["r_step"].get<double>();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"CRSS laboratory: collective-spin eigenstates, superradiant steady "
                 "states, and squeezing observables"};
    app.set_version_flag("--version", kToolVersion);
    app.require_subcommand(1);
    app.fallthrough();  // global flags remain valid after the subcommand name

    Common common;
    std::string config_path;
    app.add_option("--out", common.out, "output directory")->capture_default_str();
    app.add_option("--jobs", common.jobs, "worker threads (default: CRSS_LAB_JOBS or all cores)");
    app.add_option("--gamma", common.gamma, "collective decay rate")->capture_default_str();
    app.add_option("--config", config_path, "JSON file with defaults (out, jobs, j_cap, gamma, r_step)");

    auto* coeffs = app.add_subcommand("coeffs", "state coefficients across the m lattice");
    CoeffsArgs ca;
    coeffs->add_option("--j", ca.j, "spin size")->required();
    coeffs->add_option("--r", ca.r, "drive ratio |alpha|/j")->required();
    coeffs->add_flag("--normalized", ca.normalized,
                     "normalized |a_m| with the Gaussian-profile overlay");

    auto* errormap = app.add_subcommand("errormap", "ansatz proximity error over (j, r)");
    ErrormapArgs ea;
    errormap->add_option("--j-list", ea.j_list, "spin sizes")->delimiter(',');
    errormap->add_option("--r-min", ea.r_min, "lowest r");
    errormap->add_option("--r-max", ea.r_max, "highest r")->capture_default_str();
    errormap->add_option("--r-step", ea.r_step, "grid step (default from config or 0.02)");

    auto* scan = app.add_subcommand("squeeze-scan", "steady-state squeezing versus r");
    SqueezeScanArgs sa;
    scan->add_option("--j", sa.j, "spin size")->required();
    scan->add_option("--delta", sa.delta, "collective shift (nonzero engages the full solver)");
    scan->add_option("--r-min", sa.r_min, "lowest r");
    scan->add_option("--r-max", sa.r_max, "highest r")->capture_default_str();
    scan->add_option("--r-step", sa.r_step, "grid step");

    auto* minsq = app.add_subcommand("minsqueeze", "optimal squeezing versus spin size");
    MinSqueezeArgs ma;
    minsq->add_option("--j-list", ma.j_list, "spin sizes")->delimiter(',');

    auto* infid = app.add_subcommand("infidelity", "distance of the ansatz to its targets");
    InfidelityArgs ia;
    infid->add_option("--mode", ia.mode, "ansatz-vs-min | ansatz-vs-steady")
        ->capture_default_str();
    infid->add_option("--j-list", ia.j_list, "spin sizes")->delimiter(',');
    infid->add_option("--r-min", ia.r_min, "lowest r");
    infid->add_option("--r-max", ia.r_max, "highest r")->capture_default_str();
    infid->add_option("--r-step", ia.r_step, "grid step");

    auto* steady = app.add_subcommand("steady-state", "dump the steady-state density matrix");
    SteadyStateArgs ta;
    steady->add_option("--j", ta.j, "spin size")->required();
    steady->add_option("--r", ta.r, "drive ratio (resonant analytic-inverse path)");
    steady->add_option("--omega", ta.omega, "drive amplitude (full Liouvillian path)");
    steady->add_option("--delta", ta.delta, "collective shift");

    auto* obs = app.add_subcommand("observables", "one-shot squeezing/radiation report");
    ObservablesArgs oa;
    obs->add_option("--j", oa.j, "spin size")->required();
    obs->add_option("--r", oa.r, "drive ratio")->required();
    obs->add_option("--mode", oa.mode, "ansatz | steady")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (!config_path.empty())
            apply_config(common, config_path, app.count("--out") > 0, app.count("--jobs") > 0);
        if (coeffs->parsed()) return run_coeffs(common, ca);
        if (errormap->parsed()) return run_errormap(common, ea);
        if (scan->parsed()) return run_squeeze_scan(common, sa);
        if (minsq->parsed()) return run_minsqueeze(common, ma);
        if (infid->parsed()) return run_infidelity(common, ia);
        if (steady->parsed()) return run_steady_state(common, ta);
        if (obs->parsed()) return run_observables(common, oa);
        return 2;
    } catch (const SolverError& e) {
        std::fprintf(stderr, "solver failure: %s (iterations=%d, residual=%g)\n", e.what(),
                     e.iterations, e.residual);
        return 3;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "invalid parameters: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "invalid parameters: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
}
