#pragma once

#include <optional>
#include <string>
#include <vector>

namespace crsslab::cli {

// values resolved from flags, then the optional JSON config, then built-ins
struct Common {
    std::string out = ".";
    int jobs = 0;  // 0 = resolve via env/omp
    int j_cap = 25;
    double gamma = 1.0;
    double r_step = 0.02;
};

struct CoeffsArgs {
    double j = 0.0;
    double r = 0.0;
    bool normalized = false;
};

struct ErrormapArgs {
    std::vector<double> j_list = {25, 50, 100, 200};
    double r_min = 0.0, r_max = 0.98;  // r_min 0 means "one step"
    double r_step = 0.0;               // 0 means "use common default"
};

struct SqueezeScanArgs {
    double j = 0.0;
    double delta = 0.0;
    double r_min = 0.0, r_max = 0.98;
    double r_step = 0.0;
};

struct MinSqueezeArgs {
    std::vector<double> j_list = {25, 36, 50, 72, 100};
};

struct InfidelityArgs {
    std::string mode = "ansatz-vs-min";
    std::vector<double> j_list = {25, 50, 100, 200};
    double r_min = 0.0, r_max = 0.9;
    double r_step = 0.0;
};

struct SteadyStateArgs {
    double j = 0.0;
    double r = 0.0;
    std::optional<double> omega;  // set -> general solver path
    double delta = 0.0;
};

struct ObservablesArgs {
    double j = 0.0;
    double r = 0.0;
    std::string mode = "ansatz";  // ansatz | steady
};

int run_coeffs(const Common& c, const CoeffsArgs& a);
int run_errormap(const Common& c, const ErrormapArgs& a);
int run_squeeze_scan(const Common& c, const SqueezeScanArgs& a);
int run_minsqueeze(const Common& c, const MinSqueezeArgs& a);
int run_infidelity(const Common& c, const InfidelityArgs& a);
int run_steady_state(const Common& c, const SteadyStateArgs& a);
int run_observables(const Common& c, const ObservablesArgs& a);

extern const char* const kToolVersion;

}  // namespace crsslab::cli
