#pragma once

#include <nlohmann/json_fwd.hpp>
#include <string>
#include <vector>

#include "parham/optimize.hpp"

namespace parham {

struct ModelConfig {
    std::string family = "xxz-half";  // xxz-half | xxz-one | bilayer
    int L = 12;
    double delta = 1.0;  // XXZ anisotropy of the input state
    double g = 2.522;    // bilayer inter-to-intra coupling of the input state
    int excited = 0;     // 0 = ground state
};

struct AnsatzConfig {
    std::string basis = "full";  // full | u1 | bilayer
    RampKind ramp = RampKind::BW;
};

struct ScanConfig {
    std::vector<std::string> params;  // subset of {delta, beta, g}, at most 2
    std::vector<double> from, to, step;
    double beta = 4.0;       // fixed beta when not scanned
    bool gradient_norm = false;
};

struct OutputConfig {
    std::string dir = "out";
    bool write_state = false;  // dump state.bin / rho.bin next to the results
};

struct RunConfig {
    ModelConfig model;
    AnsatzConfig ansatz;
    OptimizerConfig optimizer;
    ScanConfig scan;
    OutputConfig output;
    int threads = 1;
    std::uint64_t ed_limit = std::uint64_t(1) << 24;

    void validate(bool for_scan = false) const;  // throws with the field name
};

RunConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const RunConfig& c);
RunConfig load_config(const std::string& path);

}  // namespace parham
