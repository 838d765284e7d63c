#include "parham/config.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <set>

namespace parham {

using nlohmann::json;

namespace {

template <typename T>
void read_field(const json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace

void RunConfig::validate(bool for_scan) const {
    static const std::set<std::string> families = {"xxz-half", "xxz-one", "bilayer"};
    if (!families.count(model.family))
        throw std::invalid_argument("config: model.family must be one of "
                                    "xxz-half|xxz-one|bilayer, got '" +
                                    model.family + "'");
    if (model.L < 4 || model.L % 2 != 0)
        throw std::invalid_argument("config: model.L must be even and >= 4");
    if (model.excited < 0)
        throw std::invalid_argument("config: model.excited must be >= 0");
    static const std::set<std::string> bases = {"full", "u1", "bilayer"};
    if (!bases.count(ansatz.basis))
        throw std::invalid_argument("config: ansatz.basis must be full|u1|bilayer");
    if ((model.family == "bilayer") != (ansatz.basis == "bilayer"))
        throw std::invalid_argument(
            "config: the bilayer basis goes with the bilayer family and vice versa");
    optimizer.validate();
    if (threads < 1) throw std::invalid_argument("config: threads must be >= 1");
    if (for_scan) {
        if (scan.params.empty() || scan.params.size() > 2)
            throw std::invalid_argument("config: scan.params must list 1 or 2 names");
        if (scan.from.size() != scan.params.size() ||
            scan.to.size() != scan.params.size() ||
            scan.step.size() != scan.params.size())
            throw std::invalid_argument(
                "config: scan.from/to/step must match scan.params in length");
        for (std::size_t i = 0; i < scan.params.size(); ++i) {
            const std::string& p = scan.params[i];
            if (p != "delta" && p != "beta" && p != "g")
                throw std::invalid_argument("config: scan parameter '" + p +
                                            "' (want delta|beta|g)");
            if (p == "g" && model.family != "bilayer")
                throw std::invalid_argument("config: scan over g needs bilayer");
            if (p == "delta" && model.family == "bilayer")
                throw std::invalid_argument("config: scan over delta needs a chain");
            if (scan.step[i] <= 0 || scan.to[i] < scan.from[i])
                throw std::invalid_argument("config: empty scan range for '" + p + "'");
        }
    }
}

RunConfig config_from_json(const json& j) {
    RunConfig c;
    if (j.contains("model")) {
        const json& m = j.at("model");
        read_field(m, "family", c.model.family);
        read_field(m, "L", c.model.L);
        read_field(m, "delta", c.model.delta);
        read_field(m, "g", c.model.g);
        read_field(m, "excited", c.model.excited);
    }
    if (j.contains("ansatz")) {
        const json& a = j.at("ansatz");
        read_field(a, "basis", c.ansatz.basis);
        std::string ramp = "bw";
        read_field(a, "ramp", ramp);
        c.ansatz.ramp = ramp_from_name(ramp);
    }
    if (j.contains("optimizer")) {
        const json& o = j.at("optimizer");
        std::string method = "adaptive-gd";
        read_field(o, "method", method);
        c.optimizer.method = method_from_name(method);
        read_field(o, "eta0", c.optimizer.eta0);
        read_field(o, "threshold", c.optimizer.threshold);
        read_field(o, "max_steps", c.optimizer.max_steps);
        read_field(o, "init_low", c.optimizer.init_low);
        read_field(o, "init_high", c.optimizer.init_high);
        read_field(o, "seed", c.optimizer.seed);
        read_field(o, "stationary_window", c.optimizer.stationary_window);
        read_field(o, "stationary_tol", c.optimizer.stationary_tol);
        read_field(o, "ridge", c.optimizer.ridge);
        read_field(o, "fixed", c.optimizer.fixed_groups);
    }
    if (j.contains("scan")) {
        const json& s = j.at("scan");
        read_field(s, "params", c.scan.params);
        read_field(s, "from", c.scan.from);
        read_field(s, "to", c.scan.to);
        read_field(s, "step", c.scan.step);
        read_field(s, "beta", c.scan.beta);
        read_field(s, "gradient_norm", c.scan.gradient_norm);
    }
    if (j.contains("output")) {
        const json& o = j.at("output");
        read_field(o, "dir", c.output.dir);
        read_field(o, "write_state", c.output.write_state);
    }
    read_field(j, "threads", c.threads);
    read_field(j, "ed_limit", c.ed_limit);
    return c;
}

json config_to_json(const RunConfig& c) {
    json j;
    j["model"] = {{"family", c.model.family}, {"L", c.model.L},
                  {"delta", c.model.delta},   {"g", c.model.g},
                  {"excited", c.model.excited}};
    j["ansatz"] = {{"basis", c.ansatz.basis}, {"ramp", ramp_name(c.ansatz.ramp)}};
    j["optimizer"] = {{"method", method_name(c.optimizer.method)},
                      {"eta0", c.optimizer.eta0},
                      {"threshold", c.optimizer.threshold},
                      {"max_steps", c.optimizer.max_steps},
                      {"init_low", c.optimizer.init_low},
                      {"init_high", c.optimizer.init_high},
                      {"seed", c.optimizer.seed},
                      {"stationary_window", c.optimizer.stationary_window},
                      {"stationary_tol", c.optimizer.stationary_tol},
                      {"ridge", c.optimizer.ridge},
                      {"fixed", c.optimizer.fixed_groups}};
    j["scan"] = {{"params", c.scan.params}, {"from", c.scan.from},
                 {"to", c.scan.to},         {"step", c.scan.step},
                 {"beta", c.scan.beta},     {"gradient_norm", c.scan.gradient_norm}};
    j["output"] = {{"dir", c.output.dir}, {"write_state", c.output.write_state}};
    j["threads"] = c.threads;
    j["ed_limit"] = c.ed_limit;
    return j;
}

RunConfig load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("config: cannot open " + path);
    json j;
    f >> j;
    return config_from_json(j);
}

}  // namespace parham
