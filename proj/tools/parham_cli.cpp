#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>

#include "parham/runner.hpp"

namespace {

struct CommonFlags {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<int> threads;
    std::optional<double> threshold;
};

void add_common(CLI::App* app, CommonFlags& f) {
    app->add_option("--config", f.config_path, "configuration file (JSON)");
    app->add_option("--seed", f.seed, "override optimizer.seed");
    app->add_option("--out", f.out, "override output.dir");
    app->add_option("--threads", f.threads, "override the worker count");
    app->add_option("--threshold", f.threshold, "override optimizer.threshold");
}

parham::RunConfig resolve(const CommonFlags& f) {
    parham::RunConfig cfg;
    if (!f.config_path.empty()) cfg = parham::load_config(f.config_path);
    if (f.seed) cfg.optimizer.seed = *f.seed;
    if (f.out) cfg.output.dir = *f.out;
    if (f.threads) cfg.threads = *f.threads;
    if (f.threshold) cfg.optimizer.threshold = *f.threshold;
    if (const char* limit = std::getenv("PARHAM_ED_LIMIT"))
        cfg.ed_limit = std::strtoull(limit, nullptr, 10);
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"parent Hamiltonian reconstruction from entanglement structure"};
    app.require_subcommand(1);

    CommonFlags rec_flags, scan_flags, check_flags;
    CLI::App* rec = app.add_subcommand(
        "reconstruct", "minimize the relative entropy and extract (beta, J)");
    add_common(rec, rec_flags);
    CLI::App* scan = app.add_subcommand(
        "scan", "relative-entropy landscape over a 1D or 2D coupling grid");
    add_common(scan, scan_flags);
    CLI::App* check = app.add_subcommand("check", "run the verification suites");
    add_common(check, check_flags);

    CLI11_PARSE(app, argc, argv);

    try {
        if (rec->parsed()) return parham::cmd_reconstruct(resolve(rec_flags), std::cout);
        if (scan->parsed()) return parham::cmd_scan(resolve(scan_flags), std::cout);
        if (check->parsed()) return parham::cmd_check(resolve(check_flags), std::cout);
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
