#include "parham/runner.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <ostream>

#include "parham/kernels.hpp"
#include "parham/stateio.hpp"

namespace parham {

using nlohmann::json;

Problem prepare_problem(const RunConfig& cfg) {
    Problem p;
    kernels::set_num_threads(cfg.threads);
    if (cfg.model.family == "bilayer") {
        p.geometry = build_bilayer_cylinder(cfg.model.L, cfg.ed_limit);
        p.model_basis = basis_bilayer();
        p.model_weights = Eigen::Vector2d(1.0, cfg.model.g);
    } else {
        const Spin spin = cfg.model.family == "xxz-one" ? Spin::One : Spin::Half;
        p.geometry = build_chain(cfg.model.L, spin);
        p.model_basis = basis_u1(spin);
        p.model_weights = Eigen::Vector2d(1.0, cfg.model.delta);
    }
    const BlockedOperator h = build_operator(p.geometry, p.model_basis, p.model_weights,
                                             RampKind::Uniform, Support::FullLattice);
    p.state = cfg.model.excited == 0 ? ground_state(h)
                                     : excited_state(h, cfg.model.excited);
    p.ansatz_basis = basis_from_name(cfg.ansatz.basis, p.geometry.spin);
    p.ensemble = RampedEnsemble::make(p.geometry, p.ansatz_basis, cfg.ansatz.ramp);
    p.moments = data_moments(p.state.amplitudes, p.ensemble);
    return p;
}

Eigen::VectorXd scan_point_couplings(const RunConfig& cfg, double delta, double beta,
                                     double g) {
    if (cfg.model.family == "bilayer") return Eigen::Vector2d(beta, beta * g);
    return Eigen::Vector2d(beta, beta * delta);
}

ReconstructOutcome run_reconstruct(const Problem& problem, const OptimizerConfig& opt) {
    ReconstructOutcome out;
    const Eigen::VectorXd w0 = init_couplings(opt, problem.ensemble.size());
    out.trajectory = minimize(problem.moments, w0, problem.ensemble, opt);
    if (!out.trajectory.steps.empty()) {
        const StepRecord& last = out.trajectory.final();
        out.near_zero = last.value < 1e-3;
        if (out.trajectory.status == RunStatus::Converged) {
            try {
                out.parent = extract_parent(last.w, problem.ansatz_basis);
                out.parent_valid = true;
            } catch (const std::runtime_error&) {
                out.parent_valid = false;
            }
        }
    }
    return out;
}

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj,
                          const OperatorBasis& basis) {
    std::ofstream f(path, std::ios::binary);  // binary keeps LF endings everywhere
    if (!f) throw std::runtime_error("cannot open " + path);
    f << "step";
    for (const auto& g : basis.groups) f << ",w_" << g.name;
    f << ",S,epsilon,eta,ms\n";
    for (const StepRecord& s : traj.steps) {
        f << s.step;
        for (int i = 0; i < s.w.size(); ++i) f << ',' << format_double(s.w[i]);
        f << ',' << format_double(s.value) << ',' << format_double(s.error) << ','
          << format_double(s.eta) << ',' << format_double(s.ms) << '\n';
    }
}

namespace {

json parent_to_json(const ReconstructOutcome& out, const OperatorBasis& basis) {
    json j;
    j["valid"] = out.parent_valid;
    if (!out.parent_valid) return j;
    j["beta"] = out.parent.beta;
    j["norm_group"] = out.parent.norm_group;
    j["substituted_reference"] = out.parent.substituted_reference;
    json couplings = json::object();
    for (int i = 0; i < basis.size(); ++i)
        couplings[basis.groups[i].name] = out.parent.couplings[i];
    j["J"] = couplings;
    return j;
}

}  // namespace

int cmd_reconstruct(const RunConfig& cfg, std::ostream& log) {
    cfg.validate();
    std::filesystem::create_directories(cfg.output.dir);
    const Problem problem = prepare_problem(cfg);
    const ReconstructOutcome out = run_reconstruct(problem, cfg.optimizer);
    const auto dir = std::filesystem::path(cfg.output.dir);

    write_trajectory_csv((dir / "trajectory.csv").string(), out.trajectory,
                         problem.ansatz_basis);

    json summary;
    summary["status"] = status_name(out.trajectory.status);
    summary["converged"] = out.trajectory.status == RunStatus::Converged;
    summary["steps"] = out.trajectory.steps.empty()
                           ? 0
                           : out.trajectory.final().step;
    summary["seed"] = cfg.optimizer.seed;
    if (!out.trajectory.steps.empty()) {
        summary["relative_entropy"] = out.trajectory.final().value;
        summary["epsilon"] = out.trajectory.final().error;
        json w = json::object();
        for (int i = 0; i < problem.ansatz_basis.size(); ++i)
            w[problem.ansatz_basis.groups[i].name] = out.trajectory.final().w[i];
        summary["w"] = w;
    }
    summary["relative_entropy_near_zero"] = out.near_zero;
    summary["input_energy"] = problem.state.energy;
    summary["input_sector_twice_sz"] = problem.state.sector_twice_sz;
    summary["parent"] = parent_to_json(out, problem.ansatz_basis);
    if (!out.trajectory.message.empty()) summary["message"] = out.trajectory.message;
    summary["config"] = config_to_json(cfg);
    {
        std::ofstream f(dir / "summary.json", std::ios::binary);
        f << summary.dump(2) << '\n';
    }
    {
        std::ofstream f(dir / "report.txt", std::ios::binary);
        f << "reconstruction " << status_name(out.trajectory.status) << " after "
          << summary["steps"] << " steps\n";
        if (out.parent_valid) {
            f << "entanglement inverse temperature beta = "
              << format_double(out.parent.beta) << "  (reference coupling "
              << out.parent.norm_group << ")\n";
            f << "reconstructed Hamiltonian H_rec = sum over terms of J * O:\n";
            for (int i = 0; i < problem.ansatz_basis.size(); ++i)
                if (out.parent.couplings[i] != 0.0)
                    f << "  J_" << problem.ansatz_basis.groups[i].name << " = "
                      << format_double(out.parent.couplings[i]) << '\n';
        } else {
            f << "no parent Hamiltonian extracted";
            if (!out.trajectory.steps.empty())
                f << " (terminal relative entropy "
                  << format_double(out.trajectory.final().value) << ")";
            f << '\n';
        }
    }
    if (cfg.output.write_state) {
        save_state((dir / "state.bin").string(), problem.state.amplitudes,
                   problem.geometry.num_sites(), problem.geometry.site_dim());
        save_density_matrix(
            (dir / "rho.bin").string(),
            reduced_density_matrix(problem.state.amplitudes, problem.geometry));
    }

    log << "reconstruct: " << status_name(out.trajectory.status) << ", outputs in "
        << cfg.output.dir << "\n";
    return out.trajectory.status == RunStatus::Converged ? 0 : 1;
}

int cmd_scan(const RunConfig& cfg, std::ostream& log) {
    cfg.validate(/*for_scan=*/true);
    std::filesystem::create_directories(cfg.output.dir);
    const Problem problem = prepare_problem(cfg);

    std::vector<std::vector<double>> axes;
    for (std::size_t i = 0; i < cfg.scan.params.size(); ++i) {
        std::vector<double> axis;
        for (double v = cfg.scan.from[i]; v <= cfg.scan.to[i] + 1e-12;
             v += cfg.scan.step[i])
            axis.push_back(v);
        axes.push_back(std::move(axis));
    }
    const std::size_t n1 = axes[0].size();
    const std::size_t n2 = axes.size() > 1 ? axes[1].size() : 1;
    const std::size_t total = n1 * n2;

    std::vector<double> s_values(total), grad_norms(total, 0.0);
    auto couplings_at = [&](std::size_t idx) {
        double delta = cfg.model.delta, beta = cfg.scan.beta, g = cfg.model.g;
        const double v1 = axes[0][idx / n2];
        const double v2 = axes.size() > 1 ? axes[1][idx % n2] : 0.0;
        for (std::size_t p = 0; p < cfg.scan.params.size(); ++p) {
            const double v = p == 0 ? v1 : v2;
            if (cfg.scan.params[p] == "delta") delta = v;
            if (cfg.scan.params[p] == "beta") beta = v;
            if (cfg.scan.params[p] == "g") g = v;
        }
        return scan_point_couplings(cfg, delta, beta, g);
    };

#pragma omp parallel for schedule(dynamic) if (cfg.threads > 1)
    for (std::size_t idx = 0; idx < total; ++idx) {
        const Eigen::VectorXd w = couplings_at(idx);
        if (cfg.scan.gradient_norm) {
            const RelEntReport rep = relent_report(problem.moments, w, problem.ensemble);
            s_values[idx] = rep.value;
            grad_norms[idx] = rep.gradient.norm();
        } else {
            s_values[idx] = relative_entropy(problem.moments, w, problem.ensemble);
        }
    }

    std::size_t argmin = 0;
    for (std::size_t i = 1; i < total; ++i)
        if (s_values[i] < s_values[argmin]) argmin = i;

    const auto dir = std::filesystem::path(cfg.output.dir);
    {
        std::ofstream f(dir / "scan.csv", std::ios::binary);
        for (const auto& p : cfg.scan.params) f << p << ',';
        f << 'S';
        if (cfg.scan.gradient_norm) f << ",grad_norm";
        f << '\n';
        for (std::size_t i = 0; i < total; ++i) {
            f << format_double(axes[0][i / n2]) << ',';
            if (axes.size() > 1) f << format_double(axes[1][i % n2]) << ',';
            f << format_double(s_values[i]);
            if (cfg.scan.gradient_norm) f << ',' << format_double(grad_norms[i]);
            f << '\n';
        }
    }
    json summary;
    summary["argmin"] = json::object();
    summary["argmin"][cfg.scan.params[0]] = axes[0][argmin / n2];
    if (axes.size() > 1) summary["argmin"][cfg.scan.params[1]] = axes[1][argmin % n2];
    summary["min_S"] = s_values[argmin];
    summary["config"] = config_to_json(cfg);
    {
        std::ofstream f(dir / "scan_summary.json", std::ios::binary);
        f << summary.dump(2) << '\n';
    }
    log << "scan: minimum S = " << format_double(s_values[argmin]) << " at "
        << summary["argmin"].dump() << "\n";
    return 0;
}

int cmd_check(const RunConfig& cfg, std::ostream& log) {
    cfg.validate();
    const auto results = run_check_suites(cfg);
    bool all = true;
    for (const auto& r : results) {
        log << (r.pass ? "PASS" : "FAIL") << "  " << r.name << "  (worst " << r.worst
            << (r.detail.empty() ? "" : ", " + r.detail) << ")\n";
        all = all && r.pass;
    }
    return all ? 0 : 1;
}

}  // namespace parham
