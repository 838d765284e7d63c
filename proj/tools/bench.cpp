// Compares the serial reference kernels against the OpenMP paths on a
// reconstruction-sized workload.
#include <chrono>
#include <cstdio>

#include "parham/kernels.hpp"
#include "parham/relent.hpp"

using namespace parham;

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                     t0)
        .count();
}

}  // namespace

int main(int argc, char** argv) {
    const int L = argc > 1 ? std::atoi(argv[1]) : 12;
    const int reps = argc > 2 ? std::atoi(argv[2]) : 5;

    const Geometry geom = build_chain(L, Spin::Half);
    const OperatorBasis basis = basis_full(Spin::Half);
    const RampedEnsemble ens = RampedEnsemble::make(geom, basis, RampKind::BW);
    Eigen::VectorXd w = Eigen::VectorXd::Constant(basis.size(), 0.3);
    w[0] = w[4] = w[8] = 4.0;
    const BlockedOperator h = combine(ens, w);

    std::printf("L=%d, %d coupling groups, block dims:", L, basis.size());
    for (const auto& b : h.blocks) std::printf(" %ld", long(b.rows()));
    std::printf("\n");

    for (bool parallel : {false, true}) {
        kernels::set_num_threads(parallel ? 8 : 1);
        const char* tag = parallel ? "omp   " : "serial";

        auto t0 = std::chrono::steady_clock::now();
        GibbsState gs;
        for (int r = 0; r < reps; ++r) gs = gibbs_state(h, 4096, false);
        std::printf("%s  eigendecomposition: %8.2f ms/run\n", tag, ms_since(t0) / reps);

        std::vector<Eigen::MatrixXcd> rotated(basis.size());
        for (int g = 0; g < basis.size(); ++g)
            rotated[g] = gs.eigsys.evecs[0].adjoint() *
                         (ens.group_ops[g].blocks[0] * gs.eigsys.evecs[0]);

        t0 = std::chrono::steady_clock::now();
        double acc = 0;
        for (int r = 0; r < reps; ++r)
            for (int a = 0; a < basis.size(); ++a)
                for (int b = a; b < basis.size(); ++b)
                    acc += kernels::kubo_mori_block(gs.eigsys.evals[0],
                                                    gs.populations[0], rotated[a],
                                                    rotated[b], parallel);
        std::printf("%s  kubo-mori Hessian:  %8.2f ms/run (checksum %.6f)\n", tag,
                    ms_since(t0) / reps, acc / reps);
    }
    return 0;
}
