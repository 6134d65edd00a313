// Timing harness for the two tensor kernels whose entries are computed
// independently per index: the trilinear Jacobiator and the Nijenhuis
// torsion. Each workload runs once serially (the reference path) and once
// under OpenMP, verifies the results agree entry-for-entry, and prints both
// times. Speedup depends on the machine; equality does not.

#include "coflat/bistructures.hpp"
#include "coflat/exec.hpp"
#include "coflat/schouten.hpp"

#include <chrono>
#include <cstdio>

using namespace coflat;

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

PartialAnchor linear_workload(int n) {
    VarSpacePtr space = VarSpace::numbered("x", n);
    std::vector<std::vector<Polynomial>> m(
        static_cast<std::size_t>(n),
        std::vector<Polynomial>(static_cast<std::size_t>(n), Polynomial::zero(space)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j)
                m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                    Polynomial::variable(space, i) - Polynomial::variable(space, j);
    return PartialAnchor::from_bivector(Bivector(space, m));
}

OneOneTensor quadratic_tensor(int n) {
    VarSpacePtr space = VarSpace::numbered("x", n);
    OneOneTensor t = OneOneTensor::zero(space);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            t.m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                Polynomial::variable(space, i) * Polynomial::variable(space, j);
    return t;
}

} // namespace

int main() {
    std::printf("threads available: %d\n\n", max_threads());

    {
        const int n = 12;
        PartialAnchor p = linear_workload(n);
        auto t0 = std::chrono::steady_clock::now();
        SchoutenTensor serial = jacobiator(p, ExecMode::serial);
        double t_serial = ms_since(t0);
        t0 = std::chrono::steady_clock::now();
        SchoutenTensor parallel = jacobiator(p, ExecMode::parallel);
        double t_parallel = ms_since(t0);
        if (serial.entries.size() != parallel.entries.size()) {
            std::printf("jacobiator: entry count mismatch\n");
            return 1;
        }
        for (std::size_t i = 0; i < serial.entries.size(); ++i)
            if (!(serial.entries[i] - parallel.entries[i]).is_zero()) {
                std::printf("jacobiator: serial/parallel disagree at slot %zu\n", i);
                return 1;
            }
        std::printf("jacobiator  n=%-3d serial %8.1f ms   parallel %8.1f ms   identical: yes\n",
                    n, t_serial, t_parallel);
    }

    {
        const int n = 10;
        OneOneTensor t = quadratic_tensor(n);
        auto t0 = std::chrono::steady_clock::now();
        auto serial = torsion(t, ExecMode::serial);
        double t_serial = ms_since(t0);
        t0 = std::chrono::steady_clock::now();
        auto parallel = torsion(t, ExecMode::parallel);
        double t_parallel = ms_since(t0);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (!(serial.entry(i, j) - parallel.entry(i, j)).is_zero()) {
                    std::printf("torsion: serial/parallel disagree at (%d,%d)\n", i, j);
                    return 1;
                }
        std::printf("torsion     n=%-3d serial %8.1f ms   parallel %8.1f ms   identical: yes\n",
                    n, t_serial, t_parallel);
    }

    return 0;
}
