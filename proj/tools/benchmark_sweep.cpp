// Compares the serial and OpenMP regime-map kernels on a Fig. 1b sized grid
// and verifies that both produce bit-identical results.

#include <chrono>
#include <cstdio>
#include <cstring>

#include "lambdabloch/sweep.hpp"

using namespace lambdabloch;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

}  // namespace

int main(int argc, char** argv) {
    std::size_t n = 512;
    if (argc > 1) {
        n = static_cast<std::size_t>(std::strtoul(argv[1], nullptr, 10));
    }

    GridSpec grid;
    grid.axis1 = {AxisName::Nbar, 1e-4, 1e4, n, AxisScale::Log};
    grid.axis2 = {AxisName::DeltaOverGamma, 1e-4, 1e4, n, AxisScale::Log};
    grid.gamma = 1e9;
    grid.p = 1.0;

    std::printf("regime map %zux%zu, workers=%d\n", n, n, default_workers());

    auto t0 = std::chrono::steady_clock::now();
    const RegimeMap serial = map_regimes_serial(grid);
    const double t_serial = seconds_since(t0);
    std::printf("serial:   %.3f s\n", t_serial);

    t0 = std::chrono::steady_clock::now();
    const RegimeMap parallel = map_regimes(grid);
    const double t_parallel = seconds_since(t0);
    std::printf("parallel: %.3f s  (speedup %.2fx)\n", t_parallel,
                t_serial / t_parallel);

    if (serial.nodes.size() != parallel.nodes.size() ||
        std::memcmp(serial.nodes.data(), parallel.nodes.data(),
                    serial.nodes.size() * sizeof(RegimeNode)) != 0) {
        std::printf("FAIL: serial and parallel results differ\n");
        return 1;
    }
    std::printf("results bit-identical\n");
    return 0;
}
