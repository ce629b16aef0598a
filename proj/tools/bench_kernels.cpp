// Benchmark: OpenMP kernel matvec vs. the serial reference implementation.
// Verifies bit-identical output while timing both paths.

#include "swlab/operators.hpp"

#include <chrono>
#include <cstring>
#include <iostream>

using namespace swlab;

namespace {

template <typename F>
double time_ms(F&& fn, int reps) {
    const auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < reps; ++i) fn();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

}  // namespace

int main(int argc, char** argv) {
    int nx = 64, nt = 64, reps = 5;
    if (argc > 1) nx = nt = std::atoi(argv[1]);
    if (argc > 2) reps = std::atoi(argv[2]);

    auto grid = std::make_shared<HalfSpaceGrid>(
        build_grid(1, 4.0, 4.0, nx, nt, 2.0));
    std::cout << "grid: " << grid->node_count() << " nodes ("
              << nx << " x " << nt << ")\n";

    const auto a0 = std::chrono::steady_clock::now();
    const RieszKernel K(grid, 1.0, /*parallel_assembly=*/true);
    const auto a1 = std::chrono::steady_clock::now();
    std::cout << "assembly (parallel): "
              << std::chrono::duration<double, std::milli>(a1 - a0).count()
              << " ms\n";

    const Field f = sample(FuncSpec::gaussian_bump({{0.0, 0.0}, 1.0}, 0.8), grid);

    Field out_par, out_ser;
    const double t_par =
        time_ms([&] { out_par = K.apply(f, 0.1, 0.1); }, reps);
    const double t_ser =
        time_ms([&] { out_ser = K.apply_serial(f, 0.1, 0.1); }, reps);

    const bool identical =
        std::memcmp(out_par.values.data(), out_ser.values.data(),
                    out_par.values.size() * sizeof(double)) == 0;

    std::cout << "matvec parallel: " << t_par << " ms\n"
              << "matvec serial:   " << t_ser << " ms\n"
              << "speedup:         " << t_ser / t_par << "x\n"
              << "bit-identical:   " << (identical ? "yes" : "NO") << "\n";
    return identical ? 0 : 1;
}
