#include "ptqs/dilation.hpp"
#include "ptqs/lindblad.hpp"
#include "ptqs/linalg.hpp"
#include "ptqs/metrology.hpp"
#include "ptqs/pt_dynamics.hpp"
#include "ptqs/sweep.hpp"

#include <benchmark/benchmark.h>

using namespace ptqs;

namespace {

void BM_expm4(benchmark::State& state) {
    const Matrix4 h = dilation::hamiltonian_4d(PtParams(1.0, 0.6));
    for (auto _ : state) benchmark::DoNotOptimize(linalg::expm<4>(h, cplx(0.0, -2.5)));
}
BENCHMARK(BM_expm4);

void BM_pt_evolve_state(benchmark::State& state) {
    const PtParams p(1.0, 0.6);
    for (auto _ : state) benchmark::DoNotOptimize(pt::evolve_state(probe::plus_y(), p, 3.7));
}
BENCHMARK(BM_pt_evolve_state);

void BM_evolve_enlarged(benchmark::State& state) {
    const PtParams p(1.0, 0.6);
    for (auto _ : state) benchmark::DoNotOptimize(dilation::evolve_enlarged(probe::plus_y(), p, 3.7));
}
BENCHMARK(BM_evolve_enlarged);

// Steps of RK4 per iteration given by the argument.
void BM_rk4_lindblad(benchmark::State& state) {
    const PtParams p(1.0, 0.6);
    const auto rho0 = DensityMatrix3::pure(lindblad::plus_y_3l());
    const double t = 1e-4 * static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(lindblad::integrate_lindblad(rho0, p, t, 1e-4));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_rk4_lindblad)->Arg(10000);

void BM_rk4_enlarged(benchmark::State& state) {
    const PtParams p(1.0, 0.6);
    const auto rho0 = DensityMatrix4::pure(dilation::dilate_initial(probe::plus_y(), p).amplitudes);
    const double t = 1e-4 * static_cast<double>(state.range(0));
    const double times[] = {t};
    for (auto _ : state) benchmark::DoNotOptimize(dilation::integrate_enlarged_series(rho0, p, times, 1e-4));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_rk4_enlarged)->Arg(10000);

void BM_qfi_two_level(benchmark::State& state) {
    Matrix2 rho;
    rho << 0.7, cplx(0.1, 0.2), cplx(0.1, -0.2), 0.3;
    Matrix2 d;
    d << 0.2, cplx(0.05, 0.1), cplx(0.05, -0.1), -0.2;
    for (auto _ : state) benchmark::DoNotOptimize(metrology::qfi_two_level(rho, d));
}
BENCHMARK(BM_qfi_two_level);

void BM_weighted_qfi_scheme1(benchmark::State& state) {
    const PtParams p(1.0, 0.6);
    const auto fd = metrology::FdConfig::relative(p);
    for (auto _ : state) benchmark::DoNotOptimize(metrology::weighted_qfi_scheme1(p, 6.25, fd));
}
BENCHMARK(BM_weighted_qfi_scheme1);

void BM_sweep_fig7(benchmark::State& state) {
    auto c = sweep::figure_preset("fig7");
    for (auto _ : state) benchmark::DoNotOptimize(sweep::evaluate(c, 1));
}
BENCHMARK(BM_sweep_fig7)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
