#include "memkit/distributions.hpp"
#include "memkit/mem.hpp"
#include "memkit/sim.hpp"
#include "memkit/smoother.hpp"
#include "memkit/spfit.hpp"
#include "memkit/vmem.hpp"

#include <benchmark/benchmark.h>

using namespace memkit;

namespace {

SimOutput univariate_data(int t_len) {
    DgpSpec spec;
    spec.params = UniParams(0.705, 0.10, 0.15);
    spec.mu = Eigen::VectorXd::Constant(1, 10.0);
    spec.error = {calibrate(DistKind::Gamma, 0.15)};
    spec.seed = 7;
    return simulate(spec, t_len);
}

SimOutput trivariate_data(int t_len) {
    DgpSpec spec;
    spec.params = VecParams(
        (Eigen::VectorXd(3) << 0.70, 0.72, 0.68).finished(),
        (Eigen::MatrixXd(3, 3) << 0.10, 0.04, 0.03, 0.05, 0.12, 0.02, 0.02, 0.03, 0.14).finished(),
        (Eigen::VectorXd(3) << 0.10, 0.08, 0.06).finished());
    spec.mu = (Eigen::VectorXd(3) << 10.0, 12.0, 18.0).finished();
    spec.error = {calibrate(DistKind::Gamma, 0.15), calibrate(DistKind::Gamma, 0.2),
                  calibrate(DistKind::Gamma, 0.1)};
    spec.seed = 8;
    return simulate(spec, t_len);
}

void BM_XiFilter(benchmark::State& state) {
    const auto t_len = static_cast<int>(state.range(0));
    const SimOutput sim = univariate_data(t_len);
    const Eigen::VectorXd x = sim.panel.values.col(0) / sim.panel.values.col(0).mean();
    const UniParams params(0.705, 0.10, 0.15);
    for (auto _ : state) {
        benchmark::DoNotOptimize(xi_filter(params, x, sim.neg_indicator));
    }
    state.SetItemsProcessed(state.iterations() * t_len);
}
BENCHMARK(BM_XiFilter)->Arg(1000)->Arg(5000);

void BM_FitMem(benchmark::State& state) {
    const auto t_len = static_cast<int>(state.range(0));
    const SimOutput sim = univariate_data(t_len);
    const Eigen::VectorXd x = sim.panel.values.col(0) / sim.panel.values.col(0).mean();
    for (auto _ : state) {
        benchmark::DoNotOptimize(fit_mem(x, sim.neg_indicator));
    }
}
BENCHMARK(BM_FitMem)->Arg(1000)->Arg(3000)->Arg(5000)->Unit(benchmark::kMillisecond);

void BM_NwSmooth(benchmark::State& state) {
    const auto t_len = static_cast<int>(state.range(0));
    const SimOutput sim = univariate_data(t_len);
    const SmootherConfig config{126, KernelKind::Gaussian};
    for (auto _ : state) {
        benchmark::DoNotOptimize(nw_smooth(sim.panel.values.col(0), config));
    }
    state.SetComplexityN(t_len);
}
BENCHMARK(BM_NwSmooth)->Arg(1000)->Arg(3000)->Arg(5000)->Unit(benchmark::kMillisecond);

void BM_VgmmFit(benchmark::State& state) {
    const auto t_len = static_cast<int>(state.range(0));
    const SimOutput sim = trivariate_data(t_len);
    const Eigen::MatrixXd x =
        sim.panel.values.array().rowwise() / sim.panel.values.colwise().mean().array();
    for (auto _ : state) {
        benchmark::DoNotOptimize(vgmm_fit(x, sim.neg_indicator));
    }
}
BENCHMARK(BM_VgmmFit)->Arg(2000)->Arg(5000)->Unit(benchmark::kMillisecond);

void BM_FitSpmem(benchmark::State& state) {
    const auto t_len = static_cast<int>(state.range(0));
    DgpSpec spec;
    spec.params = UniParams(0.705, 0.10, 0.15);
    spec.mu = Eigen::VectorXd::Constant(1, 10.0);
    spec.error = {calibrate(DistKind::Gamma, 0.15)};
    spec.tau_profile = TauProfile::sinusoid(0.3, 2.0);
    spec.seed = 9;
    const SimOutput sim = simulate(spec, t_len);
    const ObservationSeries series = sim.panel.series(0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(fit_spmem(series, SpFitOptions{}));
    }
}
BENCHMARK(BM_FitSpmem)->Arg(3000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
