#include <benchmark/benchmark.h>

#include <eprcert/double_gaussian.hpp>
#include <eprcert/entropy.hpp>
#include <eprcert/qft_lab.hpp>

#include <random>

using namespace eprcert;

namespace {

JointDistribution random_joint(int n) {
    std::mt19937_64 eng(12345);
    std::exponential_distribution<double> jitter(1.0);
    Eigen::MatrixXd w(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) w(i, j) = jitter(eng) + 1e-12;
    return JointDistribution::renormalized(std::move(w), AxisSpec{"a", 0.1, 0.0, n},
                                           AxisSpec{"b", 0.1, 0.0, n});
}

DiscretizedPureState oracle_state(int n) {
    const DoubleGaussianParams p = DoubleGaussianParams::make(4.0, 1.0);
    const QftGrid g = QftGrid::centered(n, 7.0 * position_marginal_std(p));
    return discretize(p, g, g);
}

void BM_ConditionalEntropy(benchmark::State& state) {
    const JointDistribution dist = random_joint(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(conditional_entropy(dist, Direction::a_given_b).bits);
}
BENCHMARK(BM_ConditionalEntropy)->Arg(128)->Arg(512);

void BM_MomentumDistribution(benchmark::State& state) {
    const DiscretizedPureState psi = oracle_state(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(momentum_distribution(psi).probabilities());
}
BENCHMARK(BM_MomentumDistribution)->Arg(128)->Arg(256);

void BM_SchmidtEntropy(benchmark::State& state) {
    const DiscretizedPureState psi = oracle_state(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(schmidt_conditional_entropy(psi));
}
BENCHMARK(BM_SchmidtEntropy)->Arg(128)->Arg(256);

void BM_RelationMargin(benchmark::State& state) {
    const DiscretizedPureState psi = oracle_state(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(discrete_relation_margin(psi));
}
BENCHMARK(BM_RelationMargin)->Arg(128);

void BM_Sample(benchmark::State& state) {
    const DoubleGaussianParams p = DoubleGaussianParams::make(4.0, 1.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(sample(p, state.range(0), 42).x_a.size());
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Sample)->Arg(100000);

void BM_SchmidtSpectrum(benchmark::State& state) {
    const DoubleGaussianParams p = DoubleGaussianParams::make(30.8, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(schmidt_spectrum(p, 1e-12).entropy_bits());
}
BENCHMARK(BM_SchmidtSpectrum);

} // namespace

BENCHMARK_MAIN();
