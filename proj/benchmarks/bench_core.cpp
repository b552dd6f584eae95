#include <benchmark/benchmark.h>

#include <cmath>

#include "cvqkd/lossonly/coefficients.hpp"
#include "cvqkd/lossonly/rates.hpp"
#include "cvqkd/protocol/distributions.hpp"
#include "cvqkd/qmath/displacement.hpp"
#include "cvqkd/qmath/gram.hpp"
#include "cvqkd/sdp/cutoff.hpp"
#include "cvqkd/sdp/objective.hpp"
#include "cvqkd/sdp/observables.hpp"
#include "cvqkd/sdp/regions.hpp"
#include "cvqkd/sdp/space.hpp"
#include "cvqkd/sdp/subproblem.hpp"
#include "cvqkd/sdp/weight.hpp"

namespace {

void BM_kj_series(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(cvqkd::lossonly::kj_coefficients(2.0, 4));
}
BENCHMARK(BM_kj_series);

void BM_cz_convolution_1024(benchmark::State& state) {
  const auto kv = cvqkd::lossonly::kj_coefficients(0.9, 4);
  for (auto _ : state)
    benchmark::DoNotOptimize(cvqkd::lossonly::cz_coefficients(kv, 1024));
}
BENCHMARK(BM_cz_convolution_1024);

void BM_displacement(benchmark::State& state) {
  const int n_f = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(
        cvqkd::qmath::displacement_matrix({0.55, -0.3}, n_f));
}
BENCHMARK(BM_displacement)->Arg(16)->Arg(32)->Arg(64);

void BM_gram_mixture(benchmark::State& state) {
  std::vector<cvqkd::qmath::ComplexAmplitude> amps;
  for (int x = 0; x < 4; ++x)
    amps.push_back(std::polar(0.8, 1.5707963267948966 * x));
  Eigen::VectorXd w = Eigen::VectorXd::Constant(4, 0.25);
  for (auto _ : state)
    benchmark::DoNotOptimize(cvqkd::qmath::gram_mixture_spectrum(amps, w));
}
BENCHMARK(BM_gram_mixture);

void BM_wedge_row(benchmark::State& state) {
  const auto spec = cvqkd::protocol::ProtocolSpec::psk(4, 0.85, 0.0);
  cvqkd::protocol::ChannelSpec ch;
  ch.eta = 0.5;
  ch.xi = 0.01;
  for (auto _ : state)
    benchmark::DoNotOptimize(
        cvqkd::protocol::conditional_key_distribution(0, spec, ch, 1.0));
}
BENCHMARK(BM_wedge_row);

void BM_lossonly_rate(benchmark::State& state) {
  const auto spec = cvqkd::protocol::ProtocolSpec::psk(4, 0.87, 0.0);
  const double eta = std::pow(10.0, -0.02 * 20.0);
  const int n_bobs = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(
        cvqkd::lossonly::dw_rate(cvqkd::lossonly::TrustScenario::some_trusted(1),
                                 spec, eta, n_bobs, 0.95));
}
BENCHMARK(BM_lossonly_rate)->Arg(1)->Arg(16)->Arg(64);

void BM_region_operators(benchmark::State& state) {
  const int n_fock = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(
        cvqkd::sdp::build_region_operators(4, 0.3, n_fock));
}
BENCHMARK(BM_region_operators)->Arg(15)->Arg(20);

struct SdpFixture {
  cvqkd::protocol::ProtocolSpec spec = cvqkd::protocol::ProtocolSpec::psk(
      4, 0.87, 0.0);
  cvqkd::protocol::ChannelSpec ch;
  cvqkd::sdp::CutoffSpec cutoff = cvqkd::sdp::CutoffSpec::for_trusted(1);
  cvqkd::sdp::CompressedSpace space;
  cvqkd::sdp::ObjectiveContext objective;
  cvqkd::sdp::LinearizedSubproblem subproblem;

  static cvqkd::protocol::ChannelSpec channel() {
    cvqkd::protocol::ChannelSpec c;
    c.eta = std::pow(10.0, -0.02 * 20.0);
    c.xi = 1e-3;
    return c;
  }
  static const SdpFixture& instance() {
    static SdpFixture f;
    return f;
  }

 private:
  SdpFixture()
      : ch(channel()),
        space(spec, ch, 1, 1, cutoff),
        objective(space),
        subproblem(space,
                   cvqkd::sdp::build_observables(spec, ch, 1.0, cutoff).bounds,
                   cvqkd::sdp::compute_weight(
                       cvqkd::sdp::build_observables(spec, ch, 1.0, cutoff)
                           .bounds,
                       spec.probabilities, 1, cutoff)
                       .w_total) {}
};

void BM_objective_gradient(benchmark::State& state) {
  const auto& f = SdpFixture::instance();
  const Eigen::MatrixXcd rho = f.space.channel_state();
  for (auto _ : state)
    benchmark::DoNotOptimize(f.objective.value_and_gradient(rho));
}
BENCHMARK(BM_objective_gradient);

void BM_direction_subproblem(benchmark::State& state) {
  const auto& f = SdpFixture::instance();
  const Eigen::MatrixXcd rho = f.space.channel_state();
  const auto eval = f.objective.value_and_gradient(rho);
  for (auto _ : state)
    benchmark::DoNotOptimize(f.subproblem.solve(eval.gradient));
}
BENCHMARK(BM_direction_subproblem);

}  // namespace

BENCHMARK_MAIN();
