#include <benchmark/benchmark.h>

#include "xtalk/cac.hpp"
#include "xtalk/modal.hpp"
#include "xtalk/models.hpp"
#include "xtalk/scenario.hpp"
#include "xtalk/simulator.hpp"

namespace {

using namespace xtalk;

void BM_ClassifyBus(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  DeltaVector d;
  d.deltas.resize(m);
  for (int i = 0; i < m; ++i) d.deltas[i] = (i % 3) - 1;
  for (auto _ : state) benchmark::DoNotOptimize(classify_bus(d));
}
BENCHMARK(BM_ClassifyBus)->Arg(8)->Arg(17)->Arg(33);

void BM_CrossingTime(benchmark::State& state) {
  const BusSpec bus = reference_bus(5);
  const ModalExpansion wave =
      five_wire_waveform(TransitionPattern::parse("ududu"), bus, true);
  for (auto _ : state) benchmark::DoNotOptimize(crossing_time(wave));
}
BENCHMARK(BM_CrossingTime);

void BM_BusProfile(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const BusSpec bus = reference_bus(m);
  TransitionPattern p;
  for (int i = 0; i < m; ++i) {
    p.initial.push_back(i % 2);
    p.final_state.push_back(1 - i % 2);
  }
  for (auto _ : state) benchmark::DoNotOptimize(bus_delay_profile(p, bus));
}
BENCHMARK(BM_BusProfile)->Arg(8)->Arg(17);

void BM_TransientStep(benchmark::State& state) {
  // Cost per integration step, amortized over a short run.
  const int m = static_cast<int>(state.range(0));
  BusSpec bus = reference_bus(m);
  Network net(bus);
  const TransitionPattern p = TransitionPattern::parse(std::string(m, 'u'));
  SimOptions opts;
  opts.dt = bus.tau0_intrinsic() / 50.0;
  opts.t_end = 2000 * opts.dt;
  opts.early_stop = false;
  for (auto _ : state) benchmark::DoNotOptimize(simulate(net, p, opts));
  state.SetItemsProcessed(state.iterations() * 2000);
}
BENCHMARK(BM_TransientStep)->Arg(3)->Arg(17)->Unit(benchmark::kMillisecond);

void BM_PairClass(benchmark::State& state) {
  uint32_t u = 0b01100110, v = 0b10011010;
  for (auto _ : state) benchmark::DoNotOptimize(pair_class(u, v, 8));
}
BENCHMARK(BM_PairClass);

void BM_CodebookClique(benchmark::State& state) {
  const int cap = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(generate_codebook(8, CrosstalkClass(cap)));
}
BENCHMARK(BM_CodebookClique)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
