#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>

#include "xcsp3kit/xcsp3kit.hpp"

using namespace xcsp3kit;

namespace {

std::string slurp(const char* name) {
  std::ifstream in(std::string(XCSP3KIT_CORPUS) + "/" + name, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void BM_LoadInstance(benchmark::State& st, const char* file) {
  std::string bytes = slurp(file);
  for (auto _ : st) benchmark::DoNotOptimize(load_instance(bytes));
  st.SetBytesProcessed(static_cast<int64_t>(st.iterations() * bytes.size()));
}
BENCHMARK_CAPTURE(BM_LoadInstance, cake, "ex004.xml");
BENCHMARK_CAPTURE(BM_LoadInstance, slide, "ex122.xml");
BENCHMARK_CAPTURE(BM_LoadInstance, magic, "ex155.xml");

void BM_ToJson(benchmark::State& st) {
  RawElement doc = load_document(slurp("ex156.xml"));
  for (auto _ : st) benchmark::DoNotOptimize(to_json(doc));
}
BENCHMARK(BM_ToJson);

void BM_CertifyCake(benchmark::State& st) {
  Instance inst = load_instance(slurp("ex004.xml"));
  SolutionDoc sol = parse_solution_text(slurp("solutions/ex024.xml"), inst);
  for (auto _ : st) benchmark::DoNotOptimize(certify(inst, sol));
}
BENCHMARK(BM_CertifyCake)->Unit(benchmark::kMicrosecond);

void BM_CheckAssignment(benchmark::State& st) {
  Instance inst = load_instance(slurp("ex155.xml"));
  Assignment a(9);
  const int64_t magic[9] = {2, 7, 6, 9, 5, 1, 4, 3, 8};
  for (VarId i = 0; i < 9; ++i) a.set(i, magic[i]);
  for (auto _ : st) benchmark::DoNotOptimize(check_solution(inst, a));
}
BENCHMARK(BM_CheckAssignment);

void BM_Count(benchmark::State& st, const char* file) {
  Instance inst = load_instance(slurp(file));
  for (auto _ : st) benchmark::DoNotOptimize(count_solutions(inst));
}
BENCHMARK_CAPTURE(BM_Count, latin, "ex152.xml")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Count, magic, "ex155.xml")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Count, langford, "ex164.xml")->Unit(benchmark::kMillisecond);

void BM_OptimizeCake(benchmark::State& st) {
  Instance inst = load_instance(slurp("ex004.xml"));
  SearchConfig cfg;
  cfg.mode = SearchConfig::Mode::Optimize;
  for (auto _ : st) benchmark::DoNotOptimize(solve(inst, cfg));
}
BENCHMARK(BM_OptimizeCake)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
