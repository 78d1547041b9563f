#include <benchmark/benchmark.h>

#include "mwcalc/rost_schmid.hpp"
#include "mwcalc/suites.hpp"
#include "mwcalc/text.hpp"

using namespace mwcalc;

namespace {

void BM_MwEqualFinite(benchmark::State& state) {
  FieldPtr F = parse_field("F" + std::to_string(state.range(0)));
  Sampler s(1);
  std::vector<std::pair<MWExpr, MWExpr>> pairs;
  for (int i = 0; i < 64; ++i) pairs.emplace_back(s.expr(F, 1, 4, 2), s.expr(F, 1, 4, 2));
  size_t i = 0;
  for (auto _ : state) {
    const auto& [x, y] = pairs[i++ % pairs.size()];
    benchmark::DoNotOptimize(mw_equal(x, y));
  }
}
BENCHMARK(BM_MwEqualFinite)->Arg(5)->Arg(9)->Arg(27);

void BM_Residue(benchmark::State& state) {
  FieldPtr Ft = parse_field("F5(t)");
  Sampler s(2);
  std::vector<MWExpr> xs;
  for (int i = 0; i < 64; ++i) xs.push_back(s.expr(Ft, 2, 3, 1, static_cast<int>(state.range(0))));
  ValuationSpec v = parse_place(Ft, "t^2+2");
  size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(residue(xs[i++ % xs.size()], v));
}
BENCHMARK(BM_Residue)->Arg(1)->Arg(3);

void BM_GeometricTransfer(benchmark::State& state) {
  FieldPtr F = parse_field("F3");
  Poly p = state.range(0) == 2 ? parse_poly(F, "t^2+1") : parse_poly(F, "t^3+2*t+1");
  FieldPtr K = residue_field(F, p);
  Sampler s(3);
  std::vector<MWExpr> xs;
  for (int i = 0; i < 64; ++i) xs.push_back(s.expr(K, 1, 2, 1));
  size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(geometric_transfer(xs[i++ % xs.size()], F, p));
}
BENCHMARK(BM_GeometricTransfer)->Arg(2)->Arg(3);

void BM_ReciprocityDefect(benchmark::State& state) {
  FieldPtr Ft = parse_field("F3(t)");
  Sampler s(4);
  std::vector<MWExpr> xs;
  for (int i = 0; i < 32; ++i) xs.push_back(s.expr(Ft, 2, 2, 1, 3));
  size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(reciprocity_defect(xs[i++ % xs.size()]));
}
BENCHMARK(BM_ReciprocityDefect);

void BM_DifferentialP1(benchmark::State& state) {
  FieldPtr F = parse_field("F5");
  Scheme P1 = Scheme::proj_line(F);
  Sampler s(5);
  std::vector<RSCochain> cs;
  for (int i = 0; i < 32; ++i)
    cs.push_back(generic_cochain(P1, s.expr(P1.function_field(), 1, 2, 1, 3), static_cast<int>(state.range(0))));
  size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(differential(cs[i++ % cs.size()]));
}
BENCHMARK(BM_DifferentialP1)->Arg(0)->Arg(1);

}  // namespace

BENCHMARK_MAIN();
