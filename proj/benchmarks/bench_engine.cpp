#include <benchmark/benchmark.h>

#include "nzeb/cost_projection.hpp"
#include "nzeb/finance.hpp"
#include "nzeb/metrics.hpp"
#include "nzeb/scenario.hpp"

namespace {

const char* kCostCsv =
    "year,pv_capex_usd_per_w,battery_capex_usd_per_kwh,fixed_om_usd_per_kw_yr\n"
    "2020,2.98,480.0,10.20\n"
    "2030,1.88,240.0,8.93\n"
    "2040,1.41,137.0,7.67\n"
    "2050,0.81,123.0,6.40\n";

nzeb::Scenario reference_scenario() {
    return nzeb::Scenario{};
}

void BM_LoadCostTable(benchmark::State& state) {
    std::string csv(kCostCsv);
    for (auto _ : state) {
        benchmark::DoNotOptimize(nzeb::load_cost_table(csv));
    }
}
BENCHMARK(BM_LoadCostTable);

void BM_CashflowSeries(benchmark::State& state) {
    nzeb::Scenario s = reference_scenario();
    nzeb::CostTrajectory traj = nzeb::load_cost_table(kCostCsv);
    for (auto _ : state) {
        benchmark::DoNotOptimize(nzeb::cashflow_series(s, 2020, traj));
    }
}
BENCHMARK(BM_CashflowSeries);

void BM_MonthlySavings(benchmark::State& state) {
    nzeb::Scenario s = reference_scenario();
    nzeb::CostTrajectory traj = nzeb::load_cost_table(kCostCsv);
    for (auto _ : state) {
        benchmark::DoNotOptimize(nzeb::monthly_savings(s, 2020, traj));
    }
}
BENCHMARK(BM_MonthlySavings);

void BM_SweepThirtyOneYears(benchmark::State& state) {
    nzeb::Scenario s = reference_scenario();
    nzeb::CostTrajectory traj = nzeb::load_cost_table(kCostCsv);
    for (auto _ : state) {
        std::vector<nzeb::SavingsPoint> points;
        for (int year = 2020; year <= 2050; ++year) {
            points.push_back(nzeb::monthly_savings(s, year, traj));
        }
        benchmark::DoNotOptimize(nzeb::crossover_year(points));
    }
}
BENCHMARK(BM_SweepThirtyOneYears);

}  // namespace

BENCHMARK_MAIN();
