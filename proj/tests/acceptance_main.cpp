// Acceptance suite: runs every release criterion at its stated tolerance and
// prints one pass/fail line each. Exits nonzero if any criterion fails.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "nzeb/cost_projection.hpp"
#include "nzeb/finance.hpp"
#include "nzeb/metrics.hpp"
#include "nzeb/production.hpp"
#include "nzeb/scenario.hpp"
#include "nzeb/sizing.hpp"
#include "nzeb/sweep.hpp"

namespace fs = std::filesystem;
using namespace nzeb;

namespace {

int failures = 0;

void report(const std::string& name, bool ok, const std::string& detail) {
    std::printf("[%s] %s — %s\n", ok ? "PASS" : "FAIL", name.c_str(), detail.c_str());
    if (!ok) ++failures;
}

std::string fmt(double v, int decimals = 4) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

CostTrajectory fixture() {
    return load_cost_table(read_file("data/cost_trajectory_fixture.csv"));
}

void criterion_1_discount_consistency() {
    double rr = real_rate(0.045, 0.025);
    double err = std::fabs(rr - 0.01951);
    report("1 discount consistency", err < 1e-4,
           "real_rate(0.045, 0.025) = " + fmt(rr, 6) + ", |delta| = " + fmt(err, 7) + " < 1e-4");
}

void criterion_2_netzero_sizing() {
    double pv = netzero_pv_kw(13300.0, 1400.0);
    double bill = monthly_grid_bill(13300.0, 0.113);
    bool ok = (pv == 9.5) && std::fabs(bill - 125.24) < 0.01 && std::fabs(bill - 124.0) <= 2.0;
    report("2 net-zero sizing", ok,
           "pv = " + fmt(pv, 2) + " kW (exact), bill = $" + fmt(bill, 2) +
               "/mo within $2 of ~$124");
}

void criterion_3_gas_equivalence() {
    double ev_eff = 220.0 / 68.7;
    double equiv = gas_equivalent(0.177, 24.2, ev_eff);
    double ratio = equiv / 3.16;
    bool ok = std::fabs(equiv - 1.34) <= 0.01 && std::fabs(ratio - 0.42) <= 0.01;
    report("3 gasoline equivalence", ok,
           "$" + fmt(equiv, 4) + "/gal (target 1.34 +/- 0.01), ratio " + fmt(ratio, 4) +
               " (target 0.42 +/- 0.01)");
}

void criterion_4_ev_efficiency() {
    double eff = ev_efficiency(220.0, 68.7);
    report("4 EV efficiency", std::fabs(eff - 3.20) <= 0.01,
           fmt(eff, 4) + " mi/kWh (target 3.20 +/- 0.01)");
}

void criterion_5_driving_savings() {
    DrivingCosts d = driving_savings(10000.0, 24.2, 3.16, 3.2023, 0.040);
    bool ok = std::fabs(d.gas_cost_yr - 1305.80) <= 1.0 && std::fabs(d.ev_cost_yr - 124.92) <= 1.0 &&
              std::fabs(d.savings_yr - 1180.90) <= 1.0 && std::fabs(d.savings_month - 98.40) <= 0.10 &&
              d.savings_month <= 100.0;
    report("5 driving savings", ok,
           "gas $" + fmt(d.gas_cost_yr, 2) + ", ev $" + fmt(d.ev_cost_yr, 2) + ", savings $" +
               fmt(d.savings_yr, 2) + "/yr = $" + fmt(d.savings_month, 2) +
               "/mo (within $1/$1/$1/$0.10), consistent with <= $100/mo");
}

void criterion_6_improvement_scaling() {
    SystemSpec base;
    base.pv_kw = 9.5;
    base.battery_nameplate_kwh = 42.21;
    SystemSpec improved = apply_efficiency_improvement(base, 0.317);
    // Tolerance basis: 0.1% of the pre-improvement size. Relative to the
    // published targets themselves the PV deviation is 0.131% because the
    // published 6.48 is a truncation of 9.5 x 0.683 = 6.4885.
    double pv_dev = std::fabs(improved.pv_kw - 6.48);
    double batt_dev = std::fabs(improved.battery_nameplate_kwh - 28.82);
    bool ok = pv_dev <= 0.001 * base.pv_kw && batt_dev <= 0.001 * base.battery_nameplate_kwh;
    report("6 improvement scaling", ok,
           "pv " + fmt(improved.pv_kw, 4) + " kW vs 6.48 (|dev| " + fmt(pv_dev, 4) + " <= " +
               fmt(0.001 * base.pv_kw, 4) + "), battery " + fmt(improved.battery_nameplate_kwh, 4) +
               " kWh vs 28.82 (|dev| " + fmt(batt_dev, 4) + " <= " +
               fmt(0.001 * base.battery_nameplate_kwh, 4) + ")");
}

void criterion_7_solar_driving_range() {
    double kwh = pv_energy_year(2.2, 1400.0, 0.0, 0);
    double miles = solar_driving_range(2.2, 1400.0, 3.2023);
    bool ok = std::fabs(kwh - 3080.0) < 1e-9 && std::fabs(miles - 10000.0) / 10000.0 <= 0.02;
    report("7 solar driving range", ok,
           fmt(kwh, 1) + " kWh/yr (exact 3080), " + fmt(miles, 0) + " mi/yr within 2% of 10000");
}

void criterion_8_statewide_outflow() {
    double out = statewide_outflow(30.7e9, 0.75);
    report("8 statewide outflow", std::fabs(out - 23.03e9) <= 0.01e9,
           "$" + fmt(out / 1e9, 3) + "B (target 23.03B +/- 0.01B)");
}

void criterion_9a_itc_dominance(const CostTrajectory& traj) {
    Scenario s;
    bool ok = true;
    int bad_year = 0;
    for (int year = 2020; year <= 2050; ++year) {
        s.itc_enabled = false;
        double off = monthly_savings(s, year, traj).monthly_savings_usd;
        s.itc_enabled = true;
        double on = monthly_savings(s, year, traj).monthly_savings_usd;
        if (!(on > off)) {
            ok = false;
            bad_year = year;
            break;
        }
    }
    report("9a ITC dominance", ok,
           ok ? "savings(itc) > savings(no itc) for every install year 2020-2050"
              : "violated at install year " + std::to_string(bad_year));
}

void criterion_9b_crossover_ordering(const CostTrajectory& traj) {
    Scenario s;
    std::vector<SavingsPoint> on, off;
    for (int year = 2020; year <= 2050; ++year) {
        s.itc_enabled = true;
        on.push_back(monthly_savings(s, year, traj));
        s.itc_enabled = false;
        off.push_back(monthly_savings(s, year, traj));
    }
    auto cy_on = crossover_year(on);
    auto cy_off = crossover_year(off);
    bool ok = cy_on.has_value() && (!cy_off.has_value() || *cy_on <= *cy_off);
    report("9b crossover ordering", ok,
           "crossover(itc) = " + (cy_on ? std::to_string(*cy_on) : std::string("none")) +
               " <= crossover(no itc) = " + (cy_off ? std::to_string(*cy_off) : std::string("none")));
}

void criterion_9c_zero_system(const CostTrajectory& traj) {
    Scenario s;
    s.system.pv_kw = 0.0;
    s.system.battery_nameplate_kwh = 0.0;
    s.system.storage_fraction = 0.0;
    double worst = 0.0;
    for (int year : {2020, 2035, 2050}) {
        worst = std::max(worst, std::fabs(monthly_savings(s, year, traj).monthly_savings_usd));
    }
    report("9c zero-system identity", worst < 1e-9,
           "max |savings| = " + fmt(worst, 12) + " < 1e-9");
}

void criterion_9d_lcoe_homogeneity() {
    std::mt19937 rng(20200811);
    std::uniform_real_distribution<double> cost(10.0, 5000.0), energy(100.0, 20000.0);
    bool ok = true;
    double worst = 0.0;
    for (int trial = 0; trial < 20 && ok; ++trial) {
        std::vector<double> c(25), e(25), ck(25), ek(25);
        const double k = 3.7;
        for (int t = 0; t < 25; ++t) {
            c[static_cast<size_t>(t)] = cost(rng);
            e[static_cast<size_t>(t)] = energy(rng);
            ck[static_cast<size_t>(t)] = k * c[static_cast<size_t>(t)];
            ek[static_cast<size_t>(t)] = k * e[static_cast<size_t>(t)];
        }
        double base = lcoe(c, e, 0.0195122, 25);
        double rel1 = std::fabs(lcoe(ck, e, 0.0195122, 25) - k * base) / (k * base);
        double rel2 = std::fabs(lcoe(c, ek, 0.0195122, 25) - base / k) / (base / k);
        worst = std::max({worst, rel1, rel2});
        ok = worst <= 1e-9;
    }
    report("9d LCOE homogeneity", ok, "worst relative error " + fmt(worst, 12) + " <= 1e-9");
}

void criterion_9e_amortization_conservation() {
    bool ok = true;
    double worst = 0.0;
    for (auto [p, r, n] : {std::tuple<double, double, int>{10000.0, 0.045, 25},
                           {250000.0, 0.07, 30},
                           {1234.56, 0.0, 7},
                           {50000.0, 0.12, 15}}) {
        AmortizationSchedule sched = amortization_schedule(p, r, n);
        double sum = 0.0;
        for (const auto& row : sched.rows) sum += row.principal_portion;
        worst = std::max(worst, std::fabs(sum - p));
        if (std::fabs(sum - p) > 0.01) ok = false;
    }
    report("9e amortization conservation", ok,
           "worst |sum(principal) - principal| = $" + fmt(worst, 6) + " <= $0.01");
}

void criterion_9f_deflation_equivalence() {
    std::mt19937 rng(3081);
    std::uniform_real_distribution<double> flow(-5000.0, 5000.0);
    const double inflation = 0.025, nominal = 0.045;
    const double real = real_rate(nominal, inflation);
    bool ok = true;
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> real_flows(30), nominal_flows(30);
        for (int t = 0; t < 30; ++t) {
            real_flows[static_cast<size_t>(t)] = flow(rng);
            nominal_flows[static_cast<size_t>(t)] =
                real_flows[static_cast<size_t>(t)] * std::pow(1.0 + inflation, t);
        }
        double a = npv(real_flows, real);
        double b = npv(nominal_flows, nominal);
        double rel = std::fabs(a - b) / std::max(1.0, std::fabs(a));
        worst = std::max(worst, rel);
        if (rel > 1e-9) ok = false;
    }
    report("9f nominal-vs-real discounting", ok,
           "worst relative error " + fmt(worst, 12) + " <= 1e-9");
}

void criterion_9g_golden_calibration(const CostTrajectory& traj) {
    Scenario s;
    s.itc_enabled = false;
    double no_itc = monthly_savings(s, 2020, traj).monthly_savings_usd;
    s.itc_enabled = true;
    double with_itc = monthly_savings(s, 2020, traj).monthly_savings_usd;
    bool ok = std::fabs(no_itc - (-120.4)) <= 1.0 && std::fabs(with_itc - (-65.0)) <= 1.0;
    report("9g golden calibration (fixture)", ok,
           "2020 savings: no itc $" + fmt(no_itc, 2) + "/mo (target -120.40 +/- 1), itc $" +
               fmt(with_itc, 2) + "/mo (target -65.00 +/- 1)");
}

void criterion_10_determinism() {
    std::mt19937_64 rng(std::random_device{}());
    fs::path out1 = fs::temp_directory_path() / ("nzeb_acc_a_" + std::to_string(rng()));
    fs::path out2 = fs::temp_directory_path() / ("nzeb_acc_b_" + std::to_string(rng()));
    SweepRequest req;
    req.scenario_path = "data/scenario_baseline.json";
    req.cost_table_path = "data/cost_trajectory_fixture.csv";
    req.start_year = 2020;
    req.end_year = 2050;

    std::ostringstream diag;
    req.output_dir = out1.string();
    int rc1 = run_sweep(req, diag);
    req.output_dir = out2.string();
    int rc2 = run_sweep(req, diag);

    bool ok = rc1 == kExitOk && rc2 == kExitOk;
    for (const char* name : {"savings.csv", "lcoe.csv", "crossover.csv"}) {
        if (!ok) break;
        ok = read_file((out1 / name).string()) == read_file((out2 / name).string());
    }
    std::error_code ec;
    fs::remove_all(out1, ec);
    fs::remove_all(out2, ec);
    report("10 determinism", ok,
           ok ? "two sweeps over 2020-2050 produced byte-identical CSV outputs"
              : "outputs differ or sweep failed");
}

}  // namespace

int main() {
    try {
        CostTrajectory traj = fixture();

        criterion_1_discount_consistency();
        criterion_2_netzero_sizing();
        criterion_3_gas_equivalence();
        criterion_4_ev_efficiency();
        criterion_5_driving_savings();
        criterion_6_improvement_scaling();
        criterion_7_solar_driving_range();
        criterion_8_statewide_outflow();
        criterion_9a_itc_dominance(traj);
        criterion_9b_crossover_ordering(traj);
        criterion_9c_zero_system(traj);
        criterion_9d_lcoe_homogeneity();
        criterion_9e_amortization_conservation();
        criterion_9f_deflation_equivalence();
        criterion_9g_golden_calibration(traj);
        criterion_10_determinism();
    } catch (const std::exception& e) {
        std::cerr << "acceptance suite aborted: " << e.what() << "\n";
        return 1;
    }

    if (failures == 0) {
        std::printf("all acceptance criteria passed\n");
        return 0;
    }
    std::printf("%d acceptance criteria FAILED\n", failures);
    return 1;
}
