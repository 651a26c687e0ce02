#include <doctest.h>

#include <random>
#include <string>

#include "nzeb/cost_projection.hpp"

using namespace nzeb;

namespace {

const char* kHeader = "year,pv_capex_usd_per_w,battery_capex_usd_per_kwh,fixed_om_usd_per_kw_yr\n";

std::string table(const std::string& body) { return std::string(kHeader) + body; }

}  // namespace

TEST_CASE("minimal two-row table parses and keeps node values exactly") {
    CostTrajectory t = load_cost_table(table("2020,2.5,400,20\n2050,0.8,100,10\n"));
    REQUIRE(t.rows().size() == 2);
    CHECK(capex_at(t, 2020, CostComponent::pv) == 2.5);
    CHECK(capex_at(t, 2050, CostComponent::pv) == 0.8);
    CHECK(capex_at(t, 2020, CostComponent::battery) == 400.0);
    CHECK(capex_at(t, 2050, CostComponent::om) == 10.0);
}

TEST_CASE("header-only input needs at least two rows") {
    CHECK_THROWS_WITH_AS(load_cost_table(table("")), doctest::Contains("at least 2 rows"),
                         CostTableError);
}

TEST_CASE("unsorted and duplicate years name the offending line") {
    CHECK_THROWS_WITH_AS(load_cost_table(table("2030,2,300,15\n2020,1,200,10\n")),
                         doctest::Contains("line 3"), CostTableError);
    CHECK_THROWS_WITH_AS(load_cost_table(table("2020,2,300,15\n2020,1,200,10\n")),
                         doctest::Contains("duplicate year 2020"), CostTableError);
}

TEST_CASE("non-numeric cells and bad headers are rejected") {
    CHECK_THROWS_WITH_AS(load_cost_table(table("2020,cheap,300,15\n2030,1,200,10\n")),
                         doctest::Contains("pv_capex_usd_per_w"), CostTableError);
    CHECK_THROWS_WITH_AS(load_cost_table("year,pv,battery,om\n2020,1,2,3\n2030,1,2,3\n"),
                         doctest::Contains("header"), CostTableError);
    CHECK_THROWS_WITH_AS(load_cost_table(table("2020,1,300\n2030,1,200,10\n")),
                         doctest::Contains("expected 4 columns"), CostTableError);
    CHECK_THROWS_AS(load_cost_table(table("2020,-1,300,15\n2030,1,200,10\n")), CostTableError);
}

TEST_CASE("interpolation is linear with end clamping") {
    CostTrajectory t = load_cost_table(table("2020,2.0,400,20\n2030,1.0,200,10\n"));
    CHECK(capex_at(t, 2025, CostComponent::pv) == doctest::Approx(1.5));
    CHECK(capex_at(t, 2010, CostComponent::pv) == 2.0);
    CHECK(capex_at(t, 2030, CostComponent::pv) == 1.0);
    CHECK(capex_at(t, 2045, CostComponent::battery) == 200.0);
    CHECK(capex_at(t, 2027, CostComponent::om) == doctest::Approx(13.0));
}

TEST_CASE("windows line endings are tolerated") {
    CostTrajectory t = load_cost_table(table("2020,2.0,400,20\r\n2030,1.0,200,10\r\n"));
    CHECK(t.rows().size() == 2);
}

TEST_CASE("non-increasing node values make capex_at non-increasing everywhere") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> step(0.0, 0.5);
    for (int trial = 0; trial < 25; ++trial) {
        std::string body;
        double pv = 3.0, batt = 500.0, om = 25.0;
        for (int year = 2020; year <= 2050; year += 5) {
            body += std::to_string(year) + "," + std::to_string(pv) + "," +
                    std::to_string(batt) + "," + std::to_string(om) + "\n";
            pv -= step(rng) * 0.4;
            batt -= step(rng) * 60.0;
            om -= step(rng) * 3.0;
            pv = std::max(pv, 0.0);
            batt = std::max(batt, 0.0);
            om = std::max(om, 0.0);
        }
        CostTrajectory t = load_cost_table(table(body));
        for (auto component : {CostComponent::pv, CostComponent::battery, CostComponent::om}) {
            double prev = capex_at(t, 2015, component);
            for (int year = 2016; year <= 2055; ++year) {
                double cur = capex_at(t, year, component);
                CHECK(cur <= prev + 1e-12);
                prev = cur;
            }
        }
    }
}
