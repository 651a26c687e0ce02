#include <doctest.h>

#include <random>
#include <stdexcept>

#include "nzeb/production.hpp"

using namespace nzeb;

TEST_CASE("pv energy: net-zero year and first-year degradation") {
    CHECK(pv_energy_year(9.5, 1400.0, 0.005, 0) == doctest::Approx(13300.0));
    CHECK(pv_energy_year(9.5, 1400.0, 0.005, 1) == doctest::Approx(13233.5));
    CHECK(pv_energy_year(0.0, 1400.0, 0.005, 7) == 0.0);
}

TEST_CASE("pv energy decays strictly and adds over capacity") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> kw(0.1, 20.0), deg(0.001, 0.2);
    for (int i = 0; i < 50; ++i) {
        double a = kw(rng), b = kw(rng), d = deg(rng);
        for (int t = 0; t < 24; ++t) {
            CHECK(pv_energy_year(a, 1400.0, d, t + 1) < pv_energy_year(a, 1400.0, d, t));
            CHECK(pv_energy_year(a + b, 1400.0, d, t) ==
                  doctest::Approx(pv_energy_year(a, 1400.0, d, t) +
                                  pv_energy_year(b, 1400.0, d, t))
                      .epsilon(1e-12));
        }
    }
}

TEST_CASE("pv schedule matches the per-year values") {
    auto sched = pv_energy_schedule(9.5, 1400.0, 0.005, 30);
    REQUIRE(sched.size() == 30);
    for (int t = 0; t < 30; ++t) {
        CHECK(sched[static_cast<size_t>(t)] ==
              doctest::Approx(pv_energy_year(9.5, 1400.0, 0.005, t)).epsilon(1e-12));
    }
}

TEST_CASE("battery usable capacity derates with efficiency and age") {
    CHECK(battery_usable_kwh(42.21, 0.95, 0.035, 0, 10) == doctest::Approx(40.0995));
    CHECK(battery_usable_kwh(42.21, 0.95, 0.035, 1, 10) == doctest::Approx(38.696018).epsilon(1e-6));
    CHECK_THROWS_AS(battery_usable_kwh(42.21, 0.95, 0.035, 10, 10), std::domain_error);
}

TEST_CASE("replacement calendar") {
    CHECK(replacement_years(10, 30) == std::vector<int>{10, 20});
    CHECK(replacement_years(15, 30) == std::vector<int>{15});
    CHECK(replacement_years(30, 30).empty());
    CHECK(replacement_years(1, 4) == std::vector<int>{1, 2, 3});
}

TEST_CASE("replacements keep battery age below its life at every offset") {
    for (int life = 1; life <= 40; ++life) {
        for (int period : {1, 7, 25, 30, 60}) {
            auto reps = replacement_years(life, period);
            for (int t = 0; t < period; ++t) {
                int last = 0;
                for (int r : reps) {
                    if (r <= t) last = r;
                }
                int age = t - last;
                CHECK(age < life);
                CHECK_NOTHROW(battery_usable_kwh(42.21, 0.95, 0.035, age, life));
            }
        }
    }
}

TEST_CASE("ev efficiency") {
    CHECK(ev_efficiency(220.0, 68.7) == doctest::Approx(3.2023).epsilon(1e-4));
    CHECK(ev_efficiency(220.0, 110.0) == 2.0);
    CHECK(ev_efficiency(0.0, 68.7) == 0.0);
    CHECK_THROWS_AS(ev_efficiency(220.0, 0.0), std::domain_error);
}
