#include "nzeb/production.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace nzeb {

double pv_energy_year(double pv_kw, double specific_yield_kwh_per_kw,
                      double degradation_per_yr, int t) {
    if (t < 0) throw std::invalid_argument("pv_energy_year: year offset must be >= 0");
    return pv_kw * specific_yield_kwh_per_kw * std::pow(1.0 - degradation_per_yr, t);
}

std::vector<double> pv_energy_schedule(double pv_kw, double specific_yield_kwh_per_kw,
                                       double degradation_per_yr, int n_years) {
    std::vector<double> out;
    out.reserve(static_cast<size_t>(n_years > 0 ? n_years : 0));
    double e = pv_kw * specific_yield_kwh_per_kw;
    for (int t = 0; t < n_years; ++t) {
        out.push_back(e);
        e *= 1.0 - degradation_per_yr;
    }
    return out;
}

double battery_usable_kwh(double nameplate_kwh, double roundtrip_eff,
                          double degradation_per_yr, int age, int life_yr) {
    if (age < 0) throw std::invalid_argument("battery_usable_kwh: age must be >= 0");
    if (age >= life_yr) {
        throw std::domain_error("battery_usable_kwh: age " + std::to_string(age) +
                                " is at or past end of life (" + std::to_string(life_yr) +
                                " yr); a replacement should have been scheduled");
    }
    return nameplate_kwh * roundtrip_eff * std::pow(1.0 - degradation_per_yr, age);
}

std::vector<int> replacement_years(int life_yr, int analysis_period_yr) {
    if (life_yr < 1) throw std::invalid_argument("replacement_years: life must be >= 1 yr");
    if (analysis_period_yr < 1)
        throw std::invalid_argument("replacement_years: analysis period must be >= 1 yr");
    std::vector<int> out;
    for (int t = life_yr; t < analysis_period_yr; t += life_yr) out.push_back(t);
    return out;
}

double ev_efficiency(double range_mi, double battery_kwh) {
    if (battery_kwh <= 0.0)
        throw std::domain_error("ev_efficiency: battery capacity must be positive");
    return range_mi / battery_kwh;
}

}  // namespace nzeb
