#pragma once

#include <vector>

namespace nzeb {

// Physical-side schedules. Degradation compounds geometrically: (1 - d)^t.

// PV energy in year-offset t: pv_kw * specific_yield * (1 - degradation)^t.
double pv_energy_year(double pv_kw, double specific_yield_kwh_per_kw,
                      double degradation_per_yr, int t);

// Per-year PV energy for year offsets 0 .. n_years-1.
std::vector<double> pv_energy_schedule(double pv_kw, double specific_yield_kwh_per_kw,
                                       double degradation_per_yr, int n_years);

// Usable capacity after aging, with roundtrip efficiency applied as a
// capacity derate (this model has no hourly dispatch to apply it per-cycle).
// Throws std::domain_error when age >= life_yr: the caller must have
// scheduled a replacement by then.
double battery_usable_kwh(double nameplate_kwh, double roundtrip_eff,
                          double degradation_per_yr, int age, int life_yr);

// Year offsets at which a component is repurchased: {life, 2*life, ...}
// strictly below the analysis period. A replacement falling exactly at the
// end of the period is not purchased.
std::vector<int> replacement_years(int life_yr, int analysis_period_yr);

// Miles per kWh from rated range and battery size. Throws std::domain_error
// for battery_kwh <= 0.
double ev_efficiency(double range_mi, double battery_kwh);

}  // namespace nzeb
