#pragma once

#include <string>

#include "nzeb/scenario.hpp"

namespace nzeb {

struct SizingResult {
    double pv_kw = 0.0;
    double battery_nameplate_kwh = 0.0;
    std::string notes;
};

// PV capacity whose annual output matches annual consumption.
double netzero_pv_kw(double annual_kwh, double specific_yield_kwh_per_kw);

// Scales pv_kw and battery_nameplate_kwh by (1 - fraction); everything else
// passes through unchanged. fraction in [0, 1).
SystemSpec apply_efficiency_improvement(const SystemSpec& spec, double fraction);

// Installed battery for a storage fraction of the grid-independence reference.
double battery_for_fraction(double reference_kwh, double storage_fraction);

// Net-zero sizing for a home: PV from consumption/yield, battery passed
// through as the reference nameplate (its derivation is not modeled here).
SizingResult netzero_sizing(const HomeProfile& home, double reference_battery_kwh);

}  // namespace nzeb
