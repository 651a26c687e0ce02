#include "nzeb/sizing.hpp"

#include <stdexcept>

namespace nzeb {

double netzero_pv_kw(double annual_kwh, double specific_yield_kwh_per_kw) {
    if (specific_yield_kwh_per_kw <= 0.0)
        throw std::domain_error("netzero_pv_kw: specific yield must be positive");
    return annual_kwh / specific_yield_kwh_per_kw;
}

SystemSpec apply_efficiency_improvement(const SystemSpec& spec, double fraction) {
    if (fraction < 0.0 || fraction >= 1.0)
        throw std::invalid_argument("apply_efficiency_improvement: fraction must be in [0, 1)");
    SystemSpec out = spec;
    out.pv_kw = spec.pv_kw * (1.0 - fraction);
    out.battery_nameplate_kwh = spec.battery_nameplate_kwh * (1.0 - fraction);
    return out;
}

double battery_for_fraction(double reference_kwh, double storage_fraction) {
    if (storage_fraction < 0.0 || storage_fraction > 1.0)
        throw std::invalid_argument("battery_for_fraction: fraction must be in [0, 1]");
    return reference_kwh * storage_fraction;
}

SizingResult netzero_sizing(const HomeProfile& home, double reference_battery_kwh) {
    SizingResult r;
    r.pv_kw = netzero_pv_kw(home.annual_consumption_kwh, home.specific_yield_kwh_per_kw);
    r.battery_nameplate_kwh = reference_battery_kwh;
    r.notes = "PV sized to annual consumption; battery reference taken as input";
    return r;
}

}  // namespace nzeb
