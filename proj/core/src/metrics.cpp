#include "nzeb/metrics.hpp"

#include <cmath>
#include <stdexcept>

#include "nzeb/production.hpp"

namespace nzeb {

double lcoe(const std::vector<double>& cost_usd_per_yr,
            const std::vector<double>& energy_kwh_per_yr,
            double real_discount, int service_yr) {
    if (cost_usd_per_yr.size() != energy_kwh_per_yr.size())
        throw std::invalid_argument("lcoe: cost and energy series must have equal length");
    if (service_yr < 1 || static_cast<size_t>(service_yr) > cost_usd_per_yr.size())
        throw std::invalid_argument("lcoe: service time must be within the series length");
    double cost = 0.0, energy = 0.0;
    for (int t = 0; t < service_yr; ++t) {
        double d = std::pow(1.0 + real_discount, t);
        cost += cost_usd_per_yr[static_cast<size_t>(t)] / d;
        energy += energy_kwh_per_yr[static_cast<size_t>(t)] / d;
    }
    if (energy <= 0.0) throw std::domain_error("lcoe: discounted energy must be positive");
    return cost / energy;
}

double gas_equivalent(double price_usd_per_kwh, double mpg, double ev_mi_per_kwh) {
    if (ev_mi_per_kwh <= 0.0)
        throw std::domain_error("gas_equivalent: EV efficiency must be positive");
    return price_usd_per_kwh * mpg / ev_mi_per_kwh;
}

double monthly_grid_bill(double annual_kwh, double price_usd_per_kwh) {
    if (annual_kwh < 0.0 || price_usd_per_kwh < 0.0)
        throw std::invalid_argument("monthly_grid_bill: inputs must be >= 0");
    return annual_kwh * price_usd_per_kwh / 12.0;
}

SavingsPoint monthly_savings(const Scenario& s, int install_year, const CostTrajectory& t,
                             std::string label) {
    // Baseline: the same home with no system, no improvement, buying every
    // kWh from the grid. Building it through the same series machinery keeps
    // the comparison exact under any escalation assumption.
    Scenario baseline = s;
    baseline.system.pv_kw = 0.0;
    baseline.system.battery_nameplate_kwh = 0.0;
    baseline.system.storage_fraction = 0.0;
    baseline.system.v2h.reset();
    baseline.annual_ev_miles = 0.0;
    baseline.improvement_fraction = 0.0;

    const double r = s.finance.real_discount;
    const int service = s.finance.service_time_yr;
    double system_level = levelize_monthly(cashflow_series(s, install_year, t), r, service);
    double baseline_level = levelize_monthly(cashflow_series(baseline, install_year, t), r, service);

    SavingsPoint p;
    p.install_year = install_year;
    p.monthly_savings_usd = system_level - baseline_level;
    p.scenario_label = std::move(label);
    return p;
}

std::optional<int> crossover_year(const std::vector<SavingsPoint>& points) {
    if (points.empty()) throw std::invalid_argument("crossover_year: empty list");
    for (const SavingsPoint& p : points) {
        if (p.monthly_savings_usd >= 0.0) return p.install_year;
    }
    return std::nullopt;
}

DrivingCosts driving_savings(double annual_mi, double mpg, double gas_usd_per_gal,
                             double ev_mi_per_kwh, double elec_usd_per_kwh) {
    if (mpg <= 0.0) throw std::domain_error("driving_savings: mpg must be positive");
    if (ev_mi_per_kwh <= 0.0)
        throw std::domain_error("driving_savings: EV efficiency must be positive");
    DrivingCosts d;
    d.gas_cost_yr = annual_mi / mpg * gas_usd_per_gal;
    d.ev_cost_yr = annual_mi / ev_mi_per_kwh * elec_usd_per_kwh;
    d.savings_yr = d.gas_cost_yr - d.ev_cost_yr;
    d.savings_month = d.savings_yr / 12.0;
    return d;
}

double statewide_outflow(double total_spend_usd, double import_share) {
    if (import_share < 0.0 || import_share > 1.0)
        throw std::invalid_argument("statewide_outflow: share must be in [0, 1]");
    return total_spend_usd * import_share;
}

double solar_driving_range(double extra_pv_kw, double specific_yield_kwh_per_kw,
                           double ev_mi_per_kwh) {
    if (extra_pv_kw < 0.0 || specific_yield_kwh_per_kw < 0.0 || ev_mi_per_kwh < 0.0)
        throw std::invalid_argument("solar_driving_range: inputs must be >= 0");
    return extra_pv_kw * specific_yield_kwh_per_kw * ev_mi_per_kwh;
}

std::vector<double> system_cost_series(const CashflowSeries& series) {
    std::vector<double> out;
    out.reserve(series.years.size());
    for (const YearFlow& y : series.years) {
        out.push_back(y.capital_out + y.loan_payment + y.replacement_out + y.om_out -
                      y.interest_tax_shield);
    }
    return out;
}

}  // namespace nzeb
