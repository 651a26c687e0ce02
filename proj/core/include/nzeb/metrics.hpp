#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nzeb/cost_projection.hpp"
#include "nzeb/finance.hpp"
#include "nzeb/scenario.hpp"

namespace nzeb {

// Discounted cost over discounted energy, both truncated to service_yr.
// Throws std::domain_error when discounted energy is zero.
double lcoe(const std::vector<double>& cost_usd_per_yr,
            const std::vector<double>& energy_kwh_per_yr,
            double real_discount, int service_yr);

// Electricity price expressed as $/gallon through vehicle efficiencies:
// price * mpg / ev_mi_per_kwh.
double gas_equivalent(double price_usd_per_kwh, double mpg, double ev_mi_per_kwh);

double monthly_grid_bill(double annual_kwh, double price_usd_per_kwh);

struct SavingsPoint {
    int install_year = 0;
    double monthly_savings_usd = 0.0;
    std::string scenario_label;
};

// Levelized monthly saving versus staying on grid electricity, positive when
// the customer saves. The baseline is the same home with no system installed
// (and no efficiency improvement), so a zero system nets exactly zero.
SavingsPoint monthly_savings(const Scenario& s, int install_year, const CostTrajectory& t,
                             std::string label = "");

// First install year with nonnegative savings; nullopt when none. Input must
// be sorted by install_year. Throws std::invalid_argument on an empty list.
std::optional<int> crossover_year(const std::vector<SavingsPoint>& points);

struct DrivingCosts {
    double gas_cost_yr = 0.0;
    double ev_cost_yr = 0.0;
    double savings_yr = 0.0;
    double savings_month = 0.0;
};

DrivingCosts driving_savings(double annual_mi, double mpg, double gas_usd_per_gal,
                             double ev_mi_per_kwh, double elec_usd_per_kwh);

// Dollars leaving the economy: total spend times imported share.
double statewide_outflow(double total_spend_usd, double import_share);

// Annual driving range powered by extra PV capacity.
double solar_driving_range(double extra_pv_kw, double specific_yield_kwh_per_kw,
                           double ev_mi_per_kwh);

// System-cost view of a cashflow series: capital + loan + replacements + O&M
// net of the interest tax shield, excluding grid/export/gasoline flows.
// This is the cost series LCOE is computed from.
std::vector<double> system_cost_series(const CashflowSeries& series);

}  // namespace nzeb
