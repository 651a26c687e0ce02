#pragma once

#include <string>
#include <vector>

#include "nzeb/cost_projection.hpp"
#include "nzeb/scenario.hpp"

namespace nzeb {

// Fisher identity: (1 + nominal) / (1 + inflation) - 1.
double real_rate(double nominal, double inflation);

// Upfront capital reduction; returns capex unchanged when disabled.
double apply_itc(double capex, double itc_rate, bool enabled);

struct AmortizationRow {
    double payment = 0.0;
    double interest_portion = 0.0;
    double principal_portion = 0.0;
    double remaining_balance = 0.0;
};

// Level annual payments in nominal dollars. Period k (1-based) is paid at
// the end of year k.
struct AmortizationSchedule {
    double principal = 0.0;
    double annual_rate = 0.0;
    double payment = 0.0;
    std::vector<AmortizationRow> rows;
};

// payment = principal * r / (1 - (1+r)^-n); r = 0 degenerates to principal/n.
// Throws std::domain_error for rates at or below -100%.
AmortizationSchedule amortization_schedule(double principal, double annual_rate, int term_yr);

// One year of the series. All amounts are real 2020 USD, stored as positive
// magnitudes; net() applies the sign convention (credits - costs).
struct YearFlow {
    int year_offset = 0;
    double capital_out = 0.0;           // down payment at t=0 only
    double loan_payment = 0.0;
    double interest_tax_shield = 0.0;   // credit
    double replacement_out = 0.0;
    double om_out = 0.0;
    double grid_purchase = 0.0;
    double export_credit = 0.0;         // credit
    double gasoline_offset = 0.0;       // credit: avoided gasoline net of charging

    double net() const {
        return interest_tax_shield + export_credit + gasoline_offset
             - capital_out - loan_payment - replacement_out - om_out - grid_purchase;
    }
};

struct CapitalBreakdown {
    double pv_usd = 0.0;
    double inverter_usd = 0.0;
    double battery_usd = 0.0;
    double charger_usd = 0.0;
    double gross_usd = 0.0;
    double itc_reduction_usd = 0.0;
    double net_usd = 0.0;
    double down_payment_usd = 0.0;
    double loan_principal_usd = 0.0;
    double loan_payment_nominal_usd = 0.0;
};

struct CashflowSeries {
    int install_year = 0;
    std::vector<YearFlow> years;            // length == analysis_period_yr
    CapitalBreakdown capital;
    std::vector<std::string> warnings;
};

// Builds the full real-dollar series for one install year:
//  - t=0 capital is the down payment on net (post-ITC) system cost; the rest
//    is financed at loan_rate over loan_term_yr, payments at t = 1..term;
//  - interest is tax-deductible at the marginal rate when enabled, deflated
//    to real dollars;
//  - battery and inverter replacements are repurchased outright at the
//    trajectory cost of their calendar year (no ITC on replacements);
//  - grid purchases cover consumption the system does not serve; with
//    storage_fraction = 1 (or a V2H battery at least the reference size) the
//    home is grid independent by construction;
//  - V2H prices the bidirectional charger instead of a wall battery, and
//    annual_ev_miles > 0 adds the avoided-gasoline credit net of charging
//    cost (tariff override, else marginal PV levelized cost).
// An install year outside the trajectory range is clamped and recorded in
// warnings.
CashflowSeries cashflow_series(const Scenario& s, int install_year, const CostTrajectory& t);

// Sum of net_t / (1+r)^t over the whole series; year offset 0 undiscounted.
double npv(const CashflowSeries& series, double real_discount);
double npv(const std::vector<double>& net_flows, double real_discount);

// Present value of 1 paid at each year offset 0 .. n-1.
double annuity_factor(double rate, int n);

// NPV over the first service_yr years, converted to the equivalent level
// annual amount at real_discount, divided by 12. Negative means net cost.
double levelize_monthly(const CashflowSeries& series, double real_discount, int service_yr);

// Discounted per-kWh cost of standalone PV capacity installed in a given
// year (capex + inverter + O&M + inverter replacement over the service time,
// net of financing effects, divided by discounted output). Used as the
// default EV charging price.
double marginal_pv_lcoe(const Scenario& s, int install_year, const CostTrajectory& t);

}  // namespace nzeb
