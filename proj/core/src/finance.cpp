#include "nzeb/finance.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nzeb/production.hpp"

namespace nzeb {

double real_rate(double nominal, double inflation) {
    if (inflation <= -1.0) throw std::domain_error("real_rate: inflation must be > -100%");
    return (1.0 + nominal) / (1.0 + inflation) - 1.0;
}

double apply_itc(double capex, double itc_rate, bool enabled) {
    if (capex < 0.0) throw std::invalid_argument("apply_itc: capex must be >= 0");
    return enabled ? capex * (1.0 - itc_rate) : capex;
}

AmortizationSchedule amortization_schedule(double principal, double annual_rate, int term_yr) {
    if (principal < 0.0) throw std::invalid_argument("amortization_schedule: principal must be >= 0");
    if (term_yr < 1) throw std::invalid_argument("amortization_schedule: term must be >= 1 yr");
    if (annual_rate <= -1.0)
        throw std::domain_error("amortization_schedule: rate must be > -100%");

    AmortizationSchedule sched;
    sched.principal = principal;
    sched.annual_rate = annual_rate;
    if (annual_rate == 0.0) {
        sched.payment = principal / term_yr;
    } else {
        sched.payment = principal * annual_rate / (1.0 - std::pow(1.0 + annual_rate, -term_yr));
    }

    double balance = principal;
    sched.rows.reserve(static_cast<size_t>(term_yr));
    for (int k = 0; k < term_yr; ++k) {
        AmortizationRow row;
        row.payment = sched.payment;
        row.interest_portion = balance * annual_rate;
        row.principal_portion = row.payment - row.interest_portion;
        balance -= row.principal_portion;
        row.remaining_balance = balance;
        sched.rows.push_back(row);
    }
    return sched;
}

namespace {

// Fractional storage service the system provides. V2H substitutes the EV
// battery for the wall battery; at or above the reference nameplate it
// covers the full load, same as storage_fraction = 1.
double effective_storage_fraction(const Scenario& s) {
    if (s.system.pv_kw <= 0.0) return 0.0;  // nothing to charge from
    if (s.system.v2h) {
        if (s.system.battery_nameplate_kwh <= 0.0) return 1.0;
        return std::min(1.0, s.system.v2h->ev_battery_kwh / s.system.battery_nameplate_kwh);
    }
    return s.system.storage_fraction;
}

}  // namespace

CashflowSeries cashflow_series(const Scenario& s, int install_year, const CostTrajectory& t) {
    const FinancialParams& fin = s.finance;
    const int n = fin.analysis_period_yr;

    CashflowSeries series;
    series.install_year = install_year;
    series.years.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) series.years[static_cast<size_t>(i)].year_offset = i;

    if (!t.covers(install_year)) {
        series.warnings.push_back("install year " + std::to_string(install_year) +
                                  " outside cost table range " + std::to_string(t.first_year()) +
                                  "-" + std::to_string(t.last_year()) + "; costs clamped");
    }

    const bool v2h = s.system.v2h.has_value();
    const double wall_battery_kwh =
        v2h ? 0.0 : s.system.battery_nameplate_kwh * s.system.storage_fraction;
    const double pv_w = s.system.pv_kw * 1000.0;

    // Capital at t = 0, financed after the ITC reduction.
    CapitalBreakdown& cap = series.capital;
    cap.pv_usd = pv_w * capex_at(t, install_year, CostComponent::pv);
    cap.inverter_usd = pv_w * s.system.inverter_cost_usd_per_w;
    cap.battery_usd = wall_battery_kwh * capex_at(t, install_year, CostComponent::battery);
    cap.charger_usd = v2h ? s.system.v2h->charger_cost_usd : 0.0;
    cap.gross_usd = cap.pv_usd + cap.inverter_usd + cap.battery_usd + cap.charger_usd;
    cap.net_usd = apply_itc(cap.gross_usd, fin.itc_rate, s.itc_enabled);
    cap.itc_reduction_usd = cap.gross_usd - cap.net_usd;
    cap.down_payment_usd = fin.down_payment_fraction * cap.net_usd;
    cap.loan_principal_usd = cap.net_usd - cap.down_payment_usd;

    series.years[0].capital_out = cap.down_payment_usd;

    // Loan arithmetic is nominal; payments and the interest tax shield are
    // deflated back to real dollars at the year they fall in.
    if (cap.loan_principal_usd > 0.0) {
        AmortizationSchedule loan =
            amortization_schedule(cap.loan_principal_usd, fin.loan_rate, fin.loan_term_yr);
        cap.loan_payment_nominal_usd = loan.payment;
        for (int k = 1; k <= fin.loan_term_yr && k < n; ++k) {
            double deflator = std::pow(1.0 + fin.inflation, k);
            YearFlow& y = series.years[static_cast<size_t>(k)];
            y.loan_payment = loan.payment / deflator;
            if (fin.interest_deductible) {
                y.interest_tax_shield =
                    fin.marginal_tax_rate * loan.rows[static_cast<size_t>(k - 1)].interest_portion / deflator;
            }
        }
    }

    // Replacements repurchased outright at that calendar year's cost.
    if (wall_battery_kwh > 0.0) {
        for (int off : replacement_years(s.system.battery_life_yr, n)) {
            series.years[static_cast<size_t>(off)].replacement_out +=
                wall_battery_kwh * capex_at(t, install_year + off, CostComponent::battery);
        }
    }
    if (pv_w > 0.0) {
        for (int off : replacement_years(s.system.inverter_life_yr, n)) {
            series.years[static_cast<size_t>(off)].replacement_out +=
                pv_w * s.system.inverter_cost_usd_per_w;
        }
    }

    for (int i = 0; i < n; ++i) {
        series.years[static_cast<size_t>(i)].om_out =
            s.system.pv_kw * capex_at(t, install_year + i, CostComponent::om);
    }

    // Annual energy accounting. The effective-storage abstraction makes the
    // served share of consumption definitional: a net-zero-sized system with
    // storage_fraction = 1 buys nothing from the grid, and PV degradation
    // shows up only in the exportable surplus.
    const double consumption = s.home.annual_consumption_kwh * (1.0 - s.improvement_fraction);
    const double served = effective_storage_fraction(s) * consumption;

    double ev_charge_kwh = 0.0;
    double gasoline_offset = 0.0;
    if (v2h && s.annual_ev_miles > 0.0) {
        double ev_mi_per_kwh = ev_efficiency(s.system.v2h->ev_range_mi, s.system.v2h->ev_battery_kwh);
        if (ev_mi_per_kwh <= 0.0)
            throw std::domain_error("cashflow_series: EV efficiency must be positive when driving");
        if (s.tariff.gasoline_mpg <= 0.0)
            throw std::domain_error("cashflow_series: gasoline_mpg must be positive when annual_ev_miles > 0");
        ev_charge_kwh = s.annual_ev_miles / ev_mi_per_kwh;
        double charge_price = s.tariff.ev_charge_price_usd_per_kwh
                                  ? *s.tariff.ev_charge_price_usd_per_kwh
                                  : marginal_pv_lcoe(s, install_year, t);
        double gas_cost = s.annual_ev_miles / s.tariff.gasoline_mpg * s.tariff.gasoline_price_usd_per_gal;
        double ev_cost = ev_charge_kwh * charge_price;
        gasoline_offset = gas_cost - ev_cost;
    }

    for (int i = 0; i < n; ++i) {
        YearFlow& y = series.years[static_cast<size_t>(i)];
        double esc = std::pow(1.0 + fin.real_elec_escalation, i);
        double production = pv_energy_year(s.system.pv_kw, s.home.specific_yield_kwh_per_kw,
                                           s.system.pv_degradation_per_yr, i);
        y.grid_purchase = (consumption - served) * s.tariff.retail_price_usd_per_kwh * esc;
        double surplus = std::max(0.0, production - served - ev_charge_kwh);
        y.export_credit = surplus * s.tariff.export_credit_usd_per_kwh * esc;
        y.gasoline_offset = gasoline_offset;
    }

    return series;
}

double npv(const CashflowSeries& series, double real_discount) {
    double sum = 0.0;
    for (const YearFlow& y : series.years) {
        sum += y.net() / std::pow(1.0 + real_discount, y.year_offset);
    }
    return sum;
}

double npv(const std::vector<double>& net_flows, double real_discount) {
    double sum = 0.0;
    for (size_t t = 0; t < net_flows.size(); ++t) {
        sum += net_flows[t] / std::pow(1.0 + real_discount, static_cast<double>(t));
    }
    return sum;
}

double annuity_factor(double rate, int n) {
    if (n < 1) throw std::invalid_argument("annuity_factor: n must be >= 1");
    // Payments at offsets 0..n-1, matching the series convention so a flat
    // stream levelizes to itself.
    double sum = 0.0;
    for (int t = 0; t < n; ++t) sum += std::pow(1.0 + rate, -t);
    return sum;
}

double levelize_monthly(const CashflowSeries& series, double real_discount, int service_yr) {
    if (service_yr < 1 || static_cast<size_t>(service_yr) > series.years.size())
        throw std::invalid_argument("levelize_monthly: service time must be within the series length");
    double sum = 0.0;
    for (int t = 0; t < service_yr; ++t) {
        sum += series.years[static_cast<size_t>(t)].net() / std::pow(1.0 + real_discount, t);
    }
    return sum / annuity_factor(real_discount, service_yr) / 12.0;
}

double marginal_pv_lcoe(const Scenario& s, int install_year, const CostTrajectory& t) {
    // Standalone 1 kW of PV under the scenario's financing; grid and driving
    // flows do not exist for it, so its series is pure system cost.
    Scenario pv_only = s;
    pv_only.system.pv_kw = 1.0;
    pv_only.system.battery_nameplate_kwh = 0.0;
    pv_only.system.storage_fraction = 0.0;
    pv_only.system.v2h.reset();
    pv_only.annual_ev_miles = 0.0;
    pv_only.improvement_fraction = 0.0;
    pv_only.home.annual_consumption_kwh = 1.0;  // irrelevant, kept positive

    CashflowSeries series = cashflow_series(pv_only, install_year, t);
    const double r = s.finance.real_discount;
    double cost = 0.0;
    double energy = 0.0;
    for (int i = 0; i < s.finance.service_time_yr; ++i) {
        const YearFlow& y = series.years[static_cast<size_t>(i)];
        double d = std::pow(1.0 + r, i);
        cost += (y.capital_out + y.loan_payment + y.replacement_out + y.om_out -
                 y.interest_tax_shield) / d;
        energy += pv_energy_year(1.0, s.home.specific_yield_kwh_per_kw,
                                 s.system.pv_degradation_per_yr, i) / d;
    }
    if (energy <= 0.0) throw std::domain_error("marginal_pv_lcoe: zero discounted energy");
    return cost / energy;
}

}  // namespace nzeb
