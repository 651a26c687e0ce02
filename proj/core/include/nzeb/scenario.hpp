#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nzeb {

// All monetary quantities are real 2020 USD unless a name says otherwise.
// Rates are plain fractions per year (0.025, not 2.5).

enum class HomeKind { existing, new_build, improved };

std::string to_string(HomeKind kind);
HomeKind home_kind_from_string(const std::string& s);

struct HomeProfile {
    double annual_consumption_kwh = 13300.0;
    double specific_yield_kwh_per_kw = 1400.0;  // annual PV output per kW installed
    HomeKind home_kind = HomeKind::existing;

    bool operator==(const HomeProfile&) const = default;
};

// Vehicle-to-home option: the EV traction battery stands in for the wall
// battery, coupled through a bidirectional charger. The EV itself is owned
// either way and is not a system cost; only the charger is.
struct V2hSpec {
    double ev_battery_kwh = 68.7;
    double ev_range_mi = 220.0;
    double charger_cost_usd = 6000.0;

    bool operator==(const V2hSpec&) const = default;
};

struct SystemSpec {
    double pv_kw = 9.5;                       // DC nameplate
    double battery_nameplate_kwh = 42.21;     // reference size for grid independence
    double battery_roundtrip_eff = 0.95;
    double battery_degradation_per_yr = 0.035;
    int battery_life_yr = 10;
    double pv_degradation_per_yr = 0.005;
    double inverter_cost_usd_per_w = 0.10;
    int inverter_life_yr = 15;
    double storage_fraction = 1.0;            // installed battery as fraction of reference
    std::optional<V2hSpec> v2h;

    bool operator==(const SystemSpec&) const = default;
};

struct FinancialParams {
    double inflation = 0.025;
    double nominal_discount = 0.045;
    // Derived via the Fisher identity; kept as a field so configs may state it
    // and validate() can flag disagreement with (nominal, inflation).
    double real_discount = 1.045 / 1.025 - 1.0;
    double nominal_elec_escalation = 0.025;
    double real_elec_escalation = 0.0;
    double down_payment_fraction = 0.10;      // 1.0 means cash purchase, no loan
    double loan_rate = 0.045;                 // nominal, defaults to nominal_discount
    int loan_term_yr = 25;
    double marginal_tax_rate = 0.20;
    bool interest_deductible = true;
    double itc_rate = 0.30;
    int analysis_period_yr = 30;
    int service_time_yr = 25;

    bool operator==(const FinancialParams&) const = default;
};

struct GridTariff {
    double retail_price_usd_per_kwh = 0.113;
    double export_credit_usd_per_kwh = 0.113;   // retail net metering by default
    double gasoline_price_usd_per_gal = 3.16;
    double gasoline_mpg = 24.2;
    // Price charged for EV charging energy in driving-cost terms. When unset
    // the engine uses the marginal PV levelized cost of the install year.
    std::optional<double> ev_charge_price_usd_per_kwh;

    bool operator==(const GridTariff&) const = default;
};

struct Scenario {
    HomeProfile home;
    SystemSpec system;
    FinancialParams finance;
    GridTariff tariff;
    bool itc_enabled = true;
    double improvement_fraction = 0.0;   // building efficiency improvement (0 or 0.317)
    double annual_ev_miles = 0.0;

    bool operator==(const Scenario&) const = default;
};

struct Violation {
    std::string field;
    std::string value;
    std::string constraint;

    std::string to_string() const;
};

// Malformed configuration document: bad JSON, unknown key, wrong type,
// missing required block. The message names the offending key.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Structurally valid configuration whose values break type invariants.
// Carries every violation found, not just the first.
class ValidationError : public std::runtime_error {
public:
    ValidationError(std::string what, std::vector<Violation> violations)
        : std::runtime_error(std::move(what)), violations_(std::move(violations)) {}
    const std::vector<Violation>& violations() const { return violations_; }

private:
    std::vector<Violation> violations_;
};

// Parses a JSON scenario document. Only `home` is required; every other key
// defaults to the reference parameter set (see README for the schema).
// Unknown keys are rejected. Throws ConfigError or ValidationError.
Scenario load_scenario(const std::string& document);

// Collects all invariant violations; empty means the scenario is valid.
// Never throws for finite inputs.
std::vector<Violation> validate(const Scenario& s);

// JSON round-trip counterpart of load_scenario.
std::string serialize_scenario(const Scenario& s);

}  // namespace nzeb
