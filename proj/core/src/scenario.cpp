#include "nzeb/scenario.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include <json.hpp>

#include "nzeb/finance.hpp"
#include "nzeb/sizing.hpp"

namespace nzeb {

using nlohmann::json;

std::string to_string(HomeKind kind) {
    switch (kind) {
        case HomeKind::existing: return "existing";
        case HomeKind::new_build: return "new";
        case HomeKind::improved: return "improved";
    }
    return "existing";
}

HomeKind home_kind_from_string(const std::string& s) {
    if (s == "existing") return HomeKind::existing;
    if (s == "new") return HomeKind::new_build;
    if (s == "improved") return HomeKind::improved;
    throw ConfigError("home.home_kind: expected one of \"existing\", \"new\", \"improved\", got \"" + s + "\"");
}

std::string Violation::to_string() const {
    return field + " = " + value + " violates: " + constraint;
}

namespace {

std::string fmt_num(double v) {
    std::ostringstream ss;
    ss << v;
    return ss.str();
}

// Unknown keys are rejected so a typo cannot silently fall back to a default.
void check_keys(const json& obj, const std::string& path, const std::set<std::string>& allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!allowed.count(it.key())) {
            throw ConfigError("unknown key \"" + (path.empty() ? it.key() : path + "." + it.key()) + "\"");
        }
    }
}

double get_number(const json& obj, const std::string& path, const char* key, double fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number()) {
        throw ConfigError(path + "." + key + ": expected a number");
    }
    return v.get<double>();
}

int get_int(const json& obj, const std::string& path, const char* key, int fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number_integer()) {
        throw ConfigError(path + "." + key + ": expected an integer");
    }
    return v.get<int>();
}

bool get_bool(const json& obj, const std::string& path, const char* key, bool fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_boolean()) {
        throw ConfigError(path + "." + key + ": expected a boolean");
    }
    return v.get<bool>();
}

const json& get_object(const json& obj, const char* key) {
    const json& v = obj.at(key);
    if (!v.is_object()) throw ConfigError(std::string(key) + ": expected an object");
    return v;
}

}  // namespace

Scenario load_scenario(const std::string& document) {
    json doc;
    try {
        doc = json::parse(document);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("malformed config: top level must be a JSON object");

    check_keys(doc, "", {"home", "system", "finance", "tariff", "flags"});

    Scenario s;

    if (!doc.contains("home")) {
        std::vector<Violation> v{{"home", "(absent)", "home profile is required"}};
        throw ValidationError("scenario validation failed: missing home profile", v);
    }
    {
        const json& h = get_object(doc, "home");
        check_keys(h, "home", {"annual_consumption_kwh", "specific_yield_kwh_per_kw", "home_kind"});
        s.home.annual_consumption_kwh =
            get_number(h, "home", "annual_consumption_kwh", s.home.annual_consumption_kwh);
        s.home.specific_yield_kwh_per_kw =
            get_number(h, "home", "specific_yield_kwh_per_kw", s.home.specific_yield_kwh_per_kw);
        if (h.contains("home_kind")) {
            if (!h.at("home_kind").is_string()) throw ConfigError("home.home_kind: expected a string");
            s.home.home_kind = home_kind_from_string(h.at("home_kind").get<std::string>());
        }
    }

    if (doc.contains("system")) {
        const json& sys = get_object(doc, "system");
        check_keys(sys, "system",
                   {"pv_kw", "battery_nameplate_kwh", "battery_roundtrip_eff",
                    "battery_degradation_per_yr", "battery_life_yr", "pv_degradation_per_yr",
                    "inverter_cost_usd_per_w", "inverter_life_yr", "storage_fraction", "v2h"});
        s.system.pv_kw = get_number(sys, "system", "pv_kw", s.system.pv_kw);
        s.system.battery_nameplate_kwh =
            get_number(sys, "system", "battery_nameplate_kwh", s.system.battery_nameplate_kwh);
        s.system.battery_roundtrip_eff =
            get_number(sys, "system", "battery_roundtrip_eff", s.system.battery_roundtrip_eff);
        s.system.battery_degradation_per_yr =
            get_number(sys, "system", "battery_degradation_per_yr", s.system.battery_degradation_per_yr);
        s.system.battery_life_yr = get_int(sys, "system", "battery_life_yr", s.system.battery_life_yr);
        s.system.pv_degradation_per_yr =
            get_number(sys, "system", "pv_degradation_per_yr", s.system.pv_degradation_per_yr);
        s.system.inverter_cost_usd_per_w =
            get_number(sys, "system", "inverter_cost_usd_per_w", s.system.inverter_cost_usd_per_w);
        s.system.inverter_life_yr = get_int(sys, "system", "inverter_life_yr", s.system.inverter_life_yr);
        s.system.storage_fraction = get_number(sys, "system", "storage_fraction", s.system.storage_fraction);
        if (sys.contains("v2h")) {
            const json& v = sys.at("v2h");
            if (!v.is_object()) throw ConfigError("system.v2h: expected an object");
            check_keys(v, "system.v2h", {"ev_battery_kwh", "ev_range_mi", "charger_cost_usd"});
            V2hSpec v2h;
            v2h.ev_battery_kwh = get_number(v, "system.v2h", "ev_battery_kwh", v2h.ev_battery_kwh);
            v2h.ev_range_mi = get_number(v, "system.v2h", "ev_range_mi", v2h.ev_range_mi);
            v2h.charger_cost_usd = get_number(v, "system.v2h", "charger_cost_usd", v2h.charger_cost_usd);
            s.system.v2h = v2h;
        }
    }

    if (doc.contains("finance")) {
        const json& f = get_object(doc, "finance");
        check_keys(f, "finance",
                   {"inflation", "nominal_discount", "real_discount", "nominal_elec_escalation",
                    "real_elec_escalation", "down_payment_fraction", "loan_rate", "loan_term_yr",
                    "marginal_tax_rate", "interest_deductible", "itc_rate", "analysis_period_yr",
                    "service_time_yr"});
        s.finance.inflation = get_number(f, "finance", "inflation", s.finance.inflation);
        s.finance.nominal_discount = get_number(f, "finance", "nominal_discount", s.finance.nominal_discount);
        s.finance.nominal_elec_escalation =
            get_number(f, "finance", "nominal_elec_escalation", s.finance.nominal_elec_escalation);
        s.finance.real_elec_escalation =
            get_number(f, "finance", "real_elec_escalation", s.finance.real_elec_escalation);
        s.finance.down_payment_fraction =
            get_number(f, "finance", "down_payment_fraction", s.finance.down_payment_fraction);
        // Loan terms follow the discount assumptions unless stated.
        s.finance.loan_rate = get_number(f, "finance", "loan_rate", s.finance.nominal_discount);
        s.finance.marginal_tax_rate = get_number(f, "finance", "marginal_tax_rate", s.finance.marginal_tax_rate);
        s.finance.interest_deductible = get_bool(f, "finance", "interest_deductible", s.finance.interest_deductible);
        s.finance.itc_rate = get_number(f, "finance", "itc_rate", s.finance.itc_rate);
        s.finance.analysis_period_yr = get_int(f, "finance", "analysis_period_yr", s.finance.analysis_period_yr);
        s.finance.service_time_yr = get_int(f, "finance", "service_time_yr", s.finance.service_time_yr);
        s.finance.loan_term_yr = get_int(f, "finance", "loan_term_yr", s.finance.service_time_yr);
        // The engine stores nominal + inflation and derives the real rate;
        // a stated real_discount is kept and cross-checked by validate().
        s.finance.real_discount = get_number(f, "finance", "real_discount",
                                             real_rate(s.finance.nominal_discount, s.finance.inflation));
    } else {
        s.finance.real_discount = real_rate(s.finance.nominal_discount, s.finance.inflation);
    }

    if (doc.contains("tariff")) {
        const json& t = get_object(doc, "tariff");
        check_keys(t, "tariff",
                   {"retail_price_usd_per_kwh", "export_credit_usd_per_kwh",
                    "gasoline_price_usd_per_gal", "gasoline_mpg", "ev_charge_price_usd_per_kwh"});
        s.tariff.retail_price_usd_per_kwh =
            get_number(t, "tariff", "retail_price_usd_per_kwh", s.tariff.retail_price_usd_per_kwh);
        s.tariff.export_credit_usd_per_kwh =
            get_number(t, "tariff", "export_credit_usd_per_kwh", s.tariff.retail_price_usd_per_kwh);
        s.tariff.gasoline_price_usd_per_gal =
            get_number(t, "tariff", "gasoline_price_usd_per_gal", s.tariff.gasoline_price_usd_per_gal);
        s.tariff.gasoline_mpg = get_number(t, "tariff", "gasoline_mpg", s.tariff.gasoline_mpg);
        if (t.contains("ev_charge_price_usd_per_kwh")) {
            if (!t.at("ev_charge_price_usd_per_kwh").is_number())
                throw ConfigError("tariff.ev_charge_price_usd_per_kwh: expected a number");
            s.tariff.ev_charge_price_usd_per_kwh = t.at("ev_charge_price_usd_per_kwh").get<double>();
        }
    }

    if (doc.contains("flags")) {
        const json& fl = get_object(doc, "flags");
        check_keys(fl, "flags", {"itc_enabled", "improvement_fraction", "annual_ev_miles"});
        s.itc_enabled = get_bool(fl, "flags", "itc_enabled", s.itc_enabled);
        s.improvement_fraction = get_number(fl, "flags", "improvement_fraction", s.improvement_fraction);
        s.annual_ev_miles = get_number(fl, "flags", "annual_ev_miles", s.annual_ev_miles);
    }

    std::vector<Violation> violations = validate(s);
    if (!violations.empty()) {
        std::string msg = "scenario validation failed:";
        for (const Violation& v : violations) msg += "\n  - " + v.to_string();
        throw ValidationError(msg, std::move(violations));
    }
    return s;
}

std::vector<Violation> validate(const Scenario& s) {
    std::vector<Violation> out;
    auto flag = [&out](const std::string& field, double value, const std::string& constraint) {
        out.push_back({field, fmt_num(value), constraint});
    };

    auto finite = [&](const char* field, double v) {
        if (!std::isfinite(v)) {
            out.push_back({field, fmt_num(v), "must be finite"});
            return false;
        }
        return true;
    };

    // home
    if (finite("home.annual_consumption_kwh", s.home.annual_consumption_kwh) &&
        s.home.annual_consumption_kwh <= 0.0)
        flag("home.annual_consumption_kwh", s.home.annual_consumption_kwh, "must be > 0");
    if (finite("home.specific_yield_kwh_per_kw", s.home.specific_yield_kwh_per_kw) &&
        (s.home.specific_yield_kwh_per_kw < 500.0 || s.home.specific_yield_kwh_per_kw > 2500.0))
        flag("home.specific_yield_kwh_per_kw", s.home.specific_yield_kwh_per_kw,
             "must be within 500-2500 kWh/kW/yr");

    // system
    if (finite("system.pv_kw", s.system.pv_kw) && s.system.pv_kw < 0.0)
        flag("system.pv_kw", s.system.pv_kw, "must be >= 0");
    if (finite("system.battery_nameplate_kwh", s.system.battery_nameplate_kwh) &&
        s.system.battery_nameplate_kwh < 0.0)
        flag("system.battery_nameplate_kwh", s.system.battery_nameplate_kwh, "must be >= 0");
    if (finite("system.battery_roundtrip_eff", s.system.battery_roundtrip_eff) &&
        (s.system.battery_roundtrip_eff <= 0.0 || s.system.battery_roundtrip_eff > 1.0))
        flag("system.battery_roundtrip_eff", s.system.battery_roundtrip_eff, "must be in (0, 1]");
    if (finite("system.battery_degradation_per_yr", s.system.battery_degradation_per_yr) &&
        (s.system.battery_degradation_per_yr < 0.0 || s.system.battery_degradation_per_yr >= 1.0))
        flag("system.battery_degradation_per_yr", s.system.battery_degradation_per_yr,
             "must be in [0, 1)");
    if (s.system.battery_life_yr < 1)
        flag("system.battery_life_yr", s.system.battery_life_yr, "must be >= 1 yr");
    if (finite("system.pv_degradation_per_yr", s.system.pv_degradation_per_yr) &&
        (s.system.pv_degradation_per_yr < 0.0 || s.system.pv_degradation_per_yr >= 1.0))
        flag("system.pv_degradation_per_yr", s.system.pv_degradation_per_yr, "must be in [0, 1)");
    if (finite("system.inverter_cost_usd_per_w", s.system.inverter_cost_usd_per_w) &&
        s.system.inverter_cost_usd_per_w < 0.0)
        flag("system.inverter_cost_usd_per_w", s.system.inverter_cost_usd_per_w, "must be >= 0");
    if (s.system.inverter_life_yr < 1)
        flag("system.inverter_life_yr", s.system.inverter_life_yr, "must be >= 1 yr");
    if (finite("system.storage_fraction", s.system.storage_fraction) &&
        (s.system.storage_fraction < 0.0 || s.system.storage_fraction > 1.0))
        flag("system.storage_fraction", s.system.storage_fraction, "must be in [0, 1]");
    if (s.system.v2h) {
        if (finite("system.v2h.ev_battery_kwh", s.system.v2h->ev_battery_kwh) &&
            s.system.v2h->ev_battery_kwh <= 0.0)
            flag("system.v2h.ev_battery_kwh", s.system.v2h->ev_battery_kwh, "must be > 0");
        if (finite("system.v2h.ev_range_mi", s.system.v2h->ev_range_mi) &&
            s.system.v2h->ev_range_mi < 0.0)
            flag("system.v2h.ev_range_mi", s.system.v2h->ev_range_mi, "must be >= 0");
        if (finite("system.v2h.charger_cost_usd", s.system.v2h->charger_cost_usd) &&
            s.system.v2h->charger_cost_usd < 0.0)
            flag("system.v2h.charger_cost_usd", s.system.v2h->charger_cost_usd, "must be >= 0");
    }

    // finance
    const FinancialParams& f = s.finance;
    if (finite("finance.inflation", f.inflation) && f.inflation <= -1.0)
        flag("finance.inflation", f.inflation, "must be > -100%");
    if (finite("finance.real_discount", f.real_discount) &&
        finite("finance.nominal_discount", f.nominal_discount) &&
        finite("finance.inflation", f.inflation) && f.inflation > -1.0) {
        double derived = real_rate(f.nominal_discount, f.inflation);
        if (std::fabs(derived - f.real_discount) >= 1e-4)
            flag("finance.real_discount", f.real_discount,
                 "must satisfy (1+nominal)/(1+inflation)-1 within 1e-4 (derived " +
                     fmt_num(derived) + ")");
    }
    if (finite("finance.down_payment_fraction", f.down_payment_fraction) &&
        (f.down_payment_fraction < 0.0 || f.down_payment_fraction > 1.0))
        flag("finance.down_payment_fraction", f.down_payment_fraction, "must be in [0, 1]");
    if (finite("finance.loan_rate", f.loan_rate) && f.loan_rate <= -1.0)
        flag("finance.loan_rate", f.loan_rate, "must be > -100%");
    if (f.loan_term_yr < 1) flag("finance.loan_term_yr", f.loan_term_yr, "must be >= 1 yr");
    if (finite("finance.marginal_tax_rate", f.marginal_tax_rate) &&
        (f.marginal_tax_rate < 0.0 || f.marginal_tax_rate > 1.0))
        flag("finance.marginal_tax_rate", f.marginal_tax_rate, "must be in [0, 1]");
    if (finite("finance.itc_rate", f.itc_rate) && (f.itc_rate < 0.0 || f.itc_rate >= 1.0))
        flag("finance.itc_rate", f.itc_rate, "must be in [0, 1)");
    if (f.analysis_period_yr < 1)
        flag("finance.analysis_period_yr", f.analysis_period_yr, "must be >= 1 yr");
    if (f.service_time_yr < 1)
        flag("finance.service_time_yr", f.service_time_yr, "must be >= 1 yr");
    if (f.analysis_period_yr < f.service_time_yr)
        flag("finance.analysis_period_yr", f.analysis_period_yr,
             "must be >= service_time_yr (" + std::to_string(f.service_time_yr) + ")");

    // tariff
    if (finite("tariff.retail_price_usd_per_kwh", s.tariff.retail_price_usd_per_kwh) &&
        s.tariff.retail_price_usd_per_kwh < 0.0)
        flag("tariff.retail_price_usd_per_kwh", s.tariff.retail_price_usd_per_kwh, "must be >= 0");
    if (finite("tariff.export_credit_usd_per_kwh", s.tariff.export_credit_usd_per_kwh) &&
        s.tariff.export_credit_usd_per_kwh < 0.0)
        flag("tariff.export_credit_usd_per_kwh", s.tariff.export_credit_usd_per_kwh, "must be >= 0");
    if (finite("tariff.gasoline_price_usd_per_gal", s.tariff.gasoline_price_usd_per_gal) &&
        s.tariff.gasoline_price_usd_per_gal < 0.0)
        flag("tariff.gasoline_price_usd_per_gal", s.tariff.gasoline_price_usd_per_gal, "must be >= 0");
    if (finite("tariff.gasoline_mpg", s.tariff.gasoline_mpg) && s.tariff.gasoline_mpg < 0.0)
        flag("tariff.gasoline_mpg", s.tariff.gasoline_mpg, "must be >= 0");

    // flags
    if (finite("flags.improvement_fraction", s.improvement_fraction) &&
        (s.improvement_fraction < 0.0 || s.improvement_fraction >= 1.0))
        flag("flags.improvement_fraction", s.improvement_fraction, "must be in [0, 1)");
    if (finite("flags.annual_ev_miles", s.annual_ev_miles) && s.annual_ev_miles < 0.0)
        flag("flags.annual_ev_miles", s.annual_ev_miles, "must be >= 0");

    // An improved home must carry a system scaled to its reduced consumption.
    // Only PV is checkable: the battery reference is an input, not derived.
    if (s.improvement_fraction > 0.0 && s.improvement_fraction < 1.0 &&
        std::isfinite(s.improvement_fraction) && s.home.specific_yield_kwh_per_kw > 0.0 &&
        std::isfinite(s.system.pv_kw) && std::isfinite(s.home.annual_consumption_kwh)) {
        double expected_pv = s.home.annual_consumption_kwh * (1.0 - s.improvement_fraction) /
                             s.home.specific_yield_kwh_per_kw;
        if (expected_pv > 0.0 &&
            std::fabs(s.system.pv_kw - expected_pv) > 0.005 * expected_pv)
            flag("system.pv_kw", s.system.pv_kw,
                 "improved home must size PV to scaled consumption within 0.5% (expected " +
                     fmt_num(expected_pv) + " kW)");
    }

    return out;
}

std::string serialize_scenario(const Scenario& s) {
    json doc;
    doc["home"] = {{"annual_consumption_kwh", s.home.annual_consumption_kwh},
                   {"specific_yield_kwh_per_kw", s.home.specific_yield_kwh_per_kw},
                   {"home_kind", to_string(s.home.home_kind)}};
    json sys = {{"pv_kw", s.system.pv_kw},
                {"battery_nameplate_kwh", s.system.battery_nameplate_kwh},
                {"battery_roundtrip_eff", s.system.battery_roundtrip_eff},
                {"battery_degradation_per_yr", s.system.battery_degradation_per_yr},
                {"battery_life_yr", s.system.battery_life_yr},
                {"pv_degradation_per_yr", s.system.pv_degradation_per_yr},
                {"inverter_cost_usd_per_w", s.system.inverter_cost_usd_per_w},
                {"inverter_life_yr", s.system.inverter_life_yr},
                {"storage_fraction", s.system.storage_fraction}};
    if (s.system.v2h) {
        sys["v2h"] = {{"ev_battery_kwh", s.system.v2h->ev_battery_kwh},
                      {"ev_range_mi", s.system.v2h->ev_range_mi},
                      {"charger_cost_usd", s.system.v2h->charger_cost_usd}};
    }
    doc["system"] = std::move(sys);
    doc["finance"] = {{"inflation", s.finance.inflation},
                      {"nominal_discount", s.finance.nominal_discount},
                      {"real_discount", s.finance.real_discount},
                      {"nominal_elec_escalation", s.finance.nominal_elec_escalation},
                      {"real_elec_escalation", s.finance.real_elec_escalation},
                      {"down_payment_fraction", s.finance.down_payment_fraction},
                      {"loan_rate", s.finance.loan_rate},
                      {"loan_term_yr", s.finance.loan_term_yr},
                      {"marginal_tax_rate", s.finance.marginal_tax_rate},
                      {"interest_deductible", s.finance.interest_deductible},
                      {"itc_rate", s.finance.itc_rate},
                      {"analysis_period_yr", s.finance.analysis_period_yr},
                      {"service_time_yr", s.finance.service_time_yr}};
    json tariff = {{"retail_price_usd_per_kwh", s.tariff.retail_price_usd_per_kwh},
                   {"export_credit_usd_per_kwh", s.tariff.export_credit_usd_per_kwh},
                   {"gasoline_price_usd_per_gal", s.tariff.gasoline_price_usd_per_gal},
                   {"gasoline_mpg", s.tariff.gasoline_mpg}};
    if (s.tariff.ev_charge_price_usd_per_kwh)
        tariff["ev_charge_price_usd_per_kwh"] = *s.tariff.ev_charge_price_usd_per_kwh;
    doc["tariff"] = std::move(tariff);
    doc["flags"] = {{"itc_enabled", s.itc_enabled},
                    {"improvement_fraction", s.improvement_fraction},
                    {"annual_ev_miles", s.annual_ev_miles}};
    return doc.dump(2);
}

}  // namespace nzeb
