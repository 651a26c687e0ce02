#include "nzeb/sweep.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "nzeb/finance.hpp"
#include "nzeb/metrics.hpp"
#include "nzeb/production.hpp"
#include "nzeb/scenario.hpp"

namespace fs = std::filesystem;

namespace nzeb {

namespace {

struct Variant {
    std::string label;
    bool itc = false;
    double storage_fraction = 1.0;
    bool v2h = false;
};

const std::vector<Variant>& variant_registry() {
    static const std::vector<Variant> table = {
        {"pv_only_noitc", false, 0.0, false},
        {"pv_only_itc", true, 0.0, false},
        {"pv_half_battery_noitc", false, 0.5, false},
        {"pv_half_battery_itc", true, 0.5, false},
        {"pv_battery_noitc", false, 1.0, false},
        {"pv_battery_itc", true, 1.0, false},
        {"v2h_noitc", false, 1.0, true},
        {"v2h_itc", true, 1.0, true},
    };
    return table;
}

Variant variant_by_label(const std::string& label) {
    for (const Variant& v : variant_registry()) {
        if (v.label == label) return v;
    }
    std::string known;
    for (const Variant& v : variant_registry()) known += (known.empty() ? "" : ", ") + v.label;
    throw ConfigError("unknown variant \"" + label + "\" (known: " + known + ")");
}

Scenario apply_variant(const Scenario& base, const Variant& v) {
    Scenario s = base;
    s.itc_enabled = v.itc;
    if (v.v2h) {
        if (!base.system.v2h) {
            throw ConfigError("variant \"" + v.label +
                              "\" needs a system.v2h block in the scenario file");
        }
    } else {
        s.system.v2h.reset();
        s.system.storage_fraction = v.storage_fraction;
    }
    return s;
}

std::vector<Variant> resolve_variants(const SweepRequest& req, const Scenario& base) {
    std::vector<Variant> out;
    if (req.variants.empty()) {
        for (const Variant& v : variant_registry()) {
            if (v.v2h && !base.system.v2h) continue;
            out.push_back(v);
        }
    } else {
        for (const std::string& label : req.variants) out.push_back(variant_by_label(label));
    }
    std::sort(out.begin(), out.end(),
              [](const Variant& a, const Variant& b) { return a.label < b.label; });
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read \"" + path + "\"");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Fixed decimal formatting keeps output byte-identical across runs.
std::string fmt_fixed(double v, int decimals) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    std::string s(buf);
    if (s == "-0.00" || s == "-0.0000") s.erase(0, 1);
    return s;
}
std::string usd(double v) { return fmt_fixed(v, 2); }
std::string rate4(double v) { return fmt_fixed(v, 4); }

double ev_mi_per_kwh_for(const Scenario& s) {
    if (s.system.v2h)
        return ev_efficiency(s.system.v2h->ev_range_mi, s.system.v2h->ev_battery_kwh);
    V2hSpec average_ev;  // reference EV: 220 mi on 68.7 kWh
    return ev_efficiency(average_ev.ev_range_mi, average_ev.ev_battery_kwh);
}

struct SweepResults {
    // label -> per-year values, years ascending
    std::map<std::string, std::vector<SavingsPoint>> savings;
    std::map<std::string, std::vector<std::pair<int, double>>> lcoe_by_label;
    std::vector<std::string> warnings;
};

SweepResults evaluate(const Scenario& base, const CostTrajectory& traj,
                      const std::vector<Variant>& variants, int start_year, int end_year) {
    SweepResults res;
    std::set<std::string> seen_warnings;
    for (const Variant& v : variants) {
        Scenario s = apply_variant(base, v);
        auto& savings_rows = res.savings[v.label];
        auto& lcoe_rows = res.lcoe_by_label[v.label];
        for (int year = start_year; year <= end_year; ++year) {
            CashflowSeries series = cashflow_series(s, year, traj);
            for (const std::string& w : series.warnings) {
                if (seen_warnings.insert(w).second) res.warnings.push_back(w);
            }
            savings_rows.push_back(monthly_savings(s, year, traj, v.label));
            std::vector<double> energy =
                pv_energy_schedule(s.system.pv_kw, s.home.specific_yield_kwh_per_kw,
                                   s.system.pv_degradation_per_yr, s.finance.analysis_period_yr);
            double value = lcoe(system_cost_series(series), energy, s.finance.real_discount,
                                s.finance.service_time_yr);
            lcoe_rows.emplace_back(year, value);
        }
    }
    return res;
}

std::string render_savings_csv(const SweepResults& res) {
    std::string out = "install_year,scenario_label,monthly_savings_usd\n";
    for (const auto& [label, rows] : res.savings) {
        for (const SavingsPoint& p : rows) {
            out += std::to_string(p.install_year) + "," + label + "," +
                   usd(p.monthly_savings_usd) + "\n";
        }
    }
    return out;
}

std::string render_lcoe_csv(const SweepResults& res, const Scenario& base,
                            const std::vector<Variant>& variants) {
    std::string out = "install_year,scenario_label,lcoe_usd_per_kwh,gas_equiv_usd_per_gal\n";
    for (const Variant& v : variants) {
        const auto& rows = res.lcoe_by_label.at(v.label);
        Scenario s = apply_variant(base, v);
        double ev_eff = ev_mi_per_kwh_for(s);
        for (const auto& [year, value] : rows) {
            out += std::to_string(year) + "," + v.label + "," + rate4(value) + "," +
                   rate4(gas_equivalent(value, s.tariff.gasoline_mpg, ev_eff)) + "\n";
        }
    }
    return out;
}

std::string render_crossover_csv(const SweepResults& res) {
    std::string out = "scenario_label,crossover_year\n";
    for (const auto& [label, rows] : res.savings) {
        std::optional<int> year = crossover_year(rows);
        out += label + "," + (year ? std::to_string(*year) : std::string("none")) + "\n";
    }
    return out;
}

std::string render_savings_plot_csv(const SweepResults& res, int start_year, int end_year) {
    std::string out = "install_year";
    for (const auto& [label, rows] : res.savings) out += "," + label;
    out += "\n";
    for (int year = start_year; year <= end_year; ++year) {
        out += std::to_string(year);
        for (const auto& [label, rows] : res.savings) {
            out += "," + usd(rows[static_cast<size_t>(year - start_year)].monthly_savings_usd);
        }
        out += "\n";
    }
    return out;
}

std::string render_lcoe_plot_csv(const SweepResults& res, int start_year, int end_year) {
    std::string out = "install_year";
    for (const auto& [label, rows] : res.lcoe_by_label) out += "," + label;
    out += "\n";
    for (int year = start_year; year <= end_year; ++year) {
        out += std::to_string(year);
        for (const auto& [label, rows] : res.lcoe_by_label) {
            out += "," + rate4(rows[static_cast<size_t>(year - start_year)].second);
        }
        out += "\n";
    }
    return out;
}

// Writes every file to a .tmp sibling first, renaming only after all writes
// succeeded; any failure removes everything produced by this run.
class OutputTransaction {
public:
    explicit OutputTransaction(fs::path dir) : dir_(std::move(dir)) {}

    void add(const std::string& name, const std::string& content) {
        pending_.emplace_back(name, content);
    }

    bool commit(std::ostream& diag) {
        std::vector<fs::path> temps, finals;
        auto cleanup = [&] {
            std::error_code ec;
            for (const fs::path& p : temps) fs::remove(p, ec);
            for (const fs::path& p : finals) fs::remove(p, ec);
        };
        std::error_code ec;
        fs::create_directories(dir_, ec);
        if (ec) {
            diag << "error: cannot create output directory \"" << dir_.string() << "\": "
                 << ec.message() << "\n";
            return false;
        }
        for (const auto& [name, content] : pending_) {
            fs::path tmp = dir_ / (name + ".tmp");
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            out << content;
            out.close();
            if (!out) {
                diag << "error: cannot write \"" << tmp.string() << "\"\n";
                cleanup();
                return false;
            }
            temps.push_back(tmp);
        }
        for (size_t i = 0; i < pending_.size(); ++i) {
            fs::path final_path = dir_ / pending_[i].first;
            fs::rename(temps[i], final_path, ec);
            if (ec) {
                diag << "error: cannot move output into place at \"" << final_path.string()
                     << "\": " << ec.message() << "\n";
                temps.erase(temps.begin(), temps.begin() + static_cast<long>(i));
                cleanup();
                return false;
            }
            finals.push_back(final_path);
        }
        return true;
    }

private:
    fs::path dir_;
    std::vector<std::pair<std::string, std::string>> pending_;
};

}  // namespace

const std::vector<std::string>& known_variants() {
    static const std::vector<std::string> labels = [] {
        std::vector<std::string> out;
        for (const Variant& v : variant_registry()) out.push_back(v.label);
        return out;
    }();
    return labels;
}

int run_sweep(const SweepRequest& req, std::ostream& diag) {
    Scenario base;
    std::optional<CostTrajectory> traj;
    std::vector<Variant> variants;
    bool want_csv = false, want_plot = false;
    try {
        if (req.start_year > req.end_year)
            throw ConfigError("start year must not exceed end year");
        // The three canonical tables are always written; plotdata adds the
        // wide pivots on top.
        want_csv = true;
        for (const std::string& f : req.formats) {
            if (f == "csv") continue;
            else if (f == "plotdata") want_plot = true;
            else throw ConfigError("unknown output format \"" + f + "\" (expected csv or plotdata)");
        }
        base = load_scenario(read_file(req.scenario_path));
        traj = load_cost_table(read_file(req.cost_table_path));
        variants = resolve_variants(req, base);
        if (variants.empty()) throw ConfigError("no variants selected");
    } catch (const std::exception& e) {
        diag << "error: " << e.what() << "\n";
        return kExitInputError;
    }

    SweepResults res;
    try {
        res = evaluate(base, *traj, variants, req.start_year, req.end_year);
    } catch (const std::exception& e) {
        diag << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    for (const std::string& w : res.warnings) diag << "warning: " << w << "\n";

    OutputTransaction txn{fs::path(req.output_dir)};
    if (want_csv) {
        txn.add("savings.csv", render_savings_csv(res));
        txn.add("lcoe.csv", render_lcoe_csv(res, base, variants));
        txn.add("crossover.csv", render_crossover_csv(res));
    }
    if (want_plot) {
        txn.add("savings_plot.csv", render_savings_plot_csv(res, req.start_year, req.end_year));
        txn.add("lcoe_plot.csv", render_lcoe_plot_csv(res, req.start_year, req.end_year));
    }
    if (!txn.commit(diag)) return kExitWriteError;
    return kExitOk;
}

std::string explain_run(const SweepRequest& req, int install_year) {
    Scenario base = load_scenario(read_file(req.scenario_path));
    CostTrajectory traj = load_cost_table(read_file(req.cost_table_path));
    std::vector<Variant> variants = resolve_variants(req, base);

    std::ostringstream out;
    for (const Variant& v : variants) {
        Scenario s = apply_variant(base, v);
        CashflowSeries series = cashflow_series(s, install_year, traj);
        const CapitalBreakdown& cap = series.capital;
        const double r = s.finance.real_discount;

        out << "=== install year " << install_year << ", variant " << v.label << " ===\n";
        for (const std::string& w : series.warnings) out << "warning: " << w << "\n";
        if (cap.pv_usd > 0.0)
            out << "capital: pv " << s.system.pv_kw << " kW  $" << usd(cap.pv_usd) << "\n";
        if (cap.inverter_usd > 0.0)
            out << "capital: inverter  $" << usd(cap.inverter_usd) << "\n";
        if (cap.battery_usd > 0.0)
            out << "capital: battery "
                << s.system.battery_nameplate_kwh * s.system.storage_fraction << " kWh  $"
                << usd(cap.battery_usd) << "\n";
        if (cap.charger_usd > 0.0)
            out << "capital: bidirectional charger  $" << usd(cap.charger_usd) << "\n";
        if (cap.gross_usd > 0.0) {
            out << "capital: gross $" << usd(cap.gross_usd) << ", itc -$"
                << usd(cap.itc_reduction_usd) << ", net $" << usd(cap.net_usd) << "\n";
            out << "financing: down payment $" << usd(cap.down_payment_usd) << ", loan $"
                << usd(cap.loan_principal_usd) << " at " << rate4(s.finance.loan_rate) << " over "
                << s.finance.loan_term_yr << " yr (payment $" << usd(cap.loan_payment_nominal_usd)
                << "/yr nominal)\n";
        } else {
            out << "capital: none\n";
        }
        if (!s.system.v2h && s.system.battery_nameplate_kwh * s.system.storage_fraction > 0.0) {
            for (int off : replacement_years(s.system.battery_life_yr, s.finance.analysis_period_yr))
                out << "replacement: battery at +" << off << " (" << install_year + off << ")  $"
                    << usd(s.system.battery_nameplate_kwh * s.system.storage_fraction *
                           capex_at(traj, install_year + off, CostComponent::battery))
                    << "\n";
        }
        if (s.system.pv_kw > 0.0) {
            for (int off : replacement_years(s.system.inverter_life_yr, s.finance.analysis_period_yr))
                out << "replacement: inverter at +" << off << " (" << install_year + off << ")  $"
                    << usd(s.system.pv_kw * 1000.0 * s.system.inverter_cost_usd_per_w) << "\n";
        }

        out << "   t   year    capital       loan     shield       repl         om"
               "       grid     export   gasoline        net\n";
        for (const YearFlow& y : series.years) {
            char line[256];
            std::snprintf(line, sizeof line,
                          "%4d %6d %10.2f %10.2f %10.2f %10.2f %10.2f %10.2f %10.2f %10.2f %10.2f\n",
                          y.year_offset, install_year + y.year_offset, y.capital_out,
                          y.loan_payment, y.interest_tax_shield, y.replacement_out, y.om_out,
                          y.grid_purchase, y.export_credit, y.gasoline_offset, y.net());
            out << line;
        }

        SavingsPoint sp = monthly_savings(s, install_year, traj, v.label);
        out << "npv over " << s.finance.analysis_period_yr << " yr at " << rate4(r) << ": $"
            << usd(npv(series, r)) << "\n";
        out << "levelized monthly over " << s.finance.service_time_yr << " yr: $"
            << usd(levelize_monthly(series, r, s.finance.service_time_yr)) << "\n";
        out << "baseline grid bill: $"
            << usd(monthly_grid_bill(s.home.annual_consumption_kwh,
                                     s.tariff.retail_price_usd_per_kwh))
            << "/month\n";
        out << "monthly savings: $" << usd(sp.monthly_savings_usd) << "\n\n";
    }
    return out.str();
}

}  // namespace nzeb
