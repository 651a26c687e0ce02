#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace nzeb {

// Per-year capital cost table, real 2020 USD. Loaded from CSV with the exact
// header:
//   year,pv_capex_usd_per_w,battery_capex_usd_per_kwh,fixed_om_usd_per_kw_yr
struct CostRow {
    int year = 0;
    double pv_capex_usd_per_w = 0.0;
    double battery_capex_usd_per_kwh = 0.0;
    double fixed_om_usd_per_kw_yr = 0.0;

    bool operator==(const CostRow&) const = default;
};

enum class CostComponent { pv, battery, om };

class CostTrajectory {
public:
    explicit CostTrajectory(std::vector<CostRow> rows);

    const std::vector<CostRow>& rows() const { return rows_; }
    int first_year() const { return rows_.front().year; }
    int last_year() const { return rows_.back().year; }
    bool covers(int year) const { return year >= first_year() && year <= last_year(); }

private:
    std::vector<CostRow> rows_;
};

class CostTableError : public std::runtime_error {
public:
    explicit CostTableError(const std::string& what) : std::runtime_error(what) {}
};

// Parses CSV text. Errors (missing column, non-numeric cell, duplicate or
// unsorted year, fewer than 2 rows) name the offending line.
CostTrajectory load_cost_table(const std::string& csv_text);

// Linear interpolation between bracketing rows, clamped to the first/last
// row outside the covered range. Node years return the stored value exactly.
double capex_at(const CostTrajectory& t, int year, CostComponent component);

}  // namespace nzeb
