#include "nzeb/cost_projection.hpp"

#include <cstdlib>
#include <sstream>

namespace nzeb {

namespace {

const char* kHeader = "year,pv_capex_usd_per_w,battery_capex_usd_per_kwh,fixed_om_usd_per_kw_yr";

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

double parse_cell(const std::string& cell, int line_no, const char* column) {
    const char* begin = cell.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0') {
        throw CostTableError("cost table line " + std::to_string(line_no) +
                             ": non-numeric value \"" + cell + "\" in column " + column);
    }
    return v;
}

}  // namespace

CostTrajectory::CostTrajectory(std::vector<CostRow> rows) : rows_(std::move(rows)) {
    if (rows_.size() < 2) throw CostTableError("cost table: at least 2 rows required");
    for (size_t i = 0; i + 1 < rows_.size(); ++i) {
        if (rows_[i + 1].year <= rows_[i].year) {
            throw CostTableError("cost table: years must be strictly increasing (row with year " +
                                 std::to_string(rows_[i + 1].year) + " follows " +
                                 std::to_string(rows_[i].year) + ")");
        }
    }
    for (const CostRow& r : rows_) {
        if (r.pv_capex_usd_per_w < 0.0 || r.battery_capex_usd_per_kwh < 0.0 ||
            r.fixed_om_usd_per_kw_yr < 0.0) {
            throw CostTableError("cost table: negative cost in year " + std::to_string(r.year));
        }
    }
}

CostTrajectory load_cost_table(const std::string& csv_text) {
    std::istringstream in(csv_text);
    std::string line;
    int line_no = 0;
    std::vector<CostRow> rows;

    if (!std::getline(in, line)) throw CostTableError("cost table: empty input");
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kHeader) {
        throw CostTableError(std::string("cost table line 1: header must be exactly \"") +
                             kHeader + "\"");
    }

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;  // tolerate a trailing blank line
        std::vector<std::string> cells = split_csv_line(line);
        if (cells.size() != 4) {
            throw CostTableError("cost table line " + std::to_string(line_no) + ": expected 4 columns, got " +
                                 std::to_string(cells.size()));
        }
        CostRow row;
        double year = parse_cell(cells[0], line_no, "year");
        row.year = static_cast<int>(year);
        if (static_cast<double>(row.year) != year) {
            throw CostTableError("cost table line " + std::to_string(line_no) +
                                 ": year must be an integer, got \"" + cells[0] + "\"");
        }
        row.pv_capex_usd_per_w = parse_cell(cells[1], line_no, "pv_capex_usd_per_w");
        row.battery_capex_usd_per_kwh = parse_cell(cells[2], line_no, "battery_capex_usd_per_kwh");
        row.fixed_om_usd_per_kw_yr = parse_cell(cells[3], line_no, "fixed_om_usd_per_kw_yr");

        if (!rows.empty() && row.year == rows.back().year) {
            throw CostTableError("cost table line " + std::to_string(line_no) +
                                 ": duplicate year " + std::to_string(row.year));
        }
        if (!rows.empty() && row.year < rows.back().year) {
            throw CostTableError("cost table line " + std::to_string(line_no) +
                                 ": years must be strictly increasing, year " +
                                 std::to_string(row.year) + " follows " +
                                 std::to_string(rows.back().year));
        }
        if (row.pv_capex_usd_per_w < 0.0 || row.battery_capex_usd_per_kwh < 0.0 ||
            row.fixed_om_usd_per_kw_yr < 0.0) {
            throw CostTableError("cost table line " + std::to_string(line_no) + ": negative cost");
        }
        rows.push_back(row);
    }
    if (rows.size() < 2) throw CostTableError("cost table: at least 2 rows required");
    return CostTrajectory(std::move(rows));
}

double capex_at(const CostTrajectory& t, int year, CostComponent component) {
    auto pick = [component](const CostRow& r) {
        switch (component) {
            case CostComponent::pv: return r.pv_capex_usd_per_w;
            case CostComponent::battery: return r.battery_capex_usd_per_kwh;
            case CostComponent::om: return r.fixed_om_usd_per_kw_yr;
        }
        return 0.0;
    };
    const std::vector<CostRow>& rows = t.rows();
    if (year <= rows.front().year) return pick(rows.front());
    if (year >= rows.back().year) return pick(rows.back());
    for (size_t i = 0; i + 1 < rows.size(); ++i) {
        if (year >= rows[i].year && year <= rows[i + 1].year) {
            double w = static_cast<double>(year - rows[i].year) /
                       static_cast<double>(rows[i + 1].year - rows[i].year);
            return pick(rows[i]) * (1.0 - w) + pick(rows[i + 1]) * w;
        }
    }
    return pick(rows.back());  // unreachable for a valid trajectory
}

}  // namespace nzeb
