#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nzeb {

// Exit statuses shared by run_sweep and the CLI.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitWriteError = 2;

struct SweepRequest {
    std::string scenario_path;
    std::string cost_table_path;
    int start_year = 2020;
    int end_year = 2050;
    std::string output_dir = ".";
    // "csv" is always produced; adding "plotdata" emits wide pivot tables too.
    std::vector<std::string> formats = {"csv"};
    std::vector<std::string> variants;            // empty selects all applicable
};

// Labels the sweep understands. The *_itc/_noitc suffix toggles the
// investment tax credit; v2h variants need a v2h block in the scenario file.
const std::vector<std::string>& known_variants();

// Runs every (variant, install year) point and writes savings.csv, lcoe.csv
// and crossover.csv into output_dir (plus *_plot.csv pivots when "plotdata"
// is requested). Rows are sorted by scenario_label then install_year and
// formatted with fixed decimals, so identical inputs produce byte-identical
// files. Returns kExitOk, or kExitInputError / kExitWriteError after
// printing a diagnostic to `diag`; partial outputs are removed on failure.
int run_sweep(const SweepRequest& req, std::ostream& diag);

// Human-readable per-year cash-flow breakdown for one install year, for
// every selected variant. Throws the underlying ConfigError/CostTableError/
// ValidationError on bad inputs.
std::string explain_run(const SweepRequest& req, int install_year);

}  // namespace nzeb
