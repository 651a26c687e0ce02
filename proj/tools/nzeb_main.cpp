#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nzeb/scenario.hpp"
#include "nzeb/sweep.hpp"

namespace {

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"nzeb: 30-year techno-economic sweep for residential PV, battery storage and V2H"};

    nzeb::SweepRequest req;
    std::string variants_csv;
    std::vector<std::string> formats;
    int explain_year = 0;
    bool do_explain = false;

    app.add_option("--scenario", req.scenario_path, "scenario JSON file")->required();
    app.add_option("--costs", req.cost_table_path, "cost trajectory CSV")->required();
    app.add_option("--from", req.start_year, "first install year (default 2020)");
    app.add_option("--to", req.end_year, "last install year (default 2050)");
    app.add_option("--out", req.output_dir, "output directory (default .)");
    std::string variants_help = "comma-separated variant labels (default: all applicable):";
    for (const std::string& label : nzeb::known_variants()) variants_help += " " + label;
    app.add_option("--variants", variants_csv, variants_help);
    app.add_option("--format", formats, "output format: csv and/or plotdata (default csv)");
    app.add_option("--explain", explain_year,
                   "print the cash-flow breakdown for one install year instead of writing files");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return nzeb::kExitInputError;
    }

    req.variants = split_commas(variants_csv);
    if (!formats.empty()) req.formats = formats;
    do_explain = app.count("--explain") > 0;

    if (do_explain) {
        try {
            std::cout << nzeb::explain_run(req, explain_year);
            return nzeb::kExitOk;
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return nzeb::kExitInputError;
        }
    }
    return nzeb::run_sweep(req, std::cerr);
}
