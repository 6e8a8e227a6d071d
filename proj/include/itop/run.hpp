#pragma once

#include <string>

namespace itop {

/// One CLI invocation. Scale and grid fields accept "auto"; negative
/// max_scale means auto (largest within-group distance, or largest union
/// distance for the classic and benchmark modes).
struct RunConfig {
    std::string input_path;
    std::string format = "auto";     // xyz | csv | complex | auto (by extension)
    std::string groups_text;         // "C,B;C,H"
    int max_degree = 1;
    double max_scale = -1.0;
    std::string grid_spec = "auto";  // auto | a:b:step | v1,v2,...
    std::string mode = "barcode";    // barcode | spectra | wu | benchmark | classic
    std::string out_dir = ".";
    std::string field = "q";         // q | f2
    double tol = 1e-8;
    std::string pairs_text;          // "a:b,c:d" switches spectra to persistent pairs
};

void cmd_barcode(const RunConfig& cfg);
void cmd_spectra(const RunConfig& cfg);
void cmd_wu(const RunConfig& cfg);
void cmd_benchmark(const RunConfig& cfg);
void cmd_classic(const RunConfig& cfg);

// Dispatches on cfg.mode; throws UsageError for unknown modes.
void run_command(const RunConfig& cfg);

}  // namespace itop
