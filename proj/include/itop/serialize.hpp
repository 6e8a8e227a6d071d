#pragma once

#include "itop/homology.hpp"
#include "itop/spectral.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace itop {

struct BenchmarkRow {
    std::string pipeline;
    int degree = 0;
    double seconds = 0.0;
};

// {"degree": p, "bars": [{"birth": x, "death": y | "inf"}, ...]}
nlohmann::json barcode_to_json(const Barcode& bc, int degree);

// Header "degree,birth,death"; infinite deaths serialized as "inf".
std::string barcode_to_csv(const Barcode& bc, int degree);

// Horizontal segment per bar; infinite bars run to the right edge.
std::string barcode_to_svg(const Barcode& bc, int degree, double scale_hint);

// Array of {"t": x | "a": x, "b": y, "degree": p, "nullity": k, "gap": g,
// "eigenvalues": [...]}.
nlohmann::json spectra_to_json(const SpectrumSeries& series);

// Header "t,degree,nullity,gap" (snapshot) or "a,b,degree,nullity,gap".
std::string spectra_to_csv(const SpectrumSeries& series);

// Step plot of the gap over the grid.
std::string spectra_to_svg(const SpectrumSeries& series);

nlohmann::json wu_to_json(const WuReport& report);

// Header "pipeline,degree,seconds".
std::string benchmark_to_csv(const std::vector<BenchmarkRow>& rows);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace itop
