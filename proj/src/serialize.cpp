#include "itop/serialize.hpp"

#include "itop/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace itop {

namespace {

std::string number_text(double v) {
    std::ostringstream out;
    out << std::setprecision(17) << v;
    return out.str();
}

// Pixel geometry shared by both plot kinds.
constexpr double kWidth = 640.0;
constexpr double kHeight = 360.0;
constexpr double kMargin = 48.0;

double x_pixel(double t, double t_min, double t_max) {
    double span = t_max - t_min;
    if (span <= 0.0) span = 1.0;
    return kMargin + (t - t_min) / span * (kWidth - 2 * kMargin);
}

std::string svg_open() {
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    return out.str();
}

void svg_axis(std::ostringstream& out, double t_min, double t_max, const std::string& title) {
    double y = kHeight - kMargin;
    out << "<line x1=\"" << kMargin << "\" y1=\"" << y << "\" x2=\"" << kWidth - kMargin
        << "\" y2=\"" << y << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << kMargin << "\" y=\"" << y + 16 << "\" font-size=\"11\">"
        << number_text(t_min) << "</text>\n";
    out << "<text x=\"" << kWidth - kMargin << "\" y=\"" << y + 16
        << "\" font-size=\"11\" text-anchor=\"end\">" << number_text(t_max) << "</text>\n";
    out << "<text x=\"" << kWidth / 2 << "\" y=\"" << kMargin / 2
        << "\" font-size=\"13\" text-anchor=\"middle\">" << title << "</text>\n";
}

}  // namespace

nlohmann::json barcode_to_json(const Barcode& bc, int degree) {
    nlohmann::json bars = nlohmann::json::array();
    for (const Bar& bar : bc.bars(degree)) {
        nlohmann::json item;
        item["birth"] = bar.birth;
        if (bar.finite()) {
            item["death"] = bar.death;
        } else {
            item["death"] = "inf";
        }
        bars.push_back(std::move(item));
    }
    return nlohmann::json{{"degree", degree}, {"bars", std::move(bars)}};
}

std::string barcode_to_csv(const Barcode& bc, int degree) {
    std::ostringstream out;
    out << "degree,birth,death\n";
    for (const Bar& bar : bc.bars(degree)) {
        out << degree << "," << number_text(bar.birth) << ","
            << (bar.finite() ? number_text(bar.death) : std::string("inf")) << "\n";
    }
    return out.str();
}

std::string barcode_to_svg(const Barcode& bc, int degree, double scale_hint) {
    std::vector<Bar> bars = bc.bars(degree);
    double t_min = 0.0;
    double t_max = scale_hint;
    for (const Bar& bar : bars) {
        t_min = std::min(t_min, bar.birth);
        if (bar.finite()) t_max = std::max(t_max, bar.death);
        else t_max = std::max(t_max, bar.birth);
    }
    if (t_max <= t_min) t_max = t_min + 1.0;

    std::ostringstream out;
    out << svg_open();
    svg_axis(out, t_min, t_max, "degree " + std::to_string(degree) + " barcode");
    double band = (kHeight - 2 * kMargin) / std::max<std::size_t>(bars.size(), 1);
    for (std::size_t i = 0; i < bars.size(); ++i) {
        double y = kMargin + band * (static_cast<double>(i) + 0.5);
        double x1 = x_pixel(bars[i].birth, t_min, t_max);
        double x2 = bars[i].finite() ? x_pixel(bars[i].death, t_min, t_max) : kWidth - kMargin;
        out << "<line x1=\"" << x1 << "\" y1=\"" << y << "\" x2=\"" << x2 << "\" y2=\"" << y
            << "\" stroke=\"steelblue\" stroke-width=\"3\"/>\n";
        if (!bars[i].finite()) {
            out << "<text x=\"" << x2 + 2 << "\" y=\"" << y + 4
                << "\" font-size=\"11\">&#8734;</text>\n";
        }
    }
    out << "</svg>\n";
    return out.str();
}

nlohmann::json spectra_to_json(const SpectrumSeries& series) {
    nlohmann::json out = nlohmann::json::array();
    for (const SpectrumEntry& e : series.entries) {
        nlohmann::json item;
        if (series.pairs_mode) {
            item["a"] = e.a;
            item["b"] = e.b;
        } else {
            item["t"] = e.a;
        }
        item["degree"] = e.degree;
        item["nullity"] = e.nullity;
        item["gap"] = e.gap;
        item["eigenvalues"] = e.eigenvalues;
        out.push_back(std::move(item));
    }
    return out;
}

std::string spectra_to_csv(const SpectrumSeries& series) {
    std::ostringstream out;
    out << (series.pairs_mode ? "a,b,degree,nullity,gap" : "t,degree,nullity,gap") << "\n";
    for (const SpectrumEntry& e : series.entries) {
        if (series.pairs_mode) {
            out << number_text(e.a) << "," << number_text(e.b) << ",";
        } else {
            out << number_text(e.a) << ",";
        }
        out << e.degree << "," << e.nullity << "," << number_text(e.gap) << "\n";
    }
    return out.str();
}

std::string spectra_to_svg(const SpectrumSeries& series) {
    const auto& entries = series.entries;
    double t_min = 0.0, t_max = 1.0, g_max = 1.0;
    if (!entries.empty()) {
        t_min = entries.front().a;
        t_max = entries.back().a;
        for (const SpectrumEntry& e : entries) g_max = std::max(g_max, e.gap);
    }
    if (t_max <= t_min) t_max = t_min + 1.0;

    auto y_pixel = [&](double g) {
        return kHeight - kMargin - g / g_max * (kHeight - 2 * kMargin);
    };

    std::ostringstream out;
    out << svg_open();
    svg_axis(out, t_min, t_max, "degree " + std::to_string(series.degree) + " spectral gap");
    out << "<text x=\"" << kMargin - 6 << "\" y=\"" << y_pixel(g_max)
        << "\" font-size=\"11\" text-anchor=\"end\">" << number_text(g_max) << "</text>\n";
    for (std::size_t i = 0; i + 1 < entries.size(); ++i) {
        double x1 = x_pixel(entries[i].a, t_min, t_max);
        double x2 = x_pixel(entries[i + 1].a, t_min, t_max);
        double y1 = y_pixel(entries[i].gap);
        double y2 = y_pixel(entries[i + 1].gap);
        out << "<line x1=\"" << x1 << "\" y1=\"" << y1 << "\" x2=\"" << x2 << "\" y2=\"" << y1
            << "\" stroke=\"firebrick\" stroke-width=\"2\"/>\n";
        if (y1 != y2) {
            out << "<line x1=\"" << x2 << "\" y1=\"" << y1 << "\" x2=\"" << x2 << "\" y2=\"" << y2
                << "\" stroke=\"firebrick\" stroke-width=\"1\" stroke-dasharray=\"3,2\"/>\n";
        }
    }
    for (const SpectrumEntry& e : entries) {
        out << "<circle cx=\"" << x_pixel(e.a, t_min, t_max) << "\" cy=\"" << y_pixel(e.gap)
            << "\" r=\"2.5\" fill=\"firebrick\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

nlohmann::json wu_to_json(const WuReport& report) {
    return nlohmann::json{{"omega", report.omega},
                          {"pair_counts", report.pair_counts},
                          {"betti_alternating_sum", report.betti_alternating_sum},
                          {"consistent", report.consistent()}};
}

std::string benchmark_to_csv(const std::vector<BenchmarkRow>& rows) {
    std::ostringstream out;
    out << "pipeline,degree,seconds\n";
    for (const BenchmarkRow& row : rows) {
        out << row.pipeline << "," << row.degree << "," << number_text(row.seconds) << "\n";
    }
    return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot open " + path + " for writing");
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace itop
