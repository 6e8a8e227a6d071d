#include "itop/geometry.hpp"

#include "itop/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_set>

namespace itop {

namespace {

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string line;
    std::istringstream in(text);
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    return lines;
}

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> tokens;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) tokens.push_back(tok);
    return tokens;
}

double parse_double_or_throw(const std::string& tok, int line_no, const char* what) {
    std::size_t pos = 0;
    double value = 0;
    try {
        value = std::stod(tok, &pos);
    } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(line_no) + ": non-numeric " + what + " '" + tok + "'");
    }
    if (pos != tok.size() || !std::isfinite(value))
        throw ParseError("line " + std::to_string(line_no) + ": non-numeric " + what + " '" + tok + "'");
    return value;
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_on(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) parts.push_back(cur);
    if (!s.empty() && s.back() == sep) parts.push_back("");
    return parts;
}

}  // namespace

PointCloud PointCloud::from_points(std::vector<Point> points) {
    if (points.empty()) throw ParseError("point cloud is empty");
    std::sort(points.begin(), points.end(),
              [](const Point& a, const Point& b) { return a.id < b.id; });
    const int d = static_cast<int>(points.front().coords.size());
    if (d < 1) throw ParseError("point dimension must be >= 1");
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].id != static_cast<int>(i))
            throw ParseError("point ids must be unique and contiguous from 0 (missing id " +
                             std::to_string(i) + ")");
        if (static_cast<int>(points[i].coords.size()) != d)
            throw ParseError("inconsistent coordinate dimension at id " + std::to_string(i));
    }
    PointCloud cloud;
    cloud.points_ = std::move(points);
    cloud.dimension_ = d;
    return cloud;
}

PointCloud parse_xyz(const std::string& text) {
    const auto lines = split_lines(text);
    if (lines.empty()) throw ParseError("line 1: empty file");
    const auto count_tokens = tokenize(lines[0]);
    if (count_tokens.size() != 1)
        throw ParseError("line 1: expected a single atom count");
    long n = 0;
    try {
        std::size_t pos = 0;
        n = std::stol(count_tokens[0], &pos);
        if (pos != count_tokens[0].size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
        throw ParseError("line 1: malformed atom count '" + count_tokens[0] + "'");
    }
    if (n <= 0) throw ParseError("line 1: atom count must be positive");
    if (lines.size() < static_cast<std::size_t>(n) + 2)
        throw ParseError("line " + std::to_string(lines.size() + 1) +
                         ": truncated file, expected " + std::to_string(n) + " atom lines");

    std::vector<Point> points;
    points.reserve(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) {
        const int line_no = static_cast<int>(i) + 3;
        const auto tokens = tokenize(lines[static_cast<std::size_t>(i) + 2]);
        if (tokens.size() < 4)
            throw ParseError("line " + std::to_string(line_no) +
                             ": expected '<element> <x> <y> <z>'");
        Point p;
        p.id = static_cast<int>(i);
        p.label = tokens[0];
        for (int k = 1; k <= 3; ++k)
            p.coords.push_back(parse_double_or_throw(tokens[static_cast<std::size_t>(k)], line_no, "coordinate"));
        points.push_back(std::move(p));
    }
    // Anything after the atom block must be blank.
    for (std::size_t i = static_cast<std::size_t>(n) + 2; i < lines.size(); ++i)
        if (!trim(lines[i]).empty())
            throw ParseError("line " + std::to_string(i + 1) + ": unexpected content after atom block");
    return PointCloud::from_points(std::move(points));
}

std::string to_xyz(const PointCloud& cloud, const std::string& comment) {
    if (cloud.dimension() != 3)
        throw UsageError("XYZ output requires 3-dimensional points");
    std::ostringstream out;
    out << cloud.size() << "\n" << comment << "\n";
    char buf[64];
    for (const Point& p : cloud.points()) {
        out << p.label;
        for (double c : p.coords) {
            std::snprintf(buf, sizeof(buf), "%.17g", c);
            out << " " << buf;
        }
        out << "\n";
    }
    return out.str();
}

PointCloud parse_csv(const std::string& text) {
    const auto lines = split_lines(text);
    if (lines.empty()) throw ParseError("line 1: empty file");
    auto header = split_on(lines[0], ',');
    for (auto& h : header) h = trim(h);
    if (header.size() < 3 || header[0] != "id" || header[1] != "label")
        throw ParseError("line 1: header must be 'id,label,<axis>,...'");
    const int dim = static_cast<int>(header.size()) - 2;

    std::vector<Point> points;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const int line_no = static_cast<int>(i) + 1;
        if (trim(lines[i]).empty()) continue;
        auto fields = split_on(lines[i], ',');
        if (static_cast<int>(fields.size()) != dim + 2)
            throw ParseError("line " + std::to_string(line_no) + ": expected " +
                             std::to_string(dim + 2) + " fields");
        Point p;
        try {
            std::size_t pos = 0;
            p.id = std::stoi(trim(fields[0]), &pos);
        } catch (const std::exception&) {
            throw ParseError("line " + std::to_string(line_no) + ": malformed id '" + fields[0] + "'");
        }
        p.label = trim(fields[1]);
        if (p.label.empty())
            throw ParseError("line " + std::to_string(line_no) + ": empty label");
        for (int k = 0; k < dim; ++k)
            p.coords.push_back(parse_double_or_throw(trim(fields[static_cast<std::size_t>(k) + 2]),
                                                     line_no, "coordinate"));
        points.push_back(std::move(p));
    }
    return PointCloud::from_points(std::move(points));
}

PointCloud load_cloud(const std::string& path, const std::string& format) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open input file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string fmt = format;
    if (fmt == "auto") {
        const auto dot = path.find_last_of('.');
        const std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
        if (ext == "xyz") fmt = "xyz";
        else if (ext == "csv") fmt = "csv";
        else throw UsageError("cannot infer format of '" + path + "'; pass --format");
    }
    if (fmt == "xyz") return parse_xyz(buf.str());
    if (fmt == "csv") return parse_csv(buf.str());
    throw UsageError("unknown point cloud format '" + fmt + "'");
}

GroupingSpec GroupingSpec::parse(const std::string& text) {
    GroupingSpec spec;
    for (const auto& group_text : split_on(text, ';')) {
        std::vector<std::string> labels;
        for (const auto& raw : split_on(group_text, ',')) {
            const std::string label = trim(raw);
            if (label.empty()) throw UsageError("empty label in groups specification '" + text + "'");
            if (std::find(labels.begin(), labels.end(), label) == labels.end())
                labels.push_back(label);
        }
        if (labels.empty()) throw UsageError("empty group in groups specification '" + text + "'");
        spec.groups.push_back(std::move(labels));
    }
    if (spec.groups.empty()) throw UsageError("groups specification is empty");
    return spec;
}

std::vector<std::vector<int>> select_groups(const PointCloud& cloud, const GroupingSpec& spec) {
    std::unordered_set<std::string> cloud_labels;
    for (const Point& p : cloud.points()) cloud_labels.insert(p.label);
    for (std::size_t g = 0; g < spec.groups.size(); ++g)
        for (const auto& label : spec.groups[g])
            if (!cloud_labels.count(label))
                throw UsageError("group " + std::to_string(g + 1) + ": label '" + label +
                                 "' does not occur in the input");

    std::vector<std::vector<int>> result;
    for (std::size_t g = 0; g < spec.groups.size(); ++g) {
        std::set<std::string> wanted(spec.groups[g].begin(), spec.groups[g].end());
        std::vector<int> ids;
        for (const Point& p : cloud.points())
            if (wanted.count(p.label)) ids.push_back(p.id);
        if (ids.empty())
            throw UsageError("group " + std::to_string(g + 1) + " selects no points");
        result.push_back(std::move(ids));
    }
    return result;
}

DistanceMatrix::DistanceMatrix(Eigen::MatrixXd entries) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols())
        throw ParseError("distance matrix must be square");
    for (int i = 0; i < entries_.rows(); ++i) {
        if (entries_(i, i) != 0.0)
            throw ParseError("distance matrix diagonal must be zero");
        for (int j = 0; j < i; ++j) {
            if (entries_(i, j) < 0.0)
                throw ParseError("distance matrix entries must be nonnegative");
            if (std::abs(entries_(i, j) - entries_(j, i)) > 1e-12)
                throw ParseError("distance matrix must be symmetric");
        }
    }
}

DistanceMatrix distance_matrix(const PointCloud& cloud) {
    const int n = cloud.size();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            double sq = 0;
            const auto& a = cloud.point(i).coords;
            const auto& b = cloud.point(j).coords;
            for (std::size_t k = 0; k < a.size(); ++k) {
                const double diff = a[k] - b[k];
                sq += diff * diff;
            }
            const double d = std::sqrt(sq);
            m(i, j) = d;
            m(j, i) = d;
        }
    }
    return DistanceMatrix(std::move(m));
}

}  // namespace itop
