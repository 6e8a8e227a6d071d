#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace itop {

struct Point {
    int id = 0;
    std::vector<double> coords;
    std::string label;
};

/// Immutable labeled point set. Ids are unique and contiguous from 0; all
/// coordinate vectors share the same dimension d >= 1.
class PointCloud {
public:
    static PointCloud from_points(std::vector<Point> points);

    int size() const { return static_cast<int>(points_.size()); }
    int dimension() const { return dimension_; }
    const Point& point(int id) const { return points_[static_cast<std::size_t>(id)]; }
    const std::vector<Point>& points() const { return points_; }

private:
    PointCloud() = default;
    std::vector<Point> points_;  // indexed by id
    int dimension_ = 0;
};

// XYZ format: line 1 = atom count, line 2 = comment, then "<element> <x> <y> <z>"
// per atom; extra trailing columns are ignored. Throws ParseError with the
// offending line number on malformed input.
PointCloud parse_xyz(const std::string& text);
std::string to_xyz(const PointCloud& cloud, const std::string& comment = "");

// CSV format: header "id,label,<axis>,<axis>,..."; dimension inferred from the
// number of axis columns.
PointCloud parse_csv(const std::string& text);

// Reads a cloud from disk. format is "xyz", "csv" or "auto" (by extension).
PointCloud load_cloud(const std::string& path, const std::string& format = "auto");

/// Ordered list of label-sets, one per interacting subset. Groups may overlap;
/// shared points are the interaction carriers.
struct GroupingSpec {
    std::vector<std::vector<std::string>> groups;

    // Parses "C,B;C,H" into two groups {C,B} and {C,H}.
    static GroupingSpec parse(const std::string& text);
};

// Point id sets, one per group, in group order; each sorted ascending.
// A point belongs to group i iff its label is in group i's label-set.
// Throws UsageError naming the group if any selection is empty.
std::vector<std::vector<int>> select_groups(const PointCloud& cloud, const GroupingSpec& spec);

/// Symmetric nonnegative matrix of pairwise distances with zero diagonal.
class DistanceMatrix {
public:
    explicit DistanceMatrix(Eigen::MatrixXd entries);

    int size() const { return static_cast<int>(entries_.rows()); }
    double operator()(int i, int j) const { return entries_(i, j); }
    const Eigen::MatrixXd& entries() const { return entries_; }

private:
    Eigen::MatrixXd entries_;
};

DistanceMatrix distance_matrix(const PointCloud& cloud);

}  // namespace itop
