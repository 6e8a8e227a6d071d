#include "itop/simplex.hpp"

#include "itop/errors.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace itop {

namespace {

std::string simplex_text(const Simplex& s) {
    std::ostringstream out;
    out << "{";
    for (std::size_t i = 0; i < s.vertices.size(); ++i) {
        if (i) out << ",";
        out << s.vertices[i];
    }
    out << "}";
    return out.str();
}

}  // namespace

Simplex::Simplex(std::vector<int> verts) : vertices(std::move(verts)) {
    std::sort(vertices.begin(), vertices.end());
    auto dup = std::adjacent_find(vertices.begin(), vertices.end());
    if (dup != vertices.end()) {
        throw ParseError("simplex has repeated vertex " + std::to_string(*dup));
    }
    if (vertices.empty()) throw ParseError("simplex needs at least one vertex");
}

bool Simplex::contains(int v) const {
    return std::binary_search(vertices.begin(), vertices.end(), v);
}

Simplex Simplex::facet(int j) const {
    Simplex f;
    f.vertices = vertices;
    f.vertices.erase(f.vertices.begin() + j);
    return f;
}

bool Simplex::operator<(const Simplex& o) const {
    return std::lexicographical_compare(vertices.begin(), vertices.end(),
                                        o.vertices.begin(), o.vertices.end());
}

std::vector<std::pair<int, Simplex>> boundary_chain(const Simplex& s) {
    std::vector<std::pair<int, Simplex>> terms;
    if (s.dim() == 0) return terms;
    int sign = 1;
    for (int j = 0; j <= s.dim(); ++j) {
        terms.emplace_back(sign, s.facet(j));
        sign = -sign;
    }
    return terms;
}

FilteredComplex FilteredComplex::from_cells(std::vector<Cell> cells, bool add_missing_faces) {
    std::map<Simplex, double> births;
    for (auto& [s, b] : cells) {
        auto [it, inserted] = births.emplace(s, b);
        if (!inserted && it->second != b) {
            throw ParseError("simplex " + simplex_text(s) + " listed twice with different births");
        }
    }

    if (add_missing_faces) {
        // Repeatedly sweep top-down; a facet inherits the smallest birth among
        // the cofaces seen so far.
        std::vector<Simplex> queue;
        queue.reserve(births.size());
        for (const auto& [s, b] : births) queue.push_back(s);
        while (!queue.empty()) {
            std::vector<Simplex> next;
            for (const auto& s : queue) {
                double b = births.at(s);
                for (int j = 0; j <= s.dim(); ++j) {
                    if (s.dim() == 0) break;
                    Simplex f = s.facet(j);
                    auto it = births.find(f);
                    if (it == births.end()) {
                        births.emplace(f, b);
                        next.push_back(f);
                    } else if (it->second > b) {
                        it->second = b;
                        next.push_back(f);
                    }
                }
            }
            queue = std::move(next);
        }
    }

    for (const auto& [s, b] : births) {
        if (!std::isfinite(b)) {
            throw ParseError("simplex " + simplex_text(s) + " has non-finite birth");
        }
        for (int j = 0; j <= s.dim() && s.dim() > 0; ++j) {
            Simplex f = s.facet(j);
            auto it = births.find(f);
            if (it == births.end()) {
                throw ParseError("complex not closed under faces: missing " + simplex_text(f) +
                                 " of " + simplex_text(s));
            }
            if (it->second > b) {
                throw ParseError("birth of face " + simplex_text(f) + " exceeds birth of " +
                                 simplex_text(s));
            }
        }
    }

    FilteredComplex out;
    out.births_ = births;
    for (const auto& [s, b] : births) {
        int d = s.dim();
        if (d >= static_cast<int>(out.by_dim_.size())) out.by_dim_.resize(d + 1);
        out.by_dim_[d].emplace_back(s, b);
    }
    for (auto& cells_d : out.by_dim_) {
        std::sort(cells_d.begin(), cells_d.end(), [](const Cell& a, const Cell& b) {
            if (a.second != b.second) return a.second < b.second;
            return a.first < b.first;
        });
    }
    return out;
}

const std::vector<FilteredComplex::Cell>& FilteredComplex::simplices(int dim) const {
    static const std::vector<Cell> empty;
    if (dim < 0 || dim >= static_cast<int>(by_dim_.size())) return empty;
    return by_dim_[dim];
}

std::size_t FilteredComplex::size() const { return births_.size(); }

double FilteredComplex::birth(const Simplex& s) const {
    auto it = births_.find(s);
    if (it == births_.end()) {
        throw std::out_of_range("simplex " + simplex_text(s) + " not in complex");
    }
    return it->second;
}

std::vector<int> FilteredComplex::vertex_ids() const {
    std::vector<int> ids;
    for (const auto& [s, b] : simplices(0)) ids.push_back(s.vertices[0]);
    std::sort(ids.begin(), ids.end());
    return ids;
}

FilteredComplex FilteredComplex::truncated(double scale) const {
    std::vector<Cell> kept;
    for (const auto& [s, b] : births_) {
        if (b <= scale) kept.emplace_back(s, b);
    }
    return from_cells(std::move(kept));
}

FilteredComplex vr_filtration(const std::vector<int>& ids, const DistanceMatrix& dmat,
                              int max_dim, double max_scale) {
    if (max_dim < 0) throw UsageError("max_dim must be nonnegative");
    std::vector<int> verts = ids;
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    for (int v : verts) {
        if (v < 0 || v >= dmat.size()) {
            throw UsageError("vertex id " + std::to_string(v) + " outside distance matrix");
        }
    }

    std::vector<FilteredComplex::Cell> cells;
    for (int v : verts) cells.emplace_back(Simplex{v}, 0.0);

    // Lower neighbors: u < v with d(u, v) <= max_scale. Cliques are grown by
    // intersecting lower-neighbor sets so each simplex is built once, from its
    // largest vertex downward.
    std::map<int, std::vector<int>> lower;
    for (std::size_t i = 0; i < verts.size(); ++i) {
        for (std::size_t j = i + 1; j < verts.size(); ++j) {
            if (dmat(verts[i], verts[j]) <= max_scale) {
                lower[verts[j]].push_back(verts[i]);
            }
        }
    }

    struct Frame {
        std::vector<int> simplex;       // decreasing vertex order
        std::vector<int> candidates;    // common lower neighbors
        double birth;
    };
    std::vector<Frame> stack;
    for (int v : verts) {
        stack.push_back({{v}, lower[v], 0.0});
    }
    while (!stack.empty()) {
        Frame fr = std::move(stack.back());
        stack.pop_back();
        if (static_cast<int>(fr.simplex.size()) - 1 >= max_dim) continue;
        for (int u : fr.candidates) {
            double birth = fr.birth;
            for (int w : fr.simplex) birth = std::max(birth, dmat(u, w));
            if (birth > max_scale) continue;
            std::vector<int> ext = fr.simplex;
            ext.push_back(u);
            cells.emplace_back(Simplex(ext), birth);
            std::vector<int> common;
            const auto& lu = lower.count(u) ? lower.at(u) : std::vector<int>{};
            std::set_intersection(lu.begin(), lu.end(), fr.candidates.begin(),
                                  fr.candidates.end(), std::back_inserter(common));
            stack.push_back({std::move(ext), std::move(common), birth});
        }
    }
    return FilteredComplex::from_cells(std::move(cells));
}

}  // namespace itop
