#ifndef OPENMORSE_SIMPLEX_HPP
#define OPENMORSE_SIMPLEX_HPP

#include <algorithm>
#include <compare>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"

namespace openmorse {

using vertex_id = int;

// A simplex is a sorted, duplicate-free vertex list; dimension = size - 1.
// The same type doubles as a cell of a barycentric subdivision, where the
// "vertices" are indices of base cells and the list is a chain in the face
// poset (face order refines the canonical cell order, so chains are sorted).
struct simplex {
    std::vector<vertex_id> v;

    simplex() = default;
    explicit simplex(std::vector<vertex_id> verts) : v(std::move(verts)) {}
    simplex(std::initializer_list<vertex_id> verts) : v(verts) {}

    int dim() const { return static_cast<int>(v.size()) - 1; }
    bool empty() const { return v.empty(); }

    bool contains(vertex_id x) const { return std::binary_search(v.begin(), v.end(), x); }

    bool is_face_of(const simplex& other) const {
        return std::includes(other.v.begin(), other.v.end(), v.begin(), v.end());
    }
    bool is_facet_of(const simplex& other) const {
        return dim() + 1 == other.dim() && is_face_of(other);
    }

    simplex with(vertex_id x) const {
        simplex s(*this);
        s.v.insert(std::upper_bound(s.v.begin(), s.v.end(), x), x);
        return s;
    }
    simplex without_index(int i) const {
        simplex s(*this);
        s.v.erase(s.v.begin() + i);
        return s;
    }

    // Facets in canonical order: dropping vertex i gives sign (-1)^i.
    std::vector<simplex> facets() const {
        std::vector<simplex> out;
        if (dim() <= 0) return out;
        out.reserve(v.size());
        for (int i = 0; i < static_cast<int>(v.size()); ++i) out.push_back(without_index(i));
        return out;
    }

    // All nonempty proper faces.
    std::vector<simplex> proper_faces() const {
        std::vector<simplex> out;
        const unsigned n = static_cast<unsigned>(v.size());
        for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
            simplex f;
            for (unsigned i = 0; i < n; ++i)
                if (mask & (1u << i)) f.v.push_back(v[i]);
            out.push_back(std::move(f));
        }
        return out;
    }

    std::string str() const {
        std::ostringstream os;
        os << '{';
        for (size_t i = 0; i < v.size(); ++i) {
            if (i) os << ',';
            os << v[i];
        }
        os << '}';
        return os.str();
    }

    friend bool operator==(const simplex& a, const simplex& b) { return a.v == b.v; }
    // Canonical order: dimension first, then lexicographic on the vertex list.
    friend std::strong_ordering operator<=>(const simplex& a, const simplex& b) {
        if (a.v.size() != b.v.size()) return a.v.size() <=> b.v.size();
        return a.v <=> b.v;
    }
};

// Incidence sign of a facet obtained by dropping the vertex at position i.
inline int incidence_sign(const simplex& coface, const simplex& facet) {
    size_t i = 0, j = 0;
    int pos = -1;
    while (i < coface.v.size()) {
        if (j < facet.v.size() && coface.v[i] == facet.v[j]) {
            ++i;
            ++j;
        } else {
            pos = static_cast<int>(i);
            ++i;
        }
    }
    return (pos % 2 == 0) ? 1 : -1;
}

// An ordered family of cells. Not necessarily face-closed: open complexes
// K = X \ T and interiors of subdivided simplices are cell sets too.
struct cell_set {
    std::vector<simplex> cells; // canonical order, duplicate-free

    cell_set() = default;
    explicit cell_set(std::vector<simplex> cs) : cells(std::move(cs)) { normalize(); }

    void normalize() {
        std::sort(cells.begin(), cells.end());
        cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
    }

    int size() const { return static_cast<int>(cells.size()); }

    int index_of(const simplex& s) const {
        auto it = std::lower_bound(cells.begin(), cells.end(), s);
        if (it == cells.end() || !(*it == s)) return -1;
        return static_cast<int>(it - cells.begin());
    }
    bool contains(const simplex& s) const { return index_of(s) >= 0; }

    int dim() const {
        int d = -1;
        for (const auto& c : cells) d = std::max(d, c.dim());
        return d;
    }

    std::vector<int> count_by_dim() const {
        std::vector<int> n(static_cast<size_t>(dim() + 1), 0);
        for (const auto& c : cells) ++n[static_cast<size_t>(c.dim())];
        return n;
    }

    long long euler_characteristic() const {
        long long chi = 0;
        for (const auto& c : cells) chi += (c.dim() % 2 == 0) ? 1 : -1;
        return chi;
    }

    bool face_closed() const {
        for (const auto& c : cells)
            for (const auto& f : c.facets())
                if (!contains(f)) return false;
        return true;
    }
};

} // namespace openmorse

#endif
