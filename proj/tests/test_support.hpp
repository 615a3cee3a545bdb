#ifndef OPENMORSE_TEST_SUPPORT_HPP
#define OPENMORSE_TEST_SUPPORT_HPP

#include <fstream>
#include <numeric>

#include <openmorse/openmorse.hpp>

namespace omt {

using namespace openmorse;

inline json load_fixture(const std::string& name) {
    std::ifstream in(std::string(OPENMORSE_FIXTURE_DIR) + "/" + name);
    if (!in) throw std::runtime_error("missing fixture " + name);
    return json::parse(in);
}

inline input_documents running_docs() {
    return parse_inputs({load_fixture("running.json"), load_fixture("running_field.json"),
                         load_fixture("running_function.json")});
}

inline input_documents pathological_docs() {
    return parse_inputs({load_fixture("pathological.json"), load_fixture("pathological_field.json")});
}

// ---- independent oracles -------------------------------------------------
// These deliberately use different algorithms from the implementation they
// check, so expected values are computed (not copied).

// Determinant by cofactor expansion, exact.
inline bigint det_oracle(const std::vector<std::vector<bigint>>& m) {
    size_t n = m.size();
    if (n == 0) return 1;
    if (n == 1) return m[0][0];
    bigint acc = 0;
    for (size_t j = 0; j < n; ++j) {
        if (m[0][j] == 0) continue;
        std::vector<std::vector<bigint>> minor;
        for (size_t i = 1; i < n; ++i) {
            std::vector<bigint> row;
            for (size_t k = 0; k < n; ++k)
                if (k != j) row.push_back(m[i][k]);
            minor.push_back(std::move(row));
        }
        bigint term = m[0][j] * det_oracle(minor);
        acc += (j % 2 == 0) ? term : -term;
    }
    return acc;
}

// Invariant factors from gcds of k x k minors: d_1 ... d_k = gcd(k-minors).
inline std::pair<int, std::vector<long long>> snf_minors_oracle(const int_matrix& m) {
    const int r = m.rows, c = m.cols;
    std::vector<bigint> minor_gcd; // minor_gcd[k-1] = gcd of all k x k minors
    for (int k = 1; k <= std::min(r, c); ++k) {
        bigint g = 0;
        std::vector<int> ri(static_cast<size_t>(k)), ci(static_cast<size_t>(k));
        std::function<void(int, int)> rows_rec = [&](int pos, int start) {
            if (pos == k) {
                std::function<void(int, int)> cols_rec = [&](int cpos, int cstart) {
                    if (cpos == k) {
                        std::vector<std::vector<bigint>> sub(static_cast<size_t>(k),
                                                             std::vector<bigint>(static_cast<size_t>(k)));
                        for (int i = 0; i < k; ++i)
                            for (int j = 0; j < k; ++j)
                                sub[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                                    m.at(ri[static_cast<size_t>(i)], ci[static_cast<size_t>(j)]);
                        bigint d = det_oracle(sub);
                        g = boost::multiprecision::gcd(g, d < 0 ? bigint(-d) : d);
                        return;
                    }
                    for (int j = cstart; j < c; ++j) {
                        ci[static_cast<size_t>(cpos)] = j;
                        cols_rec(cpos + 1, j + 1);
                    }
                };
                cols_rec(0, 0);
                return;
            }
            for (int i = start; i < r; ++i) {
                ri[static_cast<size_t>(pos)] = i;
                rows_rec(pos + 1, i + 1);
            }
        };
        rows_rec(0, 0);
        minor_gcd.push_back(g);
        if (g == 0) break;
    }
    int rank = 0;
    for (const auto& g : minor_gcd)
        if (g != 0) ++rank;
    std::vector<long long> factors;
    bigint prev = 1;
    for (int k = 0; k < rank; ++k) {
        bigint d = minor_gcd[static_cast<size_t>(k)] / prev;
        factors.push_back(static_cast<long long>(d));
        prev = minor_gcd[static_cast<size_t>(k)];
    }
    return {rank, factors};
}

// Exact rank by fraction-free (Bareiss) elimination.
inline int rank_bareiss(const int_matrix& mat) {
    std::vector<std::vector<bigint>> a(static_cast<size_t>(mat.rows),
                                       std::vector<bigint>(static_cast<size_t>(mat.cols)));
    for (int i = 0; i < mat.rows; ++i)
        for (int j = 0; j < mat.cols; ++j) a[static_cast<size_t>(i)][static_cast<size_t>(j)] = mat.at(i, j);
    int rank = 0;
    bigint prev = 1;
    for (int col = 0; col < mat.cols && rank < mat.rows; ++col) {
        int pivot = -1;
        for (int i = rank; i < mat.rows; ++i)
            if (a[static_cast<size_t>(i)][static_cast<size_t>(col)] != 0) {
                pivot = i;
                break;
            }
        if (pivot < 0) continue;
        std::swap(a[static_cast<size_t>(rank)], a[static_cast<size_t>(pivot)]);
        for (int i = rank + 1; i < mat.rows; ++i) {
            for (int j = col + 1; j < mat.cols; ++j)
                a[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                    (a[static_cast<size_t>(rank)][static_cast<size_t>(col)] * a[static_cast<size_t>(i)][static_cast<size_t>(j)] -
                     a[static_cast<size_t>(i)][static_cast<size_t>(col)] * a[static_cast<size_t>(rank)][static_cast<size_t>(j)]) /
                    prev;
            a[static_cast<size_t>(i)][static_cast<size_t>(col)] = 0;
        }
        prev = a[static_cast<size_t>(rank)][static_cast<size_t>(col)];
        ++rank;
    }
    return rank;
}

// Betti numbers from chain ranks and Bareiss boundary ranks only.
inline std::vector<int> betti_rank_oracle(const chain_complex_z& cc) {
    std::vector<int> betti;
    int d = cc.top_dim();
    if (d < 0) return betti;
    std::vector<int> rank(static_cast<size_t>(d + 2), 0);
    for (int i = 0; i <= d; ++i) rank[static_cast<size_t>(i)] = rank_bareiss(cc.boundary[static_cast<size_t>(i)]);
    for (int i = 0; i <= d; ++i)
        betti.push_back(cc.rank_of_chains(i) - rank[static_cast<size_t>(i)] - rank[static_cast<size_t>(i + 1)]);
    return betti;
}

// Closed V-path search by explicit path enumeration with a length cap.
inline bool closed_vpath_bruteforce(const vector_field& v) {
    auto m = detail::index_matching(v);
    auto down = detail::facet_lists(v.domain);
    const int n = v.domain.size();
    std::function<bool(int, int, int)> walk = [&](int start, int cur, int steps) {
        if (steps > n) return false;
        size_t cc = static_cast<size_t>(cur);
        if (!m.tail[cc]) return false;
        int b = m.partner[cc];
        for (int w : down[static_cast<size_t>(b)]) {
            if (w == cur) continue;
            if (w == start) return true;
            if (walk(start, w, steps + 1)) return true;
        }
        return false;
    };
    for (int s = 0; s < n; ++s)
        if (m.tail[static_cast<size_t>(s)] && walk(s, s, 0)) return true;
    return false;
}

// Height by exhaustive chain enumeration.
inline int height_oracle(const simplex& s, const cell_set& k) {
    std::function<int(const simplex&)> longest = [&](const simplex& top) -> int {
        int best = 1;
        for (int i = 0; i < k.size(); ++i) {
            const simplex& c = k.cells[static_cast<size_t>(i)];
            if (c.dim() < top.dim() && c.is_face_of(top))
                best = std::max(best, 1 + longest(c));
        }
        return best;
    };
    return longest(s) - 1;
}

inline gradient_field empty_field(const cell_set& dom) {
    vector_field v;
    v.domain = dom;
    return gradient_field::checked(std::move(v));
}

} // namespace omt

#endif
