#include "periorb/linalg.hpp"

#include <map>
#include <numeric>

namespace periorb {

namespace {

// Multiplies a row through by the lcm of its coefficient denominators.
void clear_denominators(std::vector<CycloNum>& row) {
    Integer lcm = 1;
    for (const auto& entry : row)
        for (const auto& q : entry.coeffs()) {
            if (q == 0) continue;
            Integer den = q.get_den();
            lcm = lcm / gcd(lcm, den) * den;
        }
    if (lcm == 1) return;
    Rational f{lcm};
    for (auto& entry : row) entry.scale(f);
}

// Fraction-free elimination on a dense block; every division is by the
// previous pivot and exact, so coefficients stay integral.
size_t bareiss_rank(std::vector<std::vector<CycloNum>> m, const CycloContextPtr& ctx) {
    const size_t nr = m.size();
    if (nr == 0) return 0;
    const size_t nc = m[0].size();
    for (auto& row : m) clear_denominators(row);

    CycloNum prev_inv = CycloNum::one(ctx);
    size_t r = 0;
    for (size_t c = 0; c < nc && r < nr; ++c) {
        size_t pivot = r;
        while (pivot < nr && m[pivot][c].is_zero()) ++pivot;
        if (pivot == nr) continue;
        if (pivot != r) std::swap(m[r], m[pivot]);

        const CycloNum pv = m[r][c];
        for (size_t i = r + 1; i < nr; ++i) {
            const CycloNum factor = m[i][c];
            m[i][c] = CycloNum::zero(ctx);
            if (factor.is_zero()) {
                for (size_t j = c + 1; j < nc; ++j) {
                    if (m[i][j].is_zero()) continue;
                    m[i][j] = m[i][j] * pv * prev_inv;
                }
            } else {
                for (size_t j = c + 1; j < nc; ++j) {
                    CycloNum v = m[i][j] * pv - factor * m[r][j];
                    if (!v.is_zero()) v *= prev_inv;
                    m[i][j] = std::move(v);
                }
            }
        }
        prev_inv = pv.inverse();
        ++r;
    }
    return r;
}

struct UnionFind {
    std::vector<size_t> parent;
    explicit UnionFind(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    size_t find(size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(size_t a, size_t b) { parent[find(a)] = find(b); }
};

} // namespace

size_t rank(CycloMatrix m) {
    const size_t nr = m.rows(), nc = m.cols();
    if (nr == 0 || nc == 0) return 0;

    // Rows never couple columns from different connected components, so the
    // rank splits over the components.  Macaulay matrices of sparse germs
    // split into many small blocks this way.
    UnionFind uf(nc);
    std::vector<std::vector<size_t>> row_cols(nr);
    for (size_t r = 0; r < nr; ++r) {
        for (size_t c = 0; c < nc; ++c)
            if (!m.at(r, c).is_zero()) row_cols[r].push_back(c);
        for (size_t k = 1; k < row_cols[r].size(); ++k)
            uf.unite(row_cols[r][0], row_cols[r][k]);
    }

    std::map<size_t, std::vector<size_t>> comp_cols;
    std::vector<size_t> col_slot(nc, 0);
    for (size_t c = 0; c < nc; ++c) {
        auto& cols = comp_cols[uf.find(c)];
        col_slot[c] = cols.size();
        cols.push_back(c);
    }

    std::map<size_t, std::vector<size_t>> comp_rows;
    for (size_t r = 0; r < nr; ++r)
        if (!row_cols[r].empty()) comp_rows[uf.find(row_cols[r][0])].push_back(r);

    size_t total = 0;
    for (const auto& [root, rows_in] : comp_rows) {
        const auto& cols_in = comp_cols[root];
        std::vector<std::vector<CycloNum>> block(
            rows_in.size(), std::vector<CycloNum>(cols_in.size(), CycloNum::zero(m.context())));
        for (size_t ri = 0; ri < rows_in.size(); ++ri)
            for (size_t c : row_cols[rows_in[ri]])
                block[ri][col_slot[c]] = m.at(rows_in[ri], c);
        total += bareiss_rank(std::move(block), m.context());
    }
    return total;
}

bool determinant_is_zero(const CycloMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
    return rank(m) < m.rows();
}

} // namespace periorb
