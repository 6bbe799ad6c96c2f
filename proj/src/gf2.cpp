#include "ctxlab/gf2.hpp"

#include <utility>

namespace ctxlab {

AffineSpace solve_gf2(std::vector<Gf2Row> rows, std::vector<std::uint8_t> rhs, std::size_t columns)
{
    AffineSpace out;
    std::vector<std::size_t> pivot_cols;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < columns && rank < rows.size(); ++col) {
        std::size_t pivot = rank;
        while (pivot < rows.size() && !rows[pivot].get(col))
            ++pivot;
        if (pivot == rows.size())
            continue;
        std::swap(rows[pivot], rows[rank]);
        std::swap(rhs[pivot], rhs[rank]);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r != rank && rows[r].get(col)) {
                rows[r] ^= rows[rank];
                rhs[r] ^= rhs[rank];
            }
        }
        pivot_cols.push_back(col);
        ++rank;
    }
    for (std::size_t r = rank; r < rows.size(); ++r) {
        if (rhs[r]) {
            out.consistent = false;
            return out;
        }
    }

    std::vector<bool> is_pivot(columns, false);
    for (std::size_t c : pivot_cols)
        is_pivot[c] = true;

    out.particular.assign(columns, 0);
    for (std::size_t r = 0; r < rank; ++r)
        out.particular[pivot_cols[r]] = rhs[r];

    for (std::size_t free = 0; free < columns; ++free) {
        if (is_pivot[free])
            continue;
        std::vector<std::uint8_t> v(columns, 0);
        v[free] = 1;
        for (std::size_t r = 0; r < rank; ++r) {
            if (rows[r].get(free))
                v[pivot_cols[r]] = 1;
        }
        out.basis.push_back(std::move(v));
    }
    return out;
}

}  // namespace ctxlab
