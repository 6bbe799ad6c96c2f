#include "ctxlab/linalg.hpp"

#include <utility>

namespace ctxlab {

std::size_t rank(IntegerMatrix m)
{
    if (m.empty())
        return 0;
    std::size_t rows = m.size();
    std::size_t cols = m[0].size();
    std::size_t r = 0;
    Integer prev = 1;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m[p][c] == 0)
            ++p;
        if (p == rows)
            continue;
        std::swap(m[p], m[r]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j)
                m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]) / prev;
            m[i][c] = 0;
        }
        prev = m[r][c];
        ++r;
    }
    return r;
}

std::size_t rank(const RationalMatrix& m)
{
    IntegerMatrix im;
    im.reserve(m.size());
    for (const auto& row : m) {
        auto scaled = primitive_integer_vector(row);
        std::vector<Integer> ir;
        ir.reserve(scaled.size());
        for (const auto& v : scaled)
            ir.push_back(numerator(v));
        im.push_back(std::move(ir));
    }
    return rank(std::move(im));
}

std::optional<RationalMatrix> inverse(RationalMatrix m)
{
    std::size_t n = m.size();
    RationalMatrix inv(n, std::vector<Rational>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        inv[i][i] = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && is_zero(m[p][c]))
            ++p;
        if (p == n)
            return std::nullopt;
        std::swap(m[p], m[c]);
        std::swap(inv[p], inv[c]);
        Rational pivot = m[c][c];
        for (std::size_t j = 0; j < n; ++j) {
            m[c][j] /= pivot;
            inv[c][j] /= pivot;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || is_zero(m[i][c]))
                continue;
            Rational f = m[i][c];
            for (std::size_t j = 0; j < n; ++j) {
                m[i][j] -= f * m[c][j];
                inv[i][j] -= f * inv[c][j];
            }
        }
    }
    return inv;
}

}  // namespace ctxlab
