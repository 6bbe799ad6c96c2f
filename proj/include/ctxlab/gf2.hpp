#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace ctxlab {

/// Row of a matrix over Z/2, packed 64 columns per word.
class Gf2Row {
public:
    Gf2Row() = default;
    explicit Gf2Row(std::size_t columns) : words_((columns + 63) / 64, 0) {}

    bool get(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1u; }
    void flip(std::size_t i) { words_[i / 64] ^= std::uint64_t{1} << (i % 64); }
    void set(std::size_t i, bool v)
    {
        if (get(i) != v)
            flip(i);
    }
    Gf2Row& operator^=(const Gf2Row& other)
    {
        for (std::size_t w = 0; w < words_.size(); ++w)
            words_[w] ^= other.words_[w];
        return *this;
    }

private:
    std::vector<std::uint64_t> words_;
};

/// Solution set {particular + span(basis)} of A x = b over Z/2.
struct AffineSpace {
    bool consistent = true;
    std::vector<std::uint8_t> particular;
    std::vector<std::vector<std::uint8_t>> basis;
};

/// Gauss-Jordan elimination. `rhs` has one bit per row of `rows`.
AffineSpace solve_gf2(std::vector<Gf2Row> rows, std::vector<std::uint8_t> rhs, std::size_t columns);

}  // namespace ctxlab
