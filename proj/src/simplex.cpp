#include "ctxlab/simplex.hpp"

#include <optional>

namespace ctxlab {

namespace {

// Dense tableau for min cost.z subject to T z = rhs, z >= 0, starting from an artificial basis.
class Tableau {
public:
    Tableau(RationalMatrix rows, std::vector<Rational> rhs, std::size_t structural)
        : m_(rows.size()), n_(structural)
    {
        for (std::size_t i = 0; i < m_; ++i) {
            if (rhs[i] < 0) {
                for (auto& v : rows[i])
                    v = -v;
                rhs[i] = -rhs[i];
            }
            rows[i].resize(n_ + m_, 0);
            rows[i][n_ + i] = 1;
            rows[i].push_back(rhs[i]);
            basis_.push_back(n_ + i);
        }
        t_ = std::move(rows);
    }

    bool phase_one()
    {
        std::vector<Rational> cost(n_ + m_, 0);
        for (std::size_t i = 0; i < m_; ++i)
            cost[n_ + i] = 1;
        run(cost, n_ + m_);
        Rational sum = 0;
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] >= n_)
                sum += t_[i].back();
        }
        if (sum != 0)
            return false;
        // drive zero-level artificials out; rows with no structural entry are redundant
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] < n_)
                continue;
            for (std::size_t j = 0; j < n_; ++j) {
                if (!is_zero(t_[i][j])) {
                    pivot(i, j);
                    break;
                }
            }
        }
        return true;
    }

    void phase_two(const std::vector<Rational>& c)
    {
        std::vector<Rational> cost(n_ + m_, 0);
        for (std::size_t j = 0; j < n_; ++j)
            cost[j] = c[j];
        // artificial columns never re-enter
        run(cost, n_);
    }

    std::vector<Rational> solution() const
    {
        std::vector<Rational> z(n_, 0);
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] < n_)
                z[basis_[i]] = t_[i].back();
        }
        return z;
    }

private:
    void run(const std::vector<Rational>& cost, std::size_t enter_limit)
    {
        for (;;) {
            std::optional<std::size_t> enter;
            for (std::size_t j = 0; j < enter_limit && !enter; ++j) {
                Rational r = cost[j];
                for (std::size_t i = 0; i < m_; ++i) {
                    if (!is_zero(t_[i][j]))
                        r -= cost[basis_[i]] * t_[i][j];
                }
                if (r < 0)
                    enter = j;
            }
            if (!enter)
                return;
            std::size_t j = *enter;
            std::optional<std::size_t> leave;
            Rational best;
            for (std::size_t i = 0; i < m_; ++i) {
                if (t_[i][j] <= 0)
                    continue;
                Rational ratio = t_[i].back() / t_[i][j];
                if (!leave || ratio < best || (ratio == best && basis_[i] < basis_[*leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (!leave)
                return;  // unbounded; cannot happen for boxed problems
            pivot(*leave, j);
        }
    }

    void pivot(std::size_t r, std::size_t c)
    {
        Rational p = t_[r][c];
        for (auto& v : t_[r])
            v /= p;
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == r || is_zero(t_[i][c]))
                continue;
            Rational f = t_[i][c];
            for (std::size_t k = 0; k < t_[i].size(); ++k) {
                if (!is_zero(t_[r][k]))
                    t_[i][k] -= f * t_[r][k];
            }
        }
        basis_[r] = c;
    }

    std::size_t m_;
    std::size_t n_;
    RationalMatrix t_;
    std::vector<std::size_t> basis_;
};

}  // namespace

LpResult minimize(const std::vector<Rational>& c, const RationalMatrix& a, const std::vector<Rational>& b,
                  const std::vector<Rational>& lo, const std::vector<Rational>& hi)
{
    std::size_t n = c.size();
    std::size_t m = a.size();
    LpResult result;
    for (std::size_t j = 0; j < n; ++j) {
        if (lo[j] > hi[j])
            return result;
    }
    // x = lo + u, columns: u (n), surplus s (m), slack w (n)
    std::size_t cols = 2 * n + m;
    RationalMatrix rows;
    std::vector<Rational> rhs;
    for (std::size_t i = 0; i < m; ++i) {
        std::vector<Rational> r(cols, 0);
        Rational shift = b[i];
        for (std::size_t j = 0; j < n; ++j) {
            r[j] = a[i][j];
            shift -= a[i][j] * lo[j];
        }
        r[n + i] = -1;
        rows.push_back(std::move(r));
        rhs.push_back(shift);
    }
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<Rational> r(cols, 0);
        r[j] = 1;
        r[n + m + j] = 1;
        rows.push_back(std::move(r));
        rhs.push_back(hi[j] - lo[j]);
    }
    Tableau t(std::move(rows), std::move(rhs), cols);
    if (!t.phase_one())
        return result;
    std::vector<Rational> cost(cols, 0);
    for (std::size_t j = 0; j < n; ++j)
        cost[j] = c[j];
    t.phase_two(cost);
    auto z = t.solution();
    result.feasible = true;
    result.value = 0;
    for (std::size_t j = 0; j < n; ++j) {
        result.x.push_back(lo[j] + z[j]);
        result.value += c[j] * result.x[j];
    }
    return result;
}

}  // namespace ctxlab
