#include <algorithm>

#include "ctxlab/graph.hpp"
#include "ctxlab/polytope.hpp"

namespace ctxlab {

namespace {

constexpr std::size_t max_circle_refinement_edges = 20;

// Revised phase-I simplex over columns A_j = (1, [s_j(e) = 0] for each edge e) and one
// artificial unit column per row. Columns are priced on the fly from the assignments.
class PhaseOne {
public:
    PhaseOne(const std::vector<OutcomeAssignment>& columns, const EdgeDistribution& p)
        : cols_(columns), m_(p.values().size() + 1), n_(columns.size())
    {
        binv_.assign(m_, std::vector<Rational>(m_, 0));
        for (std::size_t i = 0; i < m_; ++i) {
            binv_[i][i] = 1;
            basis_.push_back(n_ + i);
        }
        xb_.push_back(1);
        for (const auto& v : p.values())
            xb_.push_back(v);
        in_basis_.assign(n_ + m_, false);
        for (std::size_t i = 0; i < m_; ++i)
            in_basis_[n_ + i] = true;
    }

    void solve()
    {
        for (;;) {
            compute_duals();
            auto entering = choose_entering();
            if (!entering)
                return;
            pivot(*entering);
        }
    }

    Rational objective() const
    {
        Rational sum = 0;
        for (std::size_t k = 0; k < m_; ++k) {
            if (basis_[k] >= n_)
                sum += xb_[k];
        }
        return sum;
    }

    const std::vector<Rational>& duals() const { return y_; }

    std::vector<std::pair<std::size_t, Rational>> structural_values() const
    {
        std::vector<std::pair<std::size_t, Rational>> out;
        for (std::size_t k = 0; k < m_; ++k) {
            if (basis_[k] < n_ && xb_[k] > 0)
                out.emplace_back(basis_[k], xb_[k]);
        }
        std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        return out;
    }

private:
    std::vector<Rational> column(std::size_t j) const
    {
        std::vector<Rational> a(m_, 0);
        if (j >= n_) {
            a[j - n_] = 1;
            return a;
        }
        a[0] = 1;
        const auto& s = cols_[j];
        for (std::size_t e = 0; e + 1 < m_; ++e) {
            if (s[e] == 0)
                a[e + 1] = 1;
        }
        return a;
    }

    void compute_duals()
    {
        y_.assign(m_, 0);
        for (std::size_t k = 0; k < m_; ++k) {
            if (basis_[k] < n_)
                continue;
            for (std::size_t i = 0; i < m_; ++i)
                y_[i] += binv_[k][i];
        }
    }

    // Bland's rule: the smallest column index with negative reduced cost.
    std::optional<std::size_t> choose_entering() const
    {
        for (std::size_t j = 0; j < n_; ++j) {
            if (in_basis_[j])
                continue;
            Rational ya = y_[0];
            const auto& s = cols_[j];
            for (std::size_t e = 0; e + 1 < m_; ++e) {
                if (s[e] == 0)
                    ya += y_[e + 1];
            }
            if (ya > 0)
                return j;
        }
        for (std::size_t i = 0; i < m_; ++i) {
            if (!in_basis_[n_ + i] && y_[i] > 1)
                return n_ + i;
        }
        return std::nullopt;
    }

    void pivot(std::size_t j)
    {
        std::vector<Rational> a = column(j);
        std::vector<Rational> d(m_, 0);
        for (std::size_t i = 0; i < m_; ++i) {
            for (std::size_t k = 0; k < m_; ++k) {
                if (!is_zero(a[k]))
                    d[i] += binv_[i][k] * a[k];
            }
        }
        std::optional<std::size_t> leave;
        Rational best;
        for (std::size_t i = 0; i < m_; ++i) {
            if (d[i] <= 0)
                continue;
            Rational ratio = xb_[i] / d[i];
            if (!leave || ratio < best || (ratio == best && basis_[i] < basis_[*leave])) {
                leave = i;
                best = ratio;
            }
        }
        // phase I is bounded below, so some row always limits the step
        std::size_t r = *leave;
        Rational piv = d[r];
        for (std::size_t k = 0; k < m_; ++k)
            binv_[r][k] /= piv;
        xb_[r] /= piv;
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == r || is_zero(d[i]))
                continue;
            Rational f = d[i];
            for (std::size_t k = 0; k < m_; ++k)
                binv_[i][k] -= f * binv_[r][k];
            xb_[i] -= f * xb_[r];
        }
        in_basis_[basis_[r]] = false;
        in_basis_[j] = true;
        basis_[r] = j;
    }

    const std::vector<OutcomeAssignment>& cols_;
    std::size_t m_;
    std::size_t n_;
    std::vector<std::vector<Rational>> binv_;
    std::vector<std::size_t> basis_;
    std::vector<Rational> xb_;
    std::vector<bool> in_basis_;
    std::vector<Rational> y_;
};

}  // namespace

ContextualityCertificate is_noncontextual_lp(const EdgeDistribution& p, const Limits& limits)
{
    require_valid(p);
    auto assignments = deterministic_enumerate(p.scenario_ptr(), limits);
    PhaseOne lp(assignments, p);
    lp.solve();

    ContextualityCertificate cert;
    if (lp.objective() == 0) {
        cert.verdict = Verdict::noncontextual;
        for (const auto& [j, w] : lp.structural_values())
            cert.mixture.emplace_back(assignments[j], w);
        std::sort(cert.mixture.begin(), cert.mixture.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        return cert;
    }

    // y0 + sum_e y_e delta_e <= 0 for every assignment, > 0 at p
    const auto& y = lp.duals();
    LinearInequality sep;
    const auto& edges = p.scenario().edges();
    for (std::size_t e = 0; e < edges.size(); ++e)
        sep.add(edges[e], -y[e + 1]);
    sep.rhs = y[0];
    sep.label = "separating";
    cert.verdict = Verdict::contextual;
    cert.farkas = normalize(std::move(sep));
    cert.separating = cert.farkas;
    if (p.scenario().cone() && p.scenario().cone()->base.edges().size() <= max_circle_refinement_edges) {
        if (auto row = most_violated_circle_row(p))
            cert.separating = std::move(row);
    }
    return cert;
}

std::pair<Rational, LinearInequality> tightest_circle_row(const EdgeDistribution& p, std::span<const EdgeId> circle)
{
    // minimise sum (-1)^{a_i} tbar_i over a with sum a = N + 1 (mod 2)
    std::size_t n = circle.size();
    if (n == 0)
        throw InvalidInput("empty circle");
    std::vector<Rational> tbar;
    std::vector<int> a(n);
    int parity = 0;
    for (std::size_t i = 0; i < n; ++i) {
        tbar.push_back(p.expectation(p.scenario().edge_index(circle[i])));
        a[i] = tbar[i] > 0;
        parity += a[i];
    }
    if ((parity + static_cast<int>(n) + 1) % 2 != 0) {
        std::size_t k = 0;
        for (std::size_t i = 1; i < n; ++i) {
            if (abs(tbar[i]) < abs(tbar[k]))
                k = i;
        }
        a[k] ^= 1;
    }
    Rational value = static_cast<int>(n) - 2;
    // sum 2 (-1)^{a_i} p_i >= 2 - N + sum (-1)^{a_i}
    LinearInequality row;
    row.rhs = 2 - static_cast<int>(n);
    for (std::size_t i = 0; i < n; ++i) {
        int sign = a[i] ? -1 : 1;
        value += sign * tbar[i];
        row.add(circle[i], 2 * sign);
        row.rhs += sign;
    }
    row.label = "circle";
    return {value, normalize(std::move(row))};
}

std::optional<LinearInequality> most_violated_circle_row(const EdgeDistribution& p)
{
    const ConeStructure* cone = p.scenario().cone();
    if (!cone)
        throw InvalidInput("circle inequalities need a cone scenario");
    std::optional<LinearInequality> best;
    Rational best_value;
    for (const auto& c : enumerate_circles(cone->base)) {
        auto [value, row] = tightest_circle_row(p, c.edges);
        if (value < 0 && (!best || value < best_value)) {
            best = std::move(row);
            best_value = value;
        }
    }
    return best;
}

}  // namespace ctxlab
