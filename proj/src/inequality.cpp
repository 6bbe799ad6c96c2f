#include "ctxlab/inequality.hpp"

#include <set>

#include "ctxlab/error.hpp"

namespace ctxlab {

void LinearInequality::add(const EdgeId& edge, const Rational& c)
{
    if (is_zero(c))
        return;
    auto [it, inserted] = coeffs.emplace(edge, c);
    if (!inserted) {
        it->second += c;
        if (is_zero(it->second))
            coeffs.erase(it);
    }
}

Rational LinearInequality::coefficient(const EdgeId& edge) const
{
    auto it = coeffs.find(edge);
    return it == coeffs.end() ? Rational(0) : it->second;
}

Rational LinearInequality::lhs(const EdgeDistribution& p) const
{
    Rational sum = 0;
    for (const auto& [edge, c] : coeffs) {
        if (!p.scenario().has_edge(edge))
            throw InvalidInput("inequality uses edge \"" + edge + "\" which the scenario does not have");
        sum += c * p.value(edge);
    }
    return sum;
}

LinearInequality normalize(LinearInequality ineq)
{
    std::vector<Rational> v;
    for (const auto& [edge, c] : ineq.coeffs)
        v.push_back(c);
    v.push_back(ineq.rhs);
    v = primitive_integer_vector(std::move(v));
    std::size_t i = 0;
    for (auto& [edge, c] : ineq.coeffs)
        c = v[i++];
    ineq.rhs = v[i];
    return ineq;
}

std::string to_string(const LinearInequality& ineq, const std::vector<EdgeId>& edge_order)
{
    std::vector<EdgeId> order;
    std::set<EdgeId> placed;
    for (const auto& e : edge_order) {
        if (ineq.coeffs.contains(e) && placed.insert(e).second)
            order.push_back(e);
    }
    for (const auto& [e, c] : ineq.coeffs) {
        if (placed.insert(e).second)
            order.push_back(e);
    }
    std::string out;
    for (const auto& e : order) {
        const Rational& c = ineq.coeffs.at(e);
        bool negative = c < 0;
        Rational mag = negative ? Rational(-c) : c;
        if (out.empty())
            out += negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
        if (mag != 1)
            out += to_string(mag) + " ";
        out += e;
    }
    if (out.empty())
        out = "0";
    return out + " >= " + to_string(ineq.rhs);
}

}  // namespace ctxlab
