#include "ctxlab/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace ctxlab {

namespace {

Integer parse_integer(std::string_view text, std::string_view whole)
{
    std::size_t start = 0;
    if (!text.empty() && (text[0] == '-' || text[0] == '+'))
        start = 1;
    if (start == text.size())
        throw std::invalid_argument("malformed rational \"" + std::string(whole) + "\"");
    for (std::size_t i = start; i < text.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(text[i])))
            throw std::invalid_argument("malformed rational \"" + std::string(whole) + "\"");
    }
    std::string digits(text[0] == '+' ? text.substr(1) : text);
    return Integer(digits);
}

}  // namespace

Rational parse_rational(std::string_view text)
{
    auto slash = text.find('/');
    if (slash == std::string_view::npos)
        return Rational(parse_integer(text, text));
    Integer num = parse_integer(text.substr(0, slash), text);
    Integer den = parse_integer(text.substr(slash + 1), text);
    if (den == 0)
        throw std::invalid_argument("zero denominator in \"" + std::string(text) + "\"");
    return Rational(num, den);
}

std::string to_string(const Rational& value)
{
    Integer den = denominator(value);
    if (den == 1)
        return numerator(value).str();
    return numerator(value).str() + "/" + den.str();
}

std::vector<Rational> primitive_integer_vector(std::vector<Rational> entries)
{
    Integer lcm_den = 1;
    for (const auto& e : entries) {
        if (!is_zero(e))
            lcm_den = boost::multiprecision::lcm(lcm_den, denominator(e));
    }
    Integer g = 0;
    for (const auto& e : entries) {
        if (is_zero(e))
            continue;
        Integer scaled = numerator(e) * (lcm_den / denominator(e));
        g = boost::multiprecision::gcd(g, abs(scaled));
    }
    if (g == 0)
        return entries;
    Rational factor(lcm_den, g);
    for (auto& e : entries)
        e *= factor;
    return entries;
}

}  // namespace ctxlab
