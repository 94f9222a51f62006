#include "ew/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace ew {

BigInt binomial_coefficient(long n, long k)
{
    if (n < 0 || k < 0 || k > n)
        return 0;
    if (k > n - k)
        k = n - k;
    BigInt c = 1;
    for (long i = 1; i <= k; ++i) {
        c *= n - k + i;
        c /= i; // exact at every step: C(n-k+i, i) is integral
    }
    return c;
}

Rational pow_rational(const Rational& base, unsigned long e)
{
    Rational result = 1;
    Rational b = base;
    while (e != 0) {
        if (e & 1UL)
            result *= b;
        b *= b;
        e >>= 1UL;
    }
    return result;
}

BigInt pow_bigint(const BigInt& base, unsigned long e)
{
    BigInt result = 1;
    BigInt b = base;
    while (e != 0) {
        if (e & 1UL)
            result *= b;
        b *= b;
        e >>= 1UL;
    }
    return result;
}

double to_double(const Rational& r)
{
    return r.convert_to<double>();
}

std::string rational_to_string(const Rational& r)
{
    return numerator(r).str() + "/" + denominator(r).str();
}

namespace {

bool is_integer_token(const std::string& s)
{
    if (s.empty())
        return false;
    std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
    if (i == s.size())
        return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            return false;
    return true;
}

} // namespace

std::optional<Rational> parse_rational(const std::string& text)
{
    const auto slash = text.find('/');
    if (slash != std::string::npos) {
        const std::string num = text.substr(0, slash);
        const std::string den = text.substr(slash + 1);
        if (!is_integer_token(num) || !is_integer_token(den))
            return std::nullopt;
        const BigInt d(den);
        if (d == 0)
            return std::nullopt;
        return Rational(BigInt(num), d);
    }
    const auto dot = text.find('.');
    if (dot != std::string::npos) {
        const std::string whole = text.substr(0, dot);
        const std::string frac = text.substr(dot + 1);
        if (frac.empty() || !is_integer_token(frac) || frac[0] == '+' || frac[0] == '-')
            return std::nullopt;
        std::string sign;
        std::string whole_digits = whole;
        if (!whole.empty() && (whole[0] == '+' || whole[0] == '-')) {
            sign = whole.substr(0, 1);
            whole_digits = whole.substr(1);
        }
        if (!whole_digits.empty() && !is_integer_token(whole_digits))
            return std::nullopt;
        BigInt scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i)
            scale *= 10;
        const BigInt w = whole_digits.empty() ? BigInt(0) : BigInt(whole_digits);
        Rational r(w * scale + BigInt(frac), scale);
        if (sign == "-")
            r = -r;
        return r;
    }
    if (!is_integer_token(text))
        return std::nullopt;
    return Rational(BigInt(text));
}

} // namespace ew
