#include "ew/freqmap.hpp"

#include <stdexcept>

namespace ew {

namespace {

// floor of an exact rational (cpp_rational keeps denominator > 0)
BigInt floor_rational(const Rational& r)
{
    BigInt q = numerator(r) / denominator(r);
    if (numerator(r) < 0 && q * denominator(r) != numerator(r))
        --q;
    return q;
}

long clamp_to_long(const BigInt& v, long lo, long hi)
{
    if (v < lo)
        return lo;
    if (v > hi)
        return hi;
    return v.convert_to<long>();
}

} // namespace

PhiGrid::PhiGrid(int resolution) : resolution_(resolution)
{
    if (resolution < 1)
        throw std::invalid_argument("PhiGrid: resolution must be >= 1");
    values_.reserve(resolution + 2);
    values_.emplace_back(Rational(-1, resolution));
    for (int k = 1; k <= resolution + 1; ++k)
        values_.emplace_back(Rational(k - 1, resolution));
}

const Rational& PhiGrid::value(int k) const
{
    if (k < 0 || k > resolution_ + 1)
        throw std::out_of_range("PhiGrid::value: index out of range");
    return values_[static_cast<std::size_t>(k)];
}

Rational rel_freq(const OutcomeString& s)
{
    if (s.empty())
        throw std::invalid_argument("rel_freq: empty outcome string");
    long ones = 0;
    for (int e : s) {
        if (e == 0)
            throw std::invalid_argument("rel_freq: unmeasured entry");
        if (e != 1 && e != 2)
            throw std::invalid_argument("rel_freq: entry outside {1,2}");
        if (e == 1)
            ++ones;
    }
    return Rational(ones, static_cast<long>(s.size()));
}

int quantize(const Rational& fval, const PhiGrid& grid)
{
    if (fval < 0 || fval > 1)
        throw std::domain_error("quantize: frequency outside [0,1]");
    int best = 1;
    Rational best_dist = abs(grid.value(1) - fval);
    for (int k = 2; k <= grid.resolution() + 1; ++k) {
        const Rational d = abs(grid.value(k) - fval);
        if (d < best_dist) { // ties keep the earlier (smaller) phi
            best = k;
            best_dist = d;
        }
    }
    return best;
}

int quantize_tilde(const OutcomeString& s, const PhiGrid& grid)
{
    for (int e : s)
        if (e == 0)
            return 0;
    return quantize(rel_freq(s), grid);
}

int bin_of_count(long l, long n, const PhiGrid& grid)
{
    if (n < 1)
        throw std::invalid_argument("bin_of_count: ensemble size must be >= 1");
    if (l < 0 || l > n)
        throw std::invalid_argument("bin_of_count: count outside [0, n]");
    const int nu = grid.resolution();
    const Rational half(1, 2L * nu);
    for (int k = 1; k <= nu + 1; ++k) {
        const Rational lower = n * (grid.value(k) - half);
        const Rational upper = n * (grid.value(k) + half);
        if (lower < l && l <= upper)
            return k;
    }
    throw std::logic_error("bin_of_count: intervals failed to cover count");
}

CountRange bin_count_range(int k, long n, const PhiGrid& grid)
{
    if (k < 1 || k > grid.resolution() + 1)
        throw std::out_of_range("bin_count_range: bin index out of range");
    const int nu = grid.resolution();
    const Rational half(1, 2L * nu);
    // integer l satisfies lower < l <= upper  iff  floor(lower)+1 <= l <= floor(upper)
    const BigInt lo = floor_rational(n * (grid.value(k) - half)) + 1;
    const BigInt hi = floor_rational(n * (grid.value(k) + half));
    return CountRange{clamp_to_long(lo, 0, n), clamp_to_long(hi, 0, n)};
}

} // namespace ew
