#include "ew/weights.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ew {

namespace {

class KahanSum {
public:
    void add(double x)
    {
        const double y = x - c_;
        const double t = sum_ + y;
        c_ = (t - sum_) - y;
        sum_ = t;
    }
    double get() const { return sum_; }

private:
    double sum_ = 0.0;
    double c_ = 0.0;
};

void check_probability(double p1)
{
    if (!(p1 >= 0.0 && p1 <= 1.0))
        throw std::invalid_argument("probability outside [0,1]");
}

void check_probability(const Rational& p1)
{
    if (p1 < 0 || p1 > 1)
        throw std::invalid_argument("probability outside [0,1]");
}

// Numerators of p_{N,l} over the common denominator den(p1)^N:
// u_l = C(N,l) a^l b^(N-l) with a = num(p1), b = den(p1) - num(p1).
std::vector<BigInt> binomial_numerators(long n, const BigInt& a, const BigInt& b)
{
    std::vector<BigInt> u(static_cast<std::size_t>(n) + 1);
    if (a == 0) {
        u[0] = pow_bigint(b, static_cast<unsigned long>(n));
        return u;
    }
    if (b == 0) {
        u[static_cast<std::size_t>(n)] = pow_bigint(a, static_cast<unsigned long>(n));
        return u;
    }
    u[0] = pow_bigint(b, static_cast<unsigned long>(n));
    for (long l = 1; l <= n; ++l) {
        BigInt num = u[static_cast<std::size_t>(l - 1)] * ((n - l + 1) * a);
        BigInt q, r;
        divide_qr(num, BigInt(l) * b, q, r);
        if (r != 0)
            throw std::logic_error("binomial_numerators: inexact division");
        u[static_cast<std::size_t>(l)] = std::move(q);
    }
    return u;
}

} // namespace

const char* mode_name(Mode mode)
{
    return mode == Mode::exact ? "exact" : "float";
}

double WeightTable::weight(int k) const
{
    if (k < 0 || k >= bins())
        throw std::out_of_range("WeightTable::weight: bin index out of range");
    if (mode == Mode::exact)
        return to_double(exact_weights[static_cast<std::size_t>(k)]);
    return float_weights[static_cast<std::size_t>(k)];
}

const Rational& WeightTable::exact_weight(int k) const
{
    if (mode != Mode::exact)
        throw std::logic_error("WeightTable::exact_weight: table is in float mode");
    if (k < 0 || k >= bins())
        throw std::out_of_range("WeightTable::exact_weight: bin index out of range");
    return exact_weights[static_cast<std::size_t>(k)];
}

Rational binomial_mass_exact(long n, long l, const Rational& p1)
{
    if (n < 0 || l < 0 || l > n)
        throw std::invalid_argument("binomial_mass_exact: need 0 <= l <= N");
    check_probability(p1);
    const Rational q = 1 - p1;
    return Rational(binomial_coefficient(n, l))
        * pow_rational(p1, static_cast<unsigned long>(l))
        * pow_rational(q, static_cast<unsigned long>(n - l));
}

double binomial_mass(long n, long l, double p1)
{
    if (n < 0 || l < 0 || l > n)
        throw std::invalid_argument("binomial_mass: need 0 <= l <= N");
    check_probability(p1);
    // product form with explicit exponent tracking; no factorial overflow
    double mant = 1.0;
    long ex = 0;
    const auto renorm = [&mant, &ex] {
        int e = 0;
        mant = std::frexp(mant, &e);
        ex += e;
    };
    for (long i = 1; i <= l; ++i) {
        mant *= static_cast<double>(n - l + i) / static_cast<double>(i) * p1;
        renorm();
    }
    const double q = 1.0 - p1;
    for (long j = 0; j < n - l; ++j) {
        mant *= q;
        renorm();
    }
    if (ex < -2000)
        return 0.0;
    if (ex > 2000)
        throw std::overflow_error("binomial_mass: mass overflow");
    return std::ldexp(mant, static_cast<int>(ex));
}

std::vector<Rational> binomial_pmf_exact(long n, const Rational& p1)
{
    if (n < 1)
        throw std::invalid_argument("binomial_pmf_exact: N must be >= 1");
    check_probability(p1);
    const BigInt a = numerator(p1);
    const BigInt d = denominator(p1);
    const std::vector<BigInt> u = binomial_numerators(n, a, d - a);
    const BigInt den = pow_bigint(d, static_cast<unsigned long>(n));
    std::vector<Rational> pmf(u.size());
    for (std::size_t l = 0; l < u.size(); ++l)
        pmf[l] = Rational(u[l], den);
    return pmf;
}

std::vector<double> binomial_pmf(long n, double p1)
{
    if (n < 1)
        throw std::invalid_argument("binomial_pmf: N must be >= 1");
    check_probability(p1);
    std::vector<double> pmf(static_cast<std::size_t>(n) + 1, 0.0);
    if (p1 == 0.0) {
        pmf[0] = 1.0;
        return pmf;
    }
    if (p1 == 1.0) {
        pmf[static_cast<std::size_t>(n)] = 1.0;
        return pmf;
    }
    const double q = 1.0 - p1;
    long mode = static_cast<long>(std::floor((n + 1) * p1));
    if (mode > n)
        mode = n;
    std::vector<double> rel(static_cast<std::size_t>(n) + 1, 0.0);
    rel[static_cast<std::size_t>(mode)] = 1.0;
    for (long l = mode; l > 0; --l) {
        // p_{l-1}/p_l = l q / ((n-l+1) p1)
        rel[static_cast<std::size_t>(l - 1)] = rel[static_cast<std::size_t>(l)]
            * static_cast<double>(l) * q
            / (static_cast<double>(n - l + 1) * p1);
    }
    for (long l = mode; l < n; ++l) {
        // p_{l+1}/p_l = (n-l) p1 / ((l+1) q)
        rel[static_cast<std::size_t>(l + 1)] = rel[static_cast<std::size_t>(l)]
            * static_cast<double>(n - l) * p1
            / (static_cast<double>(l + 1) * q);
    }
    KahanSum total;
    for (double v : rel)
        total.add(v);
    const double scale = total.get();
    for (std::size_t l = 0; l < rel.size(); ++l)
        pmf[l] = rel[l] / scale;
    return pmf;
}

WeightTable closed_form_weights(long n, int nu, const Rational& p1, Mode mode)
{
    if (n < 1)
        throw std::invalid_argument("closed_form_weights: N must be >= 1");
    check_probability(p1);
    const PhiGrid grid(nu);
    WeightTable table;
    table.n = n;
    table.resolution = nu;
    table.mode = mode;
    table.p1_exact = p1;
    table.p1 = to_double(p1);
    if (mode == Mode::exact) {
        const BigInt a = numerator(p1);
        const BigInt d = denominator(p1);
        const std::vector<BigInt> u = binomial_numerators(n, a, d - a);
        const BigInt den = pow_bigint(d, static_cast<unsigned long>(n));
        table.exact_weights.assign(static_cast<std::size_t>(table.bins()),
                                   Rational(0));
        for (int k = 1; k <= nu + 1; ++k) {
            const CountRange range = bin_count_range(k, n, grid);
            BigInt num = 0;
            for (long l = range.lo; l <= range.hi; ++l)
                num += u[static_cast<std::size_t>(l)];
            table.exact_weights[static_cast<std::size_t>(k)] = Rational(num, den);
        }
        return table;
    }
    const std::vector<double> pmf = binomial_pmf(n, table.p1);
    table.float_weights.assign(static_cast<std::size_t>(table.bins()), 0.0);
    for (int k = 1; k <= nu + 1; ++k) {
        const CountRange range = bin_count_range(k, n, grid);
        KahanSum sum;
        for (long l = range.lo; l <= range.hi; ++l)
            sum.add(pmf[static_cast<std::size_t>(l)]);
        table.float_weights[static_cast<std::size_t>(k)] = sum.get();
    }
    return table;
}

WeightTable closed_form_weights(long n, int nu, double p1)
{
    if (n < 1)
        throw std::invalid_argument("closed_form_weights: N must be >= 1");
    check_probability(p1);
    const PhiGrid grid(nu);
    WeightTable table;
    table.n = n;
    table.resolution = nu;
    table.mode = Mode::floating;
    table.p1 = p1;
    const std::vector<double> pmf = binomial_pmf(n, p1);
    table.float_weights.assign(static_cast<std::size_t>(table.bins()), 0.0);
    for (int k = 1; k <= nu + 1; ++k) {
        const CountRange range = bin_count_range(k, n, grid);
        KahanSum sum;
        for (long l = range.lo; l <= range.hi; ++l)
            sum.add(pmf[static_cast<std::size_t>(l)]);
        table.float_weights[static_cast<std::size_t>(k)] = sum.get();
    }
    return table;
}

double observer_weight(int i, const Scenario& scen)
{
    if (i == 1)
        return std::norm(scen.c1);
    if (i == 2)
        return std::norm(scen.c2);
    throw std::out_of_range("observer_weight: belief index must be 1 or 2");
}

Rational observer_weight_exact(int i, const Rational& p1)
{
    check_probability(p1);
    if (i == 1)
        return p1;
    if (i == 2)
        return 1 - p1;
    throw std::out_of_range("observer_weight_exact: belief index must be 1 or 2");
}

KPrimeResult find_k_prime(const Rational& p1, const PhiGrid& grid)
{
    check_probability(p1);
    int best = 1;
    Rational best_dist = abs(grid.value(1) - p1);
    bool tie = false;
    for (int k = 2; k <= grid.resolution() + 1; ++k) {
        const Rational d = abs(grid.value(k) - p1);
        if (d < best_dist) {
            best = k;
            best_dist = d;
            tie = false;
        } else if (d == best_dist) {
            tie = true; // grid spacing is uniform: only adjacent bins can tie
        }
    }
    KPrimeResult out;
    out.tie = tie;
    if (tie) {
        out.k_less = best;
        out.k_greater = best + 1;
    } else {
        out.k_prime = best;
    }
    return out;
}

GapDelta gap_delta(const Rational& p1, const PhiGrid& grid)
{
    const KPrimeResult kp = find_k_prime(p1, grid);
    GapDelta out;
    if (kp.tie) {
        out.delta = abs(grid.value(kp.k_less) - p1);
        out.side = GapSide::midpoint;
        return out;
    }
    out.delta = abs(grid.value(kp.k_prime) - p1);
    if (out.delta == 0)
        out.side = GapSide::on_grid;
    else
        out.side = p1 < grid.value(kp.k_prime) ? GapSide::below : GapSide::above;
    return out;
}

TieDecomposition tie_decomposition(long n, int nu)
{
    if (nu < 1 || nu % 2 == 0)
        throw std::invalid_argument("tie_decomposition: resolution must be odd");
    if (n < 2)
        throw std::invalid_argument("tie_decomposition: N must be >= 2");
    const Rational half(1, 2);
    const PhiGrid grid(nu);
    const KPrimeResult kp = find_k_prime(half, grid);
    if (!kp.tie)
        throw std::logic_error("tie_decomposition: expected a tied pair at p1 = 1/2");

    const WeightTable table = closed_form_weights(n, nu, half, Mode::exact);
    TieDecomposition out;
    out.n = n;
    out.resolution = nu;
    out.k_less = kp.k_less;
    out.k_greater = kp.k_greater;
    out.w_less = table.exact_weight(kp.k_less);
    out.w_greater = table.exact_weight(kp.k_greater);

    const BigInt two_n = pow_bigint(BigInt(2), static_cast<unsigned long>(n));
    if (n % 2 == 0)
        out.t_less = Rational(binomial_coefficient(n, n / 2), two_n);
    const long m_num = n * (nu + 2);
    const long denom = 2L * nu;
    if (m_num % denom == 0) {
        const long far = m_num / denom;
        if (far > 0 && far <= n)
            out.t_greater = Rational(binomial_coefficient(n, far), two_n);
    }
    out.t_shared = out.w_less - out.t_less;
    if (out.w_greater != out.t_shared + out.t_greater)
        throw std::logic_error("tie_decomposition: three-term identity violated");
    return out;
}

double central_term_asymptotic(long n)
{
    if (n < 2 || n % 2 != 0)
        throw std::invalid_argument("central_term_asymptotic: N must be even and >= 2");
    return std::sqrt(2.0 / (std::numbers::pi * static_cast<double>(n)));
}

double lln_tail(long n, const Rational& p1, const Rational& eps,
                const IndexFilter& subset)
{
    if (eps <= 0)
        throw std::invalid_argument("lln_tail: epsilon must be positive");
    check_probability(p1);
    const std::vector<double> pmf = binomial_pmf(n, to_double(p1));
    const Rational center = n * p1;
    const Rational radius = n * eps;
    KahanSum sum;
    for (long l = 0; l <= n; ++l) {
        if (abs(Rational(l) - center) > radius && (!subset || subset(l)))
            sum.add(pmf[static_cast<std::size_t>(l)]);
    }
    return sum.get();
}

Rational lln_tail_exact(long n, const Rational& p1, const Rational& eps,
                        const IndexFilter& subset)
{
    if (eps <= 0)
        throw std::invalid_argument("lln_tail_exact: epsilon must be positive");
    check_probability(p1);
    const BigInt a = numerator(p1);
    const BigInt d = denominator(p1);
    const std::vector<BigInt> u = binomial_numerators(n, a, d - a);
    const Rational center = n * p1;
    const Rational radius = n * eps;
    BigInt num = 0;
    for (long l = 0; l <= n; ++l) {
        if (abs(Rational(l) - center) > radius && (!subset || subset(l)))
            num += u[static_cast<std::size_t>(l)];
    }
    return Rational(num, pow_bigint(d, static_cast<unsigned long>(n)));
}

} // namespace ew
