#include "ew/experiments.hpp"

#include <algorithm>
#include <stdexcept>

namespace ew {

namespace {

constexpr long kExactModeMaxN = 2000;

void check_n_list(const std::vector<long>& n_list, Mode mode)
{
    if (n_list.empty())
        throw std::invalid_argument("experiment: empty N list");
    if (!std::is_sorted(n_list.begin(), n_list.end()))
        throw std::invalid_argument("experiment: N list must be ascending");
    if (n_list.front() < 1)
        throw std::invalid_argument("experiment: N must be >= 1");
    if (mode == Mode::exact && n_list.back() > kExactModeMaxN)
        throw std::invalid_argument("experiment: exact mode is capped at N = 2000");
}

Rational default_epsilon(const Rational& p1, const PhiGrid& grid)
{
    const GapDelta gap = gap_delta(p1, grid);
    const Rational half_bin(1, 2L * grid.resolution());
    return (half_bin - gap.delta) / 2; // zero exactly at a midpoint
}

} // namespace

SweepResult run_sweep(const Rational& p1, int nu, const std::vector<long>& n_list,
                      Mode mode)
{
    check_n_list(n_list, mode);
    const PhiGrid grid(nu);
    const KPrimeResult nearest = find_k_prime(p1, grid);
    const Rational eps = default_epsilon(p1, grid);

    SweepResult result;
    result.resolution = nu;
    result.p1 = p1;
    result.mode = mode;
    result.default_eps = eps;
    result.rows.reserve(n_list.size());
    for (long n : n_list) {
        SweepRow row;
        row.n = n;
        row.table = closed_form_weights(n, nu, p1, mode);
        row.nearest = nearest;
        double at = 0.0;
        if (nearest.tie)
            at = row.table.weight(nearest.k_less) + row.table.weight(nearest.k_greater);
        else
            at = row.table.weight(nearest.k_prime);
        row.mass_at_kprime = at;
        double rest = 0.0;
        for (int k = 0; k < row.table.bins(); ++k) {
            if (nearest.tie && (k == nearest.k_less || k == nearest.k_greater))
                continue;
            if (!nearest.tie && k == nearest.k_prime)
                continue;
            rest += row.table.weight(k);
        }
        row.mass_elsewhere = rest;
        if (eps > 0)
            row.tail_at_default_eps = lln_tail(n, p1, eps);
        result.rows.push_back(std::move(row));
    }
    return result;
}

SweepResult run_tie_study(int nu, const std::vector<long>& n_list)
{
    if (nu < 1 || nu % 2 == 0)
        throw std::invalid_argument("run_tie_study: resolution must be odd");
    for (long n : n_list)
        if (n % 2 != 0)
            throw std::invalid_argument("run_tie_study: every N must be even");
    check_n_list(n_list, Mode::floating);

    const Rational half(1, 2);
    SweepResult result = run_sweep(half, nu, n_list, Mode::floating);
    for (SweepRow& row : result.rows)
        if (row.n <= kExactModeMaxN)
            row.tie = tie_decomposition(row.n, nu);
    return result;
}

std::vector<LlnRow> run_lln_study(const Rational& p1,
                                  const std::vector<Rational>& eps_list,
                                  const std::vector<long>& n_list, Mode mode)
{
    if (eps_list.empty())
        throw std::invalid_argument("run_lln_study: empty epsilon list");
    for (const Rational& eps : eps_list)
        if (eps <= 0)
            throw std::invalid_argument("run_lln_study: epsilon must be positive");
    check_n_list(n_list, mode);

    std::vector<LlnRow> rows;
    rows.reserve(eps_list.size() * n_list.size());
    for (const Rational& eps : eps_list) {
        for (long n : n_list) {
            LlnRow row;
            row.n = n;
            row.eps = eps;
            row.tail = mode == Mode::exact
                           ? to_double(lln_tail_exact(n, p1, eps))
                           : lln_tail(n, p1, eps);
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

} // namespace ew
