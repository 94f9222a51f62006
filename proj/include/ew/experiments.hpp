#pragma once

#include "ew/weights.hpp"

#include <optional>
#include <vector>

namespace ew {

struct SweepRow {
    long n = 0;
    WeightTable table;
    KPrimeResult nearest;
    double mass_at_kprime = 0.0;  // sum over the tied pair when tied
    double mass_elsewhere = 0.0;
    std::optional<double> tail_at_default_eps; // absent at a midpoint
    std::optional<TieDecomposition> tie;
};

struct SweepResult {
    int resolution = 0;
    Rational p1;
    Mode mode = Mode::floating;
    Rational default_eps; // (1/(2 nu) - Delta)/2, a convention, 0 at a midpoint
    std::vector<SweepRow> rows;
};

/// Weight tables across an ascending N list, with the nearest-bin mass and
/// the tail bound at the default epsilon per row. Exact mode requires
/// every N <= 2000.
SweepResult run_sweep(const Rational& p1, int nu, const std::vector<long>& n_list,
                      Mode mode);

/// The p1 = 1/2, odd-resolution study: exact tie decompositions (per row,
/// for N <= 2000) alongside float tables at any N. All N must be even.
SweepResult run_tie_study(int nu, const std::vector<long>& n_list);

struct LlnRow {
    long n = 0;
    Rational eps;
    double tail = 0.0;
};

/// S_N per (eps, N), row-major over eps then N.
std::vector<LlnRow> run_lln_study(const Rational& p1,
                                  const std::vector<Rational>& eps_list,
                                  const std::vector<long>& n_list, Mode mode);

} // namespace ew
