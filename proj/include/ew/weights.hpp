#pragma once

#include "ew/freqmap.hpp"
#include "ew/rational.hpp"
#include "ew/scenario.hpp"

#include <functional>
#include <string>
#include <vector>

namespace ew {

enum class Mode { exact, floating };

const char* mode_name(Mode mode); // "exact" / "float"

/// Per-bin weights W_k for one (N, nu, |c1|^2); k = 0 is the ignorance bin
/// and always carries weight zero.
struct WeightTable {
    long n = 0;
    int resolution = 0;
    Mode mode = Mode::floating;
    Rational p1_exact;                   // set in exact mode
    double p1 = 0.0;
    std::vector<Rational> exact_weights; // size nu+2 in exact mode
    std::vector<double> float_weights;   // size nu+2 in float mode

    int bins() const { return resolution + 2; }
    double weight(int k) const;
    const Rational& exact_weight(int k) const; // throws unless exact mode
};

/// p_{N,l} = C(N,l) p1^l (1-p1)^(N-l).
Rational binomial_mass_exact(long n, long l, const Rational& p1);
double binomial_mass(long n, long l, double p1);

/// Full mass function for l = 0..N. The floating version uses the
/// multiplicative recurrence seeded at the mode with compensated
/// normalization, so no factorials are formed at any size.
std::vector<Rational> binomial_pmf_exact(long n, const Rational& p1);
std::vector<double> binomial_pmf(long n, double p1);

/// W_k = sum of p_{N,l} over the counts l binned to k; W_0 = 0.
WeightTable closed_form_weights(long n, int nu, const Rational& p1, Mode mode);
WeightTable closed_form_weights(long n, int nu, double p1); // float mode

/// W_{b,i} = |c_i|^2, independent of the system index and of N.
double observer_weight(int i, const Scenario& scen);
/// Exact-mode counterpart given |c1|^2 as a rational: p1 for i = 1,
/// 1 - p1 for i = 2.
Rational observer_weight_exact(int i, const Rational& p1);

/// Nearest grid bin(s) to p1: unique k' or the tied adjacent pair.
struct KPrimeResult {
    bool tie = false;
    int k_prime = 0;   // valid when !tie
    int k_less = 0;    // valid when tie
    int k_greater = 0; // valid when tie
};
KPrimeResult find_k_prime(const Rational& p1, const PhiGrid& grid);

enum class GapSide { below, above, on_grid, midpoint };

struct GapDelta {
    Rational delta;
    GapSide side;
};
/// Distance from p1 to the nearest grid value and which side p1 lies on.
GapDelta gap_delta(const Rational& p1, const PhiGrid& grid);

/// At p1 = 1/2 with odd resolution the two tied bin weights share every
/// term except one: W_{k<} = T + T_less and W_{k>} = T + T_greater.
struct TieDecomposition {
    long n = 0;
    int resolution = 0;
    int k_less = 0;
    int k_greater = 0;
    Rational w_less;
    Rational w_greater;
    Rational t_shared;  // T(N)
    Rational t_less;    // central binomial term (N even), else 0
    Rational t_greater; // far term when N(nu+2)/(2 nu) is an integer in (0, N]
};
TieDecomposition tie_decomposition(long n, int nu);

/// Stirling estimate sqrt(2/(pi N)) of the central term C(N, N/2)/2^N.
double central_term_asymptotic(long n);

/// Tail sum S_N over counts with |l - N p1| > N eps; an optional filter
/// restricts the summation to an arbitrary subset of those counts.
using IndexFilter = std::function<bool(long)>;
double lln_tail(long n, const Rational& p1, const Rational& eps,
                const IndexFilter& subset = {});
Rational lln_tail_exact(long n, const Rational& p1, const Rational& eps,
                        const IndexFilter& subset = {});

} // namespace ew
