#pragma once

#include "ew/rational.hpp"

#include <vector>

namespace ew {

/// Output grid of a resolution-nu frequency-measuring device:
/// phi_k = (k-1)/nu for k = 1..nu+1, plus the ignorance value phi_0 = -1/nu.
class PhiGrid {
public:
    explicit PhiGrid(int resolution);

    int resolution() const { return resolution_; }
    int size() const { return resolution_ + 2; } // indices 0..nu+1

    /// phi_k as an exact rational, k in [0, nu+1].
    const Rational& value(int k) const;

private:
    int resolution_;
    std::vector<Rational> values_;
};

/// Per-system readings; entries in {0,1,2}, 0 meaning "not yet measured".
using OutcomeString = std::vector<int>;

/// Fraction of entries equal to 1, as an exact rational in [0,1].
/// Throws std::invalid_argument if the string is empty or contains a 0 entry.
Rational rel_freq(const OutcomeString& s);

/// Index k in {1..nu+1} of the grid value nearest fval, ties broken toward
/// the smaller phi. Throws std::domain_error if fval is outside [0,1].
int quantize(const Rational& fval, const PhiGrid& grid);

/// quantize(rel_freq(s)) when every entry is measured, 0 otherwise.
int quantize_tilde(const OutcomeString& s, const PhiGrid& grid);

/// The unique k whose interval (N*(phi_k - 1/2nu), N*(phi_k + 1/2nu)]
/// contains the count l, in exact rational arithmetic.
int bin_of_count(long l, long n, const PhiGrid& grid);

/// Count range [lo, hi] mapped to bin k for ensemble size n (clamped to
/// [0, n]; hi < lo means the bin is empty). The ranges for k = 1..nu+1
/// partition {0..n}.
struct CountRange {
    long lo;
    long hi;
};
CountRange bin_count_range(int k, long n, const PhiGrid& grid);

} // namespace ew
