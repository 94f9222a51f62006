#pragma once

#include "ew/freqmap.hpp"
#include "ew/linalg.hpp"

#include <span>
#include <string>
#include <vector>

namespace ew {

/// How each copy unitary u_i is extended beyond its defining action
/// u_i|0> = |i>. Results must not depend on this choice; the oracle
/// checks that they do not.
enum class Completion {
    transposition, // swap basis vectors 0 and i
    cycle,         // cyclic shift by i
};

/// Factor order: [F (nu+2)] ++ [O^1..O^N (3 each)] ++ [S^1..S^N (2 each)],
/// row-major mixed-radix indexing with F the most significant factor.
class FactorLayout {
public:
    FactorLayout(int n_systems, int resolution);

    int n_systems() const { return n_systems_; }
    int resolution() const { return resolution_; }

    int factor_count() const { return 1 + 2 * n_systems_; }
    long factor_dim(int idx) const;

    int f_factor() const { return 0; }
    int o_factor(int p) const;      // p in 1..N
    int s_factor(int p) const;      // p in 1..N

    long f_dim() const { return resolution_ + 2; }
    long o_block_dim() const;       // 3^N
    long s_block_dim() const;       // 2^N
    long total_dim() const;         // (nu+2) * 3^N * 2^N

    /// Basis index of |F;k> (x) |O-string> (x) |S-string>.
    /// O entries in {0,1,2}, S entries in {0,1} (0 = alpha_1, 1 = alpha_2).
    long basis_index(int f, std::span<const int> o_string,
                     std::span<const int> s_string) const;

    /// Decode a flat O-block index into the per-observer digit string.
    std::vector<int> o_string_of_index(long idx) const;

private:
    int n_systems_;
    int resolution_;
};

/// Model parameters: ensemble size N, device resolution nu, and the common
/// pre-measurement amplitudes (c1, c2) with |c1|^2 + |c2|^2 = 1.
struct Scenario {
    Scenario(int n_systems, int resolution, Complex c1, Complex c2,
             Completion completion = Completion::transposition);

    int n_systems;
    int resolution;
    Complex c1;
    Complex c2;
    Completion completion;
    FactorLayout layout;

    PhiGrid grid() const { return PhiGrid(resolution); }
};

/// One observer measuring one system: M system eigenvalues gamma_j map onto
/// L belief values beta_i (possibly many-to-one), with beta_0 = ignorance.
struct GenericMeasurementSpec {
    int system_dim;                  // M
    int belief_count;                // L <= M
    std::vector<int> belief_map;     // size M, values in 1..L, surjective
    std::vector<double> gamma_values; // M distinct
    std::vector<double> beta_values;  // L+1 distinct, index 0 = ignorance

    void validate() const; // throws std::invalid_argument
};

/// Copy unitary on a single dim-dimensional factor sending basis vector 0
/// to basis vector i; i = 0 gives the identity.
ComplexMatrix build_copy_unitary_u(int i, long dim, Completion completion);

/// U = sum_i u_i (x) P_i on the (L+1)*M-dimensional observer (x) system
/// space; maps |beta_0>|gamma_j> to |beta(gamma_j)>|gamma_j>.
ComplexMatrix build_generic_unitary(const GenericMeasurementSpec& spec,
                                    Completion completion = Completion::transposition);

enum class Observable { a, b, f };

/// Diagonal observable on the full space: a^(p) (eigenvalues +1/-1 on S^p),
/// b^(p) (0,1,2 on O^p), or f (phi grid values on F). p is ignored for f.
ComplexMatrix build_observable(Observable which, const Scenario& scen, int p = 1);

/// Full-space operator acting as the given small matrices on the listed
/// factors and as the identity elsewhere.
struct FactorOp {
    int factor;
    ComplexMatrix op;
};
ComplexMatrix embed_factor_ops(const FactorLayout& layout,
                               std::span<const FactorOp> ops);

/// Projector onto S^p eigenstate i (i = 1 or 2), embedded in the full space.
ComplexMatrix build_s_projector(int i, int p, const Scenario& scen);

/// Measurement of S^p by O^p, on the full space.
ComplexMatrix build_U_p(int p, const Scenario& scen);

/// Product of all single-system measurements.
ComplexMatrix build_U_O(const Scenario& scen);

/// Label projector onto O-strings whose quantized frequency bin is k,
/// as a diagonal matrix on the 3^N-dimensional O block.
ComplexMatrix build_label_projector_O(int k, const Scenario& scen);

/// Frequency readout of all observers by F, on the full space.
ComplexMatrix build_U_F(const Scenario& scen);

/// Complete measurement transformation U = U_F * U_O.
ComplexMatrix build_total_U(const Scenario& scen);

/// |F; phi_0> (x) prod_p |O^p; beta_0> (x) prod_q (c1|alpha_1> + c2|alpha_2>).
ComplexVector build_initial_state(const Scenario& scen);

} // namespace ew
