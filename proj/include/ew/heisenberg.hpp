#pragma once

#include "ew/linalg.hpp"
#include "ew/scenario.hpp"

#include <string>
#include <vector>

namespace ew {

/// Heisenberg-picture step: returns U† X U.
ComplexMatrix evolve(const ComplexMatrix& u, const ComplexMatrix& x);

/// A mutually orthogonal, complete projector family, validated once at
/// construction (each member a projector, pairwise products zero, sum equal
/// to the identity, all within tol in max-norm).
class LabelFamily {
public:
    LabelFamily(std::vector<ComplexMatrix> projectors, double tol = 1e-10);

    const std::vector<ComplexMatrix>& projectors() const { return projectors_; }
    std::size_t size() const { return projectors_.size(); }
    long dim() const { return projectors_.empty() ? 0 : projectors_[0].rows(); }
    double tolerance() const { return tol_; }

private:
    std::vector<ComplexMatrix> projectors_;
    double tol_;
};

enum class TimeTag { t0, t1 };

struct CopyEntry {
    int copy_id;
    ComplexMatrix label_projector;
    ComplexMatrix copy_operator; // X * P, recorded for inspection only
    double weight;
    bool exists; // weight above the zero threshold
};

/// Post-measurement observable split into labeled copies, with the weight
/// of each copy taken in the fixed initial state.
struct LabeledDecomposition {
    std::vector<CopyEntry> entries;
    std::string source;
    TimeTag time_tag = TimeTag::t1;

    double weight_sum() const;
};

/// Weight of each copy is <psi| P |psi>; entries below 1e-12 are flagged
/// as nonexistent. Set record_copy_operators = false to skip storing the
/// X*P compressions (weights are unaffected).
LabeledDecomposition decompose(const ComplexMatrix& x_t1,
                               const LabelFamily& labels,
                               const ComplexVector& initial_state,
                               std::string source = {},
                               TimeTag tag = TimeTag::t1,
                               bool record_copy_operators = true);

/// Analytic label operator L_k on the O (x) S block (dimension 6^N), built
/// from the copy unitaries and the O-block label projector directly, with
/// no conjugation of the frequency observable.
ComplexMatrix build_label_operator_L(int k, const Scenario& scen);

/// Embeds an O (x) S block operator into the full space (identity on F).
ComplexMatrix lift_os_operator(const ComplexMatrix& os_op, const Scenario& scen);

} // namespace ew
