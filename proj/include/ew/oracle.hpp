#pragma once

#include "ew/heisenberg.hpp"
#include "ew/scenario.hpp"
#include "ew/weights.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ew {

struct CheckResult {
    std::string name;
    double deviation = 0.0;
    bool pass = false;
};

struct OracleReport {
    int n_systems = 0;
    int resolution = 0;
    Complex c1;
    Complex c2;
    std::vector<CheckResult> checks;
    double runtime_ms = 0.0;

    bool all_pass() const;
    const CheckResult* find(const std::string& name) const;
};

/// Everything that depends on (N, nu, completion) but not on the
/// amplitudes: built once, shared across weight evaluations.
struct ScenarioOperators {
    explicit ScenarioOperators(const Scenario& scen);

    Scenario scen;
    std::vector<ComplexMatrix> u_p; // U^(1..N)
    ComplexMatrix u_o;
    ComplexMatrix u_f;
    ComplexMatrix u_total;
    ComplexMatrix f_obs;
    ComplexMatrix f_t1;                    // U† f U
    std::vector<ComplexMatrix> labels_os;  // L_k on the O (x) S block
    LabelFamily label_family;              // I_F (x) L_k, validated
};

/// Frequency weights obtained purely by tensor algebra: conjugate the
/// frequency observable with the full measurement unitary and take matrix
/// elements of the analytic labels in the initial state.
WeightTable full_tensor_weights(const Scenario& scen);
WeightTable full_tensor_weights(const ScenarioOperators& ops);

/// Frequency weights by exhaustive enumeration of all 2^N outcome strings,
/// quantizing each string's relative frequency; no binomial coefficients
/// and no count intervals are used. Requires N <= 22.
WeightTable enumerate_outcome_weights(int n, int nu, double p1);

struct VerifyOptions {
    bool corrupt_unitary = false;    // negative control: perturb one entry of U
    double corruption_size = 1e-3;
};

/// Full check battery: unitarity, projector algebra, observable invariance,
/// labeled-form reconstructions, three-way weight agreement, and
/// completion independence. Failures are reported, not thrown.
OracleReport verify_scenario(const Scenario& scen,
                             const VerifyOptions& options = {});

} // namespace ew
