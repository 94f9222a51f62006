#include "ew/oracle.hpp"

#include <bit>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace ew {

namespace {

std::vector<ComplexMatrix> lift_labels(const std::vector<ComplexMatrix>& labels_os,
                                       const Scenario& scen)
{
    std::vector<ComplexMatrix> lifted;
    lifted.reserve(labels_os.size());
    for (const ComplexMatrix& l : labels_os)
        lifted.push_back(lift_os_operator(l, scen));
    return lifted;
}

ComplexMatrix small_observable_b()
{
    ComplexMatrix b = ComplexMatrix::Zero(3, 3);
    for (int i = 0; i < 3; ++i)
        b(i, i) = static_cast<double>(i);
    return b;
}

ComplexMatrix small_observable_f(const Scenario& scen)
{
    const PhiGrid grid = scen.grid();
    const long fd = scen.layout.f_dim();
    ComplexMatrix f = ComplexMatrix::Zero(fd, fd);
    for (int k = 0; k < fd; ++k)
        f(k, k) = to_double(grid.value(k));
    return f;
}

} // namespace

bool OracleReport::all_pass() const
{
    for (const CheckResult& c : checks)
        if (!c.pass)
            return false;
    return true;
}

const CheckResult* OracleReport::find(const std::string& name) const
{
    for (const CheckResult& c : checks)
        if (c.name == name)
            return &c;
    return nullptr;
}

ScenarioOperators::ScenarioOperators(const Scenario& scenario)
    : scen(scenario),
      u_p(),
      u_o(),
      u_f(build_U_F(scenario)),
      u_total(),
      f_obs(build_observable(Observable::f, scenario)),
      f_t1(),
      labels_os(),
      label_family([&] {
          labels_os.reserve(static_cast<std::size_t>(scenario.resolution) + 2);
          for (int k = 0; k <= scenario.resolution + 1; ++k)
              labels_os.push_back(build_label_operator_L(k, scenario));
          return LabelFamily(lift_labels(labels_os, scenario), 1e-10);
      }())
{
    u_p.reserve(static_cast<std::size_t>(scen.n_systems));
    for (int p = 1; p <= scen.n_systems; ++p)
        u_p.push_back(build_U_p(p, scen));
    u_o = u_p[0];
    for (int p = 2; p <= scen.n_systems; ++p)
        u_o = compose(u_p[static_cast<std::size_t>(p - 1)], u_o);
    u_total = compose(u_f, u_o);
    f_t1 = evolve(u_total, f_obs);
}

WeightTable full_tensor_weights(const ScenarioOperators& ops)
{
    const ComplexVector psi = build_initial_state(ops.scen);
    const LabeledDecomposition decomp =
        decompose(ops.f_t1, ops.label_family, psi, "f", TimeTag::t1,
                  /*record_copy_operators=*/false);
    WeightTable table;
    table.n = ops.scen.n_systems;
    table.resolution = ops.scen.resolution;
    table.mode = Mode::floating;
    table.p1 = std::norm(ops.scen.c1);
    table.float_weights.resize(static_cast<std::size_t>(table.bins()));
    for (const CopyEntry& e : decomp.entries)
        table.float_weights[static_cast<std::size_t>(e.copy_id)] = e.weight;
    return table;
}

WeightTable full_tensor_weights(const Scenario& scen)
{
    return full_tensor_weights(ScenarioOperators(scen));
}

WeightTable enumerate_outcome_weights(int n, int nu, double p1)
{
    if (n < 1 || n > 22)
        throw std::invalid_argument("enumerate_outcome_weights: need 1 <= N <= 22");
    if (!(p1 >= 0.0 && p1 <= 1.0))
        throw std::invalid_argument("enumerate_outcome_weights: p1 outside [0,1]");
    const PhiGrid grid(nu);

    // quantize(rel_freq(.)) depends on the string only through its count of
    // ones; cache the bin per count, still via the argmin route
    std::vector<int> bin_for_count(static_cast<std::size_t>(n) + 1);
    for (long l = 0; l <= n; ++l)
        bin_for_count[static_cast<std::size_t>(l)] =
            quantize(Rational(l, static_cast<long>(n)), grid);

    WeightTable table;
    table.n = n;
    table.resolution = nu;
    table.mode = Mode::floating;
    table.p1 = p1;
    table.float_weights.assign(static_cast<std::size_t>(table.bins()), 0.0);

    const double c1_sq = p1;
    const double c2_sq = 1.0 - p1;
    std::vector<double> bin_sums(table.float_weights.size(), 0.0);
    std::vector<double> bin_comp(table.float_weights.size(), 0.0);
    const unsigned long count = 1UL << n;
    for (unsigned long mask = 0; mask < count; ++mask) {
        double mass = 1.0;
        for (int p = 0; p < n; ++p)
            mass *= ((mask >> p) & 1UL) ? c2_sq : c1_sq;
        const int ones = n - std::popcount(mask);
        const auto k = static_cast<std::size_t>(
            bin_for_count[static_cast<std::size_t>(ones)]);
        const double y = mass - bin_comp[k];
        const double t = bin_sums[k] + y;
        bin_comp[k] = (t - bin_sums[k]) - y;
        bin_sums[k] = t;
    }
    table.float_weights = bin_sums;
    return table;
}

namespace {

struct Battery {
    std::vector<CheckResult> checks;

    void add(std::string name, double deviation, double tol)
    {
        checks.push_back(CheckResult{std::move(name), deviation, deviation <= tol});
    }
};

double family_orthogonality(const std::vector<ComplexMatrix>& family)
{
    double worst = 0.0;
    for (std::size_t i = 0; i < family.size(); ++i)
        for (std::size_t j = i + 1; j < family.size(); ++j)
            worst = std::max(worst, max_abs(family[i] * family[j]));
    return worst;
}

double family_completeness(const std::vector<ComplexMatrix>& family)
{
    const long d = family.front().rows();
    ComplexMatrix sum = ComplexMatrix::Zero(d, d);
    for (const ComplexMatrix& p : family)
        sum += p;
    return max_abs(sum - ComplexMatrix::Identity(d, d));
}

double family_projectorness(const std::vector<ComplexMatrix>& family)
{
    double worst = 0.0;
    for (const ComplexMatrix& p : family)
        worst = std::max(worst, projector_deviation(p));
    return worst;
}

double max_weight_diff(const WeightTable& a, const WeightTable& b)
{
    double worst = 0.0;
    for (int k = 0; k < a.bins(); ++k)
        worst = std::max(worst, std::abs(a.weight(k) - b.weight(k)));
    return worst;
}

} // namespace

OracleReport verify_scenario(const Scenario& scen, const VerifyOptions& options)
{
    constexpr double tol_unitary = 1e-12;
    constexpr double tol_proj = 1e-10;
    constexpr double tol_a = 1e-12;
    constexpr double tol_labeled = 1e-10;
    constexpr double tol_xb = 1e-12;
    constexpr double tol_weights = 1e-10;
    constexpr double tol_completion = 1e-12;
    constexpr double tol_k0 = 1e-12;

    const auto started = std::chrono::steady_clock::now();

    OracleReport report;
    report.n_systems = scen.n_systems;
    report.resolution = scen.resolution;
    report.c1 = scen.c1;
    report.c2 = scen.c2;

    Battery battery;
    ScenarioOperators ops(scen);
    if (options.corrupt_unitary) {
        ops.u_total(0, 0) += options.corruption_size;
        ops.f_t1 = evolve(ops.u_total, ops.f_obs);
    }

    for (int p = 1; p <= scen.n_systems; ++p)
        battery.add("unitary_U_p" + std::to_string(p),
                    unitarity_deviation(ops.u_p[static_cast<std::size_t>(p - 1)]),
                    tol_unitary);
    battery.add("unitary_U_O", unitarity_deviation(ops.u_o), tol_unitary);
    battery.add("unitary_U_F", unitarity_deviation(ops.u_f), tol_unitary);
    battery.add("unitary_U", unitarity_deviation(ops.u_total), tol_unitary);

    {
        std::vector<ComplexMatrix> o_labels;
        o_labels.reserve(static_cast<std::size_t>(scen.resolution) + 2);
        for (int k = 0; k <= scen.resolution + 1; ++k)
            o_labels.push_back(build_label_projector_O(k, scen));
        battery.add("o_label_projectors", family_projectorness(o_labels), tol_proj);
        battery.add("o_label_orthogonality", family_orthogonality(o_labels), tol_proj);
        battery.add("o_label_completeness", family_completeness(o_labels), tol_proj);
    }
    battery.add("L_family_projectors", family_projectorness(ops.labels_os), tol_proj);
    battery.add("L_family_orthogonality", family_orthogonality(ops.labels_os),
                tol_proj);
    battery.add("L_family_completeness", family_completeness(ops.labels_os),
                tol_proj);

    for (int p = 1; p <= scen.n_systems; ++p) {
        const ComplexMatrix a_obs = build_observable(Observable::a, scen, p);
        battery.add("a_invariance_p" + std::to_string(p),
                    max_abs_diff(evolve(ops.u_total, a_obs), a_obs), tol_a);
    }

    const ComplexMatrix b_small = small_observable_b();
    for (int p = 1; p <= scen.n_systems; ++p) {
        const ComplexMatrix b_obs = build_observable(Observable::b, scen, p);
        const ComplexMatrix b_t1 = evolve(ops.u_total, b_obs);
        ComplexMatrix recon =
            ComplexMatrix::Zero(scen.layout.total_dim(), scen.layout.total_dim());
        for (int i = 1; i <= 2; ++i) {
            const ComplexMatrix u_i = build_copy_unitary_u(i, 3, scen.completion);
            const ComplexMatrix b_i = u_i.adjoint() * b_small * u_i;
            ComplexMatrix s_proj = ComplexMatrix::Zero(2, 2);
            s_proj(i - 1, i - 1) = 1.0;
            const FactorOp fos[] = {
                {scen.layout.o_factor(p), b_i},
                {scen.layout.s_factor(p), s_proj},
            };
            recon += embed_factor_ops(scen.layout, fos);
        }
        battery.add("b_labeled_form_p" + std::to_string(p),
                    max_abs_diff(b_t1, recon), tol_labeled);
        battery.add("x_b_identity_p" + std::to_string(p),
                    max_abs_diff(evolve(ops.u_f, b_obs), b_obs), tol_xb);
    }

    {
        const ComplexMatrix f_small = small_observable_f(scen);
        ComplexMatrix recon =
            ComplexMatrix::Zero(scen.layout.total_dim(), scen.layout.total_dim());
        for (int k = 0; k <= scen.resolution + 1; ++k) {
            const ComplexMatrix u_k =
                build_copy_unitary_u(k, scen.layout.f_dim(), scen.completion);
            const ComplexMatrix f_k = u_k.adjoint() * f_small * u_k;
            recon += tensor_product(f_k, ops.labels_os[static_cast<std::size_t>(k)]);
        }
        battery.add("f_labeled_form", max_abs_diff(ops.f_t1, recon), tol_labeled);
    }

    const double p1 = std::norm(scen.c1);
    const WeightTable wt_tensor = full_tensor_weights(ops);
    const WeightTable wt_enum =
        enumerate_outcome_weights(scen.n_systems, scen.resolution, p1);
    const WeightTable wt_closed =
        closed_form_weights(static_cast<long>(scen.n_systems), scen.resolution, p1);
    battery.add("weights_tensor_vs_enum", max_weight_diff(wt_tensor, wt_enum),
                tol_weights);
    battery.add("weights_tensor_vs_closed", max_weight_diff(wt_tensor, wt_closed),
                tol_weights);
    battery.add("weights_enum_vs_closed", max_weight_diff(wt_enum, wt_closed),
                tol_weights);
    battery.add("f_weight_k0", std::abs(wt_tensor.weight(0)), tol_k0);

    {
        const Completion other = scen.completion == Completion::transposition
                                     ? Completion::cycle
                                     : Completion::transposition;
        const Scenario alt(scen.n_systems, scen.resolution, scen.c1, scen.c2, other);
        const WeightTable wt_alt = full_tensor_weights(ScenarioOperators(alt));
        battery.add("completion_independence", max_weight_diff(wt_tensor, wt_alt),
                    tol_completion);
    }

    {
        ComplexMatrix corrupted = ops.u_total;
        corrupted(0, 0) += options.corruption_size;
        const double dev = unitarity_deviation(corrupted);
        battery.checks.push_back(CheckResult{
            "negative_control_detects_corruption", dev, dev > tol_unitary});
    }

    report.checks = std::move(battery.checks);
    report.runtime_ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - started)
                            .count();
    return report;
}

} // namespace ew
