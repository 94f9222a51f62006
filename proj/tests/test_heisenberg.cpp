#include "doctest.h"

#include "ew/heisenberg.hpp"
#include "ew/oracle.hpp"

#include <cmath>
#include <random>

using namespace ew;

namespace {

Scenario make(int n, int nu, double p1 = 0.3,
              Completion comp = Completion::transposition)
{
    return Scenario(n, nu, std::sqrt(p1), std::sqrt(1.0 - p1), comp);
}

ComplexMatrix random_hermitian(long dim, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    ComplexMatrix m(dim, dim);
    for (long i = 0; i < dim; ++i)
        for (long j = 0; j < dim; ++j)
            m(i, j) = Complex(dist(rng), dist(rng));
    return (m + m.adjoint()).eval();
}

ComplexMatrix random_unitary(long dim, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    ComplexMatrix m(dim, dim);
    for (long i = 0; i < dim; ++i)
        for (long j = 0; j < dim; ++j)
            m(i, j) = Complex(dist(rng), dist(rng));
    const Eigen::HouseholderQR<ComplexMatrix> qr(m);
    return qr.householderQ();
}

std::vector<ComplexMatrix> s_label_family(int p, const Scenario& scen)
{
    return {build_s_projector(1, p, scen), build_s_projector(2, p, scen)};
}

} // namespace

TEST_CASE("evolve basics")
{
    std::mt19937_64 rng(29);
    const ComplexMatrix x = random_hermitian(4, rng);
    CHECK(max_abs_diff(evolve(identity(4), x), x) == 0.0);
    CHECK_THROWS_AS(evolve(identity(3), x), std::invalid_argument);

    const ComplexMatrix u = random_unitary(4, rng);
    const ComplexMatrix y = evolve(u, x);
    CHECK(max_abs_diff(y, adjoint(y)) < 1e-13); // hermiticity preserved
}

TEST_CASE("system observable is unchanged by the measurement")
{
    const Scenario scen = make(2, 2);
    const ComplexMatrix u = build_total_U(scen);
    for (int p = 1; p <= 2; ++p) {
        const ComplexMatrix a = build_observable(Observable::a, scen, p);
        CHECK(max_abs_diff(evolve(u, a), a) <= 1e-12);
    }
}

TEST_CASE("label family validation")
{
    const ComplexMatrix p0 = ComplexMatrix::Zero(2, 2);
    ComplexMatrix p_upper(2, 2);
    p_upper << 1, 0, 0, 0;
    ComplexMatrix p_lower(2, 2);
    p_lower << 0, 0, 0, 1;
    CHECK_NOTHROW(LabelFamily({p_upper, p_lower}, 1e-10));

    // incomplete family
    CHECK_THROWS_AS(LabelFamily({p_upper}, 1e-10), std::invalid_argument);
    // overlapping (non-orthogonal) family
    ComplexMatrix half(2, 2);
    half << 0.5, 0.5, 0.5, 0.5;
    CHECK_THROWS_AS(LabelFamily({p_upper, half}, 1e-10), std::invalid_argument);
    // non-projector member
    ComplexMatrix skew(2, 2);
    skew << 0, 1, 0, 0;
    CHECK_THROWS_AS(LabelFamily({skew, identity(2) - skew}, 1e-10),
                    std::invalid_argument);
    CHECK_THROWS_AS(LabelFamily({}, 1e-10), std::invalid_argument);
}

TEST_CASE("belief observable decomposes with Born weights")
{
    const double p1 = 0.3;
    const Scenario scen = make(2, 2, p1);
    const ComplexMatrix u = build_total_U(scen);
    const ComplexVector psi = build_initial_state(scen);
    for (int p = 1; p <= 2; ++p) {
        const ComplexMatrix b_t1 =
            evolve(u, build_observable(Observable::b, scen, p));
        const LabelFamily family(s_label_family(p, scen));
        const LabeledDecomposition decomp =
            decompose(b_t1, family, psi, "b" + std::to_string(p));
        REQUIRE(decomp.entries.size() == 2);
        CHECK(decomp.entries[0].weight == doctest::Approx(p1).epsilon(1e-12));
        CHECK(decomp.entries[1].weight == doctest::Approx(1 - p1).epsilon(1e-12));
        CHECK(decomp.entries[0].exists);
        CHECK(decomp.entries[1].exists);
        CHECK(decomp.weight_sum() == doctest::Approx(1.0).epsilon(1e-12));
        // the copy operator is the labeled compression of the observable
        CHECK(max_abs_diff(decomp.entries[0].copy_operator,
                           compose(b_t1, family.projectors()[0])) == 0.0);
    }
}

TEST_CASE("degenerate amplitude flags the dead copy")
{
    const Scenario scen(2, 1, 1.0, 0.0);
    const ComplexMatrix u = build_total_U(scen);
    const ComplexVector psi = build_initial_state(scen);
    const ComplexMatrix b_t1 = evolve(u, build_observable(Observable::b, scen, 1));
    const LabelFamily family(s_label_family(1, scen));
    const LabeledDecomposition decomp = decompose(b_t1, family, psi);
    CHECK(decomp.entries[0].weight == doctest::Approx(1.0));
    CHECK(decomp.entries[0].exists);
    CHECK(decomp.entries[1].weight == doctest::Approx(0.0));
    CHECK_FALSE(decomp.entries[1].exists);
}

TEST_CASE("analytic label operators")
{
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> angle(0.0, 6.28);

    const double theta = 0.7;
    const Complex c1 = std::polar(std::cos(theta), angle(rng));
    const Complex c2 = std::polar(std::sin(theta), angle(rng));
    const Scenario scen(2, 2, c1, c2);
    const ComplexVector psi = build_initial_state(scen);

    std::vector<ComplexMatrix> lifted;
    for (int k = 0; k <= 3; ++k)
        lifted.push_back(lift_os_operator(build_label_operator_L(k, scen), scen));

    SUBCASE("weights sum to one and the ignorance label carries none")
    {
        double total = 0.0;
        for (const ComplexMatrix& label : lifted) {
            const Complex w = psi.dot(label * psi);
            CHECK(std::abs(w.imag()) < 1e-14);
            total += w.real();
        }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::abs(psi.dot(lifted[0] * psi)) < 1e-14);
    }

    SUBCASE("conjugated frequency observable matches the labeled form")
    {
        const ComplexMatrix f_t1 =
            evolve(build_total_U(scen), build_observable(Observable::f, scen));
        const PhiGrid grid = scen.grid();
        ComplexMatrix f_small = ComplexMatrix::Zero(4, 4);
        for (int k = 0; k < 4; ++k)
            f_small(k, k) = to_double(grid.value(k));
        ComplexMatrix recon =
            ComplexMatrix::Zero(scen.layout.total_dim(), scen.layout.total_dim());
        for (int k = 0; k <= 3; ++k) {
            const ComplexMatrix u_k =
                build_copy_unitary_u(k, 4, scen.completion);
            recon += tensor_product(ComplexMatrix(u_k.adjoint() * f_small * u_k),
                                    build_label_operator_L(k, scen));
        }
        CHECK(max_abs_diff(f_t1, recon) <= 1e-10);
    }
}

TEST_CASE("belief observable reconstruction from copy unitaries")
{
    const Scenario scen = make(2, 2, 0.42);
    const ComplexMatrix u = build_total_U(scen);
    ComplexMatrix b_small = ComplexMatrix::Zero(3, 3);
    for (int i = 0; i < 3; ++i)
        b_small(i, i) = i;
    for (int p = 1; p <= 2; ++p) {
        const ComplexMatrix b_t1 =
            evolve(u, build_observable(Observable::b, scen, p));
        ComplexMatrix recon =
            ComplexMatrix::Zero(scen.layout.total_dim(), scen.layout.total_dim());
        for (int i = 1; i <= 2; ++i) {
            const ComplexMatrix u_i = build_copy_unitary_u(i, 3, scen.completion);
            ComplexMatrix s_proj = ComplexMatrix::Zero(2, 2);
            s_proj(i - 1, i - 1) = 1.0;
            const FactorOp fos[] = {
                {scen.layout.o_factor(p), ComplexMatrix(u_i.adjoint() * b_small * u_i)},
                {scen.layout.s_factor(p), s_proj},
            };
            recon += embed_factor_ops(scen.layout, fos);
        }
        CHECK(max_abs_diff(b_t1, recon) <= 1e-10);
    }
}

TEST_CASE("frequency readout alone leaves the belief observable fixed")
{
    const Scenario scen = make(2, 2);
    const ComplexMatrix u_f = build_U_F(scen);
    for (int p = 1; p <= 2; ++p) {
        const ComplexMatrix b = build_observable(Observable::b, scen, p);
        CHECK(max_abs_diff(evolve(u_f, b), b) <= 1e-12);
    }
}

TEST_CASE("weights are invariant under a global phase")
{
    const double p1 = 0.37;
    const Complex phase = std::polar(1.0, 2.13);
    const Scenario plain(2, 2, std::sqrt(p1), std::sqrt(1 - p1));
    const Scenario rotated(2, 2, phase * std::sqrt(p1), phase * std::sqrt(1 - p1));
    const WeightTable a = full_tensor_weights(plain);
    const WeightTable b = full_tensor_weights(rotated);
    for (int k = 0; k < a.bins(); ++k)
        CHECK(std::abs(a.weight(k) - b.weight(k)) <= 1e-12);
}
