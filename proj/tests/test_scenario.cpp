#include "doctest.h"

#include "ew/linalg.hpp"
#include "ew/scenario.hpp"

#include <cmath>
#include <random>

using namespace ew;

namespace {

ComplexVector basis_vector(long dim, long idx)
{
    ComplexVector v = ComplexVector::Zero(dim);
    v(idx) = 1.0;
    return v;
}

Scenario make(int n, int nu, double p1 = 0.3,
              Completion comp = Completion::transposition)
{
    return Scenario(n, nu, std::sqrt(p1), std::sqrt(1.0 - p1), comp);
}

} // namespace

TEST_CASE("factor layout dimensions and indexing")
{
    const FactorLayout lay(2, 2);
    CHECK(lay.factor_count() == 5);
    CHECK(lay.factor_dim(0) == 4);
    CHECK(lay.factor_dim(1) == 3);
    CHECK(lay.factor_dim(3) == 2);
    CHECK(lay.total_dim() == 4 * 9 * 4);

    const int o[] = {1, 2};
    const int s[] = {0, 1};
    // row-major mixed radix with F most significant
    CHECK(lay.basis_index(3, o, s) == ((3 * 3 + 1) * 3 + 2) * 4 + 1);
    CHECK(lay.o_string_of_index(5) == std::vector<int>{1, 2});
}

TEST_CASE("scenario validates the amplitude normalization")
{
    CHECK_THROWS_AS(Scenario(1, 1, 0.7, 0.8), std::invalid_argument);
    CHECK_NOTHROW(Scenario(1, 1, Complex(0, 0.6), 0.8));
}

TEST_CASE("copy unitary completions")
{
    const ComplexMatrix id3 = identity(3);
    CHECK(max_abs_diff(build_copy_unitary_u(0, 4, Completion::transposition),
                       identity(4)) == 0.0);
    CHECK(max_abs_diff(build_copy_unitary_u(0, 4, Completion::cycle), identity(4))
          == 0.0);

    const ComplexMatrix u1 = build_copy_unitary_u(1, 3, Completion::transposition);
    ComplexMatrix expected(3, 3);
    expected << 0, 1, 0, 1, 0, 0, 0, 0, 1;
    CHECK(max_abs_diff(u1, expected) == 0.0);
    CHECK(max_abs_diff(compose(adjoint(u1), u1), id3) == 0.0);

    for (int i = 0; i < 3; ++i) {
        for (Completion comp : {Completion::transposition, Completion::cycle}) {
            const ComplexMatrix u = build_copy_unitary_u(i, 3, comp);
            CHECK(is_unitary(u, 0.0));
            CHECK(max_abs((u * basis_vector(3, 0)) - basis_vector(3, i)) == 0.0);
        }
    }
    CHECK_THROWS_AS(build_copy_unitary_u(3, 3, Completion::transposition),
                    std::out_of_range);
}

TEST_CASE("generic measurement unitary")
{
    SUBCASE("single outcome")
    {
        GenericMeasurementSpec spec{1, 1, {1}, {5.0}, {0.0, 1.0}};
        const ComplexMatrix u = build_generic_unitary(spec);
        CHECK(is_unitary(u, 0.0));
        // |beta_0>|gamma_1> -> |beta_1>|gamma_1>
        const ComplexVector in = tensor_product(basis_vector(2, 0), basis_vector(1, 0));
        const ComplexVector out = tensor_product(basis_vector(2, 1), basis_vector(1, 0));
        CHECK(max_abs((u * in) - out) == 0.0);
    }

    SUBCASE("two outcomes, identity belief map")
    {
        GenericMeasurementSpec spec{2, 2, {1, 2}, {1.0, -1.0}, {0.0, 1.0, 2.0}};
        const ComplexMatrix u = build_generic_unitary(spec);
        for (int j = 0; j < 2; ++j) {
            const ComplexVector in =
                tensor_product(basis_vector(3, 0), basis_vector(2, j));
            const ComplexVector out =
                tensor_product(basis_vector(3, j + 1), basis_vector(2, j));
            CHECK(max_abs((u * in) - out) == 0.0);
        }
    }

    SUBCASE("many-to-one belief map")
    {
        GenericMeasurementSpec spec{3, 2, {1, 1, 2}, {1.0, 2.0, 3.0},
                                    {0.0, 1.0, 2.0}};
        const ComplexMatrix u = build_generic_unitary(spec);
        const ComplexVector in = tensor_product(basis_vector(3, 0), basis_vector(3, 1));
        const ComplexVector out =
            tensor_product(basis_vector(3, 1), basis_vector(3, 1));
        CHECK(max_abs((u * in) - out) == 0.0); // gamma_2 still maps to beta_1
    }

    SUBCASE("randomized specs compose to the identity with their adjoint")
    {
        std::mt19937_64 rng(21);
        for (int rep = 0; rep < 25; ++rep) {
            std::uniform_int_distribution<int> mdist(1, 5);
            const int m = mdist(rng);
            std::uniform_int_distribution<int> ldist(1, m);
            const int l = ldist(rng);
            GenericMeasurementSpec spec;
            spec.system_dim = m;
            spec.belief_count = l;
            spec.belief_map.resize(static_cast<std::size_t>(m));
            // hit every belief at least once, then fill randomly
            for (int i = 0; i < l; ++i)
                spec.belief_map[static_cast<std::size_t>(i)] = i + 1;
            std::uniform_int_distribution<int> bdist(1, l);
            for (int i = l; i < m; ++i)
                spec.belief_map[static_cast<std::size_t>(i)] = bdist(rng);
            for (int i = 0; i < m; ++i)
                spec.gamma_values.push_back(i);
            for (int i = 0; i <= l; ++i)
                spec.beta_values.push_back(i);
            const Completion comp =
                rep % 2 == 0 ? Completion::transposition : Completion::cycle;
            const ComplexMatrix u = build_generic_unitary(spec, comp);
            CHECK(max_abs_diff(compose(u, adjoint(u)), identity(u.rows())) < 1e-15);
        }
    }

    SUBCASE("invalid specs are rejected")
    {
        GenericMeasurementSpec not_surjective{3, 2, {1, 1, 1}, {1, 2, 3}, {0, 1, 2}};
        CHECK_THROWS_AS(build_generic_unitary(not_surjective), std::invalid_argument);
        GenericMeasurementSpec dup_gamma{2, 2, {1, 2}, {1, 1}, {0, 1, 2}};
        CHECK_THROWS_AS(build_generic_unitary(dup_gamma), std::invalid_argument);
    }
}

TEST_CASE("observables are diagonal with the stated eigenvalues")
{
    const Scenario scen = make(1, 1);
    const FactorLayout& lay = scen.layout;

    const ComplexMatrix f = build_observable(Observable::f, scen);
    // eigenvalue on |phi_k>|beta_0>|alpha_1> is phi_k
    const double phis[] = {-1.0, 0.0, 1.0};
    for (int k = 0; k < 3; ++k) {
        const int o[] = {0};
        const int s[] = {0};
        const long idx = lay.basis_index(k, o, s);
        CHECK(f(idx, idx) == Complex(phis[k]));
    }

    const ComplexMatrix a = build_observable(Observable::a, scen, 1);
    const int o0[] = {0};
    const int s0[] = {0};
    const int s1[] = {1};
    CHECK(a(lay.basis_index(0, o0, s0), lay.basis_index(0, o0, s0)) == Complex(1.0));
    CHECK(a(lay.basis_index(0, o0, s1), lay.basis_index(0, o0, s1)) == Complex(-1.0));
    CHECK(max_abs(a - ComplexMatrix(a.diagonal().asDiagonal())) == 0.0);

    CHECK_THROWS_AS(build_observable(Observable::a, scen, 2), std::out_of_range);
}

TEST_CASE("observables on distinct factors commute")
{
    const Scenario scen = make(2, 1);
    const ComplexMatrix a1 = build_observable(Observable::a, scen, 1);
    const ComplexMatrix b2 = build_observable(Observable::b, scen, 2);
    CHECK(max_abs_diff(compose(a1, b2), compose(b2, a1)) == 0.0);
}

TEST_CASE("single-system measurement unitary")
{
    const Scenario scen = make(1, 1);
    const FactorLayout& lay = scen.layout;
    const ComplexMatrix u1 = build_U_p(1, scen);
    CHECK(is_unitary(u1, 1e-12));

    // |phi_0>|beta_0>|alpha_1> -> |phi_0>|beta_1>|alpha_1>
    const int o0[] = {0};
    const int o1[] = {1};
    const int s0[] = {0};
    const ComplexVector in = basis_vector(lay.total_dim(), lay.basis_index(0, o0, s0));
    const ComplexVector out =
        basis_vector(lay.total_dim(), lay.basis_index(0, o1, s0));
    CHECK(max_abs((u1 * in) - out) == 0.0);
}

TEST_CASE("measurement unitaries for different systems commute")
{
    const Scenario scen = make(2, 1);
    const ComplexMatrix u1 = build_U_p(1, scen);
    const ComplexMatrix u2 = build_U_p(2, scen);
    CHECK(max_abs_diff(compose(u1, u2), compose(u2, u1)) == 0.0);
}

TEST_CASE("frequency readout unitary")
{
    const Scenario scen = make(1, 1);
    const FactorLayout& lay = scen.layout;
    const ComplexMatrix uf = build_U_F(scen);
    CHECK(is_unitary(uf, 1e-12));

    // reading O = beta_1 gives f = 1, phi = 1, bin k = 2
    const int o1[] = {1};
    const int s0[] = {0};
    const ComplexVector in = basis_vector(lay.total_dim(), lay.basis_index(0, o1, s0));
    const ComplexVector out =
        basis_vector(lay.total_dim(), lay.basis_index(2, o1, s0));
    CHECK(max_abs((uf * in) - out) == 0.0);
}

TEST_CASE("label projectors are orthogonal and complete")
{
    const Scenario scen = make(2, 2);
    std::vector<ComplexMatrix> labels;
    for (int k = 0; k <= 3; ++k)
        labels.push_back(build_label_projector_O(k, scen));
    const long d = labels[0].rows();
    ComplexMatrix sum = ComplexMatrix::Zero(d, d);
    for (std::size_t k = 0; k < labels.size(); ++k) {
        sum += labels[k];
        for (std::size_t l = 0; l < labels.size(); ++l) {
            const ComplexMatrix prod = compose(labels[k], labels[l]);
            if (k == l)
                CHECK(max_abs_diff(prod, labels[k]) == 0.0);
            else
                CHECK(max_abs(prod) == 0.0);
        }
    }
    CHECK(max_abs_diff(sum, identity(d)) == 0.0);
}

TEST_CASE("total measurement transformation")
{
    const Scenario scen = make(2, 2, 0.5);
    CHECK(is_unitary(build_total_U(scen), 1e-12));
    CHECK(max_abs_diff(build_total_U(scen),
                       compose(build_U_F(scen), build_U_O(scen))) == 0.0);

    const Scenario tiny = make(1, 1);
    const FactorLayout& lay = tiny.layout;
    const int o0[] = {0};
    const int o1[] = {1};
    const int s0[] = {0};
    const ComplexVector in = basis_vector(lay.total_dim(), lay.basis_index(0, o0, s0));
    const ComplexVector out =
        basis_vector(lay.total_dim(), lay.basis_index(2, o1, s0));
    CHECK(max_abs((build_total_U(tiny) * in) - out) < 1e-15);
}

TEST_CASE("unitarity of every constructed transformation at small sizes")
{
    for (int n : {1, 2}) {
        for (int nu : {1, 2, 3}) {
            const Scenario scen = make(n, nu, 0.3);
            for (int p = 1; p <= n; ++p)
                CHECK(is_unitary(build_U_p(p, scen), 1e-12));
            CHECK(is_unitary(build_U_O(scen), 1e-12));
            CHECK(is_unitary(build_U_F(scen), 1e-12));
            CHECK(is_unitary(build_total_U(scen), 1e-12));
        }
    }
}

TEST_CASE("initial state")
{
    SUBCASE("degenerate amplitude gives a basis vector")
    {
        const Scenario scen(1, 1, 1.0, 0.0);
        const ComplexVector psi = build_initial_state(scen);
        const int o0[] = {0};
        const int s0[] = {0};
        CHECK(max_abs(psi - basis_vector(scen.layout.total_dim(),
                                         scen.layout.basis_index(0, o0, s0)))
              == 0.0);
    }

    SUBCASE("unit norm for phase-carrying amplitudes")
    {
        std::mt19937_64 rng(17);
        std::uniform_real_distribution<double> angle(0.0, 6.28);
        for (int rep = 0; rep < 10; ++rep) {
            const double theta = angle(rng) / 4.0;
            const Complex c1 = std::polar(std::cos(theta), angle(rng));
            const Complex c2 = std::polar(std::sin(theta), angle(rng));
            const Scenario scen(2, 2, c1, c2);
            CHECK(std::abs(build_initial_state(scen).norm() - 1.0) < 1e-12);
        }
    }

    SUBCASE("product amplitudes across the S sector")
    {
        const Complex c1 = std::polar(std::sqrt(0.3), 0.4);
        const Complex c2 = std::polar(std::sqrt(0.7), -1.1);
        const Scenario scen(2, 1, c1, c2);
        const ComplexVector psi = build_initial_state(scen);
        const FactorLayout& lay = scen.layout;
        const int o0[] = {0, 0};
        const Complex expected[2][2] = {{c1 * c1, c1 * c2}, {c2 * c1, c2 * c2}};
        for (int s1 = 0; s1 < 2; ++s1) {
            for (int s2 = 0; s2 < 2; ++s2) {
                const int s[] = {s1, s2};
                CHECK(std::abs(psi(lay.basis_index(0, o0, s)) - expected[s1][s2])
                      < 1e-15);
            }
        }
    }
}
