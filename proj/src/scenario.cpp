#include "ew/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace ew {

FactorLayout::FactorLayout(int n_systems, int resolution)
    : n_systems_(n_systems), resolution_(resolution)
{
    if (n_systems < 1)
        throw std::invalid_argument("FactorLayout: n_systems must be >= 1");
    if (resolution < 1)
        throw std::invalid_argument("FactorLayout: resolution must be >= 1");
    check_dimension(total_dim());
}

long FactorLayout::factor_dim(int idx) const
{
    if (idx < 0 || idx >= factor_count())
        throw std::out_of_range("FactorLayout::factor_dim: bad factor index");
    if (idx == 0)
        return resolution_ + 2;
    return idx <= n_systems_ ? 3 : 2;
}

int FactorLayout::o_factor(int p) const
{
    if (p < 1 || p > n_systems_)
        throw std::out_of_range("FactorLayout::o_factor: system index out of range");
    return p;
}

int FactorLayout::s_factor(int p) const
{
    if (p < 1 || p > n_systems_)
        throw std::out_of_range("FactorLayout::s_factor: system index out of range");
    return n_systems_ + p;
}

long FactorLayout::o_block_dim() const
{
    long d = 1;
    for (int p = 0; p < n_systems_; ++p)
        d *= 3;
    return d;
}

long FactorLayout::s_block_dim() const
{
    return 1L << n_systems_;
}

long FactorLayout::total_dim() const
{
    return f_dim() * o_block_dim() * s_block_dim();
}

long FactorLayout::basis_index(int f, std::span<const int> o_string,
                               std::span<const int> s_string) const
{
    if (f < 0 || f >= f_dim())
        throw std::out_of_range("basis_index: F index out of range");
    if (o_string.size() != static_cast<std::size_t>(n_systems_)
        || s_string.size() != static_cast<std::size_t>(n_systems_))
        throw std::invalid_argument("basis_index: string length != N");
    long idx = f;
    for (int e : o_string) {
        if (e < 0 || e > 2)
            throw std::out_of_range("basis_index: O digit outside {0,1,2}");
        idx = idx * 3 + e;
    }
    for (int e : s_string) {
        if (e < 0 || e > 1)
            throw std::out_of_range("basis_index: S digit outside {0,1}");
        idx = idx * 2 + e;
    }
    return idx;
}

std::vector<int> FactorLayout::o_string_of_index(long idx) const
{
    std::vector<int> digits(n_systems_);
    for (int p = n_systems_ - 1; p >= 0; --p) {
        digits[p] = static_cast<int>(idx % 3);
        idx /= 3;
    }
    return digits;
}

Scenario::Scenario(int n, int nu, Complex c1_, Complex c2_, Completion comp)
    : n_systems(n), resolution(nu), c1(c1_), c2(c2_), completion(comp),
      layout(n, nu)
{
    const double norm2 = std::norm(c1) + std::norm(c2);
    if (std::abs(norm2 - 1.0) > 1e-12)
        throw std::invalid_argument("Scenario: |c1|^2 + |c2|^2 must equal 1");
}

void GenericMeasurementSpec::validate() const
{
    if (system_dim < 1)
        throw std::invalid_argument("GenericMeasurementSpec: system_dim must be >= 1");
    if (belief_count < 1 || belief_count > system_dim)
        throw std::invalid_argument("GenericMeasurementSpec: need 1 <= L <= M");
    if (belief_map.size() != static_cast<std::size_t>(system_dim))
        throw std::invalid_argument("GenericMeasurementSpec: belief_map size != M");
    std::set<int> hit;
    for (int i : belief_map) {
        if (i < 1 || i > belief_count)
            throw std::invalid_argument("GenericMeasurementSpec: belief index out of range");
        hit.insert(i);
    }
    if (static_cast<int>(hit.size()) != belief_count)
        throw std::invalid_argument("GenericMeasurementSpec: belief_map not surjective");
    if (gamma_values.size() != static_cast<std::size_t>(system_dim))
        throw std::invalid_argument("GenericMeasurementSpec: gamma_values size != M");
    if (beta_values.size() != static_cast<std::size_t>(belief_count) + 1)
        throw std::invalid_argument("GenericMeasurementSpec: beta_values size != L+1");
    const std::set<double> gs(gamma_values.begin(), gamma_values.end());
    if (gs.size() != gamma_values.size())
        throw std::invalid_argument("GenericMeasurementSpec: gamma_values not distinct");
    const std::set<double> bs(beta_values.begin(), beta_values.end());
    if (bs.size() != beta_values.size())
        throw std::invalid_argument("GenericMeasurementSpec: beta_values not distinct");
}

ComplexMatrix build_copy_unitary_u(int i, long dim, Completion completion)
{
    check_dimension(dim);
    if (i < 0 || i >= dim)
        throw std::out_of_range("build_copy_unitary_u: target index out of range");
    ComplexMatrix u = ComplexMatrix::Zero(dim, dim);
    switch (completion) {
    case Completion::transposition:
        for (long j = 0; j < dim; ++j)
            u(j, j) = 1.0;
        if (i != 0) {
            u(0, 0) = u(i, i) = 0.0;
            u(i, 0) = u(0, i) = 1.0;
        }
        break;
    case Completion::cycle:
        for (long j = 0; j < dim; ++j)
            u((j + i) % dim, j) = 1.0;
        break;
    }
    return u;
}

ComplexMatrix build_generic_unitary(const GenericMeasurementSpec& spec,
                                    Completion completion)
{
    spec.validate();
    const long od = spec.belief_count + 1; // observer space
    const long sd = spec.system_dim;
    ComplexMatrix u = ComplexMatrix::Zero(od * sd, od * sd);
    for (int i = 1; i <= spec.belief_count; ++i) {
        ComplexMatrix proj = ComplexMatrix::Zero(sd, sd);
        for (int j = 0; j < spec.system_dim; ++j)
            if (spec.belief_map[static_cast<std::size_t>(j)] == i)
                proj(j, j) = 1.0;
        u += tensor_product(build_copy_unitary_u(i, od, completion), proj);
    }
    return u;
}

ComplexMatrix embed_factor_ops(const FactorLayout& layout,
                               std::span<const FactorOp> ops)
{
    ComplexMatrix out = ComplexMatrix::Identity(1, 1);
    for (int idx = 0; idx < layout.factor_count(); ++idx) {
        const ComplexMatrix* found = nullptr;
        for (const FactorOp& fo : ops) {
            if (fo.factor == idx) {
                if (found)
                    throw std::invalid_argument("embed_factor_ops: duplicate factor");
                found = &fo.op;
            }
        }
        if (found) {
            if (found->rows() != layout.factor_dim(idx)
                || found->cols() != layout.factor_dim(idx))
                throw std::invalid_argument("embed_factor_ops: wrong factor dimension");
            out = tensor_product(out, *found);
        } else {
            out = tensor_product(out, identity(layout.factor_dim(idx)));
        }
    }
    return out;
}

ComplexMatrix build_observable(Observable which, const Scenario& scen, int p)
{
    const FactorLayout& lay = scen.layout;
    switch (which) {
    case Observable::a: {
        ComplexMatrix a = ComplexMatrix::Zero(2, 2);
        a(0, 0) = 1.0;  // alpha_1
        a(1, 1) = -1.0; // alpha_2
        const FactorOp fo{lay.s_factor(p), a};
        return embed_factor_ops(lay, std::span(&fo, 1));
    }
    case Observable::b: {
        ComplexMatrix b = ComplexMatrix::Zero(3, 3);
        for (int i = 0; i < 3; ++i)
            b(i, i) = static_cast<double>(i); // beta_i = i
        const FactorOp fo{lay.o_factor(p), b};
        return embed_factor_ops(lay, std::span(&fo, 1));
    }
    case Observable::f: {
        const PhiGrid grid = scen.grid();
        ComplexMatrix f = ComplexMatrix::Zero(lay.f_dim(), lay.f_dim());
        for (int k = 0; k <= scen.resolution + 1; ++k)
            f(k, k) = to_double(grid.value(k));
        const FactorOp fo{lay.f_factor(), f};
        return embed_factor_ops(lay, std::span(&fo, 1));
    }
    }
    throw std::logic_error("build_observable: unknown observable");
}

ComplexMatrix build_s_projector(int i, int p, const Scenario& scen)
{
    if (i != 1 && i != 2)
        throw std::out_of_range("build_s_projector: eigenstate index must be 1 or 2");
    ComplexMatrix proj = ComplexMatrix::Zero(2, 2);
    proj(i - 1, i - 1) = 1.0;
    const FactorOp fo{scen.layout.s_factor(p), proj};
    return embed_factor_ops(scen.layout, std::span(&fo, 1));
}

ComplexMatrix build_U_p(int p, const Scenario& scen)
{
    const FactorLayout& lay = scen.layout;
    ComplexMatrix u = ComplexMatrix::Zero(lay.total_dim(), lay.total_dim());
    for (int i = 1; i <= 2; ++i) {
        ComplexMatrix proj = ComplexMatrix::Zero(2, 2);
        proj(i - 1, i - 1) = 1.0;
        const FactorOp fos[] = {
            {lay.o_factor(p), build_copy_unitary_u(i, 3, scen.completion)},
            {lay.s_factor(p), proj},
        };
        u += embed_factor_ops(lay, fos);
    }
    return u;
}

ComplexMatrix build_U_O(const Scenario& scen)
{
    ComplexMatrix u = build_U_p(1, scen);
    for (int p = 2; p <= scen.n_systems; ++p)
        u = compose(build_U_p(p, scen), u);
    return u;
}

ComplexMatrix build_label_projector_O(int k, const Scenario& scen)
{
    if (k < 0 || k > scen.resolution + 1)
        throw std::out_of_range("build_label_projector_O: bin index out of range");
    const PhiGrid grid = scen.grid();
    const long od = scen.layout.o_block_dim();
    ComplexMatrix proj = ComplexMatrix::Zero(od, od);
    for (long idx = 0; idx < od; ++idx) {
        const std::vector<int> digits = scen.layout.o_string_of_index(idx);
        if (quantize_tilde(digits, grid) == k)
            proj(idx, idx) = 1.0;
    }
    return proj;
}

ComplexMatrix build_U_F(const Scenario& scen)
{
    const FactorLayout& lay = scen.layout;
    const ComplexMatrix s_eye = identity(lay.s_block_dim());
    ComplexMatrix u = ComplexMatrix::Zero(lay.total_dim(), lay.total_dim());
    for (int k = 0; k <= scen.resolution + 1; ++k) {
        const ComplexMatrix u_k =
            build_copy_unitary_u(k, lay.f_dim(), scen.completion);
        u += tensor_product(tensor_product(u_k, build_label_projector_O(k, scen)),
                            s_eye);
    }
    return u;
}

ComplexMatrix build_total_U(const Scenario& scen)
{
    return compose(build_U_F(scen), build_U_O(scen));
}

ComplexVector build_initial_state(const Scenario& scen)
{
    const FactorLayout& lay = scen.layout;
    ComplexVector f_part = ComplexVector::Zero(lay.f_dim());
    f_part(0) = 1.0; // |F; phi_0>
    ComplexVector o_part = ComplexVector::Zero(3);
    o_part(0) = 1.0; // |O; beta_0>
    ComplexVector s_part(2);
    s_part(0) = scen.c1;
    s_part(1) = scen.c2;

    ComplexVector state = f_part;
    for (int p = 1; p <= scen.n_systems; ++p)
        state = tensor_product(state, o_part);
    for (int q = 1; q <= scen.n_systems; ++q)
        state = tensor_product(state, s_part);
    return state;
}

} // namespace ew
