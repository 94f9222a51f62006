#include "ew/heisenberg.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace ew {

namespace {
constexpr double kZeroWeightThreshold = 1e-12;
}

ComplexMatrix evolve(const ComplexMatrix& u, const ComplexMatrix& x)
{
    if (u.rows() != u.cols() || x.rows() != x.cols() || u.rows() != x.rows())
        throw std::invalid_argument("evolve: dimension mismatch");
    return u.adjoint() * x * u;
}

LabelFamily::LabelFamily(std::vector<ComplexMatrix> projectors, double tol)
    : projectors_(std::move(projectors)), tol_(tol)
{
    if (projectors_.empty())
        throw std::invalid_argument("LabelFamily: empty family");
    if (tol < 0)
        throw std::invalid_argument("LabelFamily: negative tolerance");
    const long d = projectors_[0].rows();
    for (const ComplexMatrix& p : projectors_) {
        if (p.rows() != d || p.cols() != d)
            throw std::invalid_argument("LabelFamily: inconsistent dimensions");
        if (projector_deviation(p) > tol)
            throw std::invalid_argument("LabelFamily: member is not a projector");
    }
    for (std::size_t i = 0; i < projectors_.size(); ++i)
        for (std::size_t j = i + 1; j < projectors_.size(); ++j)
            if (max_abs(projectors_[i] * projectors_[j]) > tol)
                throw std::invalid_argument("LabelFamily: members not orthogonal");
    ComplexMatrix sum = ComplexMatrix::Zero(d, d);
    for (const ComplexMatrix& p : projectors_)
        sum += p;
    if (max_abs(sum - ComplexMatrix::Identity(d, d)) > tol)
        throw std::invalid_argument("LabelFamily: family not complete");
}

double LabeledDecomposition::weight_sum() const
{
    double s = 0.0;
    for (const CopyEntry& e : entries)
        s += e.weight;
    return s;
}

LabeledDecomposition decompose(const ComplexMatrix& x_t1,
                               const LabelFamily& labels,
                               const ComplexVector& initial_state,
                               std::string source, TimeTag tag,
                               bool record_copy_operators)
{
    if (x_t1.rows() != x_t1.cols())
        throw std::invalid_argument("decompose: observable not square");
    if (labels.dim() != x_t1.rows() || initial_state.size() != x_t1.rows())
        throw std::invalid_argument("decompose: dimension mismatch");

    LabeledDecomposition out;
    out.source = std::move(source);
    out.time_tag = tag;
    out.entries.reserve(labels.size());
    for (std::size_t k = 0; k < labels.size(); ++k) {
        const ComplexMatrix& proj = labels.projectors()[k];
        const Complex raw = initial_state.dot(proj * initial_state);
        if (std::abs(raw.imag()) > 1e-12)
            throw std::runtime_error("decompose: weight has nonreal matrix element");
        CopyEntry entry;
        entry.copy_id = static_cast<int>(k);
        entry.label_projector = proj;
        if (record_copy_operators)
            entry.copy_operator = x_t1 * proj;
        entry.weight = raw.real();
        entry.exists = entry.weight > kZeroWeightThreshold;
        out.entries.push_back(std::move(entry));
    }
    return out;
}

ComplexMatrix build_label_operator_L(int k, const Scenario& scen)
{
    if (k < 0 || k > scen.resolution + 1)
        throw std::out_of_range("build_label_operator_L: bin index out of range");
    const FactorLayout& lay = scen.layout;
    const int n = scen.n_systems;
    const long od = lay.o_block_dim();
    const long sd = lay.s_block_dim();
    const ComplexMatrix label_o = build_label_projector_O(k, scen);
    const ComplexMatrix u1 = build_copy_unitary_u(1, 3, scen.completion);
    const ComplexMatrix u2 = build_copy_unitary_u(2, 3, scen.completion);

    ComplexMatrix label = ComplexMatrix::Zero(od * sd, od * sd);
    for (long s_idx = 0; s_idx < sd; ++s_idx) {
        ComplexMatrix chain = ComplexMatrix::Identity(1, 1);
        for (int p = 0; p < n; ++p) {
            const bool picked_two = (s_idx >> (n - 1 - p)) & 1;
            chain = tensor_product(chain, picked_two ? u2 : u1);
        }
        const ComplexMatrix o_part = chain.adjoint() * label_o * chain;
        ComplexMatrix s_proj = ComplexMatrix::Zero(sd, sd);
        s_proj(s_idx, s_idx) = 1.0;
        label += tensor_product(o_part, s_proj);
    }
    return label;
}

ComplexMatrix lift_os_operator(const ComplexMatrix& os_op, const Scenario& scen)
{
    const FactorLayout& lay = scen.layout;
    if (os_op.rows() != lay.o_block_dim() * lay.s_block_dim()
        || os_op.rows() != os_op.cols())
        throw std::invalid_argument("lift_os_operator: wrong block dimension");
    return tensor_product(identity(lay.f_dim()), os_op);
}

} // namespace ew
