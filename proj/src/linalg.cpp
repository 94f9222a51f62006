#include "ew/linalg.hpp"

#include <cstdlib>
#include <optional>
#include <string>

namespace ew {

namespace {

std::optional<std::size_t>& cap_override()
{
    static std::optional<std::size_t> cap;
    return cap;
}

std::size_t cap_from_env()
{
    if (const char* env = std::getenv("EW_MAX_DIM")) {
        char* end = nullptr;
        const unsigned long v = std::strtoul(env, &end, 10);
        if (end && *end == '\0' && v > 0)
            return static_cast<std::size_t>(v);
    }
    return 4096;
}

} // namespace

std::size_t dimension_cap()
{
    if (cap_override())
        return *cap_override();
    static const std::size_t env_cap = cap_from_env();
    return env_cap;
}

void set_dimension_cap(std::size_t cap)
{
    cap_override() = cap;
}

void check_dimension(long dim)
{
    if (dim < 1)
        throw dimension_error("matrix dimension must be positive");
    if (static_cast<std::size_t>(dim) > dimension_cap())
        throw dimension_error("dimension " + std::to_string(dim)
                              + " exceeds cap " + std::to_string(dimension_cap()));
}

ComplexMatrix identity(long dim)
{
    check_dimension(dim);
    return ComplexMatrix::Identity(dim, dim);
}

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b)
{
    check_dimension(a.rows() * b.rows());
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (long i = 0; i < a.rows(); ++i)
        for (long j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

ComplexVector tensor_product(const ComplexVector& a, const ComplexVector& b)
{
    check_dimension(a.size() * b.size());
    ComplexVector out(a.size() * b.size());
    for (long i = 0; i < a.size(); ++i)
        out.segment(i * b.size(), b.size()) = a(i) * b;
    return out;
}

ComplexMatrix adjoint(const ComplexMatrix& a)
{
    return a.adjoint();
}

ComplexMatrix compose(const ComplexMatrix& a, const ComplexMatrix& b)
{
    if (a.cols() != b.rows())
        throw std::invalid_argument("compose: dimension mismatch");
    return a * b;
}

double max_abs(const ComplexMatrix& a)
{
    if (a.size() == 0)
        return 0.0;
    return a.cwiseAbs().maxCoeff();
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("max_abs_diff: shape mismatch");
    return max_abs(a - b);
}

double unitarity_deviation(const ComplexMatrix& a)
{
    if (a.rows() != a.cols())
        throw std::invalid_argument("unitarity_deviation: matrix not square");
    const ComplexMatrix eye = ComplexMatrix::Identity(a.rows(), a.cols());
    const double right = max_abs(a * a.adjoint() - eye);
    const double left = max_abs(a.adjoint() * a - eye);
    return std::max(right, left);
}

double projector_deviation(const ComplexMatrix& a)
{
    if (a.rows() != a.cols())
        throw std::invalid_argument("projector_deviation: matrix not square");
    const double hermitian = max_abs(a - ComplexMatrix(a.adjoint()));
    const double idempotent = max_abs(a * a - a);
    return std::max(hermitian, idempotent);
}

bool is_unitary(const ComplexMatrix& a, double tol)
{
    if (tol < 0)
        throw std::invalid_argument("is_unitary: negative tolerance");
    if (a.rows() != a.cols())
        return false;
    return unitarity_deviation(a) <= tol;
}

bool is_projector(const ComplexMatrix& a, double tol)
{
    if (tol < 0)
        throw std::invalid_argument("is_projector: negative tolerance");
    if (a.rows() != a.cols())
        return false;
    return projector_deviation(a) <= tol;
}

} // namespace ew
