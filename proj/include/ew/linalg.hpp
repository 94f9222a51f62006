#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <stdexcept>

namespace ew {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Thrown when a construction would exceed the dense-dimension cap.
class dimension_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Hard cap on matrix dimension; default 4096, overridable via the
/// EW_MAX_DIM environment variable or set_dimension_cap().
std::size_t dimension_cap();
void set_dimension_cap(std::size_t cap);

/// Throws dimension_error if dim exceeds the cap or is not positive.
void check_dimension(long dim);

ComplexMatrix identity(long dim);

/// Kronecker product: result[(i*bd+k),(j*bd+l)] = a(i,j) * b(k,l).
ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector tensor_product(const ComplexVector& a, const ComplexVector& b);

ComplexMatrix adjoint(const ComplexMatrix& a);

/// Matrix product a*b; throws std::invalid_argument on dimension mismatch.
ComplexMatrix compose(const ComplexMatrix& a, const ComplexMatrix& b);

/// Largest entry magnitude (max-norm).
double max_abs(const ComplexMatrix& a);
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// max(|a a† - I|, |a† a - I|) in max-norm.
double unitarity_deviation(const ComplexMatrix& a);
/// max(|a - a†|, |a² - a|) in max-norm.
double projector_deviation(const ComplexMatrix& a);

bool is_unitary(const ComplexMatrix& a, double tol);
bool is_projector(const ComplexMatrix& a, double tol);

} // namespace ew
