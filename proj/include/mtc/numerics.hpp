#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mtc/errors.hpp"
#include "mtc/rational.hpp"

namespace mtc {

/// Tolerance policy for every floating decision in the repo.  All rounding
/// to integers or rationals threads a Precision through, so an
/// extended-precision backend can be swapped in without interface changes.
/// The only backend built today is the platform double (53 significand bits).
struct Precision {
    int bits = 53;
    double tol_zero = 1e-9; // absolute threshold for "is zero"
    double tol_int = 1e-6;  // absolute threshold for "is integer"
};

/// Throws unless tolerances are positive and below 1/2.
void check_precision(const Precision& prec);

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

struct RoundedInt {
    std::int64_t value = 0;
    double residual = 0.0; // |x - value|, already checked against tol_int
};

/// Nearest integer with verified residual.  Throws NotNearInteger when the
/// nearest integer is farther than tol_int (0.5 always fails since
/// tol_int < 1/2).
RoundedInt round_to_integer(double x, const Precision& prec);

/// Continued-fraction reconstruction: the simplest p/q with q <= max_den and
/// |x - p/q| <= tol_int / q.  Throws NotNearRational if no convergent
/// qualifies.
Rational rationalize(double x, std::int64_t max_den, const Precision& prec);

/// Orthonormal basis of {v : Mv ~ 0}.  Singular values below
/// tol_zero * max(sigma_max, 1) count as zero.  Every returned vector is
/// re-checked to satisfy |Mv|_inf <= 10 * tol_zero.
std::vector<CVector> nullspace(const CMatrix& m, const Precision& prec);

/// Real variant, used when lifting kernels to exact rationals.
std::vector<Eigen::VectorXd> nullspace_real(const Eigen::MatrixXd& m, const Precision& prec);

CMatrix mat_product(const CMatrix& a, const CMatrix& b); // throws DimensionMismatch
CMatrix mat_adjoint(const CMatrix& a);
double mat_inf_norm(const CMatrix& a); // max row sum of absolute values

bool matrix_is_finite(const CMatrix& m);

/// Checks the CMatrix type invariants (positive dimensions, finite entries).
void check_cmatrix(const CMatrix& m);

/// Shortest decimal that round-trips a double (>= 17 significant digits).
std::string format_double(double x);

} // namespace mtc
