#include "mtc/numerics.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include <Eigen/SVD>

namespace mtc {

void check_precision(const Precision& prec) {
    if (prec.bits < 1) throw Error("precision bits must be positive");
    if (!(prec.tol_zero > 0.0 && prec.tol_zero < 0.5))
        throw Error("tol_zero must lie in (0, 1/2)");
    if (!(prec.tol_int > 0.0 && prec.tol_int < 0.5))
        throw Error("tol_int must lie in (0, 1/2)");
}

RoundedInt round_to_integer(double x, const Precision& prec) {
    if (!std::isfinite(x)) throw NotNearInteger("cannot round non-finite value");
    double nearest = std::nearbyint(x);
    if (std::abs(nearest) > 9.0e18) throw NotNearInteger("value out of 64-bit integer range");
    double residual = std::abs(x - nearest);
    if (residual > prec.tol_int)
        throw NotNearInteger("value " + format_double(x) + " is not within " +
                             format_double(prec.tol_int) + " of an integer");
    return RoundedInt{static_cast<std::int64_t>(nearest), residual};
}

Rational rationalize(double x, std::int64_t max_den, const Precision& prec) {
    if (max_den < 1) throw Error("max_den must be >= 1");
    if (!std::isfinite(x)) throw NotNearRational("cannot rationalize non-finite value");

    // Walk the continued-fraction convergents p_k/q_k and accept the first
    // one with |x - p/q| <= tol_int / q.  Convergents are generated with
    // 128-bit intermediates; the walk stops once q exceeds max_den.
    using i128 = __int128;
    i128 p_prev = 1, q_prev = 0;
    i128 p = 0, q = 1;
    long double y = x;
    bool first = true;
    for (int iter = 0; iter < 64; ++iter) {
        long double fl = std::floor(y);
        if (fl > 9.0e18L || fl < -9.0e18L) break;
        i128 a = static_cast<i128>(static_cast<long long>(fl));
        i128 p_next = first ? a : a * p + p_prev;
        i128 q_next = first ? 1 : a * q + q_prev;
        if (!first) {
            p_prev = p;
            q_prev = q;
        }
        p = p_next;
        q = q_next;
        first = false;
        if (q > max_den) break;

        double approx = static_cast<double>(p) / static_cast<double>(q);
        if (std::abs(x - approx) <= prec.tol_int / static_cast<double>(q))
            return Rational(static_cast<std::int64_t>(p), static_cast<std::int64_t>(q));

        long double frac = y - fl;
        if (frac <= 0.0L) break; // exact rational reached, already rejected above
        y = 1.0L / frac;
    }
    throw NotNearRational("no p/q with q <= " + std::to_string(max_den) + " within tolerance of " +
                          format_double(x));
}

namespace {

template <typename Matrix, typename Vector>
std::vector<Vector> nullspace_impl(const Matrix& m, const Precision& prec) {
    check_precision(prec);
    if (m.rows() < 1 || m.cols() < 1) throw DimensionMismatch("nullspace of empty matrix");
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    double sigma_max = sv.size() > 0 ? sv(0) : 0.0;
    double threshold = prec.tol_zero * std::max(sigma_max, 1.0);
    std::vector<Vector> basis;
    for (Eigen::Index i = 0; i < m.cols(); ++i) {
        double sigma = i < sv.size() ? sv(i) : 0.0;
        if (sigma < threshold) {
            Vector v = svd.matrixV().col(i);
            double residual = (m * v).cwiseAbs().maxCoeff();
            if (residual > 10.0 * prec.tol_zero)
                throw Error("nullspace vector residual " + format_double(residual) +
                            " exceeds 10*tol_zero");
            basis.push_back(std::move(v));
        }
    }
    return basis;
}

} // namespace

std::vector<CVector> nullspace(const CMatrix& m, const Precision& prec) {
    if (!matrix_is_finite(m)) throw Error("nullspace input has non-finite entries");
    return nullspace_impl<CMatrix, CVector>(m, prec);
}

std::vector<Eigen::VectorXd> nullspace_real(const Eigen::MatrixXd& m, const Precision& prec) {
    if (!m.allFinite()) throw Error("nullspace input has non-finite entries");
    return nullspace_impl<Eigen::MatrixXd, Eigen::VectorXd>(m, prec);
}

CMatrix mat_product(const CMatrix& a, const CMatrix& b) {
    if (a.cols() != b.rows())
        throw DimensionMismatch("matrix product " + std::to_string(a.rows()) + "x" +
                                std::to_string(a.cols()) + " * " + std::to_string(b.rows()) + "x" +
                                std::to_string(b.cols()));
    return a * b;
}

CMatrix mat_adjoint(const CMatrix& a) { return a.adjoint(); }

double mat_inf_norm(const CMatrix& a) {
    if (a.rows() == 0 || a.cols() == 0) return 0.0;
    return a.cwiseAbs().rowwise().sum().maxCoeff();
}

bool matrix_is_finite(const CMatrix& m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            Complex z = m(i, j);
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
        }
    return true;
}

void check_cmatrix(const CMatrix& m) {
    if (m.rows() < 1 || m.cols() < 1) throw DimensionMismatch("matrix dimensions must be positive");
    if (!matrix_is_finite(m)) throw Error("matrix has non-finite entries");
}

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

} // namespace mtc
