#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "mtc/modular_data.hpp"

namespace mtc {

using IMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;
using DatumPtr = std::shared_ptr<const ModularDatum>;

inline std::vector<std::int64_t> flatten(const IMatrix& z) {
    std::vector<std::int64_t> v;
    v.reserve(static_cast<std::size_t>(z.rows()) * z.cols());
    for (Eigen::Index i = 0; i < z.rows(); ++i)
        for (Eigen::Index j = 0; j < z.cols(); ++j) v.push_back(z(i, j));
    return v;
}

inline bool imatrix_equal(const IMatrix& a, const IMatrix& b) {
    return a.rows() == b.rows() && a.cols() == b.cols() && flatten(a) == flatten(b);
}

/// Nonnegative integer matrix Z between two categories with
/// S_1 Z = Z S_2 and the exact T sparsity condition.  "Physical" means the
/// normalization Z_00 = 1 on top of that.
struct ModularInvariant {
    DatumPtr left;
    DatumPtr right;
    IMatrix Z;
    std::string name;

    bool physical() const { return Z.rows() > 0 && Z.cols() > 0 && Z(0, 0) == 1; }
};

/// Runs the ModularInvariant type invariants (commutation within tol_zero,
/// exact T-compatibility of the support, nonnegative entries; optionally
/// Z_00 = 1).  Failures are report content.
ValidationReport check_invariant(const ModularInvariant& inv, bool require_physical = false);

/// Exactly the index pairs with h1(l) - c1/24 == h2(m) - c2/24 (mod 1),
/// decided by exact rational comparison.  Row-major order.
std::vector<std::pair<int, int>> t_support(const ModularDatum& d1, const ModularDatum& d2);

/// Rational basis of {Z supported on t_support : S1 Z = Z S2}, in reduced
/// row echelon form over the support coordinates (which are sorted by
/// decreasing S_{l0} S'_{m0} so that pivots land on the most constrained
/// entries).
struct CommutantBasis {
    DatumPtr left;
    DatumPtr right;
    std::vector<std::pair<int, int>> support; // sorted by decreasing weight
    std::vector<double> weight;                // S1_{l0} * S2_{m0} per coordinate
    std::vector<std::vector<Rational>> basis;  // RREF rows over support coordinates
    std::vector<int> pivots;                   // pivot coordinate of each row

    int dimension() const { return static_cast<int>(basis.size()); }
};

struct ClassifyOptions {
    std::int64_t max_den = 1000000;        // denominator budget for rationalization
    std::uint64_t node_budget = 100000000; // enumeration nodes before BudgetExceeded
    bool strict_heterotic = false;         // reject pairs with c1 != c2 (mod 24)
    int threads = 0;                       // 0 = auto (used by table generation)
};

struct ClassifyStats {
    std::uint64_t nodes = 0;
    int kernel_dim = 0;
    int support_size = 0;
    bool used_fallback = false; // direct support enumeration instead of basis pivots
};

/// Numeric kernel of Z -> S1 Z - Z S2 on the support coordinates, lifted to
/// exact rationals and re-verified.  Throws RationalizationFailed when the
/// lift is impossible within max_den or the rational dimension disagrees
/// with the numeric kernel dimension.
CommutantBasis commutant_basis(DatumPtr d1, DatumPtr d2, const ClassifyOptions& opts = {});

/// Entry cap for physical invariants: B_{lm} = floor(1/(S1_{l0} S2_{m0}) + tol_int),
/// valid because sum S1_{l0} Z_{lm} S2_{m0} = Z_00 = 1 with positive weights.
IMatrix entry_bound(const ModularDatum& d1, const ModularDatum& d2);

/// |sum_{lm} S1_{l0} Z_{lm} S2_{m0} - Z_00|; <= 10*tol_zero for genuine
/// invariants.
double weighted_sum_identity(const ModularInvariant& inv);

/// Complete, duplicate-free list of physical invariants between d1 and d2,
/// canonically ordered (Z_00, then row-major lexicographic) and auto-named.
/// Completeness: every physical invariant is determined by its integer
/// values on the basis pivot coordinates, each capped by entry_bound, and
/// the pivot box is searched exhaustively.
std::vector<ModularInvariant> classify_physical(DatumPtr d1, DatumPtr d2,
                                                const ClassifyOptions& opts = {},
                                                ClassifyStats* stats = nullptr);

/// ADE-style display name: identity -> "A_r", canonical SU(2) block
/// patterns -> "D_n"/"E_6"/"E_7"/"E_8", permutation support -> "perm:...",
/// otherwise "inv#<hash>".
std::string invariant_auto_name(const IMatrix& z, const ModularDatum& left,
                                const ModularDatum& right);

std::uint64_t invariant_hash(const IMatrix& z);

/// Canonical SU(2) block invariants (defined for the levels where they
/// exist); used for naming and by the golden tests.
IMatrix su2_ade_D(int k);                   // k even
IMatrix su2_ade_E(int k);                   // k in {10, 16, 28}

namespace detail {
/// Direct branch-and-bound over support entries (no commutant basis);
/// complete for physical invariants by the same entry/weight bounds.  Used
/// as a fallback when rationalization fails, and kept callable for tests.
std::vector<IMatrix> enumerate_physical_direct(const ModularDatum& d1, const ModularDatum& d2,
                                               const ClassifyOptions& opts, ClassifyStats* stats);
} // namespace detail

} // namespace mtc
