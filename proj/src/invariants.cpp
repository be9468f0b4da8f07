#include "mtc/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

namespace mtc {

namespace {

CMatrix to_complex(const IMatrix& z) {
    CMatrix m = CMatrix::Zero(z.rows(), z.cols());
    for (Eigen::Index i = 0; i < z.rows(); ++i)
        for (Eigen::Index j = 0; j < z.cols(); ++j) m(i, j) = Complex(static_cast<double>(z(i, j)), 0.0);
    return m;
}

double support_weight(const ModularDatum& d1, const ModularDatum& d2, int l, int m) {
    return d1.S(l, 0).real() * d2.S(m, 0).real();
}

} // namespace

ValidationReport check_invariant(const ModularInvariant& inv, bool require_physical) {
    ValidationReport rep;
    auto add = [&rep](const std::string& name, bool pass, double residual) {
        rep.checks.push_back(CheckResult{name, pass, residual});
    };
    bool shape_ok = inv.left && inv.right && inv.Z.rows() == inv.left->rank &&
                    inv.Z.cols() == inv.right->rank;
    add("shape", shape_ok, 0.0);
    if (!shape_ok) return rep;

    const Precision& prec = inv.left->prec;
    bool nonneg = true;
    for (Eigen::Index i = 0; i < inv.Z.rows(); ++i)
        for (Eigen::Index j = 0; j < inv.Z.cols(); ++j)
            if (inv.Z(i, j) < 0) nonneg = false;
    add("entries_nonnegative", nonneg, 0.0);

    CMatrix zc = to_complex(inv.Z);
    double comm = mat_inf_norm(inv.left->S * zc - zc * inv.right->S);
    add("commutation", comm <= prec.tol_zero, comm);

    bool t_ok = true;
    for (Eigen::Index i = 0; i < inv.Z.rows() && t_ok; ++i)
        for (Eigen::Index j = 0; j < inv.Z.cols() && t_ok; ++j)
            if (inv.Z(i, j) != 0 &&
                inv.left->t_exponent(static_cast<int>(i)) != inv.right->t_exponent(static_cast<int>(j)))
                t_ok = false;
    add("t_compatibility", t_ok, 0.0);

    if (require_physical) add("physical_normalization", inv.Z(0, 0) == 1, 0.0);
    return rep;
}

std::vector<std::pair<int, int>> t_support(const ModularDatum& d1, const ModularDatum& d2) {
    std::vector<std::pair<int, int>> out;
    for (int l = 0; l < d1.rank; ++l) {
        Rational e1 = d1.t_exponent(l);
        for (int m = 0; m < d2.rank; ++m)
            if (e1 == d2.t_exponent(m)) out.emplace_back(l, m);
    }
    return out;
}

IMatrix entry_bound(const ModularDatum& d1, const ModularDatum& d2) {
    IMatrix b = IMatrix::Zero(d1.rank, d2.rank);
    for (int l = 0; l < d1.rank; ++l)
        for (int m = 0; m < d2.rank; ++m) {
            double w = support_weight(d1, d2, l, m);
            if (w <= 0.0) throw Error("entry_bound requires a positive S first column");
            b(l, m) = static_cast<std::int64_t>(std::floor(1.0 / w + d1.prec.tol_int));
        }
    return b;
}

double weighted_sum_identity(const ModularInvariant& inv) {
    Complex sum(0.0, 0.0);
    for (Eigen::Index l = 0; l < inv.Z.rows(); ++l)
        for (Eigen::Index m = 0; m < inv.Z.cols(); ++m)
            if (inv.Z(l, m) != 0)
                sum += inv.left->S(l, 0) * static_cast<double>(inv.Z(l, m)) * inv.right->S(m, 0);
    return std::abs(sum - Complex(static_cast<double>(inv.Z(0, 0)), 0.0));
}

CommutantBasis commutant_basis(DatumPtr d1, DatumPtr d2, const ClassifyOptions& opts) {
    if (!d1 || !d2) throw Error("commutant_basis: null datum");
    ValidationReport v1 = validate(*d1), v2 = validate(*d2);
    if (!v1.ok()) throw Error("left datum '" + d1->name + "' fails validation");
    if (!v2.ok()) throw Error("right datum '" + d2->name + "' fails validation");
    const Precision& prec = d1->prec;

    CommutantBasis cb;
    cb.left = d1;
    cb.right = d2;
    cb.support = t_support(*d1, *d2);
    // Decreasing weight puts the most constrained coordinates first, so RREF
    // pivots land where the entry bounds are smallest.
    std::stable_sort(cb.support.begin(), cb.support.end(),
                     [&](const std::pair<int, int>& a, const std::pair<int, int>& b) {
                         return support_weight(*d1, *d2, a.first, a.second) >
                                support_weight(*d1, *d2, b.first, b.second);
                     });
    const int n = static_cast<int>(cb.support.size());
    cb.weight.resize(n);
    for (int j = 0; j < n; ++j)
        cb.weight[j] = support_weight(*d1, *d2, cb.support[j].first, cb.support[j].second);
    if (n == 0) return cb;

    const int r1 = d1->rank, r2 = d2->rank;
    CMatrix m = CMatrix::Zero(static_cast<Eigen::Index>(r1) * r2, n);
    for (int j = 0; j < n; ++j) {
        auto [l, mu] = cb.support[j];
        for (int a = 0; a < r1; ++a) m(static_cast<Eigen::Index>(a) * r2 + mu, j) += d1->S(a, l);
        for (int b = 0; b < r2; ++b) m(static_cast<Eigen::Index>(l) * r2 + b, j) -= d2->S(mu, b);
    }

    const int dim_complex = static_cast<int>(nullspace(m, prec).size());
    if (dim_complex == 0) return cb;

    // Rational solutions are real, so solve Re(M) v = 0 and Im(M) v = 0
    // jointly, then bring the kernel to reduced row echelon form.
    Eigen::MatrixXd stacked(2 * m.rows(), n);
    stacked << m.real(), m.imag();
    std::vector<Eigen::VectorXd> kernel = nullspace_real(stacked, prec);
    const int d = static_cast<int>(kernel.size());
    if (d != dim_complex)
        throw RationalizationFailed("real kernel dimension " + std::to_string(d) +
                                    " differs from complex kernel dimension " +
                                    std::to_string(dim_complex));

    Eigen::MatrixXd k(d, n);
    for (int i = 0; i < d; ++i) k.row(i) = kernel[i].transpose();
    int row = 0;
    std::vector<int> pivots;
    for (int col = 0; col < n && row < d; ++col) {
        int best = -1;
        double best_abs = 1e-7; // below this a column counts as eliminated
        for (int i = row; i < d; ++i)
            if (std::abs(k(i, col)) > best_abs) {
                best = i;
                best_abs = std::abs(k(i, col));
            }
        if (best < 0) continue;
        k.row(row).swap(k.row(best));
        k.row(row) /= k(row, col);
        for (int i = 0; i < d; ++i)
            if (i != row) k.row(i) -= k(i, col) * k.row(row);
        pivots.push_back(col);
        ++row;
    }
    if (row != d)
        throw RationalizationFailed("kernel rows became dependent during echelon reduction");

    cb.basis.assign(d, std::vector<Rational>(n));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < n; ++j) {
            try {
                cb.basis[i][j] = rationalize(k(i, j), opts.max_den, prec);
            } catch (const NotNearRational&) {
                throw RationalizationFailed("kernel entry " + format_double(k(i, j)) +
                                            " has no rational lift with denominator <= " +
                                            std::to_string(opts.max_den));
            }
        }
    cb.pivots = pivots;

    // Re-verify every lifted row against the commutation map.
    for (int i = 0; i < d; ++i) {
        CMatrix z = CMatrix::Zero(r1, r2);
        for (int j = 0; j < n; ++j)
            z(cb.support[j].first, cb.support[j].second) = Complex(cb.basis[i][j].to_double(), 0.0);
        double residual = mat_inf_norm(d1->S * z - z * d2->S);
        if (residual > 10.0 * prec.tol_zero)
            throw RationalizationFailed("lifted basis row " + std::to_string(i) + " has residual " +
                                        format_double(residual));
    }
    return cb;
}

namespace {

struct Enumerator {
    const ModularDatum& d1;
    const ModularDatum& d2;
    const ClassifyOptions& opts;
    ClassifyStats* stats;
    std::vector<IMatrix> found;

    void note_node() {
        if (++stats->nodes > opts.node_budget)
            throw BudgetExceeded("classification exceeded node budget of " +
                                 std::to_string(opts.node_budget) + " nodes");
    }
};

// Branch over the pivot coordinates of the commutant basis; every solution
// of the commutation system is the unique basis combination whose
// coefficients are its pivot entries, so integer boxes over the pivots
// exhaust the physical invariants.
struct BasisSearch : Enumerator {
    const CommutantBasis& cb;
    std::vector<std::int64_t> caps;
    std::vector<std::int64_t> val;
    int i00 = -1;

    BasisSearch(const CommutantBasis& b, const ModularDatum& x1, const ModularDatum& x2,
                const ClassifyOptions& o, ClassifyStats* s)
        : Enumerator{x1, x2, o, s, {}}, cb(b) {}

    void run() {
        const int n = static_cast<int>(cb.support.size());
        for (int j = 0; j < n; ++j)
            if (cb.support[j] == std::pair<int, int>(0, 0)) i00 = j;
        if (i00 < 0 || cb.basis.empty()) return;
        IMatrix bound = entry_bound(d1, d2);
        caps.resize(cb.pivots.size());
        for (std::size_t j = 0; j < cb.pivots.size(); ++j) {
            auto [l, m] = cb.support[static_cast<std::size_t>(cb.pivots[j])];
            caps[j] = bound(l, m);
        }
        val.assign(cb.pivots.size(), 0);
        descend(0, 0.0);
    }

    void descend(std::size_t j, double weighted_sum) {
        if (j == cb.pivots.size()) {
            emit();
            return;
        }
        const double w = cb.weight[static_cast<std::size_t>(cb.pivots[j])];
        const bool is_origin = cb.pivots[j] == i00; // Z_00 = 1 is forced
        std::int64_t lo = is_origin ? 1 : 0;
        std::int64_t hi = is_origin ? 1 : caps[j];
        for (std::int64_t v = lo; v <= hi; ++v) {
            double ws = weighted_sum + static_cast<double>(v) * w;
            if (ws > 1.0 + d1.prec.tol_zero) break;
            note_node();
            val[j] = v;
            descend(j + 1, ws);
        }
        val[j] = 0;
    }

    void emit() {
        const int n = static_cast<int>(cb.support.size());
        IMatrix z = IMatrix::Zero(d1.rank, d2.rank);
        for (int i = 0; i < n; ++i) {
            Rational acc(0);
            for (std::size_t j = 0; j < val.size(); ++j) {
                if (val[j] == 0) continue;
                acc += Rational(val[j]) * cb.basis[j][static_cast<std::size_t>(i)];
            }
            if (!acc.is_integer() || !acc.is_nonnegative()) return;
            if (i == i00 && acc != Rational(1)) return;
            z(cb.support[static_cast<std::size_t>(i)].first,
              cb.support[static_cast<std::size_t>(i)].second) = acc.num();
        }
        found.push_back(std::move(z));
    }
};

// Direct branch over every support entry.  Complete for physical invariants
// by the same entry bounds, but the search space is far larger; only used
// when the rational lift of the commutant fails, and by tests.
struct DirectSearch : Enumerator {
    std::vector<std::pair<int, int>> support;
    std::vector<double> weight;
    std::vector<std::int64_t> caps;
    std::vector<std::int64_t> val;
    int i00 = -1;

    DirectSearch(const ModularDatum& x1, const ModularDatum& x2, const ClassifyOptions& o,
                 ClassifyStats* s)
        : Enumerator{x1, x2, o, s, {}} {}

    void run() {
        support = t_support(d1, d2);
        std::stable_sort(support.begin(), support.end(),
                         [&](const std::pair<int, int>& a, const std::pair<int, int>& b) {
                             return support_weight(d1, d2, a.first, a.second) >
                                    support_weight(d1, d2, b.first, b.second);
                         });
        const int n = static_cast<int>(support.size());
        IMatrix bound = entry_bound(d1, d2);
        weight.resize(n);
        caps.resize(n);
        for (int j = 0; j < n; ++j) {
            weight[j] = support_weight(d1, d2, support[j].first, support[j].second);
            caps[j] = bound(support[j].first, support[j].second);
            if (support[j] == std::pair<int, int>(0, 0)) i00 = j;
        }
        if (i00 < 0) return;
        stats->support_size = n;
        val.assign(n, 0);
        descend(0, 0.0);
    }

    void descend(int j, double weighted_sum) {
        if (j == static_cast<int>(support.size())) {
            emit();
            return;
        }
        std::int64_t lo = j == i00 ? 1 : 0;
        std::int64_t hi = j == i00 ? 1 : caps[static_cast<std::size_t>(j)];
        for (std::int64_t v = lo; v <= hi; ++v) {
            double ws = weighted_sum + static_cast<double>(v) * weight[static_cast<std::size_t>(j)];
            if (ws > 1.0 + d1.prec.tol_zero) break;
            note_node();
            val[static_cast<std::size_t>(j)] = v;
            descend(j + 1, ws);
        }
        val[static_cast<std::size_t>(j)] = 0;
    }

    void emit() {
        IMatrix z = IMatrix::Zero(d1.rank, d2.rank);
        for (std::size_t j = 0; j < support.size(); ++j)
            z(support[j].first, support[j].second) = val[j];
        CMatrix zc = to_complex(z);
        if (mat_inf_norm(d1.S * zc - zc * d2.S) <= d1.prec.tol_zero) found.push_back(std::move(z));
    }
};

std::vector<ModularInvariant> finalize_classification(std::vector<IMatrix> found, DatumPtr d1,
                                                      DatumPtr d2) {
    std::set<std::vector<std::int64_t>> seen;
    std::vector<IMatrix> unique_found;
    for (auto& z : found)
        if (seen.insert(flatten(z)).second) unique_found.push_back(std::move(z));
    std::sort(unique_found.begin(), unique_found.end(), [](const IMatrix& a, const IMatrix& b) {
        if (a(0, 0) != b(0, 0)) return a(0, 0) < b(0, 0);
        return flatten(a) < flatten(b);
    });

    std::vector<ModularInvariant> out;
    std::set<std::string> names;
    for (auto& z : unique_found) {
        ModularInvariant inv{d1, d2, std::move(z), ""};
        inv.name = invariant_auto_name(inv.Z, *d1, *d2);
        while (!names.insert(inv.name).second) inv.name += "'";
        ValidationReport rep = check_invariant(inv, true);
        double wres = weighted_sum_identity(inv);
        if (!rep.ok() || wres > 10.0 * d1->prec.tol_zero)
            throw Error("classification produced a matrix failing invariant checks; "
                        "commutant lift is inconsistent");
        out.push_back(std::move(inv));
    }
    return out;
}

} // namespace

std::vector<IMatrix> detail::enumerate_physical_direct(const ModularDatum& d1,
                                                       const ModularDatum& d2,
                                                       const ClassifyOptions& opts,
                                                       ClassifyStats* stats) {
    ClassifyStats local;
    DirectSearch search(d1, d2, opts, stats ? stats : &local);
    search.run();
    return std::move(search.found);
}

std::vector<ModularInvariant> classify_physical(DatumPtr d1, DatumPtr d2,
                                                const ClassifyOptions& opts, ClassifyStats* stats) {
    if (!d1 || !d2) throw Error("classify_physical: null datum");
    ClassifyStats local;
    if (!stats) stats = &local;
    if (opts.strict_heterotic && (d1->c - d2->c).mod(24) != Rational(0))
        throw Error("heterotic pair rejected in strict mode: central charges differ mod 24 (" +
                    d1->c.str() + " vs " + d2->c.str() + ")");

    std::vector<IMatrix> found;
    try {
        CommutantBasis cb = commutant_basis(d1, d2, opts);
        stats->kernel_dim = cb.dimension();
        stats->support_size = static_cast<int>(cb.support.size());
        BasisSearch search(cb, *d1, *d2, opts, stats);
        search.run();
        found = std::move(search.found);
    } catch (const RationalizationFailed&) {
        stats->used_fallback = true;
        stats->kernel_dim = -1;
        found = detail::enumerate_physical_direct(*d1, *d2, opts, stats);
    }
    return finalize_classification(std::move(found), d1, d2);
}

IMatrix su2_ade_D(int k) {
    if (k < 2 || k % 2 != 0) throw Error("SU(2) D-type invariant needs even level >= 2");
    const int r = k + 1;
    IMatrix z = IMatrix::Zero(r, r);
    if (k % 4 == 0) {
        for (int l = 0; l < k / 2; l += 2) {
            z(l, l) = 1;
            z(l, k - l) = 1;
            z(k - l, l) = 1;
            z(k - l, k - l) = 1;
        }
        z(k / 2, k / 2) = 2;
    } else {
        for (int l = 0; l <= k; ++l) {
            if (l % 2 == 0)
                z(l, l) = 1;
            else
                z(l, k - l) = 1;
        }
    }
    return z;
}

IMatrix su2_ade_E(int k) {
    auto fill_blocks = [](int rank, const std::vector<std::vector<int>>& blocks) {
        IMatrix z = IMatrix::Zero(rank, rank);
        for (const auto& blk : blocks)
            for (int a : blk)
                for (int b : blk) z(a, b) = 1;
        return z;
    };
    switch (k) {
    case 10:
        return fill_blocks(11, {{0, 6}, {3, 7}, {4, 10}});
    case 16: {
        IMatrix z = fill_blocks(17, {{0, 16}, {4, 12}, {6, 10}});
        z(8, 8) = 1;
        z(2, 8) = z(14, 8) = z(8, 2) = z(8, 14) = 1;
        return z;
    }
    case 28:
        return fill_blocks(29, {{0, 10, 18, 28}, {6, 12, 16, 22}});
    default:
        throw Error("SU(2) exceptional invariants exist at levels 10, 16, 28 only");
    }
}

std::uint64_t invariant_hash(const IMatrix& z) {
    std::uint64_t hash = 1469598103934665603ull;
    auto mix = [&hash](std::int64_t v) {
        for (int byte = 0; byte < 8; ++byte) {
            hash ^= static_cast<unsigned char>(v >> (8 * byte));
            hash *= 1099511628211ull;
        }
    };
    mix(z.rows());
    mix(z.cols());
    for (Eigen::Index i = 0; i < z.rows(); ++i)
        for (Eigen::Index j = 0; j < z.cols(); ++j) mix(z(i, j));
    return hash;
}

std::string invariant_auto_name(const IMatrix& z, const ModularDatum& left,
                                const ModularDatum& right) {
    const bool same_datum = fingerprint(left) == fingerprint(right);
    const bool square = z.rows() == z.cols();

    if (same_datum && square) {
        bool is_identity = true;
        for (Eigen::Index i = 0; i < z.rows() && is_identity; ++i)
            for (Eigen::Index j = 0; j < z.cols() && is_identity; ++j)
                if (z(i, j) != (i == j ? 1 : 0)) is_identity = false;
        if (is_identity) return "A_" + std::to_string(z.rows());

        if (left.su2_level && right.su2_level && *left.su2_level == *right.su2_level) {
            int k = *left.su2_level;
            if (k % 2 == 0 && imatrix_equal(z, su2_ade_D(k)))
                return "D_" + std::to_string(k / 2 + 2);
            if ((k == 10 || k == 16 || k == 28) && imatrix_equal(z, su2_ade_E(k))) {
                if (k == 10) return "E_6";
                if (k == 16) return "E_7";
                return "E_8";
            }
        }
    }

    if (square) {
        // permutation support: exactly one 1 per row and per column
        std::vector<int> image(static_cast<std::size_t>(z.rows()), -1);
        bool is_perm = true;
        std::vector<bool> col_used(static_cast<std::size_t>(z.cols()), false);
        for (Eigen::Index i = 0; i < z.rows() && is_perm; ++i) {
            int count = 0;
            for (Eigen::Index j = 0; j < z.cols(); ++j) {
                if (z(i, j) == 0) continue;
                if (z(i, j) != 1 || col_used[static_cast<std::size_t>(j)]) {
                    is_perm = false;
                    break;
                }
                col_used[static_cast<std::size_t>(j)] = true;
                image[static_cast<std::size_t>(i)] = static_cast<int>(j);
                ++count;
            }
            if (count != 1) is_perm = false;
        }
        if (is_perm) {
            std::string s = "perm:";
            for (std::size_t i = 0; i < image.size(); ++i) {
                if (i) s += ",";
                s += std::to_string(image[i]);
            }
            return s;
        }
    }

    char buf[20];
    std::snprintf(buf, sizeof(buf), "%08x",
                  static_cast<unsigned>(invariant_hash(z) & 0xffffffffu));
    return std::string("inv#") + buf;
}

} // namespace mtc
