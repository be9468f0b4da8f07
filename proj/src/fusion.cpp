#include "mtc/fusion.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <mutex>
#include <thread>

namespace mtc {

namespace {

void require_same_datum(const ModularDatum& a, const ModularDatum& b, const std::string& what) {
    if (fingerprint(a) != fingerprint(b))
        throw MiddleCategoryMismatch(what + ": '" + a.name + "' vs '" + b.name + "'");
}

ModularInvariant as_invariant(const IMatrix& z, DatumPtr left, DatumPtr right) {
    return ModularInvariant{std::move(left), std::move(right), z, ""};
}

} // namespace

IMatrix product(const ModularInvariant& z1, const ModularInvariant& z2) {
    if (!z1.right || !z2.left) throw Error("product: invariant without category data");
    require_same_datum(*z1.right, *z2.left, "middle category mismatch");
    IMatrix z3 = z1.Z * z2.Z;
    // modular invariance survives the product; normalization need not
    ModularInvariant probe = as_invariant(z3, z1.left, z2.right);
    ValidationReport rep = check_invariant(probe, false);
    if (!rep.ok())
        throw Error("product of '" + z1.name + "' and '" + z2.name +
                    "' violates commutation or T-compatibility");
    return z3;
}

FusionOutcome decompose(const IMatrix& z3, const std::vector<ModularInvariant>& library) {
    FusionOutcome out;
    out.product = z3;

    const bool zero = flatten(z3) == std::vector<std::int64_t>(flatten(z3).size(), 0);
    if (library.empty()) {
        if (zero) return out;
        throw NoDecomposition("empty library cannot decompose a nonzero matrix");
    }

    DatumPtr left = library.front().left;
    DatumPtr right = library.front().right;
    for (const auto& inv : library) {
        require_same_datum(*inv.left, *left, "library is not a single-pair classification");
        require_same_datum(*inv.right, *right, "library is not a single-pair classification");
        if (!inv.physical()) throw Error("library entry '" + inv.name + "' is not physical");
    }
    if (z3.rows() != left->rank || z3.cols() != right->rank)
        throw DimensionMismatch("matrix shape does not match the library pair");
    if (!check_invariant(as_invariant(z3, left, right), false).ok())
        throw Error("decompose: input fails commutation or T-compatibility");

    const std::size_t n = library.size();
    const std::int64_t target = z3(0, 0);
    std::vector<std::vector<std::int64_t>> solutions;
    std::vector<std::int64_t> mults(n, 0);
    IMatrix remaining = z3;

    // Exhaustive search; each library matrix has Z_00 = 1, so multiplicities
    // are capped by the remaining (0,0) entry and sum to product_00 exactly.
    auto max_mult = [&remaining](const IMatrix& z) {
        std::int64_t cap = remaining(0, 0);
        for (Eigen::Index i = 0; i < z.rows(); ++i)
            for (Eigen::Index j = 0; j < z.cols(); ++j)
                if (z(i, j) > 0) cap = std::min(cap, remaining(i, j) / z(i, j));
        return cap;
    };
    std::function<void(std::size_t)> search = [&](std::size_t i) {
        if (i == n) {
            if (remaining.isZero(0)) solutions.push_back(mults);
            return;
        }
        const IMatrix& z = library[i].Z;
        std::int64_t cap = max_mult(z);
        for (std::int64_t m = 0; m <= cap; ++m) {
            mults[i] = m;
            remaining -= m * z;
            search(i + 1);
            remaining += m * z;
        }
        mults[i] = 0;
    };
    search(0);

    if (solutions.empty())
        throw NoDecomposition("no decomposition of the product over " + std::to_string(n) +
                              " physical invariants (target count " + std::to_string(target) + ")");

    auto to_summands = [&library](const std::vector<std::int64_t>& m) {
        std::vector<Summand> s;
        for (std::size_t i = 0; i < library.size(); ++i)
            if (m[i] > 0) s.push_back(Summand{library[i].name, m[i]});
        return s;
    };
    out.summands = to_summands(solutions.front()); // DFS order is lexicographic
    out.unique = solutions.size() == 1;
    for (std::size_t i = 1; i < solutions.size(); ++i)
        out.alternatives.push_back(to_summands(solutions[i]));
    return out;
}

FusionOutcome fuse(const ModularInvariant& z1, const ModularInvariant& z2,
                   const std::vector<ModularInvariant>& lib13) {
    if (!lib13.empty()) {
        require_same_datum(*lib13.front().left, *z1.left, "library left category mismatch");
        require_same_datum(*lib13.front().right, *z2.right, "library right category mismatch");
    }
    FusionOutcome out = decompose(product(z1, z2), lib13);
    out.left = z1.name;
    out.right = z2.name;
    return out;
}

FusionTable fusion_table(const std::vector<ModularInvariant>& lib, int threads) {
    FusionTable table;
    for (const auto& inv : lib) table.names.push_back(inv.name);
    const std::size_t n = lib.size();
    table.cells.resize(n * n);
    if (n == 0) return table;
    for (std::size_t i = 1; i < n; ++i) {
        require_same_datum(*lib[i].left, *lib[0].left, "table library mismatch");
        require_same_datum(*lib[i].right, *lib[0].right, "table library mismatch");
    }
    require_same_datum(*lib[0].left, *lib[0].right, "fusion table needs a (d, d) library");

    unsigned hw = std::thread::hardware_concurrency();
    std::size_t workers = threads > 0 ? static_cast<std::size_t>(threads) : (hw ? hw : 1);
    workers = std::min(workers, n * n);

    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto work = [&]() {
        for (;;) {
            std::size_t idx = next.fetch_add(1);
            if (idx >= n * n) return;
            try {
                table.cells[idx] = fuse(lib[idx / n], lib[idx % n], lib);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    if (first_error) std::rethrow_exception(first_error);
    return table;
}

bool AssociativityReport::ok() const {
    return std::all_of(triples.begin(), triples.end(),
                       [](const TripleCheck& t) { return t.matrix_ok && t.multiset_ok; });
}

AssociativityReport associativity_audit(const std::vector<ModularInvariant>& lib) {
    AssociativityReport report;
    const std::size_t n = lib.size();
    if (n == 0) return report;

    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < n; ++i) index[lib[i].name] = i;

    std::vector<std::vector<FusionOutcome>> memo(n, std::vector<FusionOutcome>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) memo[i][j] = fuse(lib[i], lib[j], lib);

    // Expand sum_i m_i * fuse(U_i, W) into a single multiset by bilinearity.
    auto expand_left = [&](const std::vector<Summand>& parts, std::size_t w, bool& uniq) {
        std::map<std::string, std::int64_t> acc;
        for (const auto& part : parts) {
            const FusionOutcome& o = memo[index.at(part.name)][w];
            uniq = uniq && o.unique;
            for (const auto& s : o.summands) acc[s.name] += part.mult * s.mult;
        }
        return acc;
    };
    auto expand_right = [&](std::size_t x, const std::vector<Summand>& parts, bool& uniq) {
        std::map<std::string, std::int64_t> acc;
        for (const auto& part : parts) {
            const FusionOutcome& o = memo[x][index.at(part.name)];
            uniq = uniq && o.unique;
            for (const auto& s : o.summands) acc[s.name] += part.mult * s.mult;
        }
        return acc;
    };

    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t w = 0; w < n; ++w) {
                TripleCheck t;
                t.x = lib[x].name;
                t.y = lib[y].name;
                t.w = lib[w].name;
                IMatrix lhs = (lib[x].Z * lib[y].Z) * lib[w].Z;
                IMatrix rhs = lib[x].Z * (lib[y].Z * lib[w].Z);
                t.matrix_ok = imatrix_equal(lhs, rhs);
                bool uniq = memo[x][y].unique && memo[y][w].unique;
                auto left = expand_left(memo[x][y].summands, w, uniq);
                auto right = expand_right(x, memo[y][w].summands, uniq);
                t.multiset_ok = left == right;
                t.all_unique = uniq;
                report.triples.push_back(std::move(t));
            }
    return report;
}

std::string outcome_text(const FusionOutcome& o) {
    std::string line = o.left + " ⊗ " + o.right + " = ";
    if (o.summands.empty()) {
        line += "0";
    } else {
        for (std::size_t i = 0; i < o.summands.size(); ++i) {
            if (i) line += " ⊕ ";
            if (o.summands[i].mult != 1) line += std::to_string(o.summands[i].mult) + "·";
            line += o.summands[i].name;
        }
    }
    if (!o.unique) line += "   [decomposition not unique: " +
                           std::to_string(o.alternatives.size()) + " alternative(s)]";
    return line;
}

} // namespace mtc
