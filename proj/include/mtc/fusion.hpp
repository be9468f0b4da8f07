#pragma once

#include <string>
#include <vector>

#include "mtc/invariants.hpp"

namespace mtc {

struct Summand {
    std::string name;
    std::int64_t mult = 0;

    friend bool operator==(const Summand& a, const Summand& b) {
        return a.name == b.name && a.mult == b.mult;
    }
};

/// Result of fusing two invariants across a shared middle category:
/// the matrix product plus its decomposition(s) into physical invariants.
/// The multiplicities of any decomposition sum to product_00.
struct FusionOutcome {
    std::string left;  // name of the first factor
    std::string right; // name of the second factor
    IMatrix product;
    std::vector<Summand> summands; // lexicographically least decomposition
    bool unique = true;
    std::vector<std::vector<Summand>> alternatives; // other valid decompositions
};

/// Matrix product Z3_{ln} = sum_m Z1_{lm} Z2_{mn}.  Requires Z1.right and
/// Z2.left to be the same category (exact fingerprint match); the result is
/// checked to commute and be T-compatible, but need not be physical.
IMatrix product(const ModularInvariant& z1, const ModularInvariant& z2);

/// All multisets {m_i >= 0} with sum m_i Z^(i) = z3 over the classified
/// library (exhaustive search with entrywise-domination pruning).  Throws
/// NoDecomposition when none exists — on a complete library that signals a
/// classification bug.
FusionOutcome decompose(const IMatrix& z3, const std::vector<ModularInvariant>& library);

/// product followed by decompose; lib13 must be classified for
/// (z1.left, z2.right).
FusionOutcome fuse(const ModularInvariant& z1, const ModularInvariant& z2,
                   const std::vector<ModularInvariant>& lib13);

struct FusionTable {
    std::vector<std::string> names;  // library order
    std::vector<FusionOutcome> cells; // row-major over (left, right)
};

/// Every ordered pair from a (d, d) library.  threads = 0 picks the
/// hardware count; cells are deterministic regardless.
FusionTable fusion_table(const std::vector<ModularInvariant>& lib, int threads = 0);

struct TripleCheck {
    std::string x, y, w;
    bool matrix_ok = false;   // (XY)W = X(YW) exactly
    bool multiset_ok = false; // fuse(fuse(X,Y),W) = fuse(X,fuse(Y,W)) by bilinearity
    bool all_unique = true;   // every decomposition involved was unique
};

struct AssociativityReport {
    std::vector<TripleCheck> triples;
    bool ok() const;
};

AssociativityReport associativity_audit(const std::vector<ModularInvariant>& lib);

/// "X (x) Y = 2.D_10" style line for tables and logs.
std::string outcome_text(const FusionOutcome& o);

} // namespace mtc
