#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mtc/numerics.hpp"
#include "mtc/rational.hpp"

namespace mtc {

/// Numerical shadow of one modular tensor category: simple-object labels,
/// the S matrix, conformal weights h (mod 1) and the central charge c
/// (mod 24).  T is never stored as floating phases; it is reconstructed
/// exactly from h and c as T = diag(e^{2 pi i (h_a - c/24)}).
struct ModularDatum {
    std::string name;
    int rank = 0;
    std::vector<std::string> labels; // index 0 is the identity object "0"
    CMatrix S;                       // rank x rank
    std::vector<Rational> h;         // conformal weights, normalized to [0, 1)
    Rational c;                      // central charge, normalized to [0, 24)
    Precision prec;
    std::optional<int> su2_level; // set when generated from the SU(2)_k family

    /// Exact T exponent (h_a - c/24) mod 1; drives T-compatibility tests.
    Rational t_exponent(int a) const;
    Complex t_phase(int a) const;
    CMatrix t_matrix() const;
};

/// Fusion multiplicities N_{ab}^c from the Verlinde formula.
struct FusionTensor {
    int rank = 0;
    std::vector<std::int64_t> n; // rank^3, index (a*rank + b)*rank + c

    std::int64_t operator()(int a, int b, int c) const {
        return n[(static_cast<std::size_t>(a) * rank + b) * rank + c];
    }
    std::int64_t& at(int a, int b, int c) {
        return n[(static_cast<std::size_t>(a) * rank + b) * rank + c];
    }
};

struct CheckResult {
    std::string name;
    bool pass = false;
    double residual = 0.0;
};

struct ValidationReport {
    std::vector<CheckResult> checks;
    std::vector<std::string> warnings;

    bool ok() const;
    double max_residual() const;
    const CheckResult* find(const std::string& name) const;
};

/// SU(2) level-k WZW data:
///   rank = k+1,
///   S_ab = sqrt(2/(k+2)) sin((a+1)(b+1) pi / (k+2)),
///   h_a  = a(a+2) / (4(k+2)) mod 1,
///   c    = 3k / (k+2).
ModularDatum su2_data(int k, const Precision& prec = {});

/// Rank-1 category of plain vector spaces: S = [[1]], h = [0], c = 0.
ModularDatum trivial_datum(const Precision& prec = {});

/// Opposite category: conjugate S, negate weights mod 1 and c mod 24.
ModularDatum opposite(const ModularDatum& d);

/// Runs every ModularDatum invariant as a named check; failures are report
/// content, never exceptions.
ValidationReport validate(const ModularDatum& d);

/// Verlinde formula N_{ab}^c = sum_m S_am S_bm conj(S_cm) / S_0m, each entry
/// integer-rounded with verified residual.  Throws NotNearInteger (or Error
/// for a negative rounding) on bad data; checks the fusion-tensor axioms.
/// max_residual, when given, receives the largest rounding residual.
FusionTensor verlinde(const ModularDatum& d, double* max_residual = nullptr);

/// Unit law, commutativity and associativity of a fusion tensor.
ValidationReport check_fusion_tensor(const FusionTensor& f);

/// Content hash used to decide whether two data are "the same category"
/// (middle-category match in fusion, invariant file references).
std::uint64_t fingerprint(const ModularDatum& d);
std::string fingerprint_hex(const ModularDatum& d);

} // namespace mtc
