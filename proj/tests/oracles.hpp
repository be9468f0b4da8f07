#pragma once

// Independent oracles for the golden tests.  Everything here is computed
// from first principles (truncated Clebsch-Gordan rule, direct lattice
// enumeration, literal block patterns) and never calls the implementation
// paths it is used to check.

#include <cstdint>
#include <vector>

#include "mtc/invariants.hpp"
#include "mtc/modular_data.hpp"

namespace oracles {

/// Truncated Clebsch-Gordan rule for SU(2) level k:
/// N_{ab}^c = 1 iff |a-b| <= c <= min(a+b, 2k-a-b) and a+b+c is even.
std::int64_t su2_fusion(int k, int a, int b, int c);

/// All nonnegative integer matrices supported on t_support(d1, d2), entry
/// bounded by 1/(S_{l0} S'_{m0}), that commute with (S1, S2) and whose
/// positivity-weighted sum does not exceed z00_cap.  For a commuting
/// matrix the weighted sum equals Z_00, so this is every commutant matrix
/// with Z_00 <= z00_cap.  With prune_by_weight = false the full entry box
/// is enumerated instead (feasible only at tiny levels).
std::vector<mtc::IMatrix> enumerate_commutant(const mtc::ModularDatum& d1,
                                              const mtc::ModularDatum& d2,
                                              std::int64_t z00_cap,
                                              bool prune_by_weight = true);

/// Literal CIZ block patterns at SU(2) level k, written out from the
/// |chi_a + chi_b|^2 expansions.
mtc::IMatrix block_D(int k); // even k
mtc::IMatrix block_E6();     // k = 10
mtc::IMatrix block_E7();     // k = 16
mtc::IMatrix block_E8();     // k = 28

} // namespace oracles
