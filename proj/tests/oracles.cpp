#include "oracles.hpp"

#include <algorithm>
#include <cmath>

namespace oracles {

using mtc::CMatrix;
using mtc::IMatrix;
using mtc::ModularDatum;

std::int64_t su2_fusion(int k, int a, int b, int c) {
    if (c < std::abs(a - b)) return 0;
    if (c > std::min(a + b, 2 * k - a - b)) return 0;
    return (a + b + c) % 2 == 0 ? 1 : 0;
}

namespace {

struct BoxSearch {
    const ModularDatum& d1;
    const ModularDatum& d2;
    std::vector<std::pair<int, int>> support;
    std::vector<double> weight;
    std::vector<std::int64_t> cap;
    std::vector<std::int64_t> val;
    double budget = 0.0;
    bool prune = true;
    std::vector<IMatrix> out;

    void run(std::int64_t z00_cap) {
        support = mtc::t_support(d1, d2);
        const int n = static_cast<int>(support.size());
        weight.resize(n);
        cap.resize(n);
        for (int j = 0; j < n; ++j) {
            double w = d1.S(support[j].first, 0).real() * d2.S(support[j].second, 0).real();
            weight[j] = w;
            cap[j] = static_cast<std::int64_t>(std::floor(1.0 / w + d1.prec.tol_int));
        }
        budget = static_cast<double>(z00_cap) + d1.prec.tol_zero;
        val.assign(n, 0);
        descend(0, 0.0);
    }

    void descend(int j, double ws) {
        if (j == static_cast<int>(support.size())) {
            check();
            return;
        }
        for (std::int64_t v = 0; v <= cap[j]; ++v) {
            double next = ws + static_cast<double>(v) * weight[j];
            if (prune && next > budget) break;
            val[j] = v;
            descend(j + 1, next);
        }
        val[j] = 0;
    }

    void check() {
        IMatrix z = IMatrix::Zero(d1.rank, d2.rank);
        for (std::size_t j = 0; j < support.size(); ++j)
            z(support[j].first, support[j].second) = val[j];
        CMatrix zc = CMatrix::Zero(d1.rank, d2.rank);
        for (std::size_t j = 0; j < support.size(); ++j)
            zc(support[j].first, support[j].second) =
                mtc::Complex(static_cast<double>(val[j]), 0.0);
        double residual = mtc::mat_inf_norm(d1.S * zc - zc * d2.S);
        if (residual <= d1.prec.tol_zero) out.push_back(std::move(z));
    }
};

} // namespace

std::vector<IMatrix> enumerate_commutant(const ModularDatum& d1, const ModularDatum& d2,
                                         std::int64_t z00_cap, bool prune_by_weight) {
    BoxSearch search{d1, d2, {}, {}, {}, {}, 0.0, prune_by_weight, {}};
    search.run(z00_cap);
    if (!prune_by_weight) {
        // full box: keep only Z_00 <= cap so both modes agree on scope
        std::vector<IMatrix> filtered;
        for (auto& z : search.out)
            if (z(0, 0) <= z00_cap) filtered.push_back(std::move(z));
        return filtered;
    }
    return search.out;
}

IMatrix block_D(int k) {
    const int r = k + 1;
    IMatrix z = IMatrix::Zero(r, r);
    if (k % 4 == 0) {
        // sum over even a < k/2 of |chi_a + chi_{k-a}|^2, plus 2|chi_{k/2}|^2
        for (int a = 0; a < k / 2; a += 2) {
            z(a, a) += 1;
            z(a, k - a) += 1;
            z(k - a, a) += 1;
            z(k - a, k - a) += 1;
        }
        z(k / 2, k / 2) = 2;
    } else {
        // sum over even a of |chi_a|^2 and odd a of chi_a chibar_{k-a}
        for (int a = 0; a <= k; ++a) {
            if (a % 2 == 0)
                z(a, a) += 1;
            else
                z(a, k - a) += 1;
        }
    }
    return z;
}

IMatrix block_E6() {
    IMatrix z = IMatrix::Zero(11, 11);
    for (int a : {0, 6})
        for (int b : {0, 6}) z(a, b) = 1;
    for (int a : {3, 7})
        for (int b : {3, 7}) z(a, b) = 1;
    for (int a : {4, 10})
        for (int b : {4, 10}) z(a, b) = 1;
    return z;
}

IMatrix block_E7() {
    IMatrix z = IMatrix::Zero(17, 17);
    for (int a : {0, 16})
        for (int b : {0, 16}) z(a, b) = 1;
    for (int a : {4, 12})
        for (int b : {4, 12}) z(a, b) = 1;
    for (int a : {6, 10})
        for (int b : {6, 10}) z(a, b) = 1;
    z(8, 8) = 1;
    z(8, 2) = z(8, 14) = z(2, 8) = z(14, 8) = 1;
    return z;
}

IMatrix block_E8() {
    IMatrix z = IMatrix::Zero(29, 29);
    for (int a : {0, 10, 18, 28})
        for (int b : {0, 10, 18, 28}) z(a, b) = 1;
    for (int a : {6, 12, 16, 22})
        for (int b : {6, 12, 16, 22}) z(a, b) = 1;
    return z;
}

} // namespace oracles
