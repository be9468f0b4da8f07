#include "mtc/modular_data.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

namespace mtc {

Rational ModularDatum::t_exponent(int a) const {
    return (h.at(static_cast<std::size_t>(a)) - c / Rational(24)).mod1();
}

Complex ModularDatum::t_phase(int a) const {
    double theta = 2.0 * std::numbers::pi * t_exponent(a).to_double();
    return Complex(std::cos(theta), std::sin(theta));
}

CMatrix ModularDatum::t_matrix() const {
    CMatrix t = CMatrix::Zero(rank, rank);
    for (int a = 0; a < rank; ++a) t(a, a) = t_phase(a);
    return t;
}

bool ValidationReport::ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

double ValidationReport::max_residual() const {
    double m = 0.0;
    for (const auto& c : checks) m = std::max(m, c.residual);
    return m;
}

const CheckResult* ValidationReport::find(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

ModularDatum su2_data(int k, const Precision& prec) {
    if (k < 1) throw Error("su2 level must be >= 1");
    check_precision(prec);
    const int r = k + 1;
    const int denom = k + 2;
    ModularDatum d;
    d.name = "su2_" + std::to_string(k);
    d.rank = r;
    d.prec = prec;
    d.su2_level = k;
    d.labels.reserve(r);
    for (int a = 0; a < r; ++a) d.labels.push_back(std::to_string(a));
    d.S = CMatrix::Zero(r, r);
    const double scale = std::sqrt(2.0 / denom);
    for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b) {
            double angle = static_cast<double>(a + 1) * (b + 1) * std::numbers::pi / denom;
            d.S(a, b) = Complex(scale * std::sin(angle), 0.0);
        }
    d.h.reserve(r);
    for (int a = 0; a < r; ++a)
        d.h.push_back(Rational(static_cast<std::int64_t>(a) * (a + 2), 4LL * denom).mod1());
    d.c = Rational(3LL * k, denom).mod(24);
    return d;
}

ModularDatum trivial_datum(const Precision& prec) {
    check_precision(prec);
    ModularDatum d;
    d.name = "trivial";
    d.rank = 1;
    d.prec = prec;
    d.labels = {"0"};
    d.S = CMatrix::Constant(1, 1, Complex(1.0, 0.0));
    d.h = {Rational(0)};
    d.c = Rational(0);
    return d;
}

ModularDatum opposite(const ModularDatum& d) {
    ModularDatum o = d;
    o.name = d.name + "_opp";
    o.S = d.S.conjugate();
    for (auto& w : o.h) w = (-w).mod1();
    o.c = (-d.c).mod(24);
    o.su2_level.reset(); // weights are negated, so this is no longer SU(2)_k data
    return o;
}

namespace {

// Rounds a complex entry to an integer, tracking the worst residual seen
// (real offset and imaginary magnitude both count).
std::int64_t round_entry(Complex z, const Precision& prec, double& worst) {
    RoundedInt r = round_to_integer(z.real(), prec);
    double imag = std::abs(z.imag());
    if (imag > prec.tol_int)
        throw NotNearInteger("entry has imaginary part " + format_double(imag));
    worst = std::max(worst, std::max(r.residual, imag));
    return r.value;
}

} // namespace

ValidationReport validate(const ModularDatum& d) {
    ValidationReport rep;
    const Precision& prec = d.prec;
    auto add = [&rep](const std::string& name, bool pass, double residual,
                      const std::string& note = "") {
        rep.checks.push_back(CheckResult{name, pass, residual});
        if (!pass && !note.empty()) rep.warnings.push_back(name + ": " + note);
    };

    // shape: positive rank, matching sizes, finite entries, h in [0,1)
    bool shape_ok = d.rank >= 1 && d.S.rows() == d.rank && d.S.cols() == d.rank &&
                    static_cast<int>(d.labels.size()) == d.rank &&
                    static_cast<int>(d.h.size()) == d.rank && matrix_is_finite(d.S);
    if (shape_ok)
        for (const auto& w : d.h)
            if (w < Rational(0) || w >= Rational(1)) shape_ok = false;
    add("shape", shape_ok, 0.0, "rank/label/weight sizes or entry finiteness");
    if (!shape_ok) return rep; // remaining checks would read out of range

    try {
        check_precision(prec);
    } catch (const Error& e) {
        add("precision", false, 0.0, e.what());
        return rep;
    }

    const CMatrix& s = d.S;
    const int r = d.rank;

    double sym = mat_inf_norm(s - s.transpose());
    add("s_symmetric", sym <= prec.tol_zero, sym);

    double unit = mat_inf_norm(s * s.adjoint() - CMatrix::Identity(r, r));
    add("s_unitary", unit <= prec.tol_zero, unit);

    bool col_ok = true;
    double col_min = std::numeric_limits<double>::infinity();
    for (int a = 0; a < r; ++a) {
        double re = s(a, 0).real();
        double im = std::abs(s(a, 0).imag());
        col_min = std::min(col_min, re);
        if (re <= prec.tol_zero || im > prec.tol_zero) col_ok = false;
    }
    add("first_column_positive", col_ok, col_min);
    {
        double s00 = s(0, 0).real();
        if (col_ok && s00 > col_min + prec.tol_zero)
            rep.warnings.push_back("S_00 is not the minimum of the first column");
    }

    // charge conjugation: S^2 is a {0,1} permutation squaring to the identity
    {
        CMatrix c2 = s * s;
        bool perm_ok = true;
        double worst = 0.0;
        Eigen::MatrixXi cmat = Eigen::MatrixXi::Zero(r, r);
        try {
            for (int a = 0; a < r && perm_ok; ++a)
                for (int b = 0; b < r && perm_ok; ++b) {
                    std::int64_t v = round_entry(c2(a, b), prec, worst);
                    if (v != 0 && v != 1) perm_ok = false;
                    cmat(a, b) = static_cast<int>(v);
                }
        } catch (const NotNearInteger&) {
            perm_ok = false;
        }
        if (perm_ok)
            for (int a = 0; a < r && perm_ok; ++a)
                if (cmat.row(a).sum() != 1 || cmat.col(a).sum() != 1) perm_ok = false;
        if (perm_ok && (cmat * cmat) != Eigen::MatrixXi::Identity(r, r)) perm_ok = false;
        add("charge_conjugation", perm_ok, worst);
    }

    {
        CMatrix st = s * d.t_matrix();
        double res = mat_inf_norm(st * st * st - s * s);
        add("st_cubed_equals_s_squared", res <= prec.tol_zero, res);
    }

    add("h0_zero", d.h[0] == Rational(0), 0.0);

    {
        bool pass = true;
        double worst = 0.0;
        std::string note;
        try {
            verlinde(d, &worst);
        } catch (const Error& e) {
            pass = false;
            note = e.what();
        }
        add("verlinde_integral", pass, worst, note);
    }

    return rep;
}

FusionTensor verlinde(const ModularDatum& d, double* max_residual) {
    const int r = d.rank;
    const CMatrix& s = d.S;
    FusionTensor f;
    f.rank = r;
    f.n.assign(static_cast<std::size_t>(r) * r * r, 0);
    double worst = 0.0;
    for (int m = 0; m < r; ++m)
        if (std::abs(s(0, m)) <= d.prec.tol_zero)
            throw Error("Verlinde formula undefined: S_{0m} vanishes at m=" + std::to_string(m));
    for (int a = 0; a < r; ++a)
        for (int b = a; b < r; ++b) // N is symmetric in (a, b)
            for (int c = 0; c < r; ++c) {
                Complex sum(0.0, 0.0);
                for (int m = 0; m < r; ++m)
                    sum += s(a, m) * s(b, m) * std::conj(s(c, m)) / s(0, m);
                std::int64_t v = round_entry(sum, d.prec, worst);
                if (v < 0)
                    throw Error("Verlinde coefficient N_{" + std::to_string(a) + "," +
                                std::to_string(b) + "}^" + std::to_string(c) +
                                " rounds to a negative integer");
                f.at(a, b, c) = v;
                f.at(b, a, c) = v;
            }
    if (max_residual) *max_residual = worst;
    ValidationReport axioms = check_fusion_tensor(f);
    if (!axioms.ok()) {
        std::string failed;
        for (const auto& c : axioms.checks)
            if (!c.pass) failed += (failed.empty() ? "" : ", ") + c.name;
        throw Error("fusion tensor violates axioms: " + failed);
    }
    return f;
}

ValidationReport check_fusion_tensor(const FusionTensor& f) {
    ValidationReport rep;
    const int r = f.rank;
    auto add = [&rep](const std::string& name, bool pass) {
        rep.checks.push_back(CheckResult{name, pass, 0.0});
    };

    bool nonneg = std::all_of(f.n.begin(), f.n.end(), [](std::int64_t v) { return v >= 0; });
    add("nonnegative", nonneg);

    bool unit = true;
    for (int b = 0; b < r && unit; ++b)
        for (int c = 0; c < r && unit; ++c)
            if (f(0, b, c) != (b == c ? 1 : 0)) unit = false;
    add("unit_law", unit);

    bool comm = true;
    for (int a = 0; a < r && comm; ++a)
        for (int b = 0; b < r && comm; ++b)
            for (int c = 0; c < r && comm; ++c)
                if (f(a, b, c) != f(b, a, c)) comm = false;
    add("commutative", comm);

    bool assoc = true;
    for (int a = 0; a < r && assoc; ++a)
        for (int b = 0; b < r && assoc; ++b)
            for (int c = 0; c < r && assoc; ++c)
                for (int e = 0; e < r && assoc; ++e) {
                    std::int64_t lhs = 0, rhs = 0;
                    for (int m = 0; m < r; ++m) {
                        lhs += f(a, b, m) * f(m, c, e);
                        rhs += f(b, c, m) * f(a, m, e);
                    }
                    if (lhs != rhs) assoc = false;
                }
    add("associative", assoc);

    return rep;
}

std::uint64_t fingerprint(const ModularDatum& d) {
    std::uint64_t hash = 1469598103934665603ull;
    auto mix = [&hash](const std::string& s) {
        for (unsigned char ch : s) {
            hash ^= ch;
            hash *= 1099511628211ull;
        }
        hash ^= 0xff;
        hash *= 1099511628211ull;
    };
    mix(d.name);
    mix(std::to_string(d.rank));
    for (const auto& l : d.labels) mix(l);
    for (int a = 0; a < d.rank; ++a)
        for (int b = 0; b < d.rank; ++b) {
            mix(format_double(d.S(a, b).real()));
            mix(format_double(d.S(a, b).imag()));
        }
    for (const auto& w : d.h) mix(w.str());
    mix(d.c.str());
    return hash;
}

std::string fingerprint_hex(const ModularDatum& d) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(fingerprint(d)));
    return buf;
}

} // namespace mtc
