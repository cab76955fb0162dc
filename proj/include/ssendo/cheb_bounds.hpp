#pragma once

// Explicit Chebotarev estimates for the ring class fields over Q(sqrt(-p)) adjoined zeta_8, and the prime counts N(x).

#include <cmath>
#include <numbers>
#include <string>

#include "arith.hpp"
#include "errors.hpp"
#include "quad_class.hpp"
#include "quaternion.hpp"

namespace ssendo {

enum class FieldCase { Kzeta8, L0zeta8, L1zeta8 };
enum class ResidueClass { OneMod4, ThreeMod8, SevenMod8 };

inline std::string to_string(FieldCase c)
{
    switch (c) {
    case FieldCase::Kzeta8: return "Kzeta8";
    case FieldCase::L0zeta8: return "L0zeta8";
    case FieldCase::L1zeta8: return "L1zeta8";
    }
    return "?";
}

inline FieldCase parse_field_case(const std::string& s)
{
    if (s == "Kzeta8" || s == "K")
        return FieldCase::Kzeta8;
    if (s == "L0zeta8" || s == "L0")
        return FieldCase::L0zeta8;
    if (s == "L1zeta8" || s == "L1")
        return FieldCase::L1zeta8;
    throw ArgumentError("unknown field case '" + s + "' (expected Kzeta8, L0zeta8 or L1zeta8)");
}

inline std::string to_string(ResidueClass r)
{
    switch (r) {
    case ResidueClass::OneMod4: return "1 mod 4";
    case ResidueClass::ThreeMod8: return "3 mod 8";
    case ResidueClass::SevenMod8: return "7 mod 8";
    }
    return "?";
}

inline ResidueClass residue_class(u64 p)
{
    if (p % 4 == 1)
        return ResidueClass::OneMod4;
    return p % 8 == 3 ? ResidueClass::ThreeMod8 : ResidueClass::SevenMod8;
}

// Degree n and log|disc| = log2_coeff*log 2 + logp_coeff*log p of the field.
struct FieldInvariants {
    FieldCase field = FieldCase::Kzeta8;
    ResidueClass residue = ResidueClass::OneMod4;
    u64 p = 0;
    u64 h = 1;
    double n = 0;
    double log2_coeff = 0;
    double logp_coeff = 0;
    bool disc_is_upper_bound = false; // only a divisibility is known

    double log_disc() const { return log2_coeff * std::log(2.0) + logp_coeff * std::log(static_cast<double>(p)); }
};

inline FieldInvariants field_invariants(u64 p, FieldCase field, u64 h = 1)
{
    if (p <= 3 || !is_prime(p))
        throw ArgumentError("field_invariants: p must be a prime > 3");
    if (h == 0)
        throw ArgumentError("field_invariants: class number must be positive");
    FieldInvariants inv;
    inv.field = field;
    inv.residue = residue_class(p);
    inv.p = p;
    inv.h = h;
    const double hd = static_cast<double>(h);
    const bool one4 = inv.residue == ResidueClass::OneMod4;
    switch (field) {
    case FieldCase::Kzeta8:
        inv.h = 1;
        inv.n = 8;
        inv.log2_coeff = 16;
        inv.logp_coeff = 4;
        break;
    case FieldCase::L0zeta8:
        inv.n = one4 ? 4 * hd : 8 * hd;
        inv.log2_coeff = one4 ? 8 * hd : 16 * hd;
        inv.logp_coeff = one4 ? 2 * hd : 4 * hd;
        break;
    case FieldCase::L1zeta8:
        if (one4) {
            inv.n = 8 * hd;
            inv.log2_coeff = 21 * hd;
            inv.logp_coeff = 4 * hd;
            inv.disc_is_upper_bound = true;
        } else if (inv.residue == ResidueClass::ThreeMod8) {
            inv.n = 24 * hd;
            inv.log2_coeff = 52 * hd;
            inv.logp_coeff = 12 * hd;
        } else {
            throw ArgumentError("field_invariants: L1zeta8 is not covered for p = 7 mod 8 (L1 = L0 there)");
        }
        break;
    }
    return inv;
}

// h of the imaginary quadratic field Q(sqrt(-p)).
inline u64 field_class_number(u64 p)
{
    return class_number(p % 4 == 3 ? -static_cast<i64>(p) : -4 * static_cast<i64>(p));
}

struct BoundReport {
    double x = 0;
    double main_term = 0;  // x / log x, a lower bound for li(x) - li(2) when x > 2000
    double error_term = 0; // the GRH error bound
    double lower_bound = 0;
    bool positive = false;

    // lower_bound * log x / sqrt x, written as sqrt x - c * h * log^2 x
    double normalized = 0;
    double coefficient = 0; // c above
};

inline double cheb_error_term(double x, double n, double log_d)
{
    const double L = std::log(x);
    const double pi = std::numbers::pi;
    return std::sqrt(x) * ((1.0 / pi + 3.0 / L) * log_d + (L / (8 * pi) + 1.0 / (4 * pi) + 6.0 / L) * n);
}

inline BoundReport cheb_gap_bound(double x, const FieldInvariants& inv)
{
    if (!(x > 2))
        throw ArgumentError("cheb_gap_bound: x must exceed 2");
    BoundReport r;
    const double L = std::log(x);
    r.x = x;
    r.main_term = x / L;
    r.error_term = cheb_error_term(x, inv.n, inv.log_disc());
    r.lower_bound = r.main_term - r.error_term;
    r.positive = r.lower_bound > 0;
    r.normalized = r.lower_bound * L / std::sqrt(x);
    r.coefficient = r.error_term / (std::sqrt(x) * static_cast<double>(inv.h) * L);
    return r;
}

// The coefficient c of h log^2 x with log p / log x bounded by 1 in the leading discriminant term.
// Decreasing in x at fixed p and in p along x = p log^k p; p is real so the boundary p = 2000 can be evaluated.
inline double relaxed_coefficient(FieldCase field, ResidueClass residue, double p, double x)
{
    if (!(p > 3) || !(x >= p))
        throw ArgumentError("relaxed_coefficient: need p > 3 and x >= p");
    double a = 0, b = 0, n = 0; // per unit of h
    const bool one4 = residue == ResidueClass::OneMod4;
    switch (field) {
    case FieldCase::Kzeta8:
        a = 16, b = 4, n = 8;
        break;
    case FieldCase::L0zeta8:
        if (one4)
            a = 8, b = 2, n = 4;
        else
            a = 16, b = 4, n = 8;
        break;
    case FieldCase::L1zeta8:
        if (one4)
            a = 21, b = 4, n = 8;
        else if (residue == ResidueClass::ThreeMod8)
            a = 52, b = 12, n = 24;
        else
            throw ArgumentError("relaxed_coefficient: L1zeta8 is not covered for p = 7 mod 8");
        break;
    }
    const double L = std::log(x), lp = std::log(p), pi = std::numbers::pi;
    return a * std::log(2.0) / (pi * L) + 3 * a * std::log(2.0) / (L * L) + b / pi + 3 * b * lp / (L * L) +
           n / (8 * pi) + n / (4 * pi * L) + 6 * n / (L * L);
}

// Closed-form coefficients C in sqrt x - C h log^2 x, valid for p > 2000 and x >= p log^k p (k = 4 or 6).
inline double envelope_coefficient(FieldCase field, ResidueClass residue, int k)
{
    if (k != 4 && k != 6)
        throw ArgumentError("envelope_coefficient: k must be 4 or 6");
    const bool four = k == 4;
    const bool one4 = residue == ResidueClass::OneMod4;
    switch (field) {
    case FieldCase::L0zeta8:
        return one4 ? (four ? 1.28 : 1.12) : (four ? 2.56 : 2.24);
    case FieldCase::L1zeta8:
        if (one4)
            return four ? 2.67 : 2.33;
        if (residue == ResidueClass::ThreeMod8)
            return four ? 7.76 : 6.80;
        break;
    case FieldCase::Kzeta8:
        break;
    }
    throw ArgumentError("envelope_coefficient: no closed form for " + to_string(field) + " with p = " +
                        to_string(residue));
}

enum class HBoundMode { BrauerSiegel, Unconditional };

inline HBoundMode parse_h_bound_mode(const std::string& s)
{
    if (s == "brauer_siegel" || s == "brauer-siegel")
        return HBoundMode::BrauerSiegel;
    if (s == "unconditional")
        return HBoundMode::Unconditional;
    throw ArgumentError("unknown h bound mode '" + s + "'");
}

struct BoundSearchResult {
    u64 p = 0;
    HBoundMode mode = HBoundMode::BrauerSiegel;
    int k = 4;                // x >= p log^k p
    double h_used = 0;        // stand-in for the class number
    double coefficient = 0;   // largest envelope coefficient among the fields relevant to p
    double x_floor = 0;       // p log^k p
    double x_reference = 0;   // 10000 p log^k p
    double x = 0;             // smallest certified grid point
    double margin_at_reference = 0;
};

inline double envelope_value(double x, double C, double h)
{
    const double L = std::log(x);
    return std::sqrt(x) - C * h * L * L;
}

inline BoundSearchResult thm_bound_search(u64 p, HBoundMode mode)
{
    if (p <= 2000 || !is_prime(p))
        throw ArgumentError("thm_bound_search: p must be a prime > 2000");
    BoundSearchResult r;
    r.p = p;
    r.mode = mode;
    r.k = mode == HBoundMode::BrauerSiegel ? 4 : 6;
    const double pd = static_cast<double>(p);
    const double lp = std::log(pd);
    const bool one4 = p % 4 == 1;
    if (mode == HBoundMode::BrauerSiegel)
        r.h_used = one4 ? 2 * std::sqrt(pd) : std::sqrt(pd);
    else
        r.h_used = one4 ? std::sqrt(4 * pd) * std::log(4 * pd) : std::sqrt(pd) * lp;
    const ResidueClass rc = residue_class(p);
    r.coefficient = envelope_coefficient(FieldCase::L0zeta8, rc, r.k);
    if (rc != ResidueClass::SevenMod8)
        r.coefficient = std::max(r.coefficient, envelope_coefficient(FieldCase::L1zeta8, rc, r.k));
    r.x_floor = pd * std::pow(lp, r.k);
    r.x_reference = 10000 * r.x_floor;
    r.margin_at_reference = envelope_value(r.x_reference, r.coefficient, r.h_used);
    if (!(r.margin_at_reference > 0))
        throw VerificationError("thm_bound_search: bound is not positive at x = 10000 p log^" + std::to_string(r.k) +
                                " p for p = " + std::to_string(p));
    r.x = r.x_reference;
    for (double x = r.x_reference / 1.1; x >= r.x_floor; x /= 1.1) {
        if (!(envelope_value(x, r.coefficient, r.h_used) > 0))
            break;
        r.x = x;
    }
    return r;
}

// Number of primes q <= x with q = 3 mod 8 and (p/q) = -1.
inline u64 count_N(u64 p, double x)
{
    if (p <= 3 || !is_prime(p))
        throw ArgumentError("count_N: p must be a prime > 3");
    if (x < 3)
        return 0;
    u64 n = 0;
    for (u64 q : arith::primes_between(3, static_cast<u64>(std::floor(x))))
        if (q_condition(q, p))
            ++n;
    return n;
}

} // namespace ssendo
