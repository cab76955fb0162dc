#pragma once

// Hilbert class polynomials H_D over Z from complex multiplication values of j,
// their reductions mod primes, the splitting indicator delta_D(l), and a file cache.

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <unistd.h>

#include "arith.hpp"
#include "bigfloat.hpp"
#include "config.hpp"
#include "quad_class.hpp"

namespace ssendo {

struct ClassPolynomial {
    i64 discriminant = 0;
    std::vector<mpz_class> coefficients; // degree 0 first, monic

    std::size_t degree() const { return coefficients.empty() ? 0 : coefficients.size() - 1; }
};

// j((-b + sqrt(D)) / 2a) by the q-expansion E4^3 / Delta.
inline BigComplex j_value(const QuadForm& f, mpfr_prec_t prec)
{
    const i64 D = f.discriminant();
    const mpfr_prec_t wp = prec + 32;
    BigFloat pi = BigFloat::pi(wp);
    BigFloat a(wp, static_cast<long>(f.a));
    BigFloat sqrtD = BigFloat(wp, static_cast<long>(-D)).sqrt();
    BigFloat radius = (-(pi * sqrtD) / a).exp();
    BigFloat angle = pi * BigFloat(wp, static_cast<long>(f.b)) / a;
    BigComplex q{radius * angle.cos(), -(radius * angle.sin())};

    // terms until |q|^n * 240 n^3 drops below 2^-(wp + 16)
    const double log2q = -M_PI * std::sqrt(static_cast<double>(-D)) / (static_cast<double>(f.a) * M_LN2);
    std::size_t N = 1;
    while (static_cast<double>(N) * log2q + 3.0 * std::log2(static_cast<double>(N)) + 8.0 >
           -static_cast<double>(wp) - 16.0)
        ++N;

    std::vector<BigComplex> qpow;
    qpow.reserve(N + 1);
    qpow.emplace_back(BigFloat(wp, 1L), BigFloat(wp));
    for (std::size_t n = 1; n <= N; ++n)
        qpow.push_back(qpow.back() * q);

    BigComplex e4 = qpow[0];
    for (std::size_t n = 1; n <= N; ++n) {
        long sigma3 = 0;
        for (std::size_t d = 1; d * d <= n; ++d) {
            if (n % d == 0) {
                long d1 = static_cast<long>(d), d2 = static_cast<long>(n / d);
                sigma3 += d1 * d1 * d1;
                if (d1 != d2)
                    sigma3 += d2 * d2 * d2;
            }
        }
        e4 = e4 + qpow[n].mul_si(240 * sigma3);
    }

    // prod (1 - q^n) by the pentagonal number theorem
    BigComplex eta = qpow[0];
    for (std::size_t k = 1;; ++k) {
        std::size_t e1 = k * (3 * k - 1) / 2;
        if (e1 > N)
            break;
        std::size_t e2 = k * (3 * k + 1) / 2;
        BigComplex term = qpow[e1];
        if (e2 <= N)
            term = term + qpow[e2];
        eta = (k % 2 == 1) ? eta - term : eta + term;
    }
    BigComplex p2 = eta * eta;
    BigComplex p4 = p2 * p2;
    BigComplex p8 = p4 * p4;
    BigComplex p16 = p8 * p8;
    BigComplex delta = q * p16 * p8;
    return (e4 * e4 * e4) / delta;
}

namespace detail {

inline double hilbert_precision_estimate(const ClassGroupData& cg)
{
    double s = 0;
    for (const auto& f : cg.reduced_forms)
        s += 1.0 / static_cast<double>(f.a);
    double absD = static_cast<double>(-cg.discriminant);
    return M_PI * std::sqrt(absD) * s / M_LN2 + 64.0 + 10.0 * static_cast<double>(cg.class_number);
}

// Integer coefficients of prod (x - j(tau_f)), or nothing if rounding is not clean.
inline std::optional<std::vector<mpz_class>> hilbert_at_precision(const ClassGroupData& cg, mpfr_prec_t prec)
{
    const mpfr_prec_t wp = prec + 16;
    std::vector<BigFloat> poly{BigFloat(wp, 1L)};
    auto mul_factor = [&](const std::vector<BigFloat>& fac) {
        std::vector<BigFloat> out(poly.size() + fac.size() - 1, BigFloat(wp));
        for (std::size_t i = 0; i < poly.size(); ++i)
            for (std::size_t k = 0; k < fac.size(); ++k)
                out[i + k] += poly[i] * fac[k];
        poly = std::move(out);
    };
    for (const auto& f : cg.reduced_forms) {
        bool self_conjugate = f.b == 0 || f.b == f.a || f.a == f.c;
        if (!self_conjugate && f.b < 0)
            continue; // paired with (a, -b, c)
        BigComplex jv = j_value(f, wp);
        if (self_conjugate) {
            mul_factor({-jv.re, BigFloat(wp, 1L)});
        } else {
            mul_factor({jv.norm(), -(jv.re.mul_si(2)), BigFloat(wp, 1L)});
        }
    }
    std::vector<mpz_class> coeffs;
    coeffs.reserve(poly.size());
    for (const auto& c : poly) {
        mpz_class z = c.round_to_integer();
        BigFloat err = (c - BigFloat(wp, z)).abs();
        if (err.log2_abs() > -8.0)
            return std::nullopt;
        coeffs.push_back(z);
    }
    if (coeffs.back() != 1)
        return std::nullopt;
    return coeffs;
}

struct HilbertMemo {
    std::mutex mu;
    std::map<i64, std::shared_ptr<const ClassPolynomial>> polys;
    std::map<std::pair<i64, u64>, std::shared_ptr<const std::vector<u64>>> roots;
};

inline HilbertMemo& hilbert_memo()
{
    static HilbertMemo m;
    return m;
}

inline fs::path hilbert_cache_path(const fs::path& dir, i64 D) { return dir / ("H_" + std::to_string(-D) + ".txt"); }

inline std::string format_hilbert_file(const ClassPolynomial& cp)
{
    std::string s = "D=" + std::to_string(cp.discriminant) + " h=" + std::to_string(cp.degree()) + "\n";
    for (const auto& c : cp.coefficients)
        s += c.get_str() + "\n";
    return s;
}

inline std::optional<ClassPolynomial> read_hilbert_file(const fs::path& path, i64 D, std::size_t h)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        return std::nullopt;
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    ClassPolynomial cp;
    cp.discriminant = D;
    std::istringstream ls(text);
    std::string line;
    if (!std::getline(ls, line) || line != "D=" + std::to_string(D) + " h=" + std::to_string(h))
        throw DataError("class polynomial cache " + path.string() + ": bad header");
    while (std::getline(ls, line)) {
        mpz_class z;
        if (line.empty() || z.set_str(line, 10) != 0)
            throw DataError("class polynomial cache " + path.string() + ": bad coefficient line '" + line + "'");
        cp.coefficients.push_back(z);
    }
    if (cp.coefficients.size() != h + 1 || cp.coefficients.back() != 1 || text.back() != '\n')
        throw DataError("class polynomial cache " + path.string() + ": wrong degree or not monic");
    return cp;
}

inline void write_hilbert_file(const fs::path& dir, const ClassPolynomial& cp)
{
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec)
        return; // cache is best effort
    fs::path target = hilbert_cache_path(dir, cp.discriminant);
    std::ostringstream tag;
    tag << ".tmp." << ::getpid() << "." << std::hash<std::thread::id>{}(std::this_thread::get_id());
    fs::path tmp = target;
    tmp += tag.str();
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            return;
        out << format_hilbert_file(cp);
        if (!out)
            return;
    }
    fs::rename(tmp, target, ec);
    if (ec)
        fs::remove(tmp, ec);
}

} // namespace detail

inline constexpr mpfr_prec_t kHilbertPrecisionCeiling = mpfr_prec_t{1} << 22;

// Computes H_D without consulting any cache.
inline ClassPolynomial compute_hilbert_class_poly(i64 D)
{
    ClassGroupData cg = reduced_forms(D);
    mpfr_prec_t prec = static_cast<mpfr_prec_t>(std::ceil(detail::hilbert_precision_estimate(cg)));
    auto first = detail::hilbert_at_precision(cg, prec);
    for (;;) {
        if (2 * prec > kHilbertPrecisionCeiling)
            throw ResourceError("class polynomial for D=" + std::to_string(D) + " needs more than " +
                                std::to_string(kHilbertPrecisionCeiling) + " bits");
        auto second = detail::hilbert_at_precision(cg, 2 * prec);
        if (first && second && *first == *second)
            return ClassPolynomial{D, std::move(*second)};
        prec *= 2;
        first = std::move(second);
    }
}

inline std::shared_ptr<const ClassPolynomial> hilbert_class_poly_shared(i64 D)
{
    require_discriminant(D);
    auto& memo = detail::hilbert_memo();
    {
        std::lock_guard lk(memo.mu);
        if (auto it = memo.polys.find(D); it != memo.polys.end())
            return it->second;
    }
    const fs::path dir = cache_dir();
    std::optional<ClassPolynomial> cp;
    if (!dir.empty())
        cp = detail::read_hilbert_file(detail::hilbert_cache_path(dir, D), D, class_number(D));
    if (!cp) {
        cp = compute_hilbert_class_poly(D);
        if (!dir.empty())
            detail::write_hilbert_file(dir, *cp);
    }
    auto ptr = std::make_shared<const ClassPolynomial>(std::move(*cp));
    std::lock_guard lk(memo.mu);
    auto [it, inserted] = memo.polys.emplace(D, ptr);
    return it->second;
}

inline ClassPolynomial hilbert_class_poly(i64 D) { return *hilbert_class_poly_shared(D); }

inline Poly<PrimeField> hilbert_mod(i64 D, u64 m)
{
    PrimeField fm(m);
    auto cp = hilbert_class_poly_shared(D);
    Poly<PrimeField> out;
    for (const auto& c : cp->coefficients)
        out.c.push_back(fm.from_mpz(c));
    PolyRing<PrimeField>(fm).trim(out);
    return out;
}

// Sorted distinct roots of H_D in F_p, memoized per (D, p).
inline std::shared_ptr<const std::vector<u64>> hilbert_roots_mod(i64 D, u64 p)
{
    auto& memo = detail::hilbert_memo();
    {
        std::lock_guard lk(memo.mu);
        if (auto it = memo.roots.find({D, p}); it != memo.roots.end())
            return it->second;
    }
    PolyRing<PrimeField> ring{PrimeField(p)};
    auto roots = std::make_shared<const std::vector<u64>>(ring.distinct_roots(hilbert_mod(D, p)));
    std::lock_guard lk(memo.mu);
    auto [it, inserted] = memo.roots.emplace(std::make_pair(D, p), roots);
    return it->second;
}

// +1 iff (D/l) = 1 and H_D splits into linear factors mod l.
inline int delta_by_splitting(i64 D, u64 ell)
{
    if (legendre(D, ell) != 1)
        return -1;
    PolyRing<PrimeField> ring{PrimeField(ell)};
    return ring.splits_linear(hilbert_mod(D, ell)) ? 1 : -1;
}

// +1 iff 4l = t^2 - v^2 D for integers t, v with l not dividing t.
inline int delta_by_norm_form(i64 D, u64 ell)
{
    const u64 target = 4 * ell;
    const u64 absD = static_cast<u64>(-D);
    for (u64 v = 0; v * v * absD <= target; ++v) {
        u64 t;
        if (arith::is_square(target - v * v * absD, &t) && t % ell != 0)
            return 1;
    }
    return -1;
}

inline int delta(i64 D, u64 ell)
{
    require_discriminant(D);
    arith::require_odd_prime(ell, "delta");
    if (D % static_cast<i64>(ell) == 0)
        throw ArgumentError("delta: l=" + std::to_string(ell) + " divides D=" + std::to_string(D));
    int a = delta_by_splitting(D, ell);
    int b = delta_by_norm_form(D, ell);
    if (a != b)
        throw InternalError("delta: splitting test and norm-form test disagree for D=" + std::to_string(D) +
                            ", l=" + std::to_string(ell));
    return a;
}

} // namespace ssendo
