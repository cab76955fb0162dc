#pragma once

// The definite quaternion algebra H(-q,-p): exact rational elements, rank-4 lattices
// in Hermite normal form, the maximal orders O(q) and O'(q), and their norm-l left ideals.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "arith.hpp"
#include "quad_class.hpp"

namespace ssendo {

// x + y i + z j + w k with i^2 = -a, j^2 = -b, k = ij = -ji.
struct QuatElement {
    mpz_class a = 1;
    mpz_class b = 1;
    mpq_class x, y, z, w;

    QuatElement() = default;
    QuatElement(mpz_class a_, mpz_class b_, mpq_class x_, mpq_class y_, mpq_class z_, mpq_class w_)
        : a(std::move(a_)), b(std::move(b_)), x(std::move(x_)), y(std::move(y_)), z(std::move(z_)), w(std::move(w_))
    {
    }

    std::array<mpq_class, 4> coords() const { return {x, y, z, w}; }
    bool operator==(const QuatElement& o) const
    {
        return a == o.a && b == o.b && x == o.x && y == o.y && z == o.z && w == o.w;
    }
    std::string to_string() const
    {
        return "(" + x.get_str() + ")+(" + y.get_str() + ")i+(" + z.get_str() + ")j+(" + w.get_str() + ")k";
    }
};

inline void require_same_algebra(const QuatElement& u, const QuatElement& v)
{
    if (u.a != v.a || u.b != v.b)
        throw ArgumentError("quaternion elements from different algebras");
}

inline QuatElement operator+(const QuatElement& u, const QuatElement& v)
{
    require_same_algebra(u, v);
    return {u.a, u.b, u.x + v.x, u.y + v.y, u.z + v.z, u.w + v.w};
}

inline QuatElement operator-(const QuatElement& u, const QuatElement& v)
{
    require_same_algebra(u, v);
    return {u.a, u.b, u.x - v.x, u.y - v.y, u.z - v.z, u.w - v.w};
}

inline QuatElement operator-(const QuatElement& u) { return {u.a, u.b, -u.x, -u.y, -u.z, -u.w}; }

inline QuatElement operator*(const QuatElement& u, const QuatElement& v)
{
    require_same_algebra(u, v);
    const mpz_class& a = u.a;
    const mpz_class& b = u.b;
    mpq_class ab = mpq_class(a * b);
    mpq_class qa(a), qb(b);
    mpq_class x = u.x * v.x - qa * u.y * v.y - qb * u.z * v.z - ab * u.w * v.w;
    mpq_class y = u.x * v.y + u.y * v.x + qb * u.z * v.w - qb * u.w * v.z;
    mpq_class z = u.x * v.z + u.z * v.x - qa * u.y * v.w + qa * u.w * v.y;
    mpq_class w = u.x * v.w + u.w * v.x + u.y * v.z - u.z * v.y;
    return {a, b, x, y, z, w};
}

inline QuatElement scale(const QuatElement& u, const mpq_class& s) { return {u.a, u.b, u.x * s, u.y * s, u.z * s, u.w * s}; }

inline QuatElement conj(const QuatElement& u) { return {u.a, u.b, u.x, -u.y, -u.z, -u.w}; }

inline mpq_class nrd(const QuatElement& u)
{
    return u.x * u.x + mpq_class(u.a) * u.y * u.y + mpq_class(u.b) * u.z * u.z + mpq_class(u.a * u.b) * u.w * u.w;
}

inline mpq_class trd(const QuatElement& u) { return 2 * u.x; }

// Trd(u conj(v)) / 2, the bilinear form with Nrd(u) = <u, u>.
inline mpq_class inner(const QuatElement& u, const QuatElement& v)
{
    return u.x * v.x + mpq_class(u.a) * u.y * v.y + mpq_class(u.b) * u.z * v.z + mpq_class(u.a * u.b) * u.w * v.w;
}

struct QuatAlgebra {
    mpz_class a; // i^2 = -a
    mpz_class b; // j^2 = -b

    QuatElement elem(mpq_class x, mpq_class y, mpq_class z, mpq_class w) const
    {
        return {a, b, std::move(x), std::move(y), std::move(z), std::move(w)};
    }
    QuatElement one() const { return elem(1, 0, 0, 0); }
    QuatElement i() const { return elem(0, 1, 0, 0); }
    QuatElement j() const { return elem(0, 0, 1, 0); }
    QuatElement k() const { return elem(0, 0, 0, 1); }
    QuatElement from_coords(const std::array<mpq_class, 4>& c) const { return elem(c[0], c[1], c[2], c[3]); }
};

// Full-rank lattice in Q^4 (coordinates over 1, i, j, k), canonical upper triangular HNF rows.
struct Lattice {
    QuatAlgebra alg;
    std::array<std::array<mpq_class, 4>, 4> rows;

    bool operator==(const Lattice& o) const { return alg.a == o.alg.a && alg.b == o.alg.b && rows == o.rows; }

    QuatElement basis(std::size_t k) const { return alg.from_coords(rows[k]); }
    std::vector<QuatElement> basis() const
    {
        std::vector<QuatElement> out;
        for (std::size_t k = 0; k < 4; ++k)
            out.push_back(basis(k));
        return out;
    }
    // Covolume relative to Z<1,i,j,k>.
    mpq_class volume() const { return rows[0][0] * rows[1][1] * rows[2][2] * rows[3][3]; }
};

namespace detail {

// In-place row HNF of an integer matrix with 4 columns; returns the nonzero rows.
inline std::vector<std::array<mpz_class, 4>> integer_hnf(std::vector<std::array<mpz_class, 4>> m)
{
    std::size_t row = 0;
    for (std::size_t col = 0; col < 4 && row < m.size(); ++col) {
        // fold gcd of column entries into m[row]
        for (std::size_t r = row + 1; r < m.size(); ++r) {
            if (m[r][col] == 0)
                continue;
            if (m[row][col] == 0) {
                std::swap(m[row], m[r]);
                continue;
            }
            mpz_class g, s, t;
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), m[row][col].get_mpz_t(), m[r][col].get_mpz_t());
            mpz_class u = m[row][col] / g, v = m[r][col] / g;
            std::array<mpz_class, 4> top, bot;
            for (std::size_t c = 0; c < 4; ++c) {
                top[c] = s * m[row][c] + t * m[r][c];
                bot[c] = u * m[r][c] - v * m[row][c];
            }
            m[row] = std::move(top);
            m[r] = std::move(bot);
        }
        if (m[row][col] == 0)
            continue;
        if (m[row][col] < 0)
            for (auto& e : m[row])
                e = -e;
        for (std::size_t r = 0; r < row; ++r) {
            mpz_class qt;
            mpz_fdiv_q(qt.get_mpz_t(), m[r][col].get_mpz_t(), m[row][col].get_mpz_t());
            if (qt != 0)
                for (std::size_t c = 0; c < 4; ++c)
                    m[r][c] -= qt * m[row][c];
        }
        ++row;
    }
    m.resize(row);
    return m;
}

} // namespace detail

inline Lattice lattice_from_generators(const QuatAlgebra& alg, const std::vector<QuatElement>& gens)
{
    mpz_class den = 1;
    for (const auto& g : gens)
        for (const auto& c : g.coords())
            mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    std::vector<std::array<mpz_class, 4>> m;
    for (const auto& g : gens) {
        auto c = g.coords();
        std::array<mpz_class, 4> row;
        for (std::size_t k = 0; k < 4; ++k) {
            mpq_class v = c[k] * den;
            row[k] = v.get_num();
        }
        m.push_back(std::move(row));
    }
    auto h = detail::integer_hnf(std::move(m));
    if (h.size() != 4)
        throw ArgumentError("lattice_from_generators: generators do not span a rank-4 lattice");
    Lattice L{alg, {}};
    for (std::size_t r = 0; r < 4; ++r) {
        if (h[r][r] == 0)
            throw InternalError("lattice_from_generators: HNF pivot not on the diagonal");
        for (std::size_t c = 0; c < 4; ++c) {
            L.rows[r][c] = mpq_class(h[r][c], den);
            L.rows[r][c].canonicalize();
        }
    }
    return L;
}

// Coordinates of v in the lattice basis, or nothing if v is not in the lattice.
inline std::optional<std::array<mpz_class, 4>> lattice_coords(const Lattice& L, const QuatElement& v)
{
    auto rest = v.coords();
    std::array<mpz_class, 4> out;
    for (std::size_t col = 0; col < 4; ++col) {
        mpq_class c = rest[col] / L.rows[col][col];
        if (c.get_den() != 1)
            return std::nullopt;
        out[col] = c.get_num();
        for (std::size_t k = col; k < 4; ++k)
            rest[k] -= c * L.rows[col][k];
    }
    return out;
}

inline bool lattice_contains(const Lattice& L, const QuatElement& v) { return lattice_coords(L, v).has_value(); }

inline bool lattice_subset(const Lattice& small, const Lattice& big)
{
    for (std::size_t k = 0; k < 4; ++k)
        if (!lattice_contains(big, small.basis(k)))
            return false;
    return true;
}

inline Lattice lattice_product(const Lattice& I, const Lattice& J)
{
    std::vector<QuatElement> gens;
    for (std::size_t s = 0; s < 4; ++s)
        for (std::size_t t = 0; t < 4; ++t)
            gens.push_back(I.basis(s) * J.basis(t));
    return lattice_from_generators(I.alg, gens);
}

inline Lattice lattice_conj(const Lattice& I)
{
    std::vector<QuatElement> gens;
    for (std::size_t s = 0; s < 4; ++s)
        gens.push_back(conj(I.basis(s)));
    return lattice_from_generators(I.alg, gens);
}

inline Lattice lattice_scale(const Lattice& I, const mpq_class& s)
{
    std::vector<QuatElement> gens;
    for (std::size_t k = 0; k < 4; ++k)
        gens.push_back(scale(I.basis(k), s));
    return lattice_from_generators(I.alg, gens);
}

// sqrt |det(Trd(e_s conj(e_t)))| over a basis.
inline mpz_class reduced_discriminant_of(const std::vector<QuatElement>& basis)
{
    std::array<std::array<mpq_class, 4>, 4> g;
    for (std::size_t s = 0; s < 4; ++s)
        for (std::size_t t = 0; t < 4; ++t)
            g[s][t] = trd(basis[s] * conj(basis[t]));
    // exact Gaussian elimination over Q
    mpq_class det = 1;
    for (std::size_t c = 0; c < 4; ++c) {
        std::size_t piv = c;
        while (piv < 4 && g[piv][c] == 0)
            ++piv;
        if (piv == 4)
            return 0;
        if (piv != c) {
            std::swap(g[piv], g[c]);
            det = -det;
        }
        det *= g[c][c];
        for (std::size_t r = c + 1; r < 4; ++r) {
            mpq_class f = g[r][c] / g[c][c];
            for (std::size_t k = c; k < 4; ++k)
                g[r][k] -= f * g[c][k];
        }
    }
    if (det < 0)
        det = -det;
    if (det.get_den() != 1)
        throw InternalError("reduced discriminant: non-integral trace form");
    mpz_class root;
    mpz_sqrtrem(root.get_mpz_t(), mpz_class(0).get_mpz_t(), det.get_num_mpz_t());
    if (root * root != det.get_num())
        throw InternalError("reduced discriminant: trace form determinant is not a square");
    return root;
}

enum class OrderKind { O, OPrime };

inline std::string to_string(OrderKind k) { return k == OrderKind::O ? "O" : "O'"; }

struct QuatOrder {
    u64 p = 0;
    u64 q = 0;
    OrderKind kind = OrderKind::O;
    u64 r = 0;
    QuatAlgebra alg;
    std::vector<QuatElement> named_basis; // the defining generators
    Lattice lattice;
};

struct LeftIdeal {
    Lattice lattice;
    mpz_class reduced_norm;
};

// Condition on (q, p) under which O(q) is a maximal order: q prime, q = 3 mod 8, (p/q) = -1.
inline bool q_condition(u64 q, u64 p)
{
    if (q < 3 || !is_prime(q) || q % 8 != 3)
        return false;
    return legendre(static_cast<i64>(p % q), q) == -1;
}

inline mpz_class reduced_discriminant(const QuatOrder& order) { return reduced_discriminant_of(order.lattice.basis()); }

inline bool is_order(const Lattice& L)
{
    if (!lattice_contains(L, L.alg.one()))
        return false;
    for (std::size_t s = 0; s < 4; ++s)
        for (std::size_t t = 0; t < 4; ++t)
            if (!lattice_contains(L, L.basis(s) * L.basis(t)))
                return false;
    return true;
}

inline QuatOrder make_order(OrderKind kind, u64 q, u64 p)
{
    if (p <= 3 || !is_prime(p))
        throw ArgumentError("make_order: p must be a prime > 3");
    if (kind == OrderKind::OPrime && p % 4 != 3)
        throw ArgumentError("make_order: O' needs p = 3 mod 4");
    if (!(q_condition(q, p) || (kind == OrderKind::OPrime && q == 1)))
        throw ArgumentError("make_order: q=" + std::to_string(q) + " violates the maximality condition for p=" +
                            std::to_string(p));
    QuatOrder ord;
    ord.p = p;
    ord.q = q;
    ord.kind = kind;
    ord.alg = QuatAlgebra{mpz_class(static_cast<unsigned long>(q)), mpz_class(static_cast<unsigned long>(p))};
    const auto& A = ord.alg;
    const mpq_class half(1, 2);
    if (kind == OrderKind::O) {
        auto r = sqrt_mod_prime(-static_cast<i64>(p % q), q);
        if (!r)
            throw InternalError("make_order: -p is not a square mod q");
        ord.r = *r;
        ord.named_basis = {A.one(), A.elem(half, half, 0, 0), A.elem(0, 0, half, -half),
                           A.elem(0, mpq_class(static_cast<long>(ord.r), static_cast<long>(q)), 0,
                                  mpq_class(-1, static_cast<long>(q)))};
    } else {
        const u64 m = 4 * q;
        std::optional<u64> r;
        for (u64 t = 0; t < m; ++t) {
            if ((arith::mulmod(t, t, m) + p) % m == 0) {
                r = t;
                break;
            }
        }
        if (!r)
            throw InternalError("make_order: -p is not a square mod 4q");
        ord.r = *r;
        ord.named_basis = {A.one(), A.elem(half, 0, half, 0), A.i(),
                           A.elem(0, mpq_class(static_cast<long>(ord.r), static_cast<long>(2 * q)), 0,
                                  mpq_class(-1, static_cast<long>(2 * q)))};
    }
    for (auto& e : ord.named_basis) {
        e.x.canonicalize();
        e.y.canonicalize();
        e.z.canonicalize();
        e.w.canonicalize();
    }
    ord.lattice = lattice_from_generators(A, ord.named_basis);
    if (!is_order(ord.lattice))
        throw InternalError("make_order: basis is not multiplicatively closed");
    if (reduced_discriminant(ord) != static_cast<unsigned long>(p))
        throw InternalError("make_order: order is not maximal");
    return ord;
}

// Gram matrix of <.,.> on a list of elements.
inline std::vector<std::vector<mpq_class>> gram_matrix(const std::vector<QuatElement>& b)
{
    std::vector<std::vector<mpq_class>> g(b.size(), std::vector<mpq_class>(b.size()));
    for (std::size_t s = 0; s < b.size(); ++s)
        for (std::size_t t = 0; t < b.size(); ++t)
            g[s][t] = inner(b[s], b[t]);
    return g;
}

// Calls visit(element) for every nonzero element of span_Z(basis) with Nrd <= bound (Fincke-Pohst).
// Stops early when visit returns true.
inline void enumerate_short(const std::vector<QuatElement>& basis, const mpq_class& bound,
                            const std::function<bool(const QuatElement&)>& visit)
{
    const std::size_t n = basis.size();
    auto g = gram_matrix(basis);
    // exact LDL^T: Q(c) = sum_i d_i (c_i + sum_{j>i} mu_ij c_j)^2, eliminating from the last coordinate
    std::vector<std::vector<mpq_class>> mu(n, std::vector<mpq_class>(n));
    std::vector<mpq_class> d(n);
    auto a = g;
    for (std::size_t i = 0; i < n; ++i) {
        d[i] = a[i][i];
        if (d[i] <= 0)
            throw InternalError("enumerate_short: Gram matrix not positive definite");
        for (std::size_t j = i + 1; j < n; ++j)
            mu[i][j] = a[i][j] / d[i];
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t k = i + 1; k < n; ++k)
                a[j][k] -= mu[i][j] * a[i][k];
    }
    std::vector<double> dd(n);
    std::vector<std::vector<double>> mud(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        dd[i] = d[i].get_d();
        for (std::size_t j = i + 1; j < n; ++j)
            mud[i][j] = mu[i][j].get_d();
    }
    const double B = bound.get_d();
    std::vector<long> c(n, 0);
    bool stop = false;
    std::function<void(std::size_t, double)> rec = [&](std::size_t level, double used) {
        const std::size_t i = level - 1;
        double center = 0;
        for (std::size_t j = i + 1; j < n; ++j)
            center -= mud[i][j] * static_cast<double>(c[j]);
        double rem = std::max(0.0, B - used);
        double radius = std::sqrt(rem / dd[i]);
        long lo = static_cast<long>(std::floor(center - radius)) - 1;
        long hi = static_cast<long>(std::ceil(center + radius)) + 1;
        for (long v = lo; v <= hi && !stop; ++v) {
            c[i] = v;
            double t = static_cast<double>(v) - center;
            double u = used + dd[i] * t * t;
            if (u > B * (1 + 1e-9) + 1.0)
                continue;
            if (i == 0) {
                bool zero = std::all_of(c.begin(), c.end(), [](long e) { return e == 0; });
                if (zero)
                    continue;
                QuatElement e = scale(basis[0], mpq_class(c[0]));
                for (std::size_t k = 1; k < n; ++k)
                    e = e + scale(basis[k], mpq_class(c[k]));
                if (nrd(e) <= bound && visit(e))
                    stop = true;
            } else {
                rec(level - 1, u);
            }
        }
        c[i] = 0;
    };
    rec(n, 0.0);
}

inline std::vector<QuatElement> elements_of_norm(const std::vector<QuatElement>& basis, const mpq_class& norm)
{
    std::vector<QuatElement> out;
    enumerate_short(basis, norm, [&](const QuatElement& e) {
        if (nrd(e) == norm)
            out.push_back(e);
        return false;
    });
    return out;
}

inline std::optional<QuatElement> find_element_of_norm(const std::vector<QuatElement>& basis, const mpq_class& norm)
{
    std::optional<QuatElement> found;
    enumerate_short(basis, norm, [&](const QuatElement& e) {
        if (nrd(e) == norm) {
            found = e;
            return true;
        }
        return false;
    });
    return found;
}

inline mpz_class lattice_reduced_norm(const Lattice& I, const Lattice& order)
{
    mpq_class idx = I.volume() / order.volume();
    if (idx.get_den() != 1)
        throw ArgumentError("lattice_reduced_norm: lattice is not contained in the order");
    mpz_class root, rem;
    mpz_sqrtrem(root.get_mpz_t(), rem.get_mpz_t(), idx.get_num_mpz_t());
    if (rem != 0)
        throw InternalError("lattice_reduced_norm: index is not a square");
    return root;
}

// theta(i) = [[0,-q],[1,0]], theta(j) = [[u,qv],[v,-u]] with u^2 + q v^2 = -p mod l.
struct ThetaMap {
    u64 ell = 0;
    u64 u = 0;
    u64 v = 0;
    using Mat = std::array<u64, 4>; // row-major 2x2 over F_l

    Mat mul(const Mat& m, const Mat& n) const
    {
        auto f = [&](u64 a, u64 b, u64 c, u64 d) { return (arith::mulmod(a, b, ell) + arith::mulmod(c, d, ell)) % ell; };
        return {f(m[0], n[0], m[1], n[2]), f(m[0], n[1], m[1], n[3]), f(m[2], n[0], m[3], n[2]),
                f(m[2], n[1], m[3], n[3])};
    }
    Mat img_i(u64 q) const { return {0, (ell - q % ell) % ell, 1 % ell, 0}; }
    Mat img_j(u64 q) const { return {u, arith::mulmod(q % ell, v, ell), v, (ell - u) % ell}; }
    Mat apply(const QuatElement& e, u64 q) const
    {
        PrimeField F(ell);
        auto red = [&](const mpq_class& c) {
            u64 num = F.from_mpz(c.get_num());
            u64 den = F.from_mpz(c.get_den());
            return F.mul(num, F.inv(den));
        };
        Mat I = img_i(q), J = img_j(q), K = mul(I, J);
        u64 x = red(e.x), y = red(e.y), z = red(e.z), w = red(e.w);
        Mat out;
        for (std::size_t t = 0; t < 4; ++t) {
            u64 id = (t == 0 || t == 3) ? x : 0;
            out[t] = F.add(F.add(id, F.mul(y, I[t])), F.add(F.mul(z, J[t]), F.mul(w, K[t])));
        }
        return out;
    }
};

inline ThetaMap make_theta(u64 q, u64 p, u64 ell)
{
    PrimeField F(ell);
    for (u64 v = 0; v < ell; ++v) {
        // u^2 = -p - q v^2
        i64 rhs = static_cast<i64>(F.sub(F.neg(p % ell), F.mul(q % ell, F.mul(v, v))));
        auto u = sqrt_mod_prime(rhs, ell);
        if (u)
            return ThetaMap{ell, *u, v};
    }
    throw InternalError("make_theta: no solution of u^2 + q v^2 = -p mod l");
}

namespace detail {

// Kernel of a k x 4 matrix over F_l (columns = lattice coordinates), as basis vectors.
inline std::vector<std::array<u64, 4>> kernel_mod(std::vector<std::array<u64, 4>> rows, u64 ell)
{
    PrimeField F(ell);
    std::vector<int> pivot_col;
    std::size_t r = 0;
    for (std::size_t col = 0; col < 4 && r < rows.size(); ++col) {
        std::size_t piv = r;
        while (piv < rows.size() && rows[piv][col] == 0)
            ++piv;
        if (piv == rows.size())
            continue;
        std::swap(rows[piv], rows[r]);
        u64 inv = F.inv(rows[r][col]);
        for (auto& e : rows[r])
            e = F.mul(e, inv);
        for (std::size_t o = 0; o < rows.size(); ++o) {
            if (o == r || rows[o][col] == 0)
                continue;
            u64 f = rows[o][col];
            for (std::size_t k = 0; k < 4; ++k)
                rows[o][k] = F.sub(rows[o][k], F.mul(f, rows[r][k]));
        }
        pivot_col.push_back(static_cast<int>(col));
        ++r;
    }
    std::vector<std::array<u64, 4>> out;
    for (std::size_t free = 0; free < 4; ++free) {
        if (std::find(pivot_col.begin(), pivot_col.end(), static_cast<int>(free)) != pivot_col.end())
            continue;
        std::array<u64, 4> v{0, 0, 0, 0};
        v[free] = 1;
        for (std::size_t t = 0; t < pivot_col.size(); ++t)
            v[pivot_col[t]] = F.neg(rows[t][free]);
        out.push_back(v);
    }
    return out;
}

} // namespace detail

// The l+1 left ideals of norm l, as preimages of {M : M v = 0} for v = (1,0), (a,-1), a = 0..l-1.
inline std::vector<LeftIdeal> left_ideals_norm_ell(const QuatOrder& order, u64 ell)
{
    if (!is_prime(ell) || ell == 2 || order.p % ell == 0 || (order.q % ell == 0))
        throw ArgumentError("left_ideals_norm_ell: l must be a prime not dividing 2pq");
    ThetaMap th = make_theta(order.q, order.p, ell);
    const auto basis = order.lattice.basis();
    std::array<ThetaMap::Mat, 4> img;
    for (std::size_t k = 0; k < 4; ++k)
        img[k] = th.apply(basis[k], order.q);
    std::vector<std::array<u64, 2>> vecs{{1, 0}};
    for (u64 a = 0; a < ell; ++a)
        vecs.push_back({a, ell - 1});
    std::vector<LeftIdeal> out;
    for (const auto& v : vecs) {
        // rows: the two components of theta(e_k) v as functions of the coordinate k
        std::vector<std::array<u64, 4>> rows(2);
        for (std::size_t k = 0; k < 4; ++k) {
            const auto& M = img[k];
            rows[0][k] = (arith::mulmod(M[0], v[0], ell) + arith::mulmod(M[1], v[1], ell)) % ell;
            rows[1][k] = (arith::mulmod(M[2], v[0], ell) + arith::mulmod(M[3], v[1], ell)) % ell;
        }
        auto ker = detail::kernel_mod(rows, ell);
        if (ker.size() != 2)
            throw InternalError("left_ideals_norm_ell: kernel of dimension " + std::to_string(ker.size()));
        std::vector<QuatElement> gens;
        for (std::size_t k = 0; k < 4; ++k)
            gens.push_back(scale(basis[k], mpq_class(static_cast<unsigned long>(ell))));
        for (const auto& kv : ker) {
            QuatElement e = scale(basis[0], mpq_class(static_cast<unsigned long>(kv[0])));
            for (std::size_t k = 1; k < 4; ++k)
                e = e + scale(basis[k], mpq_class(static_cast<unsigned long>(kv[k])));
            gens.push_back(e);
        }
        Lattice L = lattice_from_generators(order.alg, gens);
        out.push_back(LeftIdeal{L, lattice_reduced_norm(L, order.lattice)});
    }
    return out;
}

inline LeftIdeal unit_ideal(const QuatOrder& order) { return LeftIdeal{order.lattice, 1}; }

inline Lattice left_order(const LeftIdeal& I)
{
    return lattice_scale(lattice_product(I.lattice, lattice_conj(I.lattice)), mpq_class(1) / mpq_class(I.reduced_norm));
}

inline Lattice right_order(const LeftIdeal& I)
{
    return lattice_scale(lattice_product(lattice_conj(I.lattice), I.lattice), mpq_class(1) / mpq_class(I.reduced_norm));
}

inline std::optional<QuatElement> is_principal_ideal(const QuatOrder& order, const LeftIdeal& I)
{
    (void)order;
    return find_element_of_norm(I.lattice.basis(), mpq_class(I.reduced_norm));
}

// Trace-zero elements of norm p in the right order, i.e. square roots of -p.
inline std::vector<QuatElement> frobenius_elements(const LeftIdeal& I)
{
    Lattice R = right_order(I);
    // HNF rows 1..3 have zero real part and span the trace-zero sublattice
    std::vector<QuatElement> tz{R.basis(1), R.basis(2), R.basis(3)};
    if (R.rows[0][0] == 0 || R.rows[1][0] != 0 || R.rows[2][0] != 0 || R.rows[3][0] != 0)
        throw InternalError("frobenius_elements: unexpected HNF shape");
    return elements_of_norm(tz, mpq_class(R.alg.b));
}

inline bool frobenius_in_right_order(const LeftIdeal& I) { return !frobenius_elements(I).empty(); }

// J = I mu for some mu: conj(I) J has an element of norm N(I) N(J).
inline bool ideals_equivalent(const LeftIdeal& I, const LeftIdeal& J)
{
    Lattice prod = lattice_product(lattice_conj(I.lattice), J.lattice);
    return find_element_of_norm(prod.basis(), mpq_class(I.reduced_norm * J.reduced_norm)).has_value();
}

// sqrt(vol(I) / vol(O)) as a rational number.
inline mpq_class relative_norm(const Lattice& I, const Lattice& O)
{
    mpq_class idx = I.volume() / O.volume();
    mpz_class rn, rd, rem1, rem2;
    mpz_sqrtrem(rn.get_mpz_t(), rem1.get_mpz_t(), idx.get_num_mpz_t());
    mpz_sqrtrem(rd.get_mpz_t(), rem2.get_mpz_t(), idx.get_den_mpz_t());
    if (rem1 != 0 || rem2 != 0)
        throw InternalError("relative_norm: volume ratio is not a square");
    mpq_class r(rn, rd);
    r.canonicalize();
    return r;
}

// The two-sided ideal of norm p in a maximal order: the radical of its trace form mod p.
inline Lattice ramified_prime_ideal(const Lattice& O)
{
    const u64 p = O.alg.b.get_ui();
    const auto b = O.basis();
    std::vector<std::array<u64, 4>> rows(4);
    PrimeField F(p);
    for (std::size_t s = 0; s < 4; ++s)
        for (std::size_t t = 0; t < 4; ++t) {
            mpq_class v = trd(b[s] * conj(b[t]));
            if (v.get_den() != 1)
                throw InternalError("ramified_prime_ideal: lattice is not an order");
            rows[s][t] = F.from_mpz(v.get_num());
        }
    auto ker = detail::kernel_mod(rows, p);
    std::vector<QuatElement> gens;
    for (std::size_t k = 0; k < 4; ++k)
        gens.push_back(scale(b[k], mpq_class(static_cast<unsigned long>(p))));
    for (const auto& kv : ker) {
        QuatElement e = scale(b[0], mpq_class(static_cast<unsigned long>(kv[0])));
        for (std::size_t k = 1; k < 4; ++k)
            e = e + scale(b[k], mpq_class(static_cast<unsigned long>(kv[k])));
        gens.push_back(e);
    }
    return lattice_from_generators(O.alg, gens);
}

// Two maximal orders are conjugate iff a connecting ideal, possibly twisted by the
// two-sided prime over p, is principal.
inline bool maximal_orders_isomorphic(const Lattice& O1, const Lattice& O2)
{
    if (O1 == O2)
        return true;
    Lattice I = lattice_product(O1, O2);
    mpq_class n = relative_norm(I, O1);
    if (find_element_of_norm(I.basis(), n))
        return true;
    Lattice IP = lattice_product(I, ramified_prime_ideal(O2));
    return find_element_of_norm(IP.basis(), n * mpq_class(O1.alg.b)).has_value();
}

inline bool orders_isomorphic(OrderKind kind, u64 q1, u64 q2, u64 p)
{
    auto ok = [&](u64 q) { return q_condition(q, p) || (kind == OrderKind::OPrime && q == 1); };
    if (!ok(q1) || !ok(q2))
        throw ArgumentError("orders_isomorphic: q violates the maximality condition");
    if (kind == OrderKind::OPrime && p % 4 != 3)
        throw ArgumentError("orders_isomorphic: O' needs p = 3 mod 4");
    if (q1 == q2)
        return true;
    if (kind == OrderKind::O)
        return norm_eq_solvable(4 * p, q1 * q2);
    return norm_eq_solvable(p, 4 * q1 * q2);
}

} // namespace ssendo
