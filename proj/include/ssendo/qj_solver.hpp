#pragma once

// The minimal q with End(E_j) = O(q) or O'(q) for every supersingular j in F_p, and M(p).

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "arith.hpp"
#include "hilbert.hpp"
#include "parallel.hpp"
#include "quad_class.hpp"
#include "quaternion.hpp"
#include "ss_curves.hpp"

namespace ssendo {

struct QjRecord {
    u64 j = 0;
    u64 q = 0;
    OrderKind kind = OrderKind::O;

    bool operator==(const QjRecord&) const = default;
};

struct SkippedQ {
    u64 q = 0;
    std::string reason;
};

struct MpResult {
    u64 p = 0;
    u64 M = 0;
    bool strict = false;
    std::vector<QjRecord> records;              // sorted by j
    std::vector<SkippedQ> skipped_q;            // ascending q
    std::vector<std::pair<u64, QuadForm>> xe;   // q and the class of a prime over q, per new O' pair
    std::vector<u64> self_conjugate_q;          // q whose prime class equals its conjugate but is not principal
};

struct IncompleteResultError : ResourceError {
    MpResult partial;
    IncompleteResultError(const std::string& what, MpResult part) : ResourceError(what), partial(std::move(part)) {}
};

struct SolverOptions {
    std::optional<u64> q_ceiling;
    bool strict = false;
    bool resolve_oprime = false; // identify the j of each O' class pair by its own root intersection
    unsigned workers = 0;        // 0 = process default
};

inline u64 default_q_ceiling(u64 p)
{
    double lp = std::log(static_cast<double>(p));
    return static_cast<u64>(std::ceil(static_cast<double>(p) * lp * lp));
}

// Least r >= 0 with r^2 = -p mod q (O) or mod 4q (O').
inline u64 order_root(OrderKind kind, u64 q, u64 p)
{
    if (kind == OrderKind::O) {
        auto r = arith::sqrt_mod_prime(-static_cast<i64>(p % q), q);
        if (!r)
            throw ArgumentError("order_root: -p is not a square mod q");
        return *r;
    }
    const u64 m = 4 * q;
    for (u64 t = 0; t < m; ++t)
        if ((arith::mulmod(t, t, m) + p) % m == 0)
            return t;
    throw ArgumentError("order_root: -p is not a square mod 4q");
}

// Discriminants -Nrd of the three named elements of the trace-zero (Gross) lattice.
inline std::array<i64, 3> gross_discriminants(OrderKind kind, u64 q, u64 p)
{
    const i64 qq = static_cast<i64>(q), pp = static_cast<i64>(p);
    const i64 r = static_cast<i64>(order_root(kind, q, p));
    if (kind == OrderKind::O)
        return {-qq, -4 * pp, -4 * (r * r + pp) / qq};
    return {-4 * qq, -pp, -(r * r + pp) / qq};
}

// Gross lattice {2x - Trd(x) : x in O} of O(q) or O'(q).
inline std::vector<QuatElement> gross_lattice_basis(OrderKind kind, u64 q, u64 p)
{
    QuatAlgebra A{mpz_class(static_cast<unsigned long>(q)), mpz_class(static_cast<unsigned long>(p))};
    const long r = static_cast<long>(order_root(kind, q, p));
    const long ql = static_cast<long>(q);
    if (kind == OrderKind::O) {
        mpq_class c1(2 * r, ql), c2(-2, ql);
        c1.canonicalize();
        c2.canonicalize();
        return {A.i(), A.elem(0, 0, 1, -1), A.elem(0, c1, 0, c2)};
    }
    mpq_class c1(r, ql), c2(-1, ql);
    c1.canonicalize();
    c2.canonicalize();
    return {A.j(), A.elem(0, 2, 0, 0), A.elem(0, c1, 0, c2)};
}

inline std::vector<u64> intersect_sorted(const std::vector<u64>& a, const std::vector<u64>& b)
{
    std::vector<u64> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

// F_p-roots j admitting an embedding (not necessarily optimal) of the order of discriminant D:
// the union of the roots of H_{D/f^2} over f^2 | D.
inline std::vector<u64> embedding_roots(i64 D, u64 p)
{
    std::set<u64> acc;
    for (i64 f = 1; f * f <= -D; ++f) {
        if (D % (f * f) != 0)
            continue;
        const i64 d = D / (f * f);
        const i64 m4 = ((d % 4) + 4) % 4;
        if (m4 != 0 && m4 != 1)
            continue;
        auto r = hilbert_roots_mod(d, p);
        acc.insert(r->begin(), r->end());
    }
    return {acc.begin(), acc.end()};
}

// Common F_p-roots over the given discriminants: of H_D itself, or with embedding_roots when `embedding`.
inline std::vector<u64> common_roots(const std::vector<i64>& discs, u64 p, bool embedding = false)
{
    std::vector<u64> acc;
    bool first = true;
    for (i64 D : discs) {
        auto r = embedding ? embedding_roots(D, p) : *hilbert_roots_mod(D, p);
        acc = first ? r : intersect_sorted(acc, r);
        first = false;
        if (acc.empty())
            break;
    }
    return acc;
}

// Extra discriminants from further short Gross lattice vectors, smallest norm first.
inline std::vector<i64> extra_gross_discriminants(OrderKind kind, u64 q, u64 p, std::size_t count)
{
    auto basis = gross_lattice_basis(kind, q, p);
    auto used = gross_discriminants(kind, q, p);
    std::set<i64> seen(used.begin(), used.end());
    std::vector<i64> out;
    mpq_class bound(static_cast<unsigned long>(std::max<u64>(4 * p, 64)));
    for (int round = 0; round < 6 && out.size() < count; ++round) {
        std::set<long> norms;
        enumerate_short(basis, bound, [&](const QuatElement& e) {
            mpq_class n = nrd(e);
            if (n.get_den() == 1)
                norms.insert(n.get_num().get_si());
            return false;
        });
        out.clear();
        for (long n : norms) {
            i64 D = -static_cast<i64>(n);
            i64 m4 = ((D % 4) + 4) % 4;
            if (seen.count(D) || (m4 != 0 && m4 != 1))
                continue;
            out.push_back(D);
            if (out.size() == count)
                break;
        }
        bound *= 4;
    }
    return out;
}

struct JqOutcome {
    std::vector<u64> candidates; // intersection as computed
    std::optional<u64> j;
    bool used_extra = false;
};

inline JqOutcome j_from_q_detail(u64 q, u64 p, OrderKind kind, bool strict)
{
    if (!q_condition(q, p))
        throw ArgumentError("j_from_q: q=" + std::to_string(q) + " violates the maximality condition for p=" +
                            std::to_string(p));
    if (kind == OrderKind::OPrime && p % 4 != 3)
        throw ArgumentError("j_from_q: O' needs p = 3 mod 4");
    auto d = gross_discriminants(kind, q, p);
    JqOutcome out;
    out.candidates = common_roots({d[0], d[1], d[2]}, p, strict);
    if (strict && out.candidates.size() > 1) {
        out.used_extra = true;
        for (i64 D : extra_gross_discriminants(kind, q, p, 24)) {
            out.candidates = intersect_sorted(out.candidates, embedding_roots(D, p));
            if (out.candidates.size() <= 1)
                break;
        }
    }
    if (out.candidates.size() == 1)
        out.j = out.candidates.front();
    return out;
}

inline std::optional<u64> j_from_q(u64 q, u64 p, OrderKind kind = OrderKind::O)
{
    return j_from_q_detail(q, p, kind, false).j;
}

inline std::vector<u64> condition_primes(u64 p, u64 lo, u64 hi)
{
    std::vector<u64> out;
    for (u64 q : arith::primes_between(lo, hi))
        if (q_condition(q, p))
            out.push_back(q);
    return out;
}

inline MpResult compute_Mp(u64 p, const SolverOptions& opt = {})
{
    if (p <= 3 || !is_prime(p))
        throw ArgumentError("compute_Mp: p must be a prime > 3");
    const u64 ceiling = opt.q_ceiling.value_or(default_q_ceiling(p));
    const bool alg2 = p % 4 == 3;
    const unsigned nworkers = opt.workers ? opt.workers : workers();

    std::vector<u64> ss = supersingular_j_list(p);
    std::set<u64> target(ss.begin(), ss.end());
    if (alg2)
        target.erase(1728 % p);

    MpResult res;
    res.p = p;
    res.strict = opt.strict;
    std::map<u64, QjRecord> first_hit;
    std::set<u64> se;
    using FormKey = std::tuple<i64, i64, i64>;
    std::set<std::pair<FormKey, FormKey>> xe_pairs;
    std::size_t xe_size = 0;

    if (alg2 && p % 4 == 3 && std::binary_search(ss.begin(), ss.end(), 1728 % p))
        first_hit[1728 % p] = QjRecord{1728 % p, 1, OrderKind::OPrime};

    auto done = [&] { return se.size() + xe_size / 2 == target.size(); };
    // the sweep starts at q = 3 and the stop test runs after it even when 3 fails the condition
    if (done())
        res.M = 3;

    const auto qs = condition_primes(p, 3, ceiling);
    const std::size_t batch = std::max<std::size_t>(1, 2 * nworkers);
    bool finished = done();
    for (std::size_t start = 0; start < qs.size() && !finished; start += batch) {
        const std::size_t n = std::min(batch, qs.size() - start);
        auto outcomes = parallel_map<JqOutcome>(
            n, [&](std::size_t i) { return j_from_q_detail(qs[start + i], p, OrderKind::O, opt.strict); }, nworkers);
        for (std::size_t i = 0; i < n && !finished; ++i) {
            const u64 q = qs[start + i];
            const auto& oc = outcomes[i];
            if (!oc.j) {
                std::string why = oc.candidates.empty() ? "empty root intersection"
                                                         : "root intersection of size " + std::to_string(oc.candidates.size());
                res.skipped_q.push_back({q, why});
            } else if (!(alg2 && *oc.j == 1728 % p)) {
                if (se.insert(*oc.j).second)
                    first_hit[*oc.j] = QjRecord{*oc.j, q, OrderKind::O};
            }
            if (alg2) {
                auto pf = prime_form_class(-static_cast<i64>(p), q);
                if (!pf)
                    throw InternalError("compute_Mp: q=" + std::to_string(q) + " is inert in Q(sqrt(-p))");
                if (!pf->is_principal) {
                    QuadForm c1 = pf->form, c2 = inverse(pf->form);
                    if (c1 == c2)
                        res.self_conjugate_q.push_back(q);
                    FormKey k1{c1.a, c1.b, c1.c}, k2{c2.a, c2.b, c2.c};
                    auto key = std::make_pair(std::min(k1, k2), std::max(k1, k2));
                    if (xe_pairs.insert(key).second) {
                        xe_size += 2; // both classes, even when they coincide
                        res.xe.push_back({q, c1});
                        if (opt.resolve_oprime) {
                            auto o2 = j_from_q_detail(q, p, OrderKind::OPrime, opt.strict);
                            if (o2.j && !first_hit.count(*o2.j))
                                first_hit[*o2.j] = QjRecord{*o2.j, q, OrderKind::OPrime};
                            else if (!o2.j)
                                res.skipped_q.push_back({q, "O' root intersection of size " +
                                                                std::to_string(o2.candidates.size())});
                        }
                    }
                }
            }
            if (done()) {
                res.M = q;
                finished = true;
            }
        }
    }
    for (const auto& [j, rec] : first_hit)
        res.records.push_back(rec);
    if (!finished)
        throw IncompleteResultError("compute_Mp: q ceiling " + std::to_string(ceiling) + " reached for p=" +
                                        std::to_string(p) + " before all supersingular j were covered",
                                    res);
    return res;
}

// Minimal q for a single supersingular j in F_p, sweeping both order kinds in ascending q.
inline QjRecord qj_for_j(u64 p, u64 j, const SolverOptions& opt = {})
{
    if (p <= 3 || !is_prime(p))
        throw ArgumentError("qj_for_j: p must be a prime > 3");
    j %= p;
    if (!is_supersingular(curve_from_j(j, p)))
        throw ArgumentError("qj_for_j: j=" + std::to_string(j) + " is not supersingular over F_" + std::to_string(p));
    if (p % 4 == 3 && j == 1728 % p)
        return {j, 1, OrderKind::OPrime};
    const u64 ceiling = opt.q_ceiling.value_or(default_q_ceiling(p));
    for (u64 q : condition_primes(p, 3, ceiling)) {
        auto a = j_from_q_detail(q, p, OrderKind::O, opt.strict);
        if (a.j && *a.j == j)
            return {j, q, OrderKind::O};
        if (p % 4 == 3) {
            auto b = j_from_q_detail(q, p, OrderKind::OPrime, opt.strict);
            if (b.j && *b.j == j)
                return {j, q, OrderKind::OPrime};
        }
    }
    throw IncompleteResultError("qj_for_j: q ceiling " + std::to_string(ceiling) + " reached for j=" +
                                    std::to_string(j) + ", p=" + std::to_string(p),
                                MpResult{});
}

inline std::vector<QjRecord> qj_table(u64 p, const SolverOptions& opt = {})
{
    SolverOptions o = opt;
    o.resolve_oprime = true;
    auto recs = compute_Mp(p, o).records;
    // j whose only candidate q was skipped as ambiguous are found by the per-j sweep
    std::set<u64> have;
    for (const auto& r : recs)
        have.insert(r.j);
    for (u64 j : supersingular_j_list(p))
        if (!have.count(j))
            recs.push_back(qj_for_j(p, j, o));
    std::sort(recs.begin(), recs.end(), [](const QjRecord& a, const QjRecord& b) { return a.j < b.j; });
    return recs;
}

} // namespace ssendo
