#pragma once

// Supersingular l-isogeny graphs through classical modular polynomials.

#include <algorithm>
#include <deque>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "arith.hpp"
#include "config.hpp"
#include "hilbert.hpp"
#include "parallel.hpp"
#include "quaternion.hpp"
#include "ss_curves.hpp"

namespace ssendo {

struct ModularPoly {
    u64 ell = 0;
    // coeffs[dx][dy], full symmetric square of size l+2
    std::vector<std::vector<mpz_class>> coeffs;

    const mpz_class& at(std::size_t dx, std::size_t dy) const { return coeffs[dx][dy]; }
};

namespace detail {

inline void validate_modular_poly(const ModularPoly& mp, const std::string& src)
{
    const std::size_t n = mp.ell + 1;
    const mpz_class ell(static_cast<unsigned long>(mp.ell));
    for (std::size_t a = 0; a <= n; ++a)
        for (std::size_t b = 0; b <= n; ++b)
            if (mp.coeffs[a][b] != mp.coeffs[b][a])
                throw DataError(src + ": symmetry check failed at (" + std::to_string(a) + "," + std::to_string(b) + ")");
    bool top = false;
    for (std::size_t b = 0; b <= n; ++b)
        if (mp.coeffs[n][b] != 0)
            top = true;
    if (!top || mp.coeffs[n][0] != 1)
        throw DataError(src + ": degree check failed (expected monic degree " + std::to_string(n) + ")");
    // (X^l - Y)(X - Y^l) = X^(l+1) - X^l Y^l - XY + Y^(l+1)
    for (std::size_t a = 0; a <= n; ++a)
        for (std::size_t b = 0; b <= n; ++b) {
            long expect = 0;
            if ((a == n && b == 0) || (a == 0 && b == n))
                expect = 1;
            else if ((a == mp.ell && b == mp.ell) || (a == 1 && b == 1))
                expect = -1;
            mpz_class diff = mp.coeffs[a][b] - expect;
            if (diff % ell != 0)
                throw DataError(src + ": Kronecker congruence fails at (" + std::to_string(a) + "," +
                                std::to_string(b) + ")");
        }
}

struct ModularPolyCache {
    std::mutex mu;
    std::map<u64, std::shared_ptr<const ModularPoly>> polys;
};

inline ModularPolyCache& modular_poly_cache()
{
    static ModularPolyCache c;
    return c;
}

} // namespace detail

inline ModularPoly parse_modular_poly(u64 ell, std::istream& in, const std::string& src)
{
    if (!is_prime(ell))
        throw ArgumentError("modular polynomial: l must be prime");
    ModularPoly mp;
    mp.ell = ell;
    const std::size_t n = ell + 1;
    mp.coeffs.assign(n + 1, std::vector<mpz_class>(n + 1, 0));
    std::vector<std::vector<bool>> seen(n + 1, std::vector<bool>(n + 1, false));
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty())
            continue;
        std::istringstream ls(line);
        long dx, dy;
        std::string cs;
        std::string extra;
        if (!(ls >> dx >> dy >> cs) || (ls >> extra))
            throw DataError(src + ":" + std::to_string(lineno) + ": expected 'dx dy c'");
        mpz_class c;
        if (c.set_str(cs, 10) != 0)
            throw DataError(src + ":" + std::to_string(lineno) + ": bad coefficient");
        if (dx < 0 || dy < 0 || dx < dy)
            throw DataError(src + ":" + std::to_string(lineno) + ": exponents must satisfy dx >= dy >= 0");
        if (static_cast<std::size_t>(dx) > n)
            throw DataError(src + ": degree check failed (exponent " + std::to_string(dx) + " > " +
                            std::to_string(n) + ")");
        if (seen[dx][dy])
            throw DataError(src + ":" + std::to_string(lineno) + ": duplicate term");
        seen[dx][dy] = true;
        mp.coeffs[dx][dy] = c;
        mp.coeffs[dy][dx] = c;
    }
    detail::validate_modular_poly(mp, src);
    return mp;
}

inline std::shared_ptr<const ModularPoly> load_modular_poly_shared(u64 ell)
{
    if (!(ell == 2 || ell == 3 || ell == 5 || ell == 7 || ell == 11 || ell == 13))
        throw CapabilityError("modular polynomial for l=" + std::to_string(ell) + " is not shipped");
    auto& cache = detail::modular_poly_cache();
    std::lock_guard lk(cache.mu);
    if (auto it = cache.polys.find(ell); it != cache.polys.end())
        return it->second;
    fs::path path = data_dir() / "modular" / ("phi" + std::to_string(ell) + ".txt");
    std::ifstream in(path);
    if (!in)
        throw DataError("modular polynomial file missing: " + path.string());
    auto mp = std::make_shared<const ModularPoly>(parse_modular_poly(ell, in, path.string()));
    cache.polys.emplace(ell, mp);
    return mp;
}

inline ModularPoly load_modular_poly(u64 ell) { return *load_modular_poly_shared(ell); }

// Phi_l(j, Y) as a polynomial in Y over F_p2.
inline Poly<Fp2Field> modular_poly_at(const ModularPoly& mp, const Fp2Field& K, const JInvariant& j)
{
    const std::size_t n = mp.ell + 1;
    std::vector<Fp2Elem> jpow(n + 1);
    jpow[0] = K.one();
    for (std::size_t k = 1; k <= n; ++k)
        jpow[k] = K.mul(jpow[k - 1], j);
    Poly<Fp2Field> out;
    out.c.assign(n + 1, K.zero());
    for (std::size_t dx = 0; dx <= n; ++dx)
        for (std::size_t dy = 0; dy <= n; ++dy)
            if (mp.coeffs[dx][dy] != 0)
                out.c[dy] = K.add(out.c[dy], K.mul(K.from_mpz(mp.coeffs[dx][dy]), jpow[dx]));
    PolyRing<Fp2Field>(K).trim(out);
    return out;
}

// Roots of Phi_l(j, Y) over F_p2 with multiplicity, expanded and sorted.
inline std::vector<JInvariant> modular_neighbors(const ModularPoly& mp, u64 p, const JInvariant& j)
{
    Fp2Field K(p);
    PolyRing<Fp2Field> R(K);
    auto roots = R.roots(modular_poly_at(mp, K, j));
    std::vector<JInvariant> out;
    for (const auto& r : roots)
        for (unsigned m = 0; m < r.mult; ++m)
            out.push_back(r.root);
    std::sort(out.begin(), out.end(), [&](auto a, auto b) { return K.less(a, b); });
    return out;
}

struct NeighborCount {
    JInvariant j;
    unsigned mult = 0;
};

struct NeighborhoodReport {
    u64 p = 0;
    u64 ell = 0;
    JInvariant j;
    unsigned loops = 0;
    std::vector<NeighborCount> neighbors; // non-loop, distinct, sorted
    std::vector<u64> fp_rational;         // non-loop neighbors lying in F_p, sorted
    std::optional<int> delta_used;
    std::optional<int> legendre_minus_p_ell;
};

inline std::string format_j(const JInvariant& j)
{
    if (j.c1 == 0)
        return std::to_string(j.c0);
    return std::to_string(j.c0) + "+" + std::to_string(j.c1) + "*t";
}

inline NeighborhoodReport neighborhood(const JInvariant& j, u64 ell, u64 p)
{
    if (p <= 3 || !is_prime(p))
        throw ArgumentError("neighborhood: p must be a prime > 3");
    if (!is_prime(ell) || ell == p)
        throw ArgumentError("neighborhood: l must be a prime different from p");
    Fp2Field K(p);
    JInvariant jj = K.make(j.c0, j.c1);
    if (!is_supersingular_j(K, jj))
        throw ArgumentError("neighborhood: j=" + format_j(jj) + " is not supersingular over F_" + std::to_string(p));
    auto mp = load_modular_poly_shared(ell);
    auto all = modular_neighbors(*mp, p, jj);
    if (all.size() != ell + 1)
        throw InternalError("neighborhood: Phi_l(j, Y) has " + std::to_string(all.size()) + " roots in F_p2, expected " +
                            std::to_string(ell + 1));
    NeighborhoodReport rep;
    rep.p = p;
    rep.ell = ell;
    rep.j = jj;
    for (const auto& y : all) {
        if (y == jj) {
            ++rep.loops;
            continue;
        }
        if (!rep.neighbors.empty() && rep.neighbors.back().j == y)
            ++rep.neighbors.back().mult;
        else
            rep.neighbors.push_back({y, 1});
    }
    for (const auto& nc : rep.neighbors)
        if (nc.j.c1 == 0)
            rep.fp_rational.push_back(nc.j.c0);
    std::sort(rep.fp_rational.begin(), rep.fp_rational.end());
    if (ell != 2)
        rep.legendre_minus_p_ell = legendre(-static_cast<i64>(p % ell), ell);
    return rep;
}

enum class Verdict { Pass, Fail, HypothesisUnsatisfied };

inline std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::Pass:
        return "PASS";
    case Verdict::Fail:
        return "FAIL";
    default:
        return "HYPOTHESIS_UNSATISFIED";
    }
}

struct Theorem1Check {
    Verdict verdict = Verdict::Fail;
    bool hypothesis = false;
    int delta = 0;
    int legendre_minus_p_ell = 0;
    unsigned expected_loops = 0;
    unsigned expected_neighbors = 0;
    unsigned expected_fp = 0;
    unsigned distinct_neighbors = 0;
    bool simple_edges = false;
    NeighborhoodReport report;
};

// Loops, neighbor count and F_p-neighbor count at a vertex with End = O(q) or O'(q).
inline Theorem1Check verify_theorem1(u64 p, u64 ell, const JInvariant& j, u64 q, OrderKind kind)
{
    if (ell == 2 || !is_prime(ell) || p % ell == 0 || (q % ell == 0 && q != 0))
        throw ArgumentError("verify_theorem1: l must be an odd prime not dividing pq");
    Theorem1Check out;
    out.report = neighborhood(j, ell, p);
    const i64 D = kind == OrderKind::O ? -static_cast<i64>(q) : -4 * static_cast<i64>(q);
    out.delta = delta(D, ell);
    out.legendre_minus_p_ell = *out.report.legendre_minus_p_ell;
    out.report.delta_used = out.delta;
    const u64 bound = (kind == OrderKind::O ? q : 4 * q) * ell * ell;
    out.hypothesis = p > bound;
    out.expected_loops = static_cast<unsigned>(1 + out.delta);
    out.expected_neighbors = static_cast<unsigned>(static_cast<i64>(ell) - out.delta);
    out.expected_fp = static_cast<unsigned>(1 + out.legendre_minus_p_ell);
    out.distinct_neighbors = static_cast<unsigned>(out.report.neighbors.size());
    out.simple_edges = std::all_of(out.report.neighbors.begin(), out.report.neighbors.end(),
                                   [](const NeighborCount& n) { return n.mult == 1; });
    if (!out.hypothesis) {
        out.verdict = Verdict::HypothesisUnsatisfied;
        return out;
    }
    bool ok = out.report.loops == out.expected_loops && out.distinct_neighbors == out.expected_neighbors &&
              out.simple_edges && out.report.fp_rational.size() == out.expected_fp;
    out.verdict = ok ? Verdict::Pass : Verdict::Fail;
    return out;
}

struct GraphEdge {
    JInvariant from;
    JInvariant to;
    unsigned mult = 0;
};

struct GraphDocument {
    u64 p = 0;
    u64 ell = 0;
    std::vector<JInvariant> vertices; // sorted
    std::vector<GraphEdge> edges;     // grouped by source, sorted
};

// Supersingular vertex count floor(p/12) + e, e = 0, 1, 1, 2 for p = 1, 5, 7, 11 mod 12.
inline u64 supersingular_vertex_count(u64 p)
{
    static const u64 eps[12] = {0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 2};
    return p / 12 + eps[p % 12];
}

inline GraphDocument export_graph(u64 p, u64 ell)
{
    if (p <= 3 || !is_prime(p))
        throw ArgumentError("export_graph: p must be a prime > 3");
    if (!is_prime(ell) || ell == p)
        throw ArgumentError("export_graph: l must be a prime different from p");
    auto mp = load_modular_poly_shared(ell);
    Fp2Field K(p);
    auto less = [&](const JInvariant& a, const JInvariant& b) { return K.less(a, b); };
    auto start_list = supersingular_j_list(p);
    if (start_list.empty())
        throw InternalError("export_graph: no supersingular j in F_p");
    std::map<JInvariant, std::vector<JInvariant>, decltype(less)> adj(less);
    std::vector<JInvariant> frontier{K.embed(start_list.front())};
    std::set<JInvariant, decltype(less)> seen(less);
    seen.insert(frontier.front());
    while (!frontier.empty()) {
        auto results = parallel_map<std::vector<JInvariant>>(
            frontier.size(), [&](std::size_t i) { return modular_neighbors(*mp, p, frontier[i]); });
        std::vector<JInvariant> next;
        for (std::size_t i = 0; i < frontier.size(); ++i) {
            if (results[i].size() != ell + 1)
                throw InternalError("export_graph: vertex " + format_j(frontier[i]) + " has out-degree " +
                                    std::to_string(results[i].size()));
            for (const auto& y : results[i])
                if (seen.insert(y).second)
                    next.push_back(y);
            adj.emplace(frontier[i], std::move(results[i]));
        }
        std::sort(next.begin(), next.end(), less);
        frontier = std::move(next);
    }
    GraphDocument doc;
    doc.p = p;
    doc.ell = ell;
    for (const auto& [v, nbrs] : adj) {
        doc.vertices.push_back(v);
        for (const auto& y : nbrs) {
            if (!doc.edges.empty() && doc.edges.back().from == v && doc.edges.back().to == y)
                ++doc.edges.back().mult;
            else
                doc.edges.push_back({v, y, 1});
        }
    }
    return doc;
}

inline std::string graph_to_dot(const GraphDocument& g)
{
    std::ostringstream os;
    os << "graph G_" << g.ell << "_" << g.p << " {\n";
    for (const auto& v : g.vertices)
        os << "  \"" << format_j(v) << "\";\n";
    for (const auto& e : g.edges)
        os << "  \"" << format_j(e.from) << "\" -- \"" << format_j(e.to) << "\" [multiplicity=" << e.mult << "];\n";
    os << "}\n";
    return os.str();
}

inline nlohmann::json graph_to_json(const GraphDocument& g)
{
    nlohmann::json doc;
    doc["p"] = g.p;
    doc["ell"] = g.ell;
    doc["vertices"] = nlohmann::json::array();
    for (const auto& v : g.vertices)
        doc["vertices"].push_back(format_j(v));
    doc["edges"] = nlohmann::json::array();
    for (const auto& e : g.edges)
        doc["edges"].push_back(nlohmann::json::array({format_j(e.from), format_j(e.to), e.mult}));
    return doc;
}

inline std::string graph_to_csv(const GraphDocument& g)
{
    std::string s = "from,to,multiplicity\n";
    for (const auto& e : g.edges)
        s += format_j(e.from) + "," + format_j(e.to) + "," + std::to_string(e.mult) + "\n";
    return s;
}

} // namespace ssendo
