// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <ssendo.hpp>
#include <ssendo/cli.hpp>

using namespace ssendo;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
    std::string note; // printed either way


    void fail(const std::string& why)
    {
        if (pass)
            detail.clear();
        else
            detail += "; ";
        pass = false;
        detail += why;
    }
};

int failures = 0;

template <class Fn>
void criterion(int id, const std::string& name, Fn fn)
{
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = fn();
    } catch (const std::exception& e) {
        o.pass = false;
        o.detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass)
        ++failures;
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << id << ". " << name << " (" << fixed_decimal(secs, 1) << " s)";
    if (!o.detail.empty())
        std::cout << ": " << o.detail;
    if (!o.note.empty())
        std::cout << " [" << o.note << "]";
    std::cout << std::endl;
}

std::map<u64, std::string> table_rows()
{
    std::map<u64, std::string> out;
    std::ifstream in(std::string(SSENDO_TEST_DATA) + "/m_tables.csv");
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line))
        out[std::stoull(line.substr(0, line.find(',')))] = line;
    return out;
}

std::vector<u64> primes_below(u64 n) { return arith::primes_between(5, n - 1); }

std::string join(const std::vector<u64>& v)
{
    std::string s = "{";
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + std::to_string(v[i]);
    return s + "}";
}

bool in_hypothesis(u64 p, const QjRecord& r, u64 ell)
{
    if (r.j == 0 || r.j == 1728 % p || r.q <= 1)
        return false;
    if (p % ell == 0 || r.q % ell == 0)
        return false;
    const u64 bound = (r.kind == OrderKind::O ? r.q : 4 * r.q) * ell * ell;
    return p > bound;
}

std::map<u64, std::vector<QjRecord>>& qj_cache()
{
    static std::map<u64, std::vector<QjRecord>> c;
    return c;
}

const std::vector<QjRecord>& qj_of(u64 p)
{
    auto& c = qj_cache();
    auto it = c.find(p);
    if (it == c.end())
        it = c.emplace(p, qj_table(p)).first;
    return it->second;
}

} // namespace

int main()
{
    criterion(1, "M(p) rows for p < 300 match the published tables", [] {
        Outcome o;
        auto rows = table_rows();
        std::size_t n = 0;
        for (u64 p : primes_below(300)) {
            auto it = rows.find(p);
            if (it == rows.end()) {
                o.fail("no table row for p=" + std::to_string(p));
                continue;
            }
            std::string got = mp_csv_row(p, compute_Mp(p).M);
            if (got != it->second)
                o.fail("p=" + std::to_string(p) + " computed " + got + ", table " + it->second);
            ++n;
        }
        if (o.pass)
            o.detail = std::to_string(n) + " rows";
        return o;
    });

    criterion(2, "q_j table for p = 101", [] {
        Outcome o;
        std::set<std::pair<u64, u64>> want = {{0, 3}, {57, 11}, {59, 59}, {66, 67}, {64, 83}, {2, 139}, {21, 163}};
        std::set<std::pair<u64, u64>> got;
        for (const auto& r : qj_of(101)) {
            got.insert({r.j, r.q});
            if (r.kind != OrderKind::O)
                o.fail("j=" + std::to_string(r.j) + " has kind O'");
        }
        for (auto [j, q] : want)
            if (!got.count({j, q}))
                o.fail("expected q_" + std::to_string(j) + "=" + std::to_string(q));
        for (auto [j, q] : got)
            if (!want.count({j, q}))
                o.fail("computed q_" + std::to_string(j) + "=" + std::to_string(q));
        if (!is_supersingular(curve_from_j(2, 101)))
            o.fail("j=2 is not supersingular over F_101");
        return o;
    });

    criterion(3, "worked neighborhoods at p = 311, 293, 1847", [] {
        Outcome o;
        if (!is_supersingular(Curve{311, 122, 185}))
            o.note = "y^2=x^3+122x+185 is ordinary over F_311; the O'(3) vertex j=197 is used";
        auto a = neighborhood(Fp2Elem{197, 0}, 5, 311);
        if (a.loops != 0 || a.neighbors.size() != 6 || a.fp_rational != std::vector<u64>{19, 225})
            o.fail("p=311: loops " + std::to_string(a.loops) + ", neighbors " + std::to_string(a.neighbors.size()) +
                   ", F_p " + join(a.fp_rational));
        std::vector<u64> qs;
        for (u64 j : a.fp_rational)
            qs.push_back(qj_for_j(311, j).q);
        if (qs != std::vector<u64>{419, 67})
            o.fail("End-ring q-values of {19,225} are " + join(qs) + ", expected {419,67}");
        Curve e293{293, 256, 73};
        auto b = neighborhood(Fp2Elem{j_invariant(e293), 0}, 5, 293);
        if (!is_supersingular(e293) || b.loops != 0 || b.fp_rational != std::vector<u64>{212})
            o.fail("p=293: loops " + std::to_string(b.loops) + ", F_p " + join(b.fp_rational));
        Curve e1847{1847, 1594, 447};
        Fp2Elem j1847{j_invariant(e1847), 0};
        auto c = verify_theorem1(1847, 13, j1847, 11, OrderKind::O);
        if (c.report.fp_rational != std::vector<u64>{319, 437, 1336} || c.verdict != Verdict::HypothesisUnsatisfied)
            o.fail("p=1847: F_p " + join(c.report.fp_rational) + ", verdict " + to_string(c.verdict));
        return o;
    });

    criterion(4, "loop and neighbor counts for p < 500, l in {3,5,7}", [] {
        Outcome o;
        std::size_t checked = 0;
        for (u64 p : primes_below(500))
            for (const auto& r : qj_of(p))
                for (u64 ell : {3ull, 5ull, 7ull}) {
                    if (!in_hypothesis(p, r, ell))
                        continue;
                    auto c = verify_theorem1(p, ell, Fp2Elem{r.j, 0}, r.q, r.kind);
                    ++checked;
                    if (c.verdict != Verdict::Pass)
                        o.fail("p=" + std::to_string(p) + " j=" + std::to_string(r.j) + " l=" + std::to_string(ell) +
                               " " + to_string(c.verdict));
                }
        if (checked == 0)
            o.fail("no in-hypothesis cases");
        if (o.pass)
            o.detail = std::to_string(checked) + " cases";
        return o;
    });

    criterion(5, "modular polynomial neighbors equal Velu neighbors for p < 200", [] {
        Outcome o;
        std::size_t checked = 0;
        for (u64 p : primes_below(200))
            for (u64 ell : {2ull, 3ull, 5ull}) {
                if (p == ell)
                    continue;
                Fp2Field K(p);
                auto mp = load_modular_poly_shared(ell);
                auto less = [&](const Fp2Elem& x, const Fp2Elem& y) { return K.less(x, y); };
                for (u64 j : supersingular_j_list(p)) {
                    auto a = modular_neighbors(*mp, p, Fp2Elem{j, 0});
                    auto b = velu_neighbors(Fp2Elem{j, 0}, ell, p);
                    std::sort(b.begin(), b.end(), less);
                    ++checked;
                    if (a != b)
                        o.fail("p=" + std::to_string(p) + " l=" + std::to_string(ell) + " j=" + std::to_string(j));
                }
            }
        if (o.pass)
            o.detail = std::to_string(checked) + " vertices";
        return o;
    });

    criterion(6, "supersingular counts match class numbers for p < 500", [] {
        Outcome o;
        for (u64 p : primes_below(500)) {
            const i64 pp = static_cast<i64>(p);
            std::size_t want = p % 4 == 1 ? class_number(-4 * pp) / 2
                                          : (p % 8 == 7 ? class_number(-pp) : 2 * class_number(-pp));
            if (supersingular_j_list(p).size() != want)
                o.fail("p=" + std::to_string(p));
        }
        return o;
    });

    criterion(7, "splitting test and norm-form test agree for |D| < 500, l < 50", [] {
        Outcome o;
        std::size_t checked = 0;
        for (i64 D = -3; D > -500; --D) {
            if (((D % 4) + 4) % 4 > 1)
                continue;
            for (u64 ell : arith::primes_between(3, 49)) {
                if ((-D) % static_cast<i64>(ell) == 0)
                    continue;
                ++checked;
                if (delta_by_splitting(D, ell) != delta_by_norm_form(D, ell))
                    o.fail("D=" + std::to_string(D) + " l=" + std::to_string(ell));
            }
        }
        if (o.pass)
            o.detail = std::to_string(checked) + " pairs";
        return o;
    });

    criterion(8, "ideal-side counts match curve-side counts for p < 300", [] {
        Outcome o;
        std::size_t checked = 0;
        for (u64 p : primes_below(300))
            for (const auto& r : qj_of(p))
                for (u64 ell : {3ull, 5ull, 7ull}) {
                    if (!in_hypothesis(p, r, ell))
                        continue;
                    auto ord = make_order(r.kind, r.q, p);
                    unsigned principal = 0, frob = 0;
                    for (const auto& I : left_ideals_norm_ell(ord, ell)) {
                        if (is_principal_ideal(ord, I))
                            ++principal;
                        else if (frobenius_in_right_order(I))
                            ++frob;
                    }
                    auto nb = neighborhood(Fp2Elem{r.j, 0}, ell, p);
                    ++checked;
                    if (principal != nb.loops || frob != nb.fp_rational.size())
                        o.fail("p=" + std::to_string(p) + " j=" + std::to_string(r.j) + " l=" + std::to_string(ell) +
                               ": principal " + std::to_string(principal) + " vs loops " + std::to_string(nb.loops) +
                               ", frobenius " + std::to_string(frob) + " vs F_p " +
                               std::to_string(nb.fp_rational.size()));
                }
        if (checked == 0)
            o.fail("no in-hypothesis cases");
        if (o.pass)
            o.detail = std::to_string(checked) + " cases";
        return o;
    });

    criterion(9, "shipped modular polynomials validate", [] {
        Outcome o;
        for (u64 ell : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull}) {
            auto mp = load_modular_poly(ell);
            if (mp.coeffs.size() != ell + 2)
                o.fail("l=" + std::to_string(ell) + " has wrong size");
        }
        return o;
    });

    criterion(10, "Chebotarev envelopes and threshold search", [] {
        Outcome o;
        for (u64 p : {2003ull, 5003ull, 10007ull}) {
            const ResidueClass rc = residue_class(p);
            const u64 h = field_class_number(p);
            for (int k : {4, 6}) {
                const double x = static_cast<double>(p) * std::pow(std::log(static_cast<double>(p)), k);
                for (FieldCase fc : {FieldCase::L0zeta8, FieldCase::L1zeta8}) {
                    if (fc == FieldCase::L1zeta8 && rc == ResidueClass::SevenMod8)
                        continue;
                    const double C = envelope_coefficient(fc, rc, k);
                    auto r = cheb_gap_bound(x, field_invariants(p, fc, h));
                    const double L = std::log(x);
                    const double closed = std::sqrt(x) - C * static_cast<double>(h) * L * L;
                    if (r.normalized < closed - 1e-6 * std::abs(closed))
                        o.fail("p=" + std::to_string(p) + " " + to_string(fc) + " k=" + std::to_string(k));
                }
            }
        }
        for (auto fc : {FieldCase::L0zeta8, FieldCase::L1zeta8})
            for (auto rc : {ResidueClass::OneMod4, ResidueClass::ThreeMod8})
                for (int k : {4, 6}) {
                    const double c = relaxed_coefficient(fc, rc, 2000, 2000 * std::pow(std::log(2000.0), k));
                    if (std::abs(c - envelope_coefficient(fc, rc, k)) > 0.005)
                        o.fail("coefficient " + fixed_decimal(c, 5) + " for " + to_string(fc) + ", p = " +
                               to_string(rc) + ", k=" + std::to_string(k));
                }
        for (auto mode : {HBoundMode::BrauerSiegel, HBoundMode::Unconditional}) {
            auto r = thm_bound_search(2003, mode);
            if (!(r.margin_at_reference > 0) || r.x > r.x_reference)
                o.fail("threshold search at k=" + std::to_string(r.k));
        }
        return o;
    });

    criterion(11, "M(p) > sqrt p except 11, 23, and M(p) < p log^2 p, for p < 300", [] {
        Outcome o;
        for (u64 p : primes_below(300)) {
            const double M = static_cast<double>(compute_Mp(p).M), pd = static_cast<double>(p);
            const bool above = M > std::sqrt(pd);
            if (above == (p == 11 || p == 23))
                o.fail("p=" + std::to_string(p) + " M/sqrt p=" + fixed_decimal(M / std::sqrt(pd), 3));
            if (!(M < pd * std::log(pd) * std::log(pd)))
                o.fail("p=" + std::to_string(p) + " exceeds p log^2 p");
        }
        return o;
    });

    std::cout << (failures ? std::to_string(failures) + " criteria failed" : "all criteria passed") << std::endl;
    return failures ? 1 : 0;
}
