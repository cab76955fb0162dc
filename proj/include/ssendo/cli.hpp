#pragma once

// Command-line front end. run_cli returns the process exit status.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cheb_bounds.hpp"
#include "config.hpp"
#include "errors.hpp"
#include "hilbert.hpp"
#include "isogeny_graph.hpp"
#include "parallel.hpp"
#include "qj_solver.hpp"
#include "ss_curves.hpp"

namespace ssendo {

enum ExitCode { ExitOk = 0, ExitArgument = 1, ExitVerification = 2, ExitResource = 3 };

struct CliConfig {
    std::string cache_dir;
    std::string data_dir;
    unsigned workers = 0;
    std::string format = "csv";
    bool strict = false;
    u64 seed = 1;
};

// %.Nf: the exact binary value rounded to nearest, ties to even.
inline std::string fixed_decimal(double v, int digits)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

inline std::string mp_csv_header() { return "p,M,M_over_sqrtp,M_over_plog2p"; }

inline std::string mp_csv_row(u64 p, u64 M)
{
    const double pd = static_cast<double>(p), md = static_cast<double>(M);
    const double lp = std::log(pd);
    return std::to_string(p) + "," + std::to_string(M) + "," + fixed_decimal(md / std::sqrt(pd), 2) + "," +
           fixed_decimal(md / (pd * lp * lp), 3);
}

inline nlohmann::json j_to_json(const JInvariant& j)
{
    if (j.c1 == 0)
        return j.c0;
    return format_j(j);
}

inline nlohmann::json neighborhood_to_json(const NeighborhoodReport& r)
{
    nlohmann::json out;
    out["p"] = r.p;
    out["ell"] = r.ell;
    out["j"] = j_to_json(r.j);
    out["loops"] = r.loops;
    nlohmann::json nb = nlohmann::json::array();
    for (const auto& n : r.neighbors)
        nb.push_back({{"j", j_to_json(n.j)}, {"multiplicity", n.mult}});
    out["neighbors"] = nb;
    out["distinct_neighbors"] = r.neighbors.size();
    out["fp_neighbors"] = r.fp_rational;
    out["delta"] = r.delta_used ? nlohmann::json(*r.delta_used) : nlohmann::json();
    out["legendre_minus_p_ell"] = r.legendre_minus_p_ell ? nlohmann::json(*r.legendre_minus_p_ell) : nlohmann::json();
    return out;
}

inline std::vector<u64> primes_in_range(u64 a, u64 b)
{
    std::vector<u64> out;
    for (u64 p : arith::primes_between(std::max<u64>(a, 5), b))
        out.push_back(p);
    return out;
}

// p -> M from a "p,M,..." file.
inline std::map<u64, u64> read_mp_table(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw DataError("cannot open table " + path);
    std::map<u64, u64> t;
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        std::stringstream ss(line);
        std::string a, b;
        std::getline(ss, a, ',');
        std::getline(ss, b, ',');
        try {
            t[std::stoull(a)] = std::stoull(b);
        } catch (const std::exception&) {
            throw DataError("bad row in " + path + ": " + line);
        }
    }
    return t;
}

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Supersingular isogeny graphs, endomorphism rings O(q)/O'(q) and the bound M(p)", "ssendo"};
    app.require_subcommand(1);
    app.fallthrough();
    CliConfig cfg;
    app.add_option("--cache-dir", cfg.cache_dir, "Hilbert polynomial cache directory (empty disables)");
    app.add_option("--data-dir", cfg.data_dir, "Directory holding modular/phi<l>.txt");
    app.add_option("--workers", cfg.workers, "Worker threads")->check(CLI::PositiveNumber);
    app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"csv", "json", "dot"}));
    app.add_flag("--strict", cfg.strict, "Disambiguate q sweeps with further discriminants");
    app.add_option("--seed", cfg.seed, "Seed for randomized root finding");

    u64 p = 0, j = 0, ell = 0, a = 0, b = 0;
    std::vector<u64> prange;
    i64 disc = 0;
    u64 modulus = 0;
    double x = 0;
    std::string field_case, search_mode, check_path;
    u64 h_override = 0;

    auto* ss_list = app.add_subcommand("ss-list", "Supersingular j-invariants in F_p");
    ss_list->add_option("--p", p, "Prime")->required();

    auto* qj = app.add_subcommand("qj", "Minimal q with End(E_j) = O(q) or O'(q)");
    qj->add_option("--p", p, "Prime")->required();
    auto* qj_j = qj->add_option("--j", j, "A single supersingular j");

    auto* mp = app.add_subcommand("mp", "M(p) rows");
    auto* mp_p = mp->add_option("--p", p, "Prime");
    auto* mp_r = mp->add_option("--p-range", prange, "Inclusive prime range A B")->expected(2);
    mp_p->excludes(mp_r);
    mp->add_option("--check", check_path, "Compare M against a p,M table; mismatch exits 2");

    auto* nbh = app.add_subcommand("neighborhood", "Loops and neighbors of a vertex");
    nbh->add_option("--p", p, "Prime")->required();
    nbh->add_option("--ell", ell, "Isogeny degree")->required();
    auto* nbh_j = nbh->add_option("--j", j, "j-invariant in F_p");
    auto* nbh_a = nbh->add_option("--a", a, "Curve coefficient A");
    auto* nbh_b = nbh->add_option("--b", b, "Curve coefficient B");
    nbh_j->excludes(nbh_a)->excludes(nbh_b);
    nbh_a->needs(nbh_b);
    nbh_b->needs(nbh_a);

    auto* vt = app.add_subcommand("verify-theorem1", "Check loop and neighbor counts at every supersingular j");
    vt->add_option("--p", p, "Prime")->required();
    vt->add_option("--ell", ell, "Isogeny degree")->required();
    auto* vt_j = vt->add_option("--j", j, "Restrict to one j");

    auto* hil = app.add_subcommand("hilbert", "Hilbert class polynomial");
    hil->add_option("--d", disc, "Negative discriminant")->required();
    auto* hil_m = hil->add_option("--mod", modulus, "Reduce modulo this integer");

    auto* gr = app.add_subcommand("graph", "Export the supersingular ell-isogeny graph over F_{p^2}");
    gr->add_option("--p", p, "Prime")->required();
    gr->add_option("--ell", ell, "Isogeny degree")->required();

    auto* cheb = app.add_subcommand("cheb", "Explicit Chebotarev lower bound");
    cheb->add_option("--p", p, "Prime")->required();
    auto* cheb_case = cheb->add_option("--case", field_case, "Kzeta8, L0zeta8 or L1zeta8");
    auto* cheb_x = cheb->add_option("--x", x, "Evaluation point");
    cheb->add_option("--class-number", h_override, "Class number (default: computed)");
    auto* cheb_s = cheb->add_option("--search", search_mode, "brauer_siegel or unconditional threshold search");
    cheb_s->excludes(cheb_case)->excludes(cheb_x);

    auto* nx = app.add_subcommand("nx", "Count primes q <= x with q = 3 mod 8 and (p/q) = -1");
    nx->add_option("--p", p, "Prime")->required();
    nx->add_option("--x", x, "Bound")->required();

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return ExitArgument;
    }

    try {
        if (!app.get_option("--cache-dir")->empty())
            set_cache_dir(cfg.cache_dir);
        if (!app.get_option("--data-dir")->empty())
            set_data_dir(cfg.data_dir);
        if (cfg.workers)
            set_workers(cfg.workers);
        arith::rng_seed() = cfg.seed;
        const bool json = cfg.format == "json";
        SolverOptions sopt;
        sopt.strict = cfg.strict;

        if (*ss_list) {
            auto js = supersingular_j_list(p);
            if (json) {
                out << nlohmann::json{{"p", p}, {"j", js}}.dump() << "\n";
            } else {
                out << "j\n";
                for (u64 v : js)
                    out << v << "\n";
            }
            return ExitOk;
        }

        if (*qj) {
            std::vector<QjRecord> recs;
            if (!qj_j->empty())
                recs.push_back(qj_for_j(p, j, sopt));
            else
                recs = qj_table(p, sopt);
            if (json) {
                nlohmann::json arr = nlohmann::json::array();
                for (const auto& r : recs)
                    arr.push_back({{"j", r.j}, {"q", r.q}, {"kind", to_string(r.kind)}});
                out << nlohmann::json{{"p", p}, {"strict", cfg.strict}, {"records", arr}}.dump() << "\n";
            } else {
                out << "j,q,kind\n";
                for (const auto& r : recs)
                    out << r.j << "," << r.q << "," << to_string(r.kind) << "\n";
            }
            return ExitOk;
        }

        if (*mp) {
            std::vector<u64> ps;
            if (!mp_p->empty()) {
                if (!is_prime(p) || p <= 3)
                    throw ArgumentError("mp: --p must be a prime > 3");
                ps.push_back(p);
            } else if (!mp_r->empty()) {
                if (prange[0] > prange[1])
                    throw ArgumentError("mp: empty --p-range");
                ps = primes_in_range(prange[0], prange[1]);
            } else {
                throw ArgumentError("mp: one of --p or --p-range is required");
            }
            std::map<u64, u64> expect;
            if (!check_path.empty())
                expect = read_mp_table(check_path);
            if (cfg.strict)
                err << "strict mode: results may differ from the published sweep\n";
            nlohmann::json rows = nlohmann::json::array();
            if (!json)
                out << mp_csv_header() << "\n";
            int mismatches = 0;
            for (std::size_t i = 0; i < ps.size(); ++i) {
                auto res = compute_Mp(ps[i], sopt);
                if (ps.size() > 1)
                    err << "[" << (i + 1) << "/" << ps.size() << "] p=" << ps[i] << " M=" << res.M << "\n";
                for (const auto& s : res.skipped_q)
                    err << "p=" << ps[i] << ": skipped q=" << s.q << " (" << s.reason << ")\n";
                if (json) {
                    nlohmann::json skipped = nlohmann::json::array();
                    for (const auto& s : res.skipped_q)
                        skipped.push_back({{"q", s.q}, {"reason", s.reason}});
                    rows.push_back({{"p", ps[i]}, {"M", res.M}, {"strict", cfg.strict}, {"skipped_q", skipped}});
                } else {
                    out << mp_csv_row(ps[i], res.M) << "\n";
                }
                auto it = expect.find(ps[i]);
                if (it != expect.end() && it->second != res.M) {
                    ++mismatches;
                    err << "mismatch at p=" << ps[i] << ": computed " << res.M << ", table " << it->second << "\n";
                }
            }
            if (json)
                out << rows.dump() << "\n";
            return mismatches ? ExitVerification : ExitOk;
        }

        if (*nbh) {
            JInvariant jv;
            if (!nbh_a->empty()) {
                jv = JInvariant{j_invariant(Curve{p, a % p, b % p}), 0};
                if (!is_supersingular(Curve{p, a % p, b % p}))
                    throw ArgumentError("neighborhood: y^2 = x^3 + " + std::to_string(a) + "x + " + std::to_string(b) +
                                        " is ordinary over F_" + std::to_string(p));
            } else if (!nbh_j->empty()) {
                jv = JInvariant{j % p, 0};
            } else {
                throw ArgumentError("neighborhood: give --j or --a/--b");
            }
            out << neighborhood_to_json(neighborhood(jv, ell, p)).dump() << "\n";
            return ExitOk;
        }

        if (*vt) {
            std::vector<QjRecord> recs;
            if (!vt_j->empty())
                recs.push_back(qj_for_j(p, j, sopt));
            else
                recs = qj_table(p, sopt);
            int failures = 0;
            nlohmann::json arr = nlohmann::json::array();
            if (!json)
                out << "j,q,kind,verdict,loops,expected_loops,distinct_neighbors,expected_neighbors,fp_neighbors,"
                       "expected_fp\n";
            for (const auto& r : recs) {
                if (r.j == 0 || r.j == 1728 % p)
                    continue;
                auto c = verify_theorem1(p, ell, JInvariant{r.j, 0}, r.q, r.kind);
                if (c.verdict == Verdict::Fail)
                    ++failures;
                if (json) {
                    arr.push_back({{"j", r.j},
                                   {"q", r.q},
                                   {"kind", to_string(r.kind)},
                                   {"verdict", to_string(c.verdict)},
                                   {"loops", c.report.loops},
                                   {"expected_loops", c.expected_loops},
                                   {"distinct_neighbors", c.distinct_neighbors},
                                   {"expected_neighbors", c.expected_neighbors},
                                   {"fp_neighbors", c.report.fp_rational.size()},
                                   {"expected_fp", c.expected_fp}});
                } else {
                    out << r.j << "," << r.q << "," << to_string(r.kind) << "," << to_string(c.verdict) << ","
                        << c.report.loops << "," << c.expected_loops << "," << c.distinct_neighbors << ","
                        << c.expected_neighbors << "," << c.report.fp_rational.size() << "," << c.expected_fp
                        << "\n";
                }
            }
            if (json)
                out << arr.dump() << "\n";
            return failures ? ExitVerification : ExitOk;
        }

        if (*hil) {
            std::vector<std::string> coeffs;
            if (!hil_m->empty()) {
                if (modulus < 2)
                    throw ArgumentError("hilbert: --mod must be at least 2");
                mpz_class m(static_cast<unsigned long>(modulus));
                for (const auto& c : hilbert_class_poly_shared(disc)->coefficients) {
                    mpz_class r = c % m;
                    if (r < 0)
                        r += m;
                    coeffs.push_back(r.get_str());
                }
            } else {
                for (const auto& c : hilbert_class_poly_shared(disc)->coefficients)
                    coeffs.push_back(c.get_str());
            }
            if (json) {
                nlohmann::json o{{"discriminant", disc}, {"coefficients", coeffs}};
                if (!hil_m->empty())
                    o["modulus"] = modulus;
                out << o.dump() << "\n";
            } else {
                out << "degree,coefficient\n";
                for (std::size_t k = 0; k < coeffs.size(); ++k)
                    out << k << "," << coeffs[k] << "\n";
            }
            return ExitOk;
        }

        if (*gr) {
            auto g = export_graph(p, ell);
            if (cfg.format == "dot")
                out << graph_to_dot(g);
            else if (json)
                out << graph_to_json(g).dump() << "\n";
            else
                out << graph_to_csv(g);
            return ExitOk;
        }

        if (*cheb) {
            if (!cheb_s->empty()) {
                auto r = thm_bound_search(p, parse_h_bound_mode(search_mode));
                nlohmann::json o{{"p", r.p},
                                 {"k", r.k},
                                 {"h_used", r.h_used},
                                 {"coefficient", r.coefficient},
                                 {"x_floor", r.x_floor},
                                 {"x_reference", r.x_reference},
                                 {"x", r.x},
                                 {"margin_at_reference", r.margin_at_reference}};
                if (json) {
                    out << o.dump() << "\n";
                } else {
                    out << "p,k,h_used,coefficient,x_floor,x_reference,x,margin_at_reference\n";
                    out << r.p << "," << r.k << "," << r.h_used << "," << r.coefficient << "," << r.x_floor << ","
                        << r.x_reference << "," << r.x << "," << r.margin_at_reference << "\n";
                }
                return ExitOk;
            }
            if (cheb_case->empty() || cheb_x->empty())
                throw ArgumentError("cheb: --case and --x are required unless --search is given");
            FieldCase fc = parse_field_case(field_case);
            u64 h = fc == FieldCase::Kzeta8 ? 1 : (h_override ? h_override : field_class_number(p));
            auto inv = field_invariants(p, fc, h);
            auto r = cheb_gap_bound(x, inv);
            if (json) {
                out << nlohmann::json{{"p", p},
                                      {"case", to_string(fc)},
                                      {"h", inv.h},
                                      {"n", inv.n},
                                      {"log_disc", inv.log_disc()},
                                      {"disc_is_upper_bound", inv.disc_is_upper_bound},
                                      {"x", r.x},
                                      {"main_term", r.main_term},
                                      {"error_term", r.error_term},
                                      {"lower_bound", r.lower_bound},
                                      {"positive", r.positive},
                                      {"coefficient", r.coefficient}}
                           .dump()
                    << "\n";
            } else {
                out << "x,main_term,error_term,lower_bound,positive,coefficient\n";
                out << r.x << "," << r.main_term << "," << r.error_term << "," << r.lower_bound << ","
                    << (r.positive ? "true" : "false") << "," << r.coefficient << "\n";
            }
            return ExitOk;
        }

        if (*nx) {
            u64 n = count_N(p, x);
            if (json)
                out << nlohmann::json{{"p", p}, {"x", x}, {"N", n}}.dump() << "\n";
            else
                out << "p,x,N\n" << p << "," << x << "," << n << "\n";
            return ExitOk;
        }
    } catch (const IncompleteResultError& e) {
        err << "error: " << e.what() << "\n";
        return ExitResource;
    } catch (const ArgumentError& e) {
        err << "error: " << e.what() << "\n";
        return ExitArgument;
    } catch (const CapabilityError& e) {
        err << "error: " << e.what() << "\n";
        return ExitArgument;
    } catch (const VerificationError& e) {
        err << "verification failed: " << e.what() << "\n";
        return ExitVerification;
    } catch (const InternalError& e) {
        err << "internal error: " << e.what() << "\n";
        return ExitVerification;
    } catch (const ResourceError& e) {
        err << "error: " << e.what() << "\n";
        return ExitResource;
    } catch (const DataError& e) {
        err << "data error: " << e.what() << "\n";
        return ExitResource;
    }
    return ExitArgument;
}

inline int run_cli(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return run_cli(args, out, err);
}

} // namespace ssendo
