// Command-line front end: exact single values, CSV tables, identity
// verification runs, and truncated p-adic experiments.

#include <CLI11.hpp>

#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "qeuler/euler_classical.hpp"
#include "qeuler/verify.hpp"

using namespace qeuler;

namespace {

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

DirichletChar parse_char(const std::string& spec, unsigned d) {
    if (spec == "trivial") return DirichletChar::trivial(d);
    if (spec == "quadratic") return DirichletChar::quadratic(d);
    if (spec.rfind("index:", 0) == 0) {
        unsigned idx = static_cast<unsigned>(std::stoul(spec.substr(6)));
        auto all = DirichletChar::enumerate(d);
        if (idx >= all.size()) throw std::invalid_argument("character index out of range (phi(d) characters)");
        return all[idx];
    }
    throw std::invalid_argument("bad --chi value '" + spec + "' (trivial | quadratic | index:<j>)");
}

// "a:b" inclusive range, or a single value.
std::vector<long> parse_range(const std::string& s) {
    std::size_t colon = s.find(':');
    if (colon == std::string::npos) return {std::stol(s)};
    long a = std::stol(s.substr(0, colon));
    long b = std::stol(s.substr(colon + 1));
    std::vector<long> out;
    for (long v = a; v <= b; ++v) out.push_back(v);
    return out;
}

// Cyclotomic values serialize as JSON objects; quote any cell that would
// break the CSV framing.
std::string csv_cell(const std::string& v) {
    if (v.find_first_of(",\"\n") == std::string::npos) return v;
    std::string out = "\"";
    for (char c : v) {
        if (c == '"') out += '"';
        out += c;
    }
    out += "\"";
    return out;
}

// "x^k", "x", or a comma list of coefficients (ascending degree).
std::vector<Rat> parse_poly(const std::string& s) {
    if (s == "x") return {Rat(0), Rat(1)};
    if (s.rfind("x^", 0) == 0) {
        unsigned deg = static_cast<unsigned>(std::stoul(s.substr(2)));
        std::vector<Rat> c(deg + 1, Rat(0));
        c[deg] = 1;
        return c;
    }
    std::vector<Rat> c;
    for (const std::string& part : split_list(s)) c.push_back(rat_from_string(part));
    if (c.empty()) throw std::invalid_argument("empty polynomial");
    return c;
}

struct ComputeArgs {
    std::string which = "k1";
    unsigned n = 0;
    int h = 0;
    unsigned k = 1;
    unsigned d = 1;
    std::string chi = "trivial";
    long x = 0;
    std::string q = "1/2";
    unsigned m = 0;
    unsigned trunc = kDefaultTruncation;
};

std::string compute_value(const ComputeArgs& a) {
    DirichletChar chi = parse_char(a.chi, a.d);
    if (a.which == "classical") return scalar_to_string(euler_generalized(a.n, chi, a.x, a.trunc));
    if (a.which == "classical_k")
        return scalar_to_string(euler_generalized_order_k(a.n, a.k, chi, a.x, a.trunc));
    QEulerParams P{a.n, a.h, a.k, chi, a.x, rat_from_string(a.q)};
    if (a.which == "k1") return scalar_to_string(qe_k1(P));
    if (a.which == "order_k") return scalar_to_string(qe_order_k(P));
    if (a.which == "hk") return scalar_to_string(qe_hk(P));
    if (a.which == "kk") return scalar_to_string(qe_kk(P));
    if (a.which == "h1") return scalar_to_string(qe_h1(P));
    if (a.which == "moment_lhs") return scalar_to_string(moment_lhs(a.m, P));
    if (a.which == "moment_rhs") return scalar_to_string(moment_rhs(a.m, P));
    throw std::invalid_argument("bad --which value '" + a.which + "'");
}

int run_verify(const std::string& identity, const GridSpec& grid, const std::string& out_path) {
    std::vector<std::string> names;
    if (identity == "all")
        names = identity_names();
    else
        names.push_back(identity);
    Json out;
    out["grid"] = grid.to_json();
    Json reports = Json::array();
    bool asserted_ok = true;
    for (const std::string& name : names) {
        IdentityReport rep = run_identity(name, grid);
        reports.push_back(rep.to_json());
        if (rep.asserted && !rep.all_hold) asserted_ok = false;
        std::cerr << name << ": " << (rep.asserted ? (rep.all_hold ? "ok" : "FAILED") : "reported");
        for (const std::string& v : rep.verdicts) std::cerr << "\n  " << v;
        std::cerr << "\n";
    }
    out["reports"] = reports;
    out["all_asserted_hold"] = asserted_ok;
    std::string text = out.dump(2) + "\n";
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
    } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open output file " + out_path);
        f << text;
    }
    return asserted_ok ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact q-deformed higher-order Euler numbers/polynomials: values, tables, identity verification, p-adic experiments"};
    app.require_subcommand(1);
    app.set_help_flag("--help", "print help");  // keep --h free for the weight parameter
    app.set_config("--config", "", "TOML config file (see config/default_grid.toml)");

    // ---- compute ----
    ComputeArgs ca;
    CLI::App* compute = app.add_subcommand("compute", "print one exact value");
    compute->set_help_flag("--help", "print help");
    compute->add_option("--which", ca.which,
                        "k1 | order_k | hk | kk | h1 | classical | classical_k | moment_lhs | moment_rhs");
    compute->add_option("--n", ca.n, "degree index");
    compute->add_option("--h", ca.h, "weight");
    compute->add_option("--k", ca.k, "order");
    compute->add_option("--d", ca.d, "character modulus (odd)");
    compute->add_option("--chi", ca.chi, "trivial | quadratic | index:<j>");
    compute->add_option("--x", ca.x, "argument");
    compute->add_option("--q", ca.q, "deformation parameter, as p/q");
    compute->add_option("--m", ca.m, "moment index (moment_lhs/rhs)");
    compute->add_option("--trunc", ca.trunc, "series truncation order (classical)");

    // ---- table ----
    struct {
        std::string which = "k1";
        std::string n = "0:4", h = "0", k = "1", d = "1", x = "0";
        std::string q = "1/2";
        std::string chi = "trivial";
        std::string out;
    } ta;
    CLI::App* table = app.add_subcommand("table", "CSV table over parameter ranges");
    table->set_help_flag("--help", "print help");
    table->add_option("--which", ta.which, "quantity, as in compute");
    table->add_option("--n", ta.n, "range a:b or single value");
    table->add_option("--h", ta.h, "range or value");
    table->add_option("--k", ta.k, "range or value");
    table->add_option("--d", ta.d, "range or value (odd values only are used)");
    table->add_option("--x", ta.x, "range or value");
    table->add_option("--q", ta.q, "comma list of rationals");
    table->add_option("--chi", ta.chi, "trivial | quadratic | index:<j>");
    table->add_option("--out", ta.out, "output file (default stdout)");

    // ---- verify ----
    struct {
        std::string identity = "all";
        std::string grid = "default";
        std::string out;
        GridSpec spec = GridSpec::defaults();
        std::string dvals, dvals_exact, qvals, xvals, xvals_exact, pvals;
    } va;
    CLI::App* verify = app.add_subcommand("verify", "run identity checks over a grid, emit a JSON report");
    verify->set_help_flag("--help", "print help");
    verify->add_option("--identity", va.identity, "identity name or 'all'")
        ->check(CLI::IsMember([] {
            std::vector<std::string> v = identity_names();
            v.push_back("all");
            return v;
        }()));
    verify->add_option("--grid", va.grid, "default | small")->check(CLI::IsMember({"default", "small"}));
    verify->add_option("--out", va.out, "report file (default stdout)");
    verify->add_option("--nmax", va.spec.n_max, "override: max n");
    verify->add_option("--kmax", va.spec.k_max, "override: max k");
    verify->add_option("--hmin", va.spec.h_min, "override: min h");
    verify->add_option("--hmax", va.spec.h_max, "override: max h");
    verify->add_option("--mmax", va.spec.m_max, "override: max moment index");
    verify->add_option("--padic-M", va.spec.padic_M, "override: p-adic comparison precision");
    verify->add_option("--dvals", va.dvals, "override: comma list of d");
    verify->add_option("--dvals-exact", va.dvals_exact, "override: comma list of d, exact identities");
    verify->add_option("--qvals", va.qvals, "override: comma list of q");
    verify->add_option("--xvals", va.xvals, "override: comma list of x");
    verify->add_option("--xvals-exact", va.xvals_exact, "override: comma list of x, exact identities");
    verify->add_option("--pvals", va.pvals, "override: comma list of primes");

    // ---- padic ----
    struct {
        std::string exp = "witt";
        unsigned p = 3, M = 3, N = 5;
        unsigned n = 1, k = 1, d = 1, m = 0;
        std::optional<int> h;
        long x = 0;
        long u = 1;
        std::string chi = "trivial";
        std::string f = "x";
        unsigned shift = 1;
    } pa;
    CLI::App* padic = app.add_subcommand("padic", "truncated fermionic integral experiments");
    padic->set_help_flag("--help", "print help");
    padic->add_option("--exp", pa.exp, "witt | witt_multi | qwitt | hkwitt | moment | shift")
        ->check(CLI::IsMember({"witt", "witt_multi", "qwitt", "hkwitt", "moment", "shift"}));
    padic->add_option("--p", pa.p, "odd prime");
    padic->add_option("--M", pa.M, "comparison precision (mod p^M)");
    padic->add_option("--N", pa.N, "truncation level (d p^N terms per variable)");
    padic->add_option("--n", pa.n, "monomial degree");
    padic->add_option("--k", pa.k, "number of variables");
    padic->add_option("--d", pa.d, "character modulus");
    padic->add_option("--m", pa.m, "moment index");
    padic->add_option("--h", pa.h, "weight (hkwitt)");
    padic->add_option("--x", pa.x, "argument shift");
    padic->add_option("--u", pa.u, "q = 1 + p*u");
    padic->add_option("--chi", pa.chi, "trivial | quadratic | index:<j> (real-valued required)");
    padic->add_option("--f", pa.f, "polynomial for shift: x^k or comma coefficients");
    padic->add_option("--shift", pa.shift, "shift amount");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*compute) {
            std::cout << compute_value(ca) << "\n";
            return 0;
        }
        if (*table) {
            std::vector<long> ns = parse_range(ta.n), hs = parse_range(ta.h), ks = parse_range(ta.k),
                              ds = parse_range(ta.d), xs = parse_range(ta.x);
            std::vector<Rat> qs;
            for (const std::string& s : split_list(ta.q)) qs.push_back(rat_from_string(s));
            double total = static_cast<double>(ns.size()) * hs.size() * ks.size() * ds.size() * xs.size() *
                           static_cast<double>(qs.size());
            if (total > 1e5) throw std::invalid_argument("table: grid exceeds 1e5 evaluations");
            std::ostringstream csv;
            csv << "n,h,k,d,x,q,value\n";
            for (long n : ns)
                for (long h : hs)
                    for (long k : ks)
                        for (long d : ds) {
                            if (d % 2 == 0) continue;
                            for (long x : xs)
                                for (const Rat& q : qs) {
                                    ComputeArgs one;
                                    one.which = ta.which;
                                    one.n = static_cast<unsigned>(n);
                                    one.h = static_cast<int>(h);
                                    one.k = static_cast<unsigned>(k);
                                    one.d = static_cast<unsigned>(d);
                                    one.chi = ta.chi;
                                    one.x = x;
                                    one.q = rat_to_string(q);
                                    csv << n << "," << h << "," << k << "," << d << "," << x << ","
                                        << numerator(q) << "/" << denominator(q) << ","
                                        << csv_cell(compute_value(one)) << "\n";
                                }
                        }
            if (ta.out.empty()) {
                std::cout << csv.str();
            } else {
                std::ofstream f(ta.out, std::ios::binary);
                f << csv.str();
            }
            return 0;
        }
        if (*verify) {
            GridSpec grid = va.grid == "small" ? GridSpec::small() : GridSpec::defaults();
            // explicit overrides win over the named grid
            if (verify->count("--nmax")) grid.n_max = va.spec.n_max;
            if (verify->count("--kmax")) grid.k_max = va.spec.k_max;
            if (verify->count("--hmin")) grid.h_min = va.spec.h_min;
            if (verify->count("--hmax")) grid.h_max = va.spec.h_max;
            if (verify->count("--mmax")) grid.m_max = va.spec.m_max;
            if (verify->count("--padic-M")) grid.padic_M = va.spec.padic_M;
            auto parse_unsigned_list = [](const std::string& s) {
                std::vector<unsigned> v;
                for (const std::string& part : split_list(s)) v.push_back(static_cast<unsigned>(std::stoul(part)));
                return v;
            };
            auto parse_long_list = [](const std::string& s) {
                std::vector<long> v;
                for (const std::string& part : split_list(s)) v.push_back(std::stol(part));
                return v;
            };
            if (!va.dvals.empty()) grid.d_vals = parse_unsigned_list(va.dvals);
            if (!va.dvals_exact.empty()) grid.d_vals_exact = parse_unsigned_list(va.dvals_exact);
            if (!va.xvals.empty()) grid.x_vals = parse_long_list(va.xvals);
            if (!va.xvals_exact.empty()) grid.x_vals_exact = parse_long_list(va.xvals_exact);
            if (!va.pvals.empty()) grid.p_vals = parse_unsigned_list(va.pvals);
            if (!va.qvals.empty()) {
                grid.q_vals.clear();
                for (const std::string& s : split_list(va.qvals)) grid.q_vals.push_back(rat_from_string(s));
            }
            return run_verify(va.identity, grid, va.out);
        }
        if (*padic) {
            DirichletChar chi = parse_char(pa.chi, pa.d);
            PadicContext ctx(pa.p, pa.M, pa.N);
            Json out;
            out["p"] = pa.p;
            out["M"] = pa.M;
            out["N"] = pa.N;
            out["d"] = pa.d;
            out["chi"] = chi.label();
            out["k"] = pa.k;
            if (pa.exp == "shift") {
                std::vector<Rat> poly = parse_poly(pa.f);
                ShiftIdentityReport rep = shift_identity_check(poly, pa.shift, ctx);
                out["integrand"] = pa.f;
                out["shift"] = pa.shift;
                out["lhs"] = rat_to_string(rep.lhs);
                out["rhs"] = rat_to_string(rep.rhs);
                out["valuation_floor"] = rep.residual_zero ? Json("inf") : Json(rep.valuation);
                out["match"] = rep.passes;
                std::cout << out.dump(2) << "\n";
                return rep.passes ? 0 : 3;
            }
            PadicValue sum{0, 0};
            Rat oracle;
            Rat q = Rat(1 + static_cast<long>(pa.p) * pa.u);
            if (pa.exp == "witt") {
                out["integrand"] = "chi(y) (y+x)^n";
                sum = fermionic_sum_X([&](long j) { return rat_pow(Rat(j + pa.x), pa.n); }, chi, ctx, pa.d);
                oracle = euler_generalized(pa.n, chi, pa.x).rat_value();
            } else if (pa.exp == "witt_multi") {
                out["integrand"] = "prod chi(y_i) (sum y_i + x)^n";
                sum = fermionic_sum_multi(pa.k, make_power_integrand(ctx, pa.n, pa.x), chi, ctx, pa.d);
                oracle = euler_generalized_order_k(pa.n, pa.k, chi, pa.x).rat_value();
            } else if (pa.exp == "qwitt") {
                out["integrand"] = "prod chi(y_i) [sum y_i + x]_q^n";
                out["q"] = rat_to_string(q);
                sum = fermionic_sum_multi(pa.k, make_qpower_integrand(ctx, pa.n, pa.x, pa.u), chi, ctx, pa.d);
                QEulerParams P{pa.n, 0, pa.k, chi, pa.x, q};
                oracle = qe_order_k(P).rat_value();
            } else if (pa.exp == "hkwitt") {
                int h = pa.h.value_or(2);
                out["integrand"] = "prod chi(y_i) q^{sum (h-i) y_i} [sum y_i + x]_q^n";
                out["q"] = rat_to_string(q);
                out["h"] = h;
                sum = fermionic_sum_multi(pa.k, make_qpower_integrand(ctx, pa.n, pa.x, pa.u, h), chi, ctx, pa.d);
                QEulerParams P{pa.n, h, pa.k, chi, pa.x, q};
                oracle = qe_hk(P).rat_value();
            } else {  // moment
                out["integrand"] = "prod chi(y_i) q^{sum (m-i) y_i + m x}";
                out["q"] = rat_to_string(q);
                out["m"] = pa.m;
                sum = fermionic_sum_multi(pa.k, make_moment_integrand(ctx, pa.m, pa.x, pa.u), chi, ctx, pa.d);
                QEulerParams P{0, 0, pa.k, chi, pa.x, q};
                oracle = moment_lhs(pa.m, P).rat_value();
            }
            PadicValue want = padic_reduce(oracle, ctx);
            out["residue"] = sum.residue;
            out["valuation_floor"] = sum.valuation_floor;
            out["oracle"] = rat_to_string(oracle);
            out["oracle_residue"] = want.residue;
            out["match"] = sum.residue == want.residue;
            std::cout << out.dump(2) << "\n";
            return sum.residue == want.residue ? 0 : 3;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
