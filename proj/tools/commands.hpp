#pragma once

#include <chrono>
#include <cstdlib>
#include <future>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include <isingmaps/critical.hpp>
#include <isingmaps/mapcount.hpp>

namespace isingmaps::cli {

using json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string command;
    std::string nu = "1", c = "1";  // comma-separated lists allowed for radius sweeps
    int n_max = 10;
    int n_min = 0;                  // 0: n_max/2
    int n = 1;
    long precision_bits = 192;
    std::string tol;                // empty: per-command default
    std::string h;                  // finite-difference step; empty: automatic
    std::string format = "json";
    std::string out;
    bool symbolic = false, numeric = false, exact = false;
    bool allow_outside = false;
    bool thermo = false;
    bool finite = false;
    int terms = 3;
    int jobs = 1;
};

struct Output {
    json doc;
    std::vector<std::string> csv_header;
    std::vector<std::vector<std::string>> csv_rows;
    int exit_code = 0;
};

/// Default precision: ISINGMAPS_PRECISION if set, else 192 bits.
inline long default_precision() {
    if (const char* e = std::getenv("ISINGMAPS_PRECISION")) {
        try {
            long v = std::stol(e);
            if (v >= 16) return v;
        } catch (const std::exception&) {
        }
        throw UsageError(std::string("ISINGMAPS_PRECISION is not an integer >= 16: ") + e);
    }
    return 192;
}

inline Rational parse_q(const std::string& s, const char* what) {
    try {
        return parse_rational(s);
    } catch (const Error&) {
        throw UsageError(std::string("cannot parse ") + what + " '" + s + "' as an exact rational");
    }
}

inline std::vector<Rational> parse_list(const std::string& s, const char* what) {
    std::vector<Rational> r;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) r.push_back(parse_q(item, what));
    if (r.empty()) throw UsageError(std::string("empty ") + what);
    return r;
}

inline Rational single(const std::string& s, const char* what) {
    auto v = parse_list(s, what);
    if (v.size() != 1) throw UsageError(std::string(what) + " must be a single value for this command");
    return v[0];
}

inline int digits_for(long bits) { return std::max(10, int(double(bits) * 0.30103) - 3); }

inline std::string real_str(const Real& x, long bits) { return x.str(digits_for(bits)); }

inline std::string num_str(const Number& x, long bits) { return x.exact ? to_string(*x.exact) : real_str(x.value, bits); }

// ---------------------------------------------------------------- commands

inline Output cmd_coeffs(const RunConfig& cfg) {
    Output o;
    json rows = json::array();
    o.csv_header = {"n", "value"};
    if (cfg.n_max < 1) throw UsageError("--n-max must be >= 1");
    if (int(cfg.symbolic) + int(cfg.numeric) + int(cfg.exact) > 1)
        throw UsageError("--symbolic, --numeric and --exact are exclusive");
    std::string mode;
    if (cfg.symbolic) {
        mode = "symbolic";
        auto Z = solve_Z_symbolic(cfg.n_max);
        for (int n = 1; n <= cfg.n_max; ++n) rows.push_back({{"n", n}, {"value", Z[n].str()}});
    } else if (cfg.exact) {
        mode = "exact";
        const Rational nu = single(cfg.nu, "--nu"), c = single(cfg.c, "--c");
        IsingParams::point(nu, c);
        std::vector<Rational> Z;
        if (nu == 1) {
            auto sym = solve_Z_symbolic(cfg.n_max);
            for (int n = 0; n <= cfg.n_max; ++n) Z.push_back(sym[n].eval(nu, c));
        } else {
            Z = solve_Z(ModelPoint<Rational>{nu, c}, cfg.n_max).coeffs();
        }
        for (int n = 1; n <= cfg.n_max; ++n) rows.push_back({{"n", n}, {"value", to_string(Z[std::size_t(n)])}});
    } else {
        mode = "numeric";
        const Rational nu = single(cfg.nu, "--nu"), c = single(cfg.c, "--c");
        auto Z = coefficient_sequence(IsingParams::numeric(nu, c, cfg.precision_bits), cfg.n_max);
        for (int n = 1; n <= cfg.n_max; ++n)
            rows.push_back({{"n", n}, {"value", real_str(Z[std::size_t(n - 1)], cfg.precision_bits)}});
    }
    for (auto& r : rows) o.csv_rows.push_back({std::to_string(r["n"].get<int>()), r["value"].get<std::string>()});
    o.doc = {{"command", "coeffs"}, {"mode", mode}};
    if (mode != "symbolic") {
        o.doc["nu"] = to_string(single(cfg.nu, "--nu"));
        o.doc["c"] = to_string(single(cfg.c, "--c"));
    }
    o.doc["n_max"] = cfg.n_max;
    if (mode == "numeric") o.doc["precision_bits"] = cfg.precision_bits;
    o.doc["coefficients"] = rows;
    return o;
}

inline Output cmd_enumerate(const RunConfig& cfg) {
    auto r = enumerate_maps(cfg.n, cfg.jobs);
    Output o;
    json genus = json::object();
    for (auto& [g, k] : r.genus_histogram) genus[std::to_string(g)] = k;
    const bool agrees = r.Z == solve_Z_symbolic(cfg.n)[cfg.n];
    o.doc = {{"command", "enumerate"},   {"n", cfg.n},
             {"Z", r.Z.str()},           {"maps", to_string(r.rooted_maps)},
             {"matchings", r.matchings}, {"connected", r.connected},
             {"planar", r.planar},       {"genus_histogram", genus},
             {"edge_balance_ok", r.edge_balance_ok}, {"matches_series", agrees}};
    o.csv_header = {"key", "value"};
    o.csv_rows = {{"n", std::to_string(cfg.n)}, {"Z", r.Z.str()}, {"maps", to_string(r.rooted_maps)}};
    if (!agrees) o.exit_code = 1;
    return o;
}

inline json radius_json(const SingularityReport& r, long bits) {
    json j = {{"nu", to_string(r.nu)},
              {"c", to_string(r.c)},
              {"rho", num_str(r.rho, bits)},
              {"mu", num_str(r.mu, bits)},
              {"s_at_rho", num_str(r.s_at_rho, bits)},
              {"exponent", r.exponent ? to_string(*r.exponent) : std::string()},
              {"rho_interval", {real_str(r.rho_lo, bits), real_str(r.rho_hi, bits)}},
              {"s_interval", {to_string(r.s_lo), to_string(r.s_hi)}},
              {"exact", r.rho.is_exact()},
              {"sturm_count", r.sturm_count},
              {"s_bound", to_string(r.bound)},
              {"residual_ok", r.residual_ok},
              {"uniqueness_checked", r.uniqueness_checked},
              {"min_modulus_gap", r.min_modulus_gap.str(6)},
              {"precision_bits", bits},
              {"warnings", r.warnings}};
    return j;
}

inline Output cmd_radius(const RunConfig& cfg) {
    auto nus = parse_list(cfg.nu, "--nu"), cs = parse_list(cfg.c, "--c");
    RadiusOptions opt;
    opt.tol = parse_q(cfg.tol.empty() ? "1e-30" : cfg.tol, "--tol");
    opt.allow_outside_region = cfg.allow_outside;
    std::vector<std::pair<Rational, Rational>> pts;
    for (auto& nu : nus)
        for (auto& c : cs) pts.push_back({nu, c});
    auto one = [&](std::size_t i) {
        IsingParams p = IsingParams::point(pts[i].first, pts[i].second);
        p.precision_bits = cfg.precision_bits;
        return radius_json(radius_numeric(p, opt), cfg.precision_bits);
    };
    std::vector<json> res(pts.size());
    if (cfg.jobs <= 1 || pts.size() == 1) {
        for (std::size_t i = 0; i < pts.size(); ++i) res[i] = one(i);
    } else {
        std::vector<std::future<json>> fs;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            fs.push_back(std::async(std::launch::async, one, i));
            if (fs.size() >= std::size_t(cfg.jobs)) {
                std::size_t base = i + 1 - fs.size();
                for (std::size_t k = 0; k < fs.size(); ++k) res[base + k] = fs[k].get();
                fs.clear();
            }
        }
        std::size_t base = pts.size() - fs.size();
        for (std::size_t k = 0; k < fs.size(); ++k) res[base + k] = fs[k].get();
    }
    Output o;
    o.csv_header = {"nu", "c", "rho", "mu", "exponent"};
    for (auto& r : res)
        o.csv_rows.push_back({r["nu"], r["c"], r["rho"], r["mu"], r["exponent"]});
    if (res.size() == 1) {
        o.doc = {{"command", "radius"}};
        o.doc.update(res[0]);
    } else {
        o.doc = {{"command", "radius"}, {"points", res}};
    }
    return o;
}

inline Output cmd_puiseux(const RunConfig& cfg) {
    IsingParams p = IsingParams::point(single(cfg.nu, "--nu"), single(cfg.c, "--c"));
    p.precision_bits = cfg.precision_bits;
    if (cfg.terms < 1) throw UsageError("--terms must be >= 1");
    auto bs = puiseux_at_rho(p, cfg.terms);
    const int d = std::min(30, digits_for(cfg.precision_bits));
    json branches = json::array();
    Output o;
    o.csv_header = {"branch", "exponent", "re", "im"};
    for (std::size_t i = 0; i < bs.size(); ++i) {
        json terms = json::array();
        for (auto& t : bs[i].terms) {
            terms.push_back({{"exponent", to_string(t.exponent)}, {"re", t.coefficient.re.str(d)}, {"im", t.coefficient.im.str(d)}});
            o.csv_rows.push_back({std::to_string(i), to_string(t.exponent), t.coefficient.re.str(d), t.coefficient.im.str(d)});
        }
        branches.push_back({{"ramification", bs[i].ramification},
                            {"multiplicity", bs[i].multiplicity},
                            {"terminates", bs[i].terminates},
                            {"residual_ok", bs[i].residual_ok},
                            {"terms", terms}});
    }
    auto e = smallest_fractional_exponent(bs);
    o.doc = {{"command", "puiseux"},
             {"nu", to_string(p.nu)},
             {"c", to_string(p.c)},
             {"center", {{"z", bs.front().center.first.re.str(d)}, {"S", bs.front().center.second.re.str(d)}}},
             {"coordinates", "z = rho - Z, S = S(rho) + y(Z)"},
             {"exponent", e ? to_string(*e) : std::string()},
             {"precision_bits", cfg.precision_bits},
             {"branches", branches}};
    return o;
}

inline Output cmd_observables(const RunConfig& cfg) {
    const Rational nu = single(cfg.nu, "--nu"), c = single(cfg.c, "--c");
    const long bits = cfg.precision_bits;
    IsingParams p = IsingParams::point(nu, c);
    p.precision_bits = bits;
    Output o;
    auto chi = chi_closed(nu, bits);
    o.doc = {{"command", "observables"}, {"nu", to_string(nu)}, {"c", to_string(c)},
             {"M0", num_str(m0_closed(nu, bits), bits)}, {"chi", chi ? num_str(*chi, bits) : std::string("inf")}};
    o.doc["F"] = real_str(free_energy(p).value, bits);
    if (cfg.thermo) {
        Rational h = cfg.h.empty() ? (c == 1 ? Rational(1, 10000) : Rational(abs(c - 1) / 8)) : parse_q(cfg.h, "--step");
        const Real tol = Real(parse_q(cfg.tol.empty() ? "1e-4" : cfg.tol, "--tol"), bits);
        auto m = thermo_magnetization(nu, c, h, tol, bits);
        o.doc["M"] = real_str(m.value, bits);
        o.doc["M_step_gap"] = m.step_gap.str(6);
        if (chi) {
            auto x = thermo_susceptibility(nu, c, h, tol, bits);
            o.doc["chi_thermo"] = real_str(x.value, bits);
        } else {
            o.doc["chi_thermo"] = "inf";
        }
        o.doc["h"] = to_string(h);
    }
    if (cfg.finite) {
        IsingParams q = cfg.numeric ? IsingParams::numeric(nu, c, bits) : p;
        auto f = finite_observables(cfg.n, q);
        o.doc["n"] = cfg.n;
        o.doc["F_n"] = num_str(f.F, bits);
        o.doc["M_n"] = num_str(f.M, bits);
        o.doc["chi_n"] = num_str(*f.chi, bits);
    }
    o.doc["precision_bits"] = bits;
    o.csv_header = {"key", "value"};
    for (auto& [k, v] : o.doc.items())
        if (v.is_string()) o.csv_rows.push_back({k, v.get<std::string>()});
    return o;
}

inline Output cmd_exponent_fit(const RunConfig& cfg) {
    const Rational nu = single(cfg.nu, "--nu"), c = single(cfg.c, "--c");
    const long bits = cfg.precision_bits;
    const int n_min = cfg.n_min > 0 ? cfg.n_min : std::max(2, cfg.n_max / 2);
    if (cfg.n_max < n_min + 4) throw UsageError("--n-max must exceed --n-min by at least 4");
    IsingParams p = IsingParams::numeric(nu, c, bits);
    RadiusOptions opt;
    opt.with_exponent = false;
    opt.with_uniqueness = false;
    opt.allow_outside_region = cfg.allow_outside;
    auto rep = radius_numeric(p, opt);
    auto Z = coefficient_sequence(p, cfg.n_max);
    auto f = exponent_fit(Z, rep.mu.value, n_min, cfg.n_max);
    Output o;
    o.doc = {{"command", "exponent-fit"},
             {"nu", to_string(nu)},
             {"c", to_string(c)},
             {"mu", num_str(rep.mu, bits)},
             {"exponent", f.alpha_exponent.str(8)},
             {"exponent_local", f.alpha_local.str(8)},
             {"exponent_aitken", f.alpha_aitken.str(8)},
             {"amplitude", f.amplitude.str(8)},
             {"residual", f.residual.str(4)},
             {"mu_estimate", real_str(f.mu_estimate, bits)},
             {"n_range", {f.n_min, f.n_max}},
             {"precision_bits", bits}};
    o.csv_header = {"key", "value"};
    for (auto& [k, v] : o.doc.items())
        if (v.is_string()) o.csv_rows.push_back({k, v.get<std::string>()});
    return o;
}

inline Output cmd_check(const RunConfig& cfg) {
    json checks = json::array();
    bool all = true;
    auto add = [&](const std::string& name, bool ok, const std::string& detail) {
        checks.push_back({{"name", name}, {"ok", ok}, {"detail", detail}});
        all = all && ok;
    };
    auto guarded = [&](const std::string& name, const std::function<std::pair<bool, std::string>()>& f) {
        try {
            auto [ok, d] = f();
            add(name, ok, d);
        } catch (const Error& e) {
            add(name, false, e.kind() + ": " + e.what());
        }
    };
    for (Rational nu : {Rational(2), Rational(5)}) {
        guarded("discriminant P1^3*P2*P3 at nu=" + to_string(nu) + ", c=1", [&] {
            auto d = discriminant_in_z(IsingParams::point(nu, 1));
            auto f = disc_factor_P1(nu) * disc_factor_P1(nu) * disc_factor_P1(nu) * disc_factor_P2(nu) * disc_factor_P3(nu);
            auto [q, r] = divmod(d, f);
            return std::make_pair(r.is_zero() && q.degree() <= 1, "quotient degree " + std::to_string(q.degree()));
        });
    }
    guarded("branch continuity at nu=4", [&] {
        bool ok = rho_branch_below(Rational(2)) == rho_branch_above(Rational(4)) &&
                  s_branch_below(Rational(2)) == s_branch_above(Rational(4)) &&
                  rho_branch_above(Rational(4)) == Rational(2, 405) && s_branch_above(Rational(4)) == Rational(1, 45);
        return std::make_pair(ok, std::string("rho = 2/405, S(rho) = 1/45"));
    });
    for (Rational nu : {Rational(1, 2), Rational(2), Rational(5)})
        for (Rational c : {Rational(9, 10), Rational(19, 20), Rational(1)}) {
            guarded("Sturm count of Q2 at nu=" + to_string(nu) + ", c=" + to_string(c), [&] {
                auto Q2 = char_factors(IsingParams::point(nu, c)).Q2;
                const Rational u = 1 - nu * nu;
                int k = sturm_count(Q2, 0, Rational(1) / (3 * c * c * (u < 0 ? Rational(-u) : u)));
                return std::make_pair(k == 1, "count " + std::to_string(k));
            });
        }
    for (Rational nu : {Rational(1, 4), Rational(1, 2), Rational(2), Rational(5), Rational(9)}) {
        guarded("radius vs closed form at nu=" + to_string(nu) + ", c=1", [&] {
            IsingParams p = IsingParams::point(nu, 1);
            p.precision_bits = cfg.precision_bits;
            auto r = radius_numeric(p);
            auto rc = rho_closed_form(nu, cfg.precision_bits), sc = s_at_rho_closed_form(nu, cfg.precision_bits);
            const Real tol = Real::from_double(1e-10, cfg.precision_bits);
            bool ok = abs(r.rho.value - rc.value) < tol * rc.value && abs(r.s_at_rho.value - sc.value) < tol * sc.value;
            if (rc.exact) ok = ok && r.rho.exact == rc.exact && r.s_at_rho.exact == sc.exact;
            ok = ok && r.residual_ok;
            return std::make_pair(ok, "rho = " + num_str(r.rho, 64) + ", exponent " + to_string(*r.exponent));
        });
    }
    guarded("series vs enumeration, n <= 3", [&] {
        auto Z = solve_Z_symbolic(3);
        bool ok = true;
        for (int n = 1; n <= 3; ++n) ok = ok && bruteforce_Z(n) == Z[n];
        return std::make_pair(ok, std::string("Z_1..Z_3"));
    });
    guarded("closed-form observables", [&] {
        bool ok = m0_closed(4).exact == Rational(0) && m0_closed(5).exact == Rational(45, 67) &&
                  chi_closed(1)->exact == Rational(1) && !chi_closed(4);
        return std::make_pair(ok, std::string("M0(4)=0, M0(5)=45/67, chi(1)=1, chi(4)=inf"));
    });
    Output o;
    o.doc = {{"command", "check"}, {"ok", all}, {"precision_bits", cfg.precision_bits}, {"checks", checks}};
    o.csv_header = {"name", "ok", "detail"};
    for (auto& c : checks)
        o.csv_rows.push_back({c["name"], c["ok"].get<bool>() ? "true" : "false", c["detail"]});
    o.exit_code = all ? 0 : 1;
    return o;
}

inline Output dispatch(const RunConfig& cfg) {
    if (cfg.command == "coeffs") return cmd_coeffs(cfg);
    if (cfg.command == "enumerate") return cmd_enumerate(cfg);
    if (cfg.command == "radius") return cmd_radius(cfg);
    if (cfg.command == "puiseux") return cmd_puiseux(cfg);
    if (cfg.command == "observables") return cmd_observables(cfg);
    if (cfg.command == "exponent-fit") return cmd_exponent_fit(cfg);
    if (cfg.command == "check") return cmd_check(cfg);
    throw UsageError("unknown command '" + cfg.command + "'");
}

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string r = "\"";
    for (char ch : s) r += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return r + "\"";
}

inline std::string render(const Output& o, const std::string& format) {
    if (format == "csv") {
        std::string s;
        for (std::size_t i = 0; i < o.csv_header.size(); ++i) s += (i ? "," : "") + o.csv_header[i];
        s += "\n";
        for (auto& row : o.csv_rows) {
            for (std::size_t i = 0; i < row.size(); ++i) s += (i ? "," : "") + csv_field(row[i]);
            s += "\n";
        }
        return s;
    }
    return o.doc.dump(2) + "\n";
}

inline json error_json(const std::string& kind, const std::string& msg) {
    return {{"error", {{"kind", kind}, {"message", msg}}}};
}

/// Runs one command; returns the exit code (0 ok, 1 computational error, 2 usage error).
inline int execute(RunConfig cfg, std::string& stdout_text, std::string& stderr_text) {
    try {
        if (cfg.format != "json" && cfg.format != "csv") throw UsageError("--format must be json or csv");
        const auto t0 = std::chrono::steady_clock::now();
        Real::PrecisionGuard guard(cfg.precision_bits);
        Output o = dispatch(cfg);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        o.doc["timing_s"] = secs;
        stdout_text = render(o, cfg.format);
        return o.exit_code;
    } catch (const UsageError& e) {
        stderr_text = error_json("UsageError", e.what()).dump(2) + "\n";
        return 2;
    } catch (const Error& e) {
        stdout_text = error_json(e.kind(), e.what()).dump(2) + "\n";
        return 1;
    } catch (const std::exception& e) {
        stdout_text = error_json("InternalError", e.what()).dump(2) + "\n";
        return 1;
    }
}

} // namespace isingmaps::cli
