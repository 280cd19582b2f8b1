#pragma once

// Subcommand table, run configuration and dispatch for the sumprod tool.
// dispatch() never touches argv, so tests can drive it directly.

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "sumprod/serialize.hpp"

namespace sumprod::cli {

enum class Format { json, csv, text };

inline std::optional<Format> parse_format(std::string_view s) {
    if (s == "json") return Format::json;
    if (s == "csv") return Format::csv;
    if (s == "text") return Format::text;
    return std::nullopt;
}

struct Caps {
    std::uint64_t max_set = kDefaultMaxSetSize;
    std::uint64_t max_space = kDefaultMaxSpace;
    std::uint64_t max_mem_keys = kDefaultMaxMemKeys;
};

struct RunConfig {
    std::string subcommand;
    std::map<std::string, std::string> params;
    std::uint64_t seed = 0;
    Format format = Format::json;
    Caps caps;
    bool timing = false;
};

struct ParamSpec {
    std::string name;
    std::string default_value;  // empty: no default
    std::string help;
    bool required = false;
};

struct SubcommandSpec {
    std::string name;
    std::string help;
    std::vector<ParamSpec> params;
    bool csv = false;
};

namespace detail {

inline std::vector<ParamSpec> with_set_params(std::vector<ParamSpec> extra, const std::string& n_default) {
    std::vector<ParamSpec> p{
        {"set", "ap", "instance family: ap, gp, random or list"},
        {"n", n_default, "set size"},
        {"start", "", "first element (ap: x, gp: 1)"},
        {"diff", "1", "ap common difference"},
        {"ratio", "x", "gp common ratio"},
        {"elems", "", "comma separated polynomials for --set list"},
        {"deg-max", "2", "random set: maximum degree"},
        {"height", "3", "random set: coefficient bound"},
    };
    p.insert(p.end(), extra.begin(), extra.end());
    return p;
}

}  // namespace detail

inline const std::vector<SubcommandSpec>& subcommands() {
    static const std::vector<SubcommandSpec> table{
        {"mason", "ABC check of A + B = C with the divisibility witness",
         {{"A", "", "polynomial A", true}, {"B", "", "polynomial B", true}}},
        {"wronskian", "Wronskian determinant and dependence certificate of a family",
         {{"fs", "", "comma separated polynomials", true}}},
        {"matchings", "cancellation matching of a matrix of M-th powers",
         {{"rows", "", "rows separated by ';', entries by ','", true}, {"M", "1", "exponent applied to every entry"}}},
        {"growth", "sumset, product set and iterated growth table",
         detail::with_set_params({{"l-max", "3", "largest l in the table"}}, "8"), true},
        {"fermat-poly", "exhaustive search for sum eps_i f_i^m = 0 over integer polynomials",
         {{"k", "3", "number of terms (2..4)"},
          {"m", "3", "exponent"},
          {"deg-max", "2", "maximum base degree"},
          {"height", "3", "coefficient bound"},
          {"signs", "all", "'all' or a pattern such as ++-"},
          {"monic", "false", "restrict bases to monic polynomials"}}},
        {"fermat-int", "meet-in-the-middle search for sum eps_i x_i^m = 0 over 1..H",
         {{"k", "4", "number of terms (2..6)"},
          {"m", "3", "exponent"},
          {"H", "12", "largest base"},
          {"signs", "++--", "sign pattern"}}},
        {"replay", "pairs, pairing, quadruples, extraction and matrix audits on a set",
         detail::with_set_params({{"M", "2", "exponent"},
                                  {"eps", "1/4", "epsilon in the n^(1-eps)/40 cutoff"},
                                  {"gamma-limit", "64", "number of four-row selections to audit"}},
                                 "12")},
        {"averaging", "averaging extraction for R = {p^M : p in S^t} against S",
         detail::with_set_params({{"M", "1", "exponent"}, {"t", "1", "number of factors"}}, "4")},
        {"saturation", "sizes of S^j and the first t with |S^t|^(1+eps) >= |S^(Mt+1)|",
         detail::with_set_params({{"M", "2", "exponent"}, {"l-max", "8", "largest power computed"}, {"eps", "1", "epsilon"}},
                                 "4")},
    };
    return table;
}

inline const SubcommandSpec* find_subcommand(std::string_view name) {
    const auto& t = subcommands();
    const auto it = std::find_if(t.begin(), t.end(), [&](const SubcommandSpec& s) { return s.name == name; });
    return it == t.end() ? nullptr : &*it;
}

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitCap = 3;

namespace detail {

class Params {
public:
    Params(const SubcommandSpec& spec, const std::map<std::string, std::string>& given) {
        for (const auto& [k, v] : given) {
            const bool known = std::any_of(spec.params.begin(), spec.params.end(), [&](const auto& p) { return p.name == k; });
            require(known, "unknown parameter '" + k + "' for " + spec.name);
        }
        for (const auto& p : spec.params) {
            const auto it = given.find(p.name);
            if (it != given.end())
                values_.emplace_back(p.name, it->second);
            else if (p.required)
                throw Error(Errc::precondition, "missing required parameter --" + p.name);
            else
                values_.emplace_back(p.name, p.default_value);
        }
    }

    const std::string& str(const std::string& k) const {
        for (const auto& [n, v] : values_)
            if (n == k) return v;
        throw Error(Errc::precondition, "no parameter " + k);
    }

    unsigned long num(const std::string& k) const {
        const std::string& s = str(k);
        unsigned long v = 0;
        const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        require(ec == std::errc{} && p == s.data() + s.size(), "--" + k + " expects a nonnegative integer, got '" + s + "'");
        return v;
    }

    unsigned u32(const std::string& k) const {
        const unsigned long v = num(k);
        require(v <= 0xFFFFFFFFUL, "--" + k + " is too large");
        return static_cast<unsigned>(v);
    }

    bool flag(const std::string& k) const {
        const std::string& s = str(k);
        require(s == "true" || s == "false", "--" + k + " expects true or false");
        return s == "true";
    }

    Rat rat(const std::string& k) const {
        try {
            return parse_rat(str(k));
        } catch (const ParseError& e) {
            throw Error(Errc::precondition, "--" + k + ": " + e.what());
        }
    }

    Poly poly(const std::string& k) const { return Poly::parse(str(k)); }

    std::vector<std::string> list(const std::string& k, char sep = ',') const {
        std::vector<std::string> out;
        std::string cur;
        for (char c : str(k)) {
            if (c == sep) {
                out.push_back(cur);
                cur.clear();
            } else {
                cur += c;
            }
        }
        out.push_back(cur);
        return out;
    }

    io::Json json() const {
        io::Json j = io::Json::object();
        for (const auto& [n, v] : values_) j[n] = v;
        return j;
    }

private:
    std::vector<std::pair<std::string, std::string>> values_;
};

inline std::vector<Poly> parse_poly_list(const std::vector<std::string>& items) {
    std::vector<Poly> out;
    for (const auto& s : items) out.push_back(Poly::parse(s));
    return out;
}

inline PolySet build_set(const Params& p, std::size_t n, std::uint64_t seed) {
    const std::string& kind = p.str("set");
    const std::string& start = p.str("start");
    if (kind == "ap") return ap_set(Poly::parse(start.empty() ? "x" : start), p.poly("diff"), n);
    if (kind == "gp") return gp_set(Poly::parse(start.empty() ? "1" : start), p.poly("ratio"), n);
    if (kind == "random") return random_monic_set(p.u32("deg-max"), p.u32("height"), n, seed);
    if (kind == "list") {
        require(!p.str("elems").empty(), "--set list needs --elems");
        return PolySet(parse_poly_list(p.list("elems")));
    }
    throw Error(Errc::precondition, "unknown set family '" + kind + "'");
}

inline PolySet build_set(const Params& p, std::uint64_t seed) {
    return build_set(p, static_cast<std::size_t>(p.num("n")), seed);
}

template <class Fn>
auto timed(bool timing, Fn fn) {
    const auto t0 = std::chrono::steady_clock::now();
    auto rep = fn();
    if (timing)
        rep.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

struct Outcome {
    io::Json report;
    std::vector<GrowthReport> growth;  // kept for CSV
};

inline Outcome run(const RunConfig& cfg, const Params& p) {
    const std::string& sc = cfg.subcommand;
    const std::size_t cap = static_cast<std::size_t>(cfg.caps.max_set);
    Outcome out;
    if (sc == "mason") {
        const Poly a = p.poly("A"), b = p.poly("B");
        out.report = io::to_json(abc_check(a, b));
        out.report["C"] = io::to_json(a + b);
    } else if (sc == "wronskian") {
        const auto fs = parse_poly_list(p.list("fs"));
        const PolyMatrix w = wronskian_matrix(fs);
        const auto cert = dependence_certificate(fs);
        out.report = {{"family", io::to_json_array(fs)}, {"matrix", io::to_json(w)}, {"det", io::to_json(det(w))}};
        out.report["certificate"] = cert ? io::to_json_array(*cert) : io::Json(nullptr);
        out.report["certificate_verified"] = cert ? verify_certificate(fs, *cert) : false;
    } else if (sc == "matchings") {
        std::vector<std::vector<Poly>> rows;
        for (const auto& r : p.list("rows", ';')) {
            std::vector<std::string> items;
            std::string cur;
            for (char c : r) {
                if (c == ',') {
                    items.push_back(cur);
                    cur.clear();
                } else {
                    cur += c;
                }
            }
            items.push_back(cur);
            rows.push_back(parse_poly_list(items));
        }
        const PolyMatrix bases(rows);
        require(bases.is_square(), "matchings needs a square matrix");
        const PowerMatrix pm(bases, p.u32("M"));
        const PolyMatrix pw = pm.powered();
        out.report = {{"det", io::to_json(det(pw))}};
        out.report["matching"] = io::to_json(analyze_power_matrix(pm));
    } else if (sc == "growth") {
        const std::string& kind = p.str("set");
        io::Json rows = io::Json::array();
        for (const auto& n_str : p.list("n")) {
            std::size_t n = 0;
            const auto [ptr, ec] = std::from_chars(n_str.data(), n_str.data() + n_str.size(), n);
            require(ec == std::errc{} && ptr == n_str.data() + n_str.size(), "--n expects integers, got '" + n_str + "'");
            auto g = growth_report(build_set(p, n, cfg.seed), kind + "_" + std::to_string(n), p.u32("l-max"), cap);
            rows.push_back(io::to_json(g));
            out.growth.push_back(std::move(g));
        }
        out.report = {{"rows", std::move(rows)}};
    } else if (sc == "fermat-poly") {
        PolySearchParams sp;
        sp.k = p.u32("k");
        sp.m = p.u32("m");
        sp.deg_max = p.u32("deg-max");
        sp.height = p.u32("height");
        sp.signs = p.str("signs");
        sp.monic = p.flag("monic");
        sp.max_space = cfg.caps.max_space;
        sp.max_mem_keys = cfg.caps.max_mem_keys;
        out.report = io::to_json(timed(cfg.timing, [&] { return fermat_poly_search(sp); }));
    } else if (sc == "fermat-int") {
        IntSearchSpec sp;
        sp.k = p.u32("k");
        sp.m = p.u32("m");
        sp.H = p.u32("H");
        sp.signs = p.str("signs");
        sp.max_space = cfg.caps.max_space;
        sp.max_mem_keys = cfg.caps.max_mem_keys;
        out.report = io::to_json(timed(cfg.timing, [&] { return fermat_integer_search(sp); }));
    } else if (sc == "replay") {
        const PolySet s = build_set(p, cfg.seed);
        out.report = io::to_json(replay(s, p.u32("M"), Cutoff::power_law(p.rat("eps")), p.num("gamma-limit")));
    } else if (sc == "averaging") {
        const PolySet s = build_set(p, cfg.seed);
        const PolySet r = power_image_set(s, p.u32("M"), p.u32("t"), cap);
        const auto a = averaging_extraction(r, s);
        out.report = {{"R_size", r.size()}, {"S_size", s.size()}};
        out.report["extraction"] = io::to_json(a);
        io::Json sp = io::Json::array();
        for (std::size_t i : a.s_prime) sp.push_back(io::to_json(s[i]));
        out.report["S_prime"] = std::move(sp);
    } else if (sc == "saturation") {
        const PolySet s = build_set(p, cfg.seed);
        out.report = io::to_json(power_saturation(s, p.u32("M"), p.u32("l-max"), p.rat("eps"), cap));
    } else {
        throw Error(Errc::precondition, "unhandled subcommand " + sc);
    }
    return out;
}

}  // namespace detail

/// Runs one configuration. The report goes to `out`, diagnostics to `err`.
/// Exit status: 0 success, 2 usage or precondition failure, 3 resource cap.
inline int dispatch(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        const SubcommandSpec* spec = find_subcommand(cfg.subcommand);
        require(spec != nullptr, "unknown subcommand '" + cfg.subcommand + "'");
        require(cfg.format != Format::csv || spec->csv, "--format csv is only available for growth");
        require(cfg.caps.max_set > 0 && cfg.caps.max_space > 0 && cfg.caps.max_mem_keys > 0, "caps must be positive");
        const detail::Params params(*spec, cfg.params);
        detail::Outcome o = detail::run(cfg, params);
        if (cfg.format == Format::csv) {
            io::write_growth_csv(out, o.growth);
            return kExitOk;
        }
        io::Json doc = {{"subcommand", cfg.subcommand}, {"seed", cfg.seed}, {"params", params.json()}};
        doc["report"] = std::move(o.report);
        if (cfg.format == Format::text)
            io::write_text(out, doc);
        else
            out << doc.dump(2) << '\n';
        return kExitOk;
    } catch (const ResourceCapError& e) {
        err << "error[" << errc_name(e.code()) << "]: " << e.what() << '\n';
        return kExitCap;
    } catch (const Error& e) {
        err << "error[" << errc_name(e.code()) << "]: " << e.what() << '\n';
        return kExitUsage;
    }
}

}  // namespace sumprod::cli
