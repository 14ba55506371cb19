// Command-line front end: parse tuples, dispatch to the calculator modules,
// serialize text or JSON reports. Exit codes: 0 success, 1 domain error,
// 2 usage error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ppspace/json_io.hpp"

namespace {

using namespace ppspace;

Tuple parse_tuple(const std::string& text) {
    std::vector<std::int64_t> entries;
    std::size_t start = 0;
    if (text.empty()) throw std::invalid_argument("tuple: empty input");
    while (start <= text.size()) {
        const std::size_t comma = text.find(',', start);
        const std::string part =
            text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos)
            throw std::invalid_argument("tuple: malformed entry '" + part + "'");
        errno = 0;
        char* end = nullptr;
        const long long v = std::strtoll(part.c_str(), &end, 10);
        if (errno != 0 || end == part.c_str() || *end != '\0')
            throw std::invalid_argument("tuple: malformed entry '" + part + "'");
        entries.push_back(v);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return Tuple(std::move(entries));
}

enum class Format { Text, Json };

Format resolve_format(bool json_flag, const std::string& format_option) {
    if (json_flag) return Format::Json;
    if (format_option == "json") return Format::Json;
    if (format_option == "text") return Format::Text;
    if (const char* env = std::getenv("PPSPACE_FORMAT")) {
        const std::string v(env);
        if (v == "json") return Format::Json;
        if (v == "text") return Format::Text;
        throw std::invalid_argument("PPSPACE_FORMAT must be 'text' or 'json', got '" + v + "'");
    }
    return Format::Text;
}

std::string fmt_bound(const Bound& b) {
    std::string s = "[" + std::to_string(b.lower) + ", " + std::to_string(b.upper) + "]";
    if (b.exact) s += " exact";
    return s;
}

std::string fmt_provenance(const Bound& b) {
    std::string s;
    for (const auto& p : b.provenance) {
        if (!s.empty()) s += "; ";
        s += p;
    }
    return s;
}

void print_bound_text(std::ostream& os, const std::string& name, const Bound& b) {
    os << name << ": " << fmt_bound(b) << "\n";
    os << "  via " << fmt_provenance(b) << "\n";
}

json tuple_header(const Tuple& t) {
    json j;
    j["tuple"] = t.entries();
    j["canonicalized"] = t.canonicalized();
    return j;
}

void run_report(const Tuple& t, Format fmt, std::ostream& os) {
    const InvariantReport rep = report(t);
    if (fmt == Format::Json) {
        os << to_json(rep).dump() << "\n";
        return;
    }
    os << "tuple: " << t.to_string() << "\n";
    os << "canonicalized: " << (t.canonicalized() ? "true" : "false") << "\n";
    os << "dimension: " << rep.dimension << "\n";
    os << "r: " << t.length() << "\n";
    os << "orientable: " << (rep.orientable ? "true" : "false") << "\n";
    os << "euler_char: " << rep.euler_char << "\n";
    if (rep.kervaire_semichar)
        os << "kervaire_semichar: " << *rep.kervaire_semichar << "\n";
    os << "parallelizable: " << (rep.parallelizable ? "true" : "false") << "\n";
    print_bound_text(os, "imm", rep.imm);
    print_bound_text(os, "stablespan", rep.span_result.stablespan);
    os << "span: " << fmt_bound(rep.span_result.span)
       << " case=" << to_string(rep.span_result.exactness_case) << "\n";
    os << "sphere_factors: T={";
    for (std::size_t i = 0; i < rep.sphere_factor_positions.size(); ++i) {
        if (i) os << ",";
        os << rep.sphere_factor_positions[i];
    }
    os << "} remaining=(";
    for (std::size_t i = 0; i < rep.sphere_factor_remaining.size(); ++i) {
        if (i) os << ",";
        os << rep.sphere_factor_remaining[i];
    }
    os << ")\n";
    os << "wedge_summand_count: " << rep.wedge_summand_count << "\n";
    os << "mod2_ranks:";
    for (auto r : rep.mod2_ranks) os << " " << r;
    os << "\n";
}

struct CoeffChoice {
    enum class Kind { Mod2, Integral, Rational, OddPrime } kind;
    std::int64_t prime = 0;
};

CoeffChoice parse_coeff(const std::string& s) {
    if (s == "z2") return {CoeffChoice::Kind::Mod2, 0};
    if (s == "z") return {CoeffChoice::Kind::Integral, 0};
    if (s == "q") return {CoeffChoice::Kind::Rational, 0};
    if (s.rfind("p:", 0) == 0) {
        const std::string rest = s.substr(2);
        if (rest.empty() || rest.find_first_not_of("0123456789") != std::string::npos)
            throw std::invalid_argument("coeff: malformed prime in '" + s + "'");
        return {CoeffChoice::Kind::OddPrime, std::stoll(rest)};
    }
    throw std::invalid_argument("coeff: expected z2, z, q or p:<prime>, got '" + s + "'");
}

void run_cohomology(const Tuple& t, const CoeffChoice& coeff,
                    std::optional<std::int64_t> deg, Format fmt, std::ostream& os) {
    json j = tuple_header(t);
    switch (coeff.kind) {
        case CoeffChoice::Kind::Mod2: {
            j["coeff"] = "z2";
            if (deg) {
                const auto monos = basis(t, *deg);
                j["degree"] = *deg;
                j["rank"] = monos.size();
                std::vector<std::string> names;
                names.reserve(monos.size());
                for (const auto& m : monos) names.push_back(to_string(m));
                j["basis"] = names;
                if (fmt == Format::Text) {
                    os << "H^" << *deg << "(-; Z/2) rank " << monos.size() << "\n";
                    for (const auto& n : names) os << "  " << n << "\n";
                    return;
                }
            } else {
                j["ranks"] = poincare_poly(t);
                if (fmt == Format::Text) {
                    os << "mod2_ranks:";
                    for (auto r : poincare_poly(t)) os << " " << r;
                    os << "\n";
                    return;
                }
            }
            break;
        }
        case CoeffChoice::Kind::Integral: {
            j["coeff"] = "z";
            json groups = json::array();
            const std::int64_t lo = deg ? *deg : 0;
            const std::int64_t hi = deg ? *deg : t.total();
            for (std::int64_t d = lo; d <= hi; ++d) {
                const AbelianGroup g = integral_group(t, d);
                if (g.trivial() && !deg) continue;
                json entry;
                entry["degree"] = d;
                entry["free_rank"] = g.free_rank;
                entry["torsion"] = to_json(g)["torsion"];
                groups.push_back(std::move(entry));
                if (fmt == Format::Text) os << "H^" << d << ": " << g.to_string() << "\n";
            }
            j["groups"] = std::move(groups);
            if (fmt == Format::Text) return;
            break;
        }
        case CoeffChoice::Kind::Rational:
        case CoeffChoice::Kind::OddPrime: {
            const std::int64_t ch =
                coeff.kind == CoeffChoice::Kind::Rational ? 0 : coeff.prime;
            j["coeff"] = ch == 0 ? "q" : "p:" + std::to_string(ch);
            if (deg) {
                j["degree"] = *deg;
                j["rank"] = field_rank(t, *deg, ch);
                if (fmt == Format::Text) {
                    os << "rank H^" << *deg << ": " << field_rank(t, *deg, ch) << "\n";
                    return;
                }
            } else {
                std::vector<std::uint64_t> ranks;
                ranks.reserve(static_cast<std::size_t>(t.total()) + 1);
                for (std::int64_t d = 0; d <= t.total(); ++d)
                    ranks.push_back(field_rank(t, d, ch));
                j["ranks"] = ranks;
                if (fmt == Format::Text) {
                    os << "ranks:";
                    for (auto r : ranks) os << " " << r;
                    os << "\n";
                    return;
                }
            }
            break;
        }
    }
    os << j.dump() << "\n";
}

void run_sq(const Tuple& t, std::int64_t k, const std::string& on, Format fmt,
            std::ostream& os) {
    const Mod2Class input = parse_class(t, on);
    const Mod2Class result = sq(t, k, input);
    if (fmt == Format::Json) {
        json j = tuple_header(t);
        j["k"] = k;
        j["on"] = to_string(input);
        j["result"] = to_string(result);
        os << j.dump() << "\n";
        return;
    }
    os << "Sq^" << k << "(" << to_string(input) << ") = " << to_string(result) << "\n";
}

void run_ktheory(const Tuple& t, Format fmt, std::ostream& os) {
    const auto [k0, k1] = k_groups(t);
    if (fmt == Format::Json) {
        json j = tuple_header(t);
        j["K0"] = to_json(k0);
        j["K1"] = to_json(k1);
        os << j.dump() << "\n";
        return;
    }
    os << "K^0: " << k0.to_string() << "\n";
    os << "K^1: " << k1.to_string() << "\n";
}

void run_splitting(const Tuple& t, Format fmt, std::ostream& os) {
    const auto summands = wedge_summands(t);
    if (fmt == Format::Json) {
        json j = tuple_header(t);
        json arr = json::array();
        for (const auto& s : summands) arr.push_back(to_json(s));
        j["summands"] = std::move(arr);
        os << j.dump() << "\n";
        return;
    }
    os << summands.size() << " wedge summands of the suspension:\n";
    for (const auto& s : summands) {
        os << "  u={";
        for (std::size_t i = 0; i < s.u_positions.size(); ++i) {
            if (i) os << ",";
            os << s.u_positions[i];
        }
        os << "} desuspension=" << s.desuspension << " bottom=" << s.bottom
           << " top=" << s.top << "\n";
    }
}

void run_gvfp(std::int64_t k, std::int64_t n, Format fmt, std::ostream& os) {
    const HopfMultiple hm(k, n);
    const Bound gd = stable_gd(hm);
    std::optional<Normalized> norm;
    if (phi(n) <= 57) norm = normalize(hm);
    if (fmt == Format::Json) {
        json j;
        j["k"] = k;
        j["n"] = n;
        j["phi"] = phi(n);
        if (norm) {
            j["residue"] = norm->residue;
            j["representatives"] = norm->representatives;
        }
        j["gd"] = to_json(gd);
        os << j.dump() << "\n";
        return;
    }
    os << "k: " << k << "\nn: " << n << "\nphi: " << phi(n) << "\n";
    if (norm) {
        os << "residue: " << norm->residue << "\n";
        os << "representatives:";
        for (auto r : norm->representatives) os << " " << r;
        os << "\n";
    }
    print_bound_text(os, "gd", gd);
}

void run_imm(const Tuple& t, Format fmt, std::ostream& os) {
    const Bound b = imm_bounds(t);
    if (fmt == Format::Json) {
        json j = to_json(b);
        j["tuple"] = t.entries();
        j["canonicalized"] = t.canonicalized();
        os << j.dump() << "\n";
        return;
    }
    print_bound_text(os, "imm", b);
}

void run_span(const Tuple& t, Format fmt, std::ostream& os) {
    const SpanResult res = span_bounds(t);
    if (fmt == Format::Json) {
        json j = tuple_header(t);
        j["span"] = to_json(res.span);
        j["stablespan"] = to_json(res.stablespan);
        j["case"] = to_string(res.exactness_case);
        os << j.dump() << "\n";
        return;
    }
    os << "span: " << fmt_bound(res.span) << " case=" << to_string(res.exactness_case)
       << "\n";
    print_bound_text(os, "stablespan", res.stablespan);
}

void run_table1(Format fmt, std::ostream& os) {
    const auto& table = delta_table();
    if (fmt == Format::Json) {
        json j;
        j["rows"] = table;
        j["row_labels"] = "n1 = 0..7";
        j["column_labels"] = "(|n|+r) mod 8 = 1..8";
        os << j.dump() << "\n";
        return;
    }
    os << "n1\\c  1 2 3 4 5 6 7 8\n";
    for (int row = 0; row < 8; ++row) {
        os << row << "    ";
        for (int col = 0; col < 8; ++col) os << " " << table[row][col];
        os << "\n";
    }
}

void run_batch(const std::string& path, std::ostream& os) {
    std::ifstream in(path);
    if (!in) throw std::domain_error("batch: cannot open '" + path + "'");
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.empty()) continue;
        try {
            const Tuple t = parse_tuple(line);
            os << to_json(report(t)).dump() << "\n";
        } catch (const std::exception& e) {
            json j;
            j["input"] = line;
            j["errors"] = std::vector<std::string>{e.what()};
            os << j.dump() << "\n";
        }
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact calculator for topological invariants of projective product spaces"};
    app.require_subcommand(1);

    bool json_flag = false;
    std::string format_option;
    app.add_flag("--json", json_flag, "emit JSON instead of text");
    app.add_option("--format", format_option, "output format: text or json")
        ->check(CLI::IsMember({"text", "json"}));

    std::string tuple_arg;
    std::string coeff_arg = "z2";
    std::int64_t degree_arg = -1;
    bool degree_set = false;
    std::int64_t k_arg = 0;
    std::int64_t n_arg = 1;
    std::string class_arg;
    std::string batch_path;

    auto* c_report = app.add_subcommand("report", "full invariant report for a tuple");
    c_report->add_option("tuple", tuple_arg, "comma separated entries, e.g. 2,3,5")->required();

    auto* c_coh = app.add_subcommand("cohomology", "cohomology groups in a chosen coefficient ring");
    c_coh->add_option("tuple", tuple_arg)->required();
    c_coh->add_option("--coeff", coeff_arg, "z2, z, q or p:<prime>");
    auto* deg_opt = c_coh->add_option("--degree", degree_arg, "restrict to one degree");

    auto* c_sq = app.add_subcommand("sq", "Steenrod square on a mod-2 class");
    c_sq->add_option("tuple", tuple_arg)->required();
    c_sq->add_option("k", k_arg, "operation degree")->required();
    c_sq->add_option("--on", class_arg, "class, e.g. y^2*x2 + x3")->required();

    auto* c_ktheory = app.add_subcommand("ktheory", "Z/2-graded K-theory groups");
    c_ktheory->add_option("tuple", tuple_arg)->required();

    auto* c_split = app.add_subcommand("splitting", "wedge decomposition of the suspension");
    c_split->add_option("tuple", tuple_arg)->required();

    auto* c_gvfp = app.add_subcommand("gvfp", "stable geometric dimension of k*xi_n");
    c_gvfp->add_option("k", k_arg, "multiple (may be negative)")->required();
    c_gvfp->add_option("n", n_arg, "base projective space dimension")->required();

    auto* c_imm = app.add_subcommand("imm", "immersion dimension bounds");
    c_imm->add_option("tuple", tuple_arg)->required();

    auto* c_span = app.add_subcommand("span", "span and stable span bounds");
    c_span->add_option("tuple", tuple_arg)->required();

    auto* c_table1 = app.add_subcommand("table1", "immersion deficiency table");

    auto* c_batch = app.add_subcommand("batch", "reports for a CSV of tuples, one JSON line each");
    c_batch->add_option("csv", batch_path, "file with one tuple per line")->required();

    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        const Format fmt = resolve_format(json_flag, format_option);
        degree_set = deg_opt->count() > 0;
        std::ostream& os = std::cout;
        if (app.got_subcommand(c_report)) run_report(parse_tuple(tuple_arg), fmt, os);
        else if (app.got_subcommand(c_coh))
            run_cohomology(parse_tuple(tuple_arg), parse_coeff(coeff_arg),
                           degree_set ? std::optional<std::int64_t>(degree_arg) : std::nullopt,
                           fmt, os);
        else if (app.got_subcommand(c_sq)) run_sq(parse_tuple(tuple_arg), k_arg, class_arg, fmt, os);
        else if (app.got_subcommand(c_ktheory)) run_ktheory(parse_tuple(tuple_arg), fmt, os);
        else if (app.got_subcommand(c_split)) run_splitting(parse_tuple(tuple_arg), fmt, os);
        else if (app.got_subcommand(c_gvfp)) run_gvfp(k_arg, n_arg, fmt, os);
        else if (app.got_subcommand(c_imm)) run_imm(parse_tuple(tuple_arg), fmt, os);
        else if (app.got_subcommand(c_span)) run_span(parse_tuple(tuple_arg), fmt, os);
        else if (app.got_subcommand(c_table1)) run_table1(fmt, os);
        else if (app.got_subcommand(c_batch)) run_batch(batch_path, os);
        return 0;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
