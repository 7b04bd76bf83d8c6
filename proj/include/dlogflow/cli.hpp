#ifndef DLOGFLOW_CLI_HPP
#define DLOGFLOW_CLI_HPP

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bernoulli.hpp"
#include "coeffs.hpp"
#include "flow.hpp"
#include "json_io.hpp"
#include "tree.hpp"
#include "tree_series.hpp"
#include "verify.hpp"

namespace dlogflow::cli {

enum class Format { text, json, csv };

namespace detail {

inline json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw parse_error(path + ": " + e.what());
    }
}

inline std::string csv_list(const std::vector<std::string>& items)
{
    std::string s;
    for (std::size_t i = 0; i < items.size(); ++i) s += (i ? ";" : "") + items[i];
    return s;
}

template <class C>
std::string coeff_text(const C& c)
{
    if constexpr (std::is_same_v<C, RatPoly>) return csv_list(c.to_strings());
    else return to_string(c);
}

template <class C>
void emit_series(std::ostream& out, const SeriesVector<C>& v, Format f)
{
    switch (f) {
    case Format::json:
        out << to_json(v).dump() << "\n";
        break;
    case Format::csv:
        out << "component,exps,coeff\n";
        for (unsigned i = 0; i < v.size(); ++i)
            for (const auto& [m, c] : v[i].terms()) {
                std::vector<std::string> e;
                for (auto x : m) e.push_back(std::to_string(x));
                out << i + 1 << "," << csv_list(e) << "," << coeff_text(c) << "\n";
            }
        break;
    case Format::text:
        for (unsigned i = 0; i < v.size(); ++i) out << "[" << i + 1 << "] " << v[i] << "\n";
        break;
    }
}

inline void emit_reports(std::ostream& out, const std::vector<VerdictReport>& reports, Format f)
{
    switch (f) {
    case Format::json: {
        json all = json::array();
        for (const auto& r : reports) {
            json cases = json::array();
            for (const auto& c : r.cases) {
                json jc{{"case", c.descriptor}, {"pass", c.pass}};
                if (!c.witness.empty()) jc["witness"] = c.witness;
                cases.push_back(std::move(jc));
            }
            json jr{{"suite", r.suite}, {"pass", r.passed()}, {"cases", cases}};
            jr["seed"] = r.seed ? json(*r.seed) : json(nullptr);
            all.push_back(std::move(jr));
        }
        out << all.dump() << "\n";
        break;
    }
    case Format::csv:
        out << "suite,case,pass,witness\n";
        for (const auto& r : reports)
            for (const auto& c : r.cases)
                out << r.suite << ",\"" << c.descriptor << "\"," << (c.pass ? "true" : "false") << ",\"" << c.witness
                    << "\"\n";
        break;
    case Format::text:
        for (const auto& r : reports) {
            out << r.suite << ": " << (r.passed() ? "PASS" : "FAIL") << " (" << r.cases.size() - r.failures() << "/"
                << r.cases.size() << ")";
            if (r.seed) out << " seed=" << *r.seed;
            out << "\n";
            for (const auto& c : r.cases)
                if (!c.pass || !c.witness.empty())
                    out << "  " << (c.pass ? "note " : "FAIL ") << c.descriptor << (c.witness.empty() ? "" : ": " + c.witness)
                        << "\n";
        }
        break;
    }
}

inline void emit_table(std::ostream& out, unsigned max_vertices, bool with_psi, Format f)
{
    auto& tables = default_tables();
    const auto trees = enumerate_trees_up_to(max_vertices);
    if (f == Format::json) {
        json rows = json::array();
        for (const auto& t : trees) {
            json row{{"tree", t.encoding()}, {"v", t.vertex_count()}, {"alpha", t.aut_size()}, {"phi", to_string(tables.phi(t))}};
            if (with_psi) row["psi"] = tables.psi(t).to_strings();
            rows.push_back(std::move(row));
        }
        out << rows.dump() << "\n";
        return;
    }
    out << (f == Format::csv ? "tree,v,alpha,phi" : "tree v alpha phi") << (with_psi ? (f == Format::csv ? ",psi" : " psi") : "")
        << "\n";
    const char* sep = f == Format::csv ? "," : " ";
    for (const auto& t : trees) {
        out << t.encoding() << sep << t.vertex_count() << sep << t.aut_size() << sep << to_string(tables.phi(t));
        if (with_psi) out << sep << (f == Format::csv ? csv_list(tables.psi(t).to_strings()) : tables.psi(t).to_string());
        out << "\n";
    }
}

} // namespace detail

/// Runs the command line; returns 0 on success with all verdicts passing, 1 when a
/// verdict fails and 2 on usage or contract errors.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr)
{
    CLI::App app{"Exact D-Log, formal flow and tree-coefficient calculator", "dlogflow"};
    app.set_config("--config", "", "Read options from a TOML/INI file (command-line flags take precedence)");
    app.require_subcommand(1);
    app.fallthrough();

    Format format = Format::text;
    const std::map<std::string, Format> format_names{{"text", Format::text}, {"json", Format::json}, {"csv", Format::csv}};
    app.add_option("--format", format, "Output format")->transform(CLI::CheckedTransformer(format_names, CLI::ignore_case));

    std::string map_path, system_path, tree_text, tau_text;
    unsigned trunc = 0, max_vertices = 6, count = 0, bernoulli_n = 0;
    bool symbolic = false, list = false;
    std::string method = "tree";
    std::vector<std::string> suite_names;
    std::uint64_t seed = 0;
    bool seed_given = false;

    auto* dlog_cmd = app.add_subcommand("dlog", "D-Log a of F = z + H");
    dlog_cmd->add_option("--map", map_path, "Series JSON of F")->required();
    dlog_cmd->add_option("--trunc", trunc, "Truncation order (default: the file's)");
    std::string dlog_route = "solver";
    dlog_cmd->add_option("--route", dlog_route, "solver or trees")->check(CLI::IsMember({"solver", "trees"}));

    auto* flow_cmd = app.add_subcommand("flow", "Formal flow F_t = exp(tA) z");
    flow_cmd->add_option("--map", map_path, "Series JSON of F")->required();
    flow_cmd->add_option("--trunc", trunc, "Truncation order (default: the file's)");
    auto* tau_opt = flow_cmd->add_option("--t", tau_text, "Rational time such as 3/2");
    auto* sym_opt = flow_cmd->add_flag("--symbolic", symbolic, "Keep t as an indeterminate");
    tau_opt->excludes(sym_opt);

    auto* inv_cmd = app.add_subcommand("invert", "Formal inverse of F");
    inv_cmd->add_option("--map", map_path, "Series JSON of F")->required();
    inv_cmd->add_option("--trunc", trunc, "Truncation order (default: the file's)");
    inv_cmd->add_option("--method", method, "tree or solver")->check(CLI::IsMember({"tree", "solver"}));

    auto* verify_cmd = app.add_subcommand("verify", "Run verification suites");
    std::vector<std::string> known{"all"};
    for (const auto& [name, fn] : suites()) known.push_back(name);
    verify_cmd->add_option("--suite", suite_names, "Suite name, repeatable, or 'all'")->required()->check(CLI::IsMember(known));
    verify_cmd->add_option("--max-vertices", max_vertices, "Largest tree size checked (cost grows roughly 3x per vertex)");
    verify_cmd->add_option("--trunc", trunc, "Truncation order for series suites (default 6)");
    verify_cmd->add_option("--seed", seed, "Seed for randomized suites (default: DLOGFLOW_SEED or built-in)")->each([&](const std::string&) {
        seed_given = true;
    });

    auto* phi_cmd = app.add_subcommand("phi-table", "phi_T for all trees up to a size");
    phi_cmd->add_option("--max-vertices", max_vertices, "Largest tree size");
    auto* psi_cmd = app.add_subcommand("psi-table", "phi_T and psi_T(t) for all trees up to a size");
    psi_cmd->add_option("--max-vertices", max_vertices, "Largest tree size");

    auto* trees_cmd = app.add_subcommand("trees", "Count rooted trees with m vertices");
    trees_cmd->add_option("--count", count, "Number of vertices m")->required();
    trees_cmd->add_flag("--list", list, "Also list the encodings");

    auto* order_cmd = app.add_subcommand("order-poly", "Strict order polynomial of a tree");
    order_cmd->add_option("--tree", tree_text, "Tree encoding such as (()())")->required();

    auto* bern_cmd = app.add_subcommand("bernoulli", "Bernoulli number b_n and polynomial B_n(t)");
    bern_cmd->add_option("--n", bernoulli_n, "Index n")->required();

    auto* ptree_cmd = app.add_subcommand("ptree", "Normalized tree series P_T(H)/alpha_T");
    ptree_cmd->add_option("--tree", tree_text, "Tree encoding")->required();
    ptree_cmd->add_option("--system", system_path, "Series JSON of H")->required();
    ptree_cmd->add_option("--trunc", trunc, "Truncation order (default: the file's)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream o, er;
        const int code = app.exit(e, o, er);
        out << o.str();
        err << er.str();
        return code == 0 ? 0 : 2;
    }

    try {
        auto load_map = [&]() { return FormalMap(series_vector_from_json(detail::read_json_file(map_path), trunc)); };

        if (*dlog_cmd) {
            const auto F = load_map();
            detail::emit_series(out, dlog_route == "trees" ? dlog_tree_sum(F) : dlog(F).a, format);
        } else if (*flow_cmd) {
            const auto F = load_map();
            if (symbolic) detail::emit_series(out, flow_symbolic(F), format);
            else detail::emit_series(out, flow(F, tau_text.empty() ? Rational(1) : parse_rational(tau_text)), format);
        } else if (*inv_cmd) {
            const auto F = load_map();
            detail::emit_series(out, method == "solver" ? inverse_solver(F) : inverse_tree(F), format);
        } else if (*verify_cmd) {
            SuiteParams p;
            p.max_vertices = max_vertices;
            if (trunc) p.trunc = trunc;
            p.seed = seed_given ? seed : seed_from_env(p.seed);
            std::vector<std::string> names;
            for (const auto& s : suite_names) {
                if (s == "all")
                    for (const auto& [name, fn] : suites()) names.push_back(name);
                else names.push_back(s);
            }
            std::vector<VerdictReport> reports;
            bool ok = true;
            for (const auto& name : names) {
                reports.push_back(suites().at(name)(p));
                ok = ok && reports.back().passed();
            }
            detail::emit_reports(out, reports, format);
            return ok ? 0 : 1;
        } else if (*phi_cmd || *psi_cmd) {
            detail::emit_table(out, max_vertices, static_cast<bool>(*psi_cmd), format);
        } else if (*trees_cmd) {
            const auto trees = enumerate_trees(count);
            if (format == Format::json) {
                json enc = json::array();
                for (const auto& t : trees) enc.push_back(t.encoding());
                out << json{{"m", count}, {"count", trees.size()}, {"trees", enc}}.dump() << "\n";
            } else {
                out << trees.size() << "\n";
                if (list)
                    for (const auto& t : trees) out << t.encoding() << "\n";
            }
        } else if (*order_cmd) {
            const auto t = RootedTree::parse(tree_text);
            const auto p = order_polynomial(t);
            if (format == Format::json) out << json{{"tree", t.encoding()}, {"order_poly", to_json(p)}}.dump() << "\n";
            else if (format == Format::csv) out << "tree,coeffs\n" << t.encoding() << "," << detail::csv_list(p.to_strings()) << "\n";
            else out << p << "\n";
        } else if (*bern_cmd) {
            const auto b = bernoulli_number(bernoulli_n);
            const auto B = bernoulli_polynomial(bernoulli_n);
            if (format == Format::json)
                out << json{{"n", bernoulli_n}, {"b", to_string(b)}, {"B", to_json(B)}}.dump() << "\n";
            else if (format == Format::csv)
                out << "n,b,B\n" << bernoulli_n << "," << to_string(b) << "," << detail::csv_list(B.to_strings()) << "\n";
            else out << "b_" << bernoulli_n << " = " << b << "\nB_" << bernoulli_n << "(t) = " << B << "\n";
        } else if (*ptree_cmd) {
            const auto t = RootedTree::parse(tree_text);
            const auto H = series_vector_from_json(detail::read_json_file(system_path), trunc);
            detail::emit_series(out, p_script(t, H), format);
        }
    } catch (const std::exception& e) {
        err << "dlogflow: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

} // namespace dlogflow::cli

#endif
