#include "bench.hh"

#include <toml.hpp>

#include <fstream>
#include <sstream>

namespace hermeig::bench {

namespace {

[[noreturn]] void bad(const std::string& source, const std::string& what) {
    throw FormatError(source + ": " + what);
}

template <typename T>
T get_or(const toml::node_view<const toml::node>& node, T fallback, const std::string& source,
         const std::string& key) {
    if (!node) return fallback;
    if constexpr (std::is_same_v<T, double>) {
        if (auto v = node.value<double>()) return *v;
    } else if constexpr (std::is_same_v<T, bool>) {
        if (auto v = node.value<bool>()) return *v;
    } else if constexpr (std::is_same_v<T, std::string>) {
        if (auto v = node.value<std::string>()) return *v;
    } else {
        if (auto v = node.value<std::int64_t>()) return static_cast<T>(*v);
    }
    bad(source, "key '" + key + "' has the wrong type");
}

std::vector<std::string> string_list(const toml::node_view<const toml::node>& node, const std::string& source,
                                     const std::string& key, std::vector<std::string> fallback) {
    if (!node) return fallback;
    if (auto s = node.value<std::string>()) return {*s};
    const toml::array* arr = node.as_array();
    if (!arr) bad(source, "key '" + key + "' must be a string or an array of strings");
    std::vector<std::string> out;
    for (const toml::node& item : *arr) {
        auto s = item.value<std::string>();
        if (!s) bad(source, "key '" + key + "' must contain strings");
        out.push_back(*s);
    }
    return out;
}

std::vector<index_t> size_list(const toml::node_view<const toml::node>& node, const std::string& source) {
    if (!node) bad(source, "case without 'n'");
    if (auto v = node.value<std::int64_t>()) return {static_cast<index_t>(*v)};
    const toml::array* arr = node.as_array();
    if (!arr) bad(source, "'n' must be an integer or an array of integers");
    std::vector<index_t> out;
    for (const toml::node& item : *arr) {
        auto v = item.value<std::int64_t>();
        if (!v) bad(source, "'n' must contain integers");
        out.push_back(static_cast<index_t>(*v));
    }
    return out;
}

}  // namespace

EigenSelection parse_selection(const std::string& s) {
    if (s == "all") return EigenSelection::all();
    std::istringstream in(s);
    std::string kind;
    std::getline(in, kind, ':');
    try {
        if (kind == "fraction") {
            std::string f;
            std::getline(in, f);
            std::size_t used = 0;
            const double frac = std::stod(f, &used);
            if (used != f.size()) throw FormatError("trailing characters");
            return EigenSelection::fraction(frac);
        }
        if (kind == "range") {
            std::string il, iu;
            std::getline(in, il, ':');
            std::getline(in, iu);
            return EigenSelection::range(std::stol(il), std::stol(iu));
        }
    } catch (const std::logic_error&) {
    } catch (const FormatError&) {
    }
    throw FormatError("bad selection '" + s + "' (use all, fraction:F or range:IL:IU)");
}

std::string selection_label(const EigenSelection& sel) {
    std::ostringstream out;
    switch (sel.mode) {
        case SelectionMode::All: return "all";
        case SelectionMode::Fraction: out << "fraction:" << sel.frac; return out.str();
        case SelectionMode::IndexRange: out << "range:" << sel.il << ":" << sel.iu; return out.str();
    }
    return "?";
}

Plan parse_plan(std::istream& in, const std::string& source) {
    toml::table root;
    try {
        root = toml::parse(in, source);
    } catch (const toml::parse_error& e) {
        std::ostringstream msg;
        msg << e.description() << " at line " << e.source().begin.line;
        bad(source, msg.str());
    }
    const toml::table& croot = root;

    Plan plan;
    plan.seed = get_or<std::uint64_t>(croot["seed"], plan.seed, source, "seed");
    plan.oracle_max_n = get_or<index_t>(croot["oracle_max_n"], plan.oracle_max_n, source, "oracle_max_n");
    const double cond_b = get_or<double>(croot["cond_b"], 100.0, source, "cond_b");
    const int repeats = get_or<int>(croot["repeats"], 1, source, "repeats");

    if (const toml::table* s = croot["solver"].as_table()) {
        const toml::table& st = *s;
        SolverConfig& c = plan.solver;
        c.cholesky_block = get_or<index_t>(st["cholesky_block"], c.cholesky_block, source, "solver.cholesky_block");
        c.transform_block =
            get_or<index_t>(st["transform_block"], c.transform_block, source, "solver.transform_block");
        c.panel_width = get_or<index_t>(st["panel_width"], c.panel_width, source, "solver.panel_width");
        c.band_width = get_or<index_t>(st["band_width"], c.band_width, source, "solver.band_width");
        c.sweep_group = get_or<index_t>(st["sweep_group"], c.sweep_group, source, "solver.sweep_group");
        c.dc_base_size = get_or<index_t>(st["dc_base_size"], c.dc_base_size, source, "solver.dc_base_size");
        c.dc_parallel = get_or<bool>(st["dc_parallel"], c.dc_parallel, source, "solver.dc_parallel");
    }
    if (const toml::table* t = croot["tolerances"].as_table()) {
        const toml::table& tt = *t;
        SolverConfig& c = plan.solver;
        c.residual_factor = get_or<double>(tt["residual_factor"], c.residual_factor, source, "tolerances.residual");
        c.orthogonality_factor =
            get_or<double>(tt["orthogonality_factor"], c.orthogonality_factor, source, "tolerances.orthogonality");
        plan.oracle_tolerance = get_or<double>(tt["oracle"], plan.oracle_tolerance, source, "tolerances.oracle");
    }
    try {
        plan.solver.validate();
    } catch (const InvalidArgument& e) {
        bad(source, e.what());
    }

    if (const toml::node* cases = croot.get("case")) {
        const toml::array* arr = cases->as_array();
        if (!arr) bad(source, "'case' must be an array of tables ([[case]])");
        for (const toml::node& item : *arr) {
            const toml::table* ct = item.as_table();
            if (!ct) bad(source, "'case' entries must be tables");
            const toml::table& c = *ct;
            const auto sizes = size_list(c["n"], source);
            const auto methods = string_list(c["methods"], source, "methods", {"one-stage", "two-stage"});
            const auto sels = string_list(c["selections"], source, "selections", {"all"});
            const int reps = get_or<int>(c["repeats"], repeats, source, "repeats");
            const double cb = get_or<double>(c["cond_b"], cond_b, source, "cond_b");
            if (reps < 1) bad(source, "repeats must be >= 1");
            if (!(cb >= 1.0)) bad(source, "cond_b must be >= 1");
            for (index_t n : sizes) {
                if (n < 1) bad(source, "n must be >= 1");
                for (const auto& m : methods) {
                    for (const auto& s : sels) {
                        CaseSpec spec;
                        spec.n = n;
                        try {
                            spec.method = method_from_string(m);
                            spec.sel = parse_selection(s);
                            spec.sel.resolve(n);
                        } catch (const Error& e) {
                            bad(source, e.what());
                        }
                        spec.repeats = reps;
                        spec.cond_b = cb;
                        plan.cases.push_back(spec);
                    }
                }
            }
        }
    }
    return plan;
}

Plan load_plan(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open plan '" + path.string() + "'");
    return parse_plan(in, path.string());
}

Plan default_plan(bool large) {
    Plan plan;
    std::vector<index_t> sizes{512, 1024, 2048};
    if (large) sizes.push_back(8000);
    for (index_t n : sizes)
        for (Method m : {Method::OneStage, Method::TwoStage})
            for (const EigenSelection& sel : {EigenSelection::all(), EigenSelection::fraction(0.1)}) {
                CaseSpec spec;
                spec.n = n;
                spec.method = m;
                spec.sel = sel;
                spec.repeats = 3;
                plan.cases.push_back(spec);
            }
    return plan;
}

}  // namespace hermeig::bench
