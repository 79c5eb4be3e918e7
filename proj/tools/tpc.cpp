// Command-line front end. Every report is JSON with sorted keys.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <thread>

#include "checks.hpp"
#include "tpc/io.hpp"

using namespace tpc;

namespace {

struct ValidationFailure : std::runtime_error {
    json report;
    ValidationFailure(const std::string& what, json r) : std::runtime_error(what), report(std::move(r)) {}
};

struct Common {
    std::size_t budget = 1u << 14;
    unsigned jobs = 1;
    std::string output;
};

void emit(const Common& c, const std::string& text) {
    if (c.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(c.output, std::ios::binary);
    if (!out) throw InputError("cannot write " + c.output);
    out << text;
}

void emit(const Common& c, const json& j) { emit(c, dump(j)); }

FilteredComplex load_complex(const std::string& path) {
    auto c = complex_from_json(read_json(path));
    auto diags = validate(c);
    if (!diags.empty()) throw ValidationFailure(path + ": invalid complex", {{"valid", false}, {"diagnostics", to_json(diags)}});
    return c;
}

ChainMap load_map(const std::string& path) {
    auto f = map_from_json(read_json(path));
    auto diags = validate(f.source);
    for (const auto& d : validate(f.target)) diags.push_back(d);
    for (const auto& d : validate_map(f)) diags.push_back(d);
    if (diags.empty() && !is_chain_map(f)) diags.push_back({"chain", "map does not commute with the differentials"});
    if (!diags.empty()) throw ValidationFailure(path + ": invalid map", {{"valid", false}, {"diagnostics", to_json(diags)}});
    return f;
}

std::vector<FilteredComplex> load_family(const std::vector<std::string>& paths, Scalar p) {
    std::vector<FilteredComplex> out{zero_complex(p)};
    for (const auto& path : paths) {
        auto c = load_complex(path);
        if (!c.empty()) out.push_back(std::move(c));
    }
    return out;
}

std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> out;
    std::stringstream in(text);
    std::string cell;
    while (std::getline(in, cell, ',')) out.push_back(Real::parse(cell).to_double());
    return out;
}

DeletionRule parse_rule(const std::string& s) {
    if (s == "strict") return DeletionRule::Strict;
    if (s == "conventional") return DeletionRule::Conventional;
    throw std::invalid_argument("unknown rule \"" + s + "\"");
}

json distance_matrix(const std::vector<std::string>& paths, unsigned jobs,
                     const std::function<Real(std::size_t, std::size_t)>& d) {
    const std::size_t n = paths.size();
    std::vector<std::vector<Real>> m(n, std::vector<Real>(n, Real(0)));
    std::vector<std::pair<std::size_t, std::size_t>> work;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) work.emplace_back(i, j);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_lock;
    auto worker = [&] {
        for (std::size_t k; (k = next++) < work.size();) {
            try {
                auto [i, j] = work[k];
                m[i][j] = m[j][i] = d(i, j);
            } catch (...) {
                std::lock_guard<std::mutex> g(failure_lock);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < std::max(1u, jobs); ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
    json rows = json::array();
    for (const auto& row : m) {
        json r = json::array();
        for (const auto& x : row) r.push_back(to_json(x));
        rows.push_back(r);
    }
    return {{"ids", paths}, {"matrix", rows}};
}

json weight_certificate(const WeightCertificate& w) {
    json out = {{"upper", to_json(w.upper)}, {"obstruction", w.obstruction}, {"budget_hit", w.budget_hit}};
    out["lower_unstable"] = w.lower_unstable ? to_json(*w.lower_unstable) : json(nullptr);
    out["lower_stable"] = w.lower_stable ? to_json(*w.lower_stable) : json(nullptr);
    if (w.witness) out["shifts"] = {{"p", to_json(w.p)}, {"q", to_json(w.q)}, {"s", to_json(w.s)}};
    return out;
}

json schemas() {
    auto real = json{{"description", "number, exact decimal or fraction string, or \"inf\"/\"-inf\""}};
    auto entries = json{{"type", "array"},
                        {"items", {{"type", "object"}, {"required", {"from", "to"}},
                                   {"properties", {{"from", {{"type", "string"}}}, {"to", {{"type", "string"}}},
                                                   {"coeff", {{"type", "integer"}}}}}}}};
    auto complex = json{
        {"type", "object"},
        {"required", {"generators"}},
        {"properties",
         {{"p", {{"type", "integer"}, {"description", "prime characteristic, default 2"}}},
          {"generators", {{"type", "array"}, {"items", {{"type", "object"}, {"required", {"id", "deg", "filt"}},
                                                         {"properties", {{"id", {{"type", "string"}}},
                                                                         {"deg", {{"type", "integer"}}},
                                                                         {"filt", real}}}}}}},
          {"boundary", entries}}},
        {"description", "d raises degree by one and never raises the level; boundary entries read d(from) has coeff on to"}};
    auto barcode = json{{"type", "object"},
                        {"required", {"bars"}},
                        {"properties", {{"bars", {{"type", "array"},
                                                  {"items", {{"type", "object"},
                                                             {"properties", {{"deg", {{"type", "integer"}}},
                                                                             {"birth", real},
                                                                             {"death", real}}}}}}}}}};
    auto map = json{{"type", "object"},
                    {"required", {"source", "target", "entries"}},
                    {"properties", {{"source", complex}, {"target", complex}, {"degree", {{"type", "integer"}}},
                                    {"entries", entries}}}};
    auto triangle = json{
        {"type", "object"},
        {"required", {"a", "b", "c", "u", "v", "w"}},
        {"properties", {{"a", complex}, {"b", complex}, {"c", complex}, {"u", entries}, {"v", entries}, {"w", entries},
                        {"weight", real}, {"phi", entries}, {"psi", entries}}},
        {"description", "u: a -> b, v: b -> c, w: c -> Ta; phi maps the cone of u (ids L.<b id>, R.<a id>) to c, "
                        "psi maps c raised by the weight back to that cone"}};
    auto simplicial = json{
        {"type", "object"},
        {"required", {"simplices"}},
        {"properties", {{"simplices", {{"type", "array"},
                                       {"items", {{"type", "object"},
                                                  {"required", {"verts"}},
                                                  {"properties", {{"verts", {{"type", "array"}}}, {"filt", real}}}}}}}}}};
    auto frag = json{{"type", "object"},
                     {"properties", {{"lower", real}, {"upper", real}, {"witness", {{"type", "object"}}},
                                     {"grid", {{"type", "array"}}}, {"exhaustive", {{"type", "boolean"}}}}}};
    return {{"complex", complex},
            {"barcode", barcode},
            {"map", map},
            {"triangle", triangle},
            {"simplicial", simplicial},
            {"frag-report", frag},
            {"barcode-csv", {{"description", "header deg,birth,death then one bar per line"}}},
            {"distance-csv", {{"description", "header row of ids, then one row of distances per point, "
                                              "optionally led by the point id"}}},
            {"vertex-csv", {{"description", "lines id,value"}}},
            {"point-map-csv", {{"description", "lines source_id,target_id"}}},
            {"exit-codes", {{"0", "success"}, {"1", "input or output error"}, {"2", "validation failure"},
                            {"3", "search budget exhausted"}}}};
}

std::string detect_kind(const std::string& path, const json& j) {
    if (path.size() > 4 && path.substr(path.size() - 4) == ".csv") return "metric";
    if (j.contains("simplices")) return "simplicial";
    if (j.contains("bars")) return "barcode";
    if (j.contains("entries")) return "map";
    if (j.contains("a") && j.contains("u")) return "triangle";
    return "complex";
}

json validate_file(const std::string& path, std::string kind) {
    if (kind.empty() && path.size() > 4 && path.substr(path.size() - 4) == ".csv") kind = "metric";
    std::vector<Diagnostic> diags;
    if (kind == "metric") {
        diags = validate_metric(metric_csv(read_file(path)));
    } else {
        auto j = read_json(path);
        if (kind.empty()) kind = detect_kind(path, j);
        try {
            if (kind == "complex") {
                diags = validate(complex_from_json(j));
            } else if (kind == "barcode") {
                barcode_from_json(j);
            } else if (kind == "map") {
                auto f = map_from_json(j);
                diags = validate(f.source);
                for (const auto& d : validate(f.target)) diags.push_back(d);
                for (const auto& d : validate_map(f)) diags.push_back(d);
                if (diags.empty() && !is_chain_map(f)) diags.push_back({"chain", "map does not commute with the differentials"});
            } else if (kind == "simplicial") {
                diags = validate_simplicial(simplicial_from_json(j));
            } else if (kind == "triangle") {
                if (j.contains("phi") && j.contains("psi"))
                    diags = verify_triangle(triangle_from_json(j));
                else
                    loose_triangle_from_json(j);
            } else {
                throw std::invalid_argument("unknown kind \"" + kind + "\"");
            }
        } catch (const std::invalid_argument& e) {
            diags.push_back({"parse", e.what()});
        } catch (const json::exception& e) {
            diags.push_back({"parse", e.what()});
        }
    }
    return {{"kind", kind}, {"valid", diags.empty()}, {"diagnostics", to_json(diags)}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Filtered chain complexes over prime fields: barcodes, maps up to homotopy, weighted triangles, "
                 "cone decompositions and the distances they define."};
    app.require_subcommand(1);
    app.fallthrough();
    Common common;
    app.add_option("--budget", common.budget, "Cap on candidate maps enumerated by each search")->capture_default_str();
    app.add_option("--jobs", common.jobs, "Worker threads for distance matrices")->capture_default_str();
    app.add_option("-o,--output", common.output, "Write the report here instead of standard output");

    std::function<void()> action;
    auto verb = [&](const char* name, const char* help) { return app.add_subcommand(name, help); };

    std::string path_a, path_b, kind, rule = "strict", values_path, target_path, map_path, grid_text, floor_text;
    std::vector<std::string> paths, family;
    bool csv = false, chain = false, shift_inv = false, stable = false, quick = false;
    std::string weight_text = "10";
    int max_dim = 2;
    Scalar p = 2;

    auto* validate_cmd = verb("validate", "Check a complex, map, barcode, triangle, simplicial complex or distance matrix");
    validate_cmd->add_option("file", path_a, "Input file")->required();
    validate_cmd->add_option("--kind", kind, "complex, map, barcode, triangle, simplicial or metric (default: detect)");
    validate_cmd->callback([&] {
        action = [&] {
            auto r = validate_file(path_a, kind);
            emit(common, r);
            if (!r["valid"].get<bool>()) throw ValidationFailure("", {});
        };
    });

    auto* barcode_cmd = verb("barcode", "Barcode of a filtered complex");
    barcode_cmd->add_option("complex", path_a, "Complex JSON")->required();
    barcode_cmd->add_flag("--csv", csv, "Write deg,birth,death lines instead of JSON");
    barcode_cmd->callback([&] {
        action = [&] {
            auto b = barcode(load_complex(path_a));
            if (csv)
                emit(common, barcode_csv(b));
            else
                emit(common, to_json(b));
        };
    });

    auto* nf_cmd = verb("normal-form", "Interval model of a complex with the comparison maps both ways");
    nf_cmd->add_option("complex", path_a, "Complex JSON")->required();
    nf_cmd->callback([&] {
        action = [&] {
            auto nf = normal_form(load_complex(path_a));
            emit(common, json{{"bars", to_json(nf.bars)["bars"]},
                              {"model", to_json(nf.model)},
                              {"to_model", entries_json(nf.to_model)},
                              {"from_model", entries_json(nf.from_model)},
                              {"homotopy", entries_json(nf.homotopy)}});
        };
    });

    auto* bn_cmd = verb("bottleneck", "Bottleneck distance between barcodes (files hold complexes or barcodes)");
    bn_cmd->add_option("inputs", paths, "Two files, or more for a distance matrix")->required()->expected(2, -1);
    bn_cmd->add_option("--rule", rule, "strict or conventional treatment of unmatched bars")->capture_default_str();
    bn_cmd->callback([&] {
        action = [&] {
            auto r = parse_rule(rule);
            std::vector<Barcode> bars;
            for (const auto& path : paths) bars.push_back(bars_of(read_json(path)));
            if (paths.size() == 2) {
                emit(common, json{{"distance", to_json(bottleneck(bars[0], bars[1], r))}, {"rule", rule}});
                return;
            }
            auto m = distance_matrix(paths, common.jobs, [&](std::size_t i, std::size_t j) { return bottleneck(bars[i], bars[j], r); });
            m["rule"] = rule;
            emit(common, m);
        };
    });

    auto* il_cmd = verb("interleave", "Interleaving distance between complexes");
    il_cmd->add_option("inputs", paths, "Two complexes, or more for a distance matrix")->required()->expected(2, -1);
    il_cmd->add_flag("--chain-level", chain, "Also search chain maps directly");
    il_cmd->add_flag("--shift-invariant", shift_inv, "Also minimise over shifts of the first complex");
    il_cmd->callback([&] {
        action = [&] {
            std::vector<FilteredComplex> cs;
            for (const auto& path : paths) cs.push_back(load_complex(path));
            if (cs.size() == 2) {
                json out{{"barcode", to_json(interleaving(cs[0], cs[1]))}};
                if (chain) out["chain_level"] = to_json(interleaving_chain_level(cs[0], cs[1], common.budget));
                if (shift_inv) out["shift_invariant"] = to_json(interleaving_shift_invariant(cs[0], cs[1]));
                emit(common, out);
                return;
            }
            emit(common, distance_matrix(paths, common.jobs, [&](std::size_t i, std::size_t j) {
                     return shift_inv ? interleaving_shift_invariant(cs[i], cs[j]) : interleaving(cs[i], cs[j]);
                 }));
        };
    });

    auto* hom_cmd = verb("hom-barcode", "Barcode of the complex of maps between two complexes");
    hom_cmd->add_option("source", path_a, "Complex JSON")->required();
    hom_cmd->add_option("target", path_b, "Complex JSON")->required();
    hom_cmd->callback([&] {
        action = [&] { emit(common, to_json(barcode(hom_complex(load_complex(path_a), load_complex(path_b))))); };
    });

    auto* mh_cmd = verb("min-homotopy", "Least filtration shift of a homotopy between two maps (the second defaults to 0)");
    mh_cmd->add_option("map", path_a, "Map JSON")->required();
    mh_cmd->add_option("other", path_b, "Map JSON with the same endpoints");
    mh_cmd->callback([&] {
        action = [&] {
            auto f = load_map(path_a);
            auto g = path_b.empty() ? zero_map(f.source, f.target, f.degree) : load_map(path_b);
            if (!(g.source == f.source) || !(g.target == f.target) || g.degree != f.degree)
                throw ValidationFailure("maps have different endpoints", {{"valid", false}});
            auto s = min_homotopy_shift(f, g);
            json out{{"shift", to_json(s)}};
            auto sigma = spectral_invariant(f);
            out["spectral_invariant"] = sigma ? to_json(*sigma) : json(nullptr);
            emit(common, out);
        };
    });

    auto* cone_cmd = verb("cone", "Mapping cone of a chain map");
    cone_cmd->add_option("map", path_a, "Map JSON")->required();
    cone_cmd->callback([&] { action = [&] { emit(common, to_json(cone(load_map(path_a)).complex)); }; });

    auto* acyc_cmd = verb("acyclic", "Least r for which a complex is r-acyclic, by bars and by null-homotopies");
    acyc_cmd->add_option("complex", path_a, "Complex JSON")->required();
    acyc_cmd->callback([&] {
        action = [&] {
            auto a = acyclicity_bound(load_complex(path_a));
            emit(common, json{{"barcode", to_json(a.barcode)}, {"homotopy", to_json(a.homotopy)}});
        };
    });

    auto* iso_cmd = verb("iso-defect", "Least r for which a map is an r-isomorphism, with a right inverse at twice that");
    iso_cmd->add_option("map", path_a, "Map JSON")->required();
    iso_cmd->callback([&] {
        action = [&] {
            auto f = load_map(path_a);
            auto r = iso_defect(f);
            json out{{"defect", to_json(r)}};
            if (r.is_finite()) {
                auto psi = right_inverse(f, r + r);
                out["right_inverse"] = psi ? entries_json(*psi) : json(nullptr);
            }
            emit(common, out);
        };
    });

    auto* tv_cmd = verb("triangle-verify",
                        "Check a weighted triangle; without phi and psi, search for the least weight instead");
    tv_cmd->add_option("triangle", path_a, "Triangle JSON")->required();
    tv_cmd->add_option("--max-weight", weight_text, "Largest weight tried by the search")->capture_default_str();
    tv_cmd->add_flag("--stable", stable, "Let the search also move the first object");
    tv_cmd->callback([&] {
        action = [&] {
            auto j = read_json(path_a);
            if (j.contains("phi") && j.contains("psi")) {
                auto diags = verify_triangle(triangle_from_json(j));
                emit(common, json{{"valid", diags.empty()}, {"diagnostics", to_json(diags)}});
                if (!diags.empty()) throw ValidationFailure("", {});
                return;
            }
            auto cert = certify_weight(loose_triangle_from_json(j), Real::parse(weight_text), stable, common.budget);
            emit(common, weight_certificate(cert));
        };
    });

    auto* tr_cmd = verb("triangle-rotate", "Rotate a weighted triangle one step");
    tr_cmd->add_option("triangle", path_a, "Triangle JSON with phi and psi")->required();
    tr_cmd->callback([&] {
        action = [&] {
            auto t = triangle_from_json(read_json(path_a));
            auto diags = verify_triangle(t);
            if (!diags.empty()) throw ValidationFailure("", {{"valid", false}, {"diagnostics", to_json(diags)}});
            emit(common, to_json(rotate(t)));
        };
    });

    auto* oct_cmd = verb("octahedron", "Complete two composable weighted triangles E->F->X and X->A->B");
    oct_cmd->add_option("first", path_a, "Triangle JSON")->required();
    oct_cmd->add_option("second", path_b, "Triangle JSON whose first object is the third object of the first")->required();
    oct_cmd->callback([&] {
        action = [&] {
            auto t1 = triangle_from_json(read_json(path_a));
            auto t2 = triangle_from_json(read_json(path_b));
            auto diags = verify_triangle(t1);
            for (const auto& d : verify_triangle(t2)) diags.push_back(d);
            if (!diags.empty()) throw ValidationFailure("", {{"valid", false}, {"diagnostics", to_json(diags)}});
            if (!(t1.c == t2.a)) throw ValidationFailure("", {{"valid", false}, {"diagnostics", to_json(std::vector<Diagnostic>{{"object", "triangles do not compose"}})}});
            auto o = octahedral(t1, t2);
            emit(common, json{{"third", to_json(o.third)}, {"fourth", to_json(o.fourth)}});
        };
    });

    auto* frag_cmd = verb("frag", "Interval for the fragmentation distance, with witness decompositions");
    frag_cmd->add_option("x", path_a, "Complex JSON")->required();
    frag_cmd->add_option("xp", path_b, "Complex JSON")->required();
    frag_cmd->add_option("--family", family, "Extra family members (0 is always included)");
    frag_cmd->add_flag("--shift-invariant", shift_inv, "Minimise over shifts of the first complex");
    frag_cmd->callback([&] {
        action = [&] {
            auto x = load_complex(path_a), xp = load_complex(path_b);
            FragOptions opts;
            opts.budget = common.budget;
            json grid = json::array();
            if (shift_inv) {
                auto r = frag_shift_invariant(x, xp, opts);
                for (const auto& g : r.grid) grid.push_back(to_json(g));
                emit(common, json{{"lower", to_json(r.lower)}, {"upper", to_json(r.upper)}, {"shift", to_json(r.shift)},
                                  {"grid", grid}});
                return;
            }
            auto r = frag_pseudometric(x, xp, load_family(family, x.p), opts);
            for (const auto& g : r.grid) grid.push_back(to_json(g));
            json witness{{"forward", r.forward ? to_json(*r.forward) : json(nullptr)},
                         {"backward", r.backward ? to_json(*r.backward) : json(nullptr)}};
            emit(common, json{{"lower", to_json(r.lower)}, {"upper", to_json(r.upper)}, {"witness", witness},
                              {"grid", grid}, {"exhaustive", r.exhaustive}});
        };
    });

    auto* p1_cmd = verb("prop1-bound", "Decompositions built from an optimal bar matching, against the bottleneck distance");
    p1_cmd->add_option("x", path_a, "Complex JSON")->required();
    p1_cmd->add_option("y", path_b, "Complex JSON")->required();
    p1_cmd->callback([&] {
        action = [&] {
            auto x = load_complex(path_a), y = load_complex(path_b);
            auto r = prop1_bound(x, y);
            json matching = json::array();
            for (auto [i, j] : r.matching) matching.push_back({i, j});
            bool verified = r.forward && r.backward && verify_decomposition(*r.forward, x).empty() &&
                            verify_decomposition(*r.backward, y).empty();
            emit(common, json{{"bound", to_json(r.bound)},
                              {"bottleneck", to_json(r.bottleneck)},
                              {"constant", to_json(r.constant)},
                              {"matching", matching},
                              {"verified", verified},
                              {"witness", {{"forward", r.forward ? to_json(*r.forward) : json(nullptr)},
                                           {"backward", r.backward ? to_json(*r.backward) : json(nullptr)}}}});
        };
    });

    auto* qf_cmd = verb("qf", "Decompositions of Y in which only the last step carries weight, X shifted freely");
    qf_cmd->add_option("y", path_a, "Complex JSON")->required();
    qf_cmd->add_option("x", path_b, "Complex JSON")->required();
    qf_cmd->add_option("--family", family, "Extra family members (0 is always included)");
    qf_cmd->callback([&] {
        action = [&] {
            auto y = load_complex(path_a), x = load_complex(path_b);
            FragOptions opts;
            opts.budget = common.budget;
            auto r = q_estimate(y, x, load_family(family, y.p), opts);
            json grid = json::array();
            for (const auto& g : r.grid) grid.push_back(to_json(g));
            emit(common, json{{"lower", to_json(r.lower)}, {"upper", to_json(r.upper)}, {"shift", to_json(r.shift)},
                              {"grid", grid}});
        };
    });

    auto* sub_cmd = verb("ingest-sublevel", "Reduced sublevel complex of a simplicial complex and a vertex function");
    sub_cmd->add_option("simplicial", path_a, "Simplicial complex JSON")->required();
    sub_cmd->add_option("--values", values_path, "CSV of id,value");
    sub_cmd->add_option("--p", p, "Prime characteristic")->capture_default_str();
    sub_cmd->callback([&] {
        action = [&] {
            auto k = simplicial_from_json(read_json(path_a));
            std::map<std::string, Real> f;
            if (!values_path.empty()) f = vertex_values_csv(read_file(values_path));
            emit(common, to_json(sublevel_complex(k, f, p)));
        };
    });

    auto* met_cmd = verb("ingest-metric", "Metric cone, suspension or mapping cone, or the log-diameter complex (rips)");
    met_cmd->add_option("kind", kind, "cone, suspension, mapcone or rips")->required()->check(
        CLI::IsMember({"cone", "suspension", "mapcone", "rips"}));
    met_cmd->add_option("distances", path_a, "Distance CSV")->required();
    met_cmd->add_option("--target", target_path, "Distance CSV of the target space (mapcone)");
    met_cmd->add_option("--map", map_path, "CSV of source_id,target_id (mapcone)");
    met_cmd->add_option("--grid", grid_text, "Comma-separated heights (default 0,0.25,0.5,0.75,1 or -0.5,...,0.5)");
    met_cmd->add_option("--max-dim", max_dim, "Largest simplex dimension (rips)")->capture_default_str();
    met_cmd->add_option("--floor", floor_text, "Level of the vertices (rips)");
    met_cmd->add_flag("--csv", csv, "Write a distance CSV instead of JSON");
    met_cmd->callback([&] {
        action = [&] {
            auto a = metric_csv(read_file(path_a));
            auto diags = validate_metric(a);
            if (!diags.empty()) throw ValidationFailure("", {{"valid", false}, {"diagnostics", to_json(diags)}});
            if (kind == "rips") {
                std::optional<Real> fl;
                if (!floor_text.empty()) fl = Real::parse(floor_text);
                emit(common, to_json(diameter_filtered_complex(a, max_dim, fl)));
                return;
            }
            std::vector<double> grid = grid_text.empty() ? std::vector<double>{0, 0.25, 0.5, 0.75, 1} : parse_grid(grid_text);
            FiniteMetricSpace out;
            if (kind == "cone") {
                out = metric_cone(a, grid);
            } else if (kind == "suspension") {
                if (grid_text.empty()) grid = {-0.5, -0.25, 0, 0.25, 0.5};
                out = metric_suspension(a, grid);
            } else {
                if (target_path.empty() || map_path.empty())
                    throw std::invalid_argument("mapcone needs --target and --map");
                auto b = metric_csv(read_file(target_path));
                auto bd = validate_metric(b);
                if (!bd.empty()) throw ValidationFailure("", {{"valid", false}, {"diagnostics", to_json(bd)}});
                MetricMap u{a, b, point_map_csv(read_file(map_path), a, b)};
                out = metric_mapping_cone(u, grid);
            }
            if (csv) {
                emit(common, metric_csv(out));
                return;
            }
            emit(common, json{{"ids", out.ids}, {"dist", out.dist}});
        };
    });

    auto* self_cmd = verb("selftest", "Run the built-in property checks");
    self_cmd->add_flag("--quick", quick, "Use a tenth of the trials");
    self_cmd->callback([&] {
        action = [&] {
            auto results = checks::run({1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11}, quick ? 0.1 : 1.0);
            json out = json::array();
            bool all = true;
            for (const auto& r : results) {
                out.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
                all = all && r.pass;
            }
            emit(common, json{{"checks", out}, {"pass", all}});
            if (!all) throw ValidationFailure("", {});
        };
    });

    auto* man_cmd = verb("manifest", "JSON schemas of every input and output format");
    man_cmd->callback([&] { action = [&] { emit(common, schemas()); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    try {
        action();
        return 0;
    } catch (const ValidationFailure& e) {
        if (!e.report.is_null()) emit(common, e.report);
        if (*e.what()) std::cerr << e.what() << "\n";
        return 2;
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exhausted: " << e.what() << "\n";
        return 3;
    } catch (const InputError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const json::exception& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
}
