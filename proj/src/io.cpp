#include "tpc/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "tpc/triangles.hpp"

namespace tpc {

namespace {

std::string shortest(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw std::invalid_argument(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

std::vector<std::string> split(const std::string& line, char sep = ',') {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, sep)) {
        auto b = cell.find_first_not_of(" \t\r");
        auto e = cell.find_last_not_of(" \t\r");
        out.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
    }
    if (!line.empty() && line.back() == sep) out.emplace_back();
    return out;
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        out.push_back(line);
    }
    return out;
}

double parse_double(const std::string& s) {
    double v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) throw InputError("not a number: \"" + s + "\"");
    return v;
}

std::size_t index_of(const FilteredComplex& c, const std::string& id) {
    auto i = c.find(id);
    if (!i) throw std::invalid_argument("unknown generator \"" + id + "\"");
    return *i;
}

}  // namespace

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

json read_json(const std::string& path) {
    try {
        return json::parse(read_file(path));
    } catch (const json::parse_error& e) {
        throw InputError(path + ": " + e.what());
    }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json to_json(const Real& r) {
    if (!r.is_finite()) return r.is_pos_inf() ? "inf" : "-inf";
    if (r.den() == 1 && r.num() > -(1LL << 53) && r.num() < (1LL << 53)) return r.num();
    if (r.is_decimal()) {
        double d = r.to_double();
        if (shortest(d) == r.str() || Real::parse(shortest(d)) == r) return d;
    }
    return r.str();
}

Real real_from_json(const json& j) {
    if (j.is_number_integer()) return Real(j.get<long long>());
    if (j.is_number_float()) return Real::parse(shortest(j.get<double>()));
    if (j.is_string()) return Real::parse(j.get<std::string>());
    throw std::invalid_argument("expected a number or numeric string, got " + j.dump());
}

json to_json(const FilteredComplex& c) {
    json gens = json::array(), bd = json::array();
    for (const auto& g : c.generators) gens.push_back({{"id", g.id}, {"deg", g.degree}, {"filt", to_json(g.filt)}});
    for (std::size_t j = 0; j < c.size(); ++j)
        for (const auto& e : c.boundary.column(j))
            bd.push_back({{"from", c.generators[j].id}, {"to", c.generators[e.row].id}, {"coeff", e.value}});
    return {{"p", c.p}, {"generators", gens}, {"boundary", bd}};
}

FilteredComplex complex_from_json(const json& j) {
    Scalar p = j.contains("p") ? j.at("p").get<Scalar>() : 2;
    if (!is_prime(p)) throw std::invalid_argument("p = " + std::to_string(p) + " is not prime");
    std::vector<Generator> gens;
    for (const auto& g : field(j, "generators"))
        gens.push_back({field(g, "id").get<std::string>(), field(g, "deg").get<int>(), real_from_json(field(g, "filt"))});
    std::vector<BoundaryTerm> terms;
    if (j.contains("boundary"))
        for (const auto& t : j.at("boundary"))
            terms.push_back({field(t, "from").get<std::string>(), field(t, "to").get<std::string>(),
                             t.contains("coeff") ? t.at("coeff").get<long long>() : 1});
    return make_complex(std::move(gens), terms, p);
}

json to_json(const Barcode& b) {
    json bars = json::array();
    for (const auto& bar : b.bars)
        bars.push_back({{"deg", bar.degree}, {"birth", to_json(bar.birth)}, {"death", to_json(bar.death)}});
    return {{"bars", bars}};
}

Barcode barcode_from_json(const json& j) {
    std::vector<Bar> bars;
    for (const auto& b : field(j, "bars")) {
        Bar bar{field(b, "deg").get<int>(), real_from_json(field(b, "birth")), real_from_json(field(b, "death"))};
        if (!bar.birth.is_finite() || !(bar.birth < bar.death))
            throw std::invalid_argument("bar must have a finite birth below its death");
        bars.push_back(bar);
    }
    return make_barcode(std::move(bars));
}

std::string barcode_csv(const Barcode& b) {
    std::string out = "deg,birth,death\n";
    for (const auto& bar : b.bars)
        out += std::to_string(bar.degree) + "," + bar.birth.str() + "," + bar.death.str() + "\n";
    return out;
}

Barcode bars_of(const json& j) {
    if (j.is_object() && j.contains("bars")) return barcode_from_json(j);
    auto c = complex_from_json(j);
    auto diags = validate(c);
    if (!diags.empty()) throw std::invalid_argument(diags.front().message);
    return barcode(c);
}

json entries_json(const ChainMap& f) {
    json out = json::array();
    for (std::size_t j = 0; j < f.source.size(); ++j)
        for (const auto& e : f.matrix.column(j))
            out.push_back({{"from", f.source.generators[j].id}, {"to", f.target.generators[e.row].id}, {"coeff", e.value}});
    return out;
}

json to_json(const ChainMap& f) {
    return {{"source", to_json(f.source)}, {"target", to_json(f.target)}, {"degree", f.degree}, {"entries", entries_json(f)}};
}

ChainMap map_from_entries(const json& entries, const FilteredComplex& source, const FilteredComplex& target, int degree) {
    PrimeField fld(source.p);
    ChainMap f{source, target, degree, SparseMatrix(target.size(), source.size())};
    for (const auto& e : entries) {
        auto from = index_of(source, field(e, "from").get<std::string>());
        auto to = index_of(target, field(e, "to").get<std::string>());
        long long c = e.contains("coeff") ? e.at("coeff").get<long long>() : 1;
        f.matrix.add_to(to, from, fld.from_int(c), fld);
    }
    return f;
}

ChainMap map_from_json(const json& j) {
    auto source = complex_from_json(field(j, "source"));
    auto target = complex_from_json(field(j, "target"));
    if (source.p != target.p) throw std::invalid_argument("source and target use different fields");
    int degree = j.contains("degree") ? j.at("degree").get<int>() : 0;
    return map_from_entries(j.contains("entries") ? j.at("entries") : json::array(), source, target, degree);
}

json to_json(const std::vector<Diagnostic>& diags) {
    json out = json::array();
    for (const auto& d : diags) out.push_back({{"code", d.code}, {"message", d.message}});
    return out;
}

json to_json(const WeightedTriangle& t) {
    return {{"a", to_json(t.a)},          {"b", to_json(t.b)},          {"c", to_json(t.c)},
            {"u", entries_json(t.u)},     {"v", entries_json(t.v)},     {"w", entries_json(t.w)},
            {"weight", to_json(t.weight)}, {"phi", entries_json(t.phi)}, {"psi", entries_json(t.psi)}};
}

LooseTriangle loose_triangle_from_json(const json& j) {
    LooseTriangle t;
    t.a = complex_from_json(field(j, "a"));
    t.b = complex_from_json(field(j, "b"));
    t.c = complex_from_json(field(j, "c"));
    t.u = map_from_entries(field(j, "u"), t.a, t.b);
    t.v = map_from_entries(field(j, "v"), t.b, t.c);
    t.w = map_from_entries(field(j, "w"), t.c, translate(t.a, 1));
    return t;
}

WeightedTriangle triangle_from_json(const json& j) {
    auto loose = loose_triangle_from_json(j);
    WeightedTriangle t;
    t.a = loose.a;
    t.b = loose.b;
    t.c = loose.c;
    t.u = loose.u;
    t.v = loose.v;
    t.weight = real_from_json(field(j, "weight"));
    t.w = rebase(loose.w, t.c, shift(translate(t.a, 1), -t.weight));
    auto cu = cone(t.u).complex;
    t.phi = map_from_entries(field(j, "phi"), cu, t.c);
    t.psi = map_from_entries(field(j, "psi"), shift(t.c, t.weight), cu);
    return t;
}

json to_json(const ConeDecomposition& d) {
    json steps = json::array();
    auto lin = d.linearization();
    for (std::size_t i = 0; i < d.steps.size(); ++i) {
        const auto& s = d.steps[i];
        steps.push_back({{"weight", to_json(s.triangle.weight)},
                         {"t", to_json(s.t)},
                         {"q", to_json(s.q)},
                         {"s", to_json(s.s)},
                         {"added", to_json(lin[i])}});
    }
    json out = {{"steps", steps}, {"weight", to_json(decomposition_weight(d))}};
    out["comparison"] = d.comparison == ConeDecomposition::npos ? json(nullptr) : json(d.comparison);
    return out;
}

SimplicialComplex simplicial_from_json(const json& j) {
    SimplicialComplex k;
    for (const auto& s : field(j, "simplices")) {
        Simplex x;
        for (const auto& v : field(s, "verts")) x.verts.push_back(v.is_string() ? v.get<std::string>() : v.dump());
        if (s.contains("filt") && !s.at("filt").is_null()) x.filt = real_from_json(s.at("filt"));
        k.simplices.push_back(std::move(x));
    }
    return k;
}

std::map<std::string, Real> vertex_values_csv(const std::string& text) {
    std::map<std::string, Real> out;
    auto rows = lines(text);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        auto cells = split(rows[i]);
        if (cells.size() != 2) throw InputError("vertex values: expected id,value on line " + std::to_string(i + 1));
        try {
            out[cells[0]] = Real::parse(cells[1]);
        } catch (const std::exception&) {
            if (i == 0) continue;
            throw InputError("vertex values: bad value \"" + cells[1] + "\"");
        }
    }
    return out;
}

FiniteMetricSpace metric_csv(const std::string& text) {
    auto rows = lines(text);
    if (rows.empty()) throw InputError("distance matrix: empty input");
    FiniteMetricSpace m;
    m.ids = split(rows[0]);
    bool corner = !m.ids.empty() && m.ids.front().empty();
    if (corner) m.ids.erase(m.ids.begin());
    const std::size_t n = m.ids.size();
    if (rows.size() != n + 1) throw InputError("distance matrix: expected " + std::to_string(n) + " rows");
    for (std::size_t i = 0; i < n; ++i) {
        auto cells = split(rows[i + 1]);
        if (cells.size() == n + 1) {
            if (cells.front() != m.ids[i]) throw InputError("distance matrix: row " + std::to_string(i + 1) + " label");
            cells.erase(cells.begin());
        }
        if (cells.size() != n) throw InputError("distance matrix: row " + std::to_string(i + 1) + " has wrong length");
        std::vector<double> row;
        for (const auto& c : cells) row.push_back(parse_double(c));
        m.dist.push_back(std::move(row));
    }
    return m;
}

std::string metric_csv(const FiniteMetricSpace& m) {
    std::string out;
    for (std::size_t i = 0; i < m.size(); ++i) out += (i ? "," : "") + m.ids[i];
    out += "\n";
    for (const auto& row : m.dist) {
        for (std::size_t j = 0; j < row.size(); ++j) out += (j ? "," : "") + shortest(row[j]);
        out += "\n";
    }
    return out;
}

std::vector<std::size_t> point_map_csv(const std::string& text, const FiniteMetricSpace& source,
                                       const FiniteMetricSpace& target) {
    auto find = [](const FiniteMetricSpace& m, const std::string& id) -> std::optional<std::size_t> {
        for (std::size_t i = 0; i < m.size(); ++i)
            if (m.ids[i] == id) return i;
        return std::nullopt;
    };
    std::vector<std::optional<std::size_t>> image(source.size());
    auto rows = lines(text);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        auto cells = split(rows[i]);
        if (cells.size() != 2) throw InputError("point map: expected source,target on line " + std::to_string(i + 1));
        auto s = find(source, cells[0]);
        auto t = find(target, cells[1]);
        if (!s || !t) {
            if (i == 0) continue;
            throw std::invalid_argument("point map: unknown point on line " + std::to_string(i + 1));
        }
        image[*s] = *t;
    }
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < image.size(); ++i) {
        if (!image[i]) throw std::invalid_argument("point map: no image for " + source.ids[i]);
        out.push_back(*image[i]);
    }
    return out;
}

}  // namespace tpc
