#include "schreier/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "schreier/catalog.hpp"

namespace schreier {

namespace fs = std::filesystem;

namespace {

constexpr std::string_view kBuiltin = "builtin:";

bool is_builtin(const std::string& ref) { return ref.rfind(kBuiltin, 0) == 0; }
std::string builtin_name(const std::string& ref) { return ref.substr(kBuiltin.size()); }

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        throw StructuralError(std::string("missing field '") + key + "'");
    return j.at(key);
}

Elem to_elem(const Json& v) {
    if (!v.is_number_integer() || v.get<long long>() < 0)
        throw StructuralError("expected a non-negative index, got " + v.dump());
    return static_cast<Elem>(v.get<long long>());
}

std::vector<Elem> to_array(const Json& j) {
    if (!j.is_array()) throw StructuralError("expected an array, got " + j.dump());
    std::vector<Elem> out;
    for (const auto& v : j) out.push_back(to_elem(v));
    return out;
}

std::vector<std::vector<Elem>> to_rows(const Json& j) {
    if (!j.is_array()) throw StructuralError("expected an array of rows");
    std::vector<std::vector<Elem>> rows;
    for (const auto& r : j) rows.push_back(to_array(r));
    return rows;
}

std::vector<Elem> flatten(const std::vector<std::vector<Elem>>& rows, std::size_t n_rows, std::size_t n_cols,
                          std::string_view what) {
    if (rows.size() != n_rows)
        throw StructuralError(std::string(what) + " has " + std::to_string(rows.size()) + " rows, expected " +
                              std::to_string(n_rows));
    std::vector<Elem> cells;
    for (const auto& r : rows) {
        if (r.size() != n_cols)
            throw StructuralError(std::string(what) + " row has " + std::to_string(r.size()) +
                                  " entries, expected " + std::to_string(n_cols));
        cells.insert(cells.end(), r.begin(), r.end());
    }
    return cells;
}

std::set<Law> to_laws(const Json& j) {
    if (!j.is_array()) throw StructuralError("laws must be an array of names");
    std::set<Law> laws;
    for (const auto& l : j) {
        if (!l.is_string()) throw StructuralError("law names must be strings");
        laws.insert(law_from_string(l.get<std::string>()));
    }
    return laws;
}

Json laws_json(const std::set<Law>& laws) {
    Json arr = Json::array();
    for (Law l : laws) arr.push_back(std::string(to_string(l)));
    return arr;
}

Json rows_json(std::span<const Elem> cells, std::size_t n_cols) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < cells.size(); i += n_cols)
        rows.push_back(Json(std::vector<Elem>(cells.begin() + i, cells.begin() + i + n_cols)));
    return rows;
}

bool is_algebra_key(const std::string& key) {
    return key == "A" || key == "B" || key == "X" || key == "source" || key == "target";
}

AlgebraRef resolve_algebra(const Json& j, const fs::path& base) {
    if (j.is_string()) {
        const auto ref = j.get<std::string>();
        if (is_builtin(ref)) return Catalog::builtin().algebra(builtin_name(ref));
        return load_algebra_file(base / ref);
    }
    return algebra_from_json(j, base);
}

}  // namespace

void check_version(const Json& j) {
    if (j.is_object() && j.contains("version")) {
        const auto& v = j.at("version");
        if (!v.is_number_integer() || v.get<long long>() != kFormatVersion)
            throw StructuralError("unsupported format version " + v.dump() + " (expected " +
                                  std::to_string(kFormatVersion) + ")");
    }
}

Json read_json_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw FileError("cannot open '" + path.string() + "'");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw StructuralError("malformed JSON in '" + path.string() + "': " + e.what());
    }
}

namespace {

bool flat(const Json& j) {
    return j.is_array() && std::none_of(j.begin(), j.end(), [](const Json& x) { return x.is_structured(); });
}

// Indented like dump(2), except that arrays of scalars stay on one line.
void write_pretty(std::string& out, const Json& j, int depth) {
    const std::string pad(2 * (depth + 1), ' ');
    if (flat(j) || !j.is_structured() || j.empty()) {
        out += j.dump();
        return;
    }
    const bool object = j.is_object();
    out += object ? "{\n" : "[\n";
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        if (object) out += Json(it.key()).dump() + ": ";
        write_pretty(out, it.value(), depth + 1);
    }
    out += "\n" + std::string(2 * depth, ' ') + (object ? "}" : "]");
}

}  // namespace

std::string dump(const Json& j) {
    std::string out;
    write_pretty(out, j, 0);
    return out + "\n";
}

void write_json_file(const fs::path& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw FileError("cannot write '" + path.string() + "'");
    out << dump(j);
}

// ---------------------------------------------------------------------------
// Saving

Json to_json(const Algebra& a) {
    const std::size_t n = a.size();
    Json j = {{"version", kFormatVersion},
              {"kind", std::string(to_string(a.kind()))},
              {"size", n},
              {"add", rows_json(a.operations()[0].table.cells(), n)}};
    if (!a.extra_ops().empty()) {
        Json ops = Json::object();
        for (const auto& op : a.extra_ops()) ops[op.name] = rows_json(op.table.cells(), n);
        j["ops"] = std::move(ops);
    }
    Json laws = Json::object();
    for (const auto& op : a.operations())
        if (!op.laws.empty()) laws[op.name] = laws_json(op.laws);
    if (!laws.empty()) j["laws"] = std::move(laws);
    return j;
}

Json to_json(const Hom& h) {
    Json j = {{"version", kFormatVersion}, {"source", to_json(h.source())}, {"target", to_json(h.target())}};
    j["source"].erase("version");
    j["target"].erase("version");
    j["map"] = std::vector<Elem>(h.map().begin(), h.map().end());
    return j;
}

Json to_json(const Point& p) {
    Json A = to_json(p.A()), B = to_json(p.B());
    A.erase("version");
    B.erase("version");
    return {{"version", kFormatVersion},
            {"A", std::move(A)},
            {"B", std::move(B)},
            {"f", std::vector<Elem>(p.f().map().begin(), p.f().map().end())},
            {"s", std::vector<Elem>(p.s().map().begin(), p.s().map().end())}};
}

Json to_json(const MonoidAction& a) {
    Json B = to_json(a.acting()), X = to_json(a.object());
    B.erase("version");
    X.erase("version");
    return {{"version", kFormatVersion},
            {"B", std::move(B)},
            {"X", std::move(X)},
            {"act", rows_json(a.table(), a.object().size())}};
}

Json to_json(const SemiringAction& a) {
    Json B = to_json(a.acting()), X = to_json(a.object());
    B.erase("version");
    X.erase("version");
    return {{"version", kFormatVersion},
            {"B", std::move(B)},
            {"X", std::move(X)},
            {"left", rows_json(a.left_table(), a.object().size())},
            {"right", rows_json(a.right_table(), a.acting().size())}};
}

Json to_json(const AnyAction& a) {
    return std::visit([](const auto& x) { return to_json(x); }, a);
}

Json to_json(const SchreierWitness& w) {
    Json failures = Json::array();
    for (const auto& f : w.failures) {
        Json e = {{"kind", std::string(to_string(f.kind))}, {"element", f.element}};
        if (f.kind == SchreierStatus::UniquenessFails) {
            e["alpha1"] = f.alpha1;
            e["alpha2"] = f.alpha2;
        }
        failures.push_back(std::move(e));
    }
    Json j = {{"status", std::string(to_string(w.status))}, {"failures", std::move(failures)}};
    if (w.is_schreier()) j["retraction"] = w.retraction;
    return j;
}

Json to_json(const LawReport& r) {
    Json checks = Json::array();
    for (const auto& c : r.checks) {
        Json e = {{"op", c.op}, {"law", c.law}, {"holds", c.holds}};
        if (!c.holds) e["witness"] = c.witness;
        checks.push_back(std::move(e));
    }
    return {{"accepted", r.accepted()}, {"checks", std::move(checks)}};
}

// ---------------------------------------------------------------------------
// Loading

Json inline_references(const Json& j, const fs::path& base) {
    if (j.is_object()) {
        Json out = Json::object();
        for (const auto& [k, v] : j.items()) {
            if (is_algebra_key(k) && v.is_string() && !is_builtin(v.get<std::string>())) {
                const fs::path file = base / v.get<std::string>();
                Json loaded = inline_references(read_json_file(file), file.parent_path());
                check_version(loaded);
                loaded.erase("version");
                out[k] = std::move(loaded);
            } else {
                out[k] = inline_references(v, base);
            }
        }
        return out;
    }
    if (j.is_array()) {
        Json out = Json::array();
        for (const auto& v : j) out.push_back(inline_references(v, base));
        return out;
    }
    return j;
}

AlgebraRef algebra_from_json(const Json& j, const fs::path& base) {
    if (j.is_string()) return resolve_algebra(j, base);
    check_version(j);
    const auto& kind_j = field(j, "kind");
    if (!kind_j.is_string()) throw StructuralError("'kind' must be a string");
    const Kind kind = kind_from_string(kind_j.get<std::string>());
    const Elem n = to_elem(field(j, "size"));
    if (n == 0) throw StructuralError("'size' must be positive");
    const Table add(n, flatten(to_rows(field(j, "add")), n, n, "add table"));

    std::map<std::string, std::set<Law>> laws;
    if (j.contains("laws")) {
        if (!j.at("laws").is_object()) throw StructuralError("'laws' must be an object");
        for (const auto& [name, l] : j.at("laws").items()) laws[name] = to_laws(l);
    }
    std::vector<Operation> ops;
    if (j.contains("ops")) {
        if (!j.at("ops").is_object()) throw StructuralError("'ops' must be an object");
        for (const auto& [name, rows] : j.at("ops").items()) {
            Operation op{name, Table(n, flatten(to_rows(rows), n, n, name + " table")), {}};
            if (auto it = laws.find(name); it != laws.end()) op.laws = it->second;
            ops.push_back(std::move(op));
        }
    }
    for (const auto& [name, l] : laws)
        if (name != "add" && (!j.contains("ops") || !j.at("ops").contains(name)))
            throw StructuralError("laws declared for unknown operation '" + name + "'");
    return make_algebra(kind, add, std::move(ops), laws.count("add") ? laws["add"] : std::set<Law>{});
}

Hom hom_from_json(const Json& j, const fs::path& base) {
    check_version(j);
    return Hom(resolve_algebra(field(j, "source"), base), resolve_algebra(field(j, "target"), base),
               to_array(field(j, "map")));
}

Point point_from_json(const Json& j, const fs::path& base) {
    if (j.is_string()) {
        const auto ref = j.get<std::string>();
        if (is_builtin(ref)) return Catalog::builtin().point(builtin_name(ref));
        return load_point_file(base / ref);
    }
    check_version(j);
    auto A = resolve_algebra(field(j, "A"), base);
    auto B = resolve_algebra(field(j, "B"), base);
    return Point(Hom(A, B, to_array(field(j, "f"))), Hom(B, A, to_array(field(j, "s"))));
}

AnyAction action_from_json(const Json& j, const fs::path& base) {
    if (j.is_string()) {
        const auto ref = j.get<std::string>();
        if (is_builtin(ref)) {
            const auto name = builtin_name(ref);
            for (const auto& a : Catalog::builtin().monoid_actions())
                if (a.name == name) return a.action;
            for (const auto& a : Catalog::builtin().semiring_actions())
                if (a.name == name) return a.action;
            throw PreconditionError("no catalog action named '" + name + "'");
        }
        return load_action_file(base / ref);
    }
    check_version(j);
    auto B = resolve_algebra(field(j, "B"), base);
    auto X = resolve_algebra(field(j, "X"), base);
    if (j.contains("act")) return MonoidAction(B, X, flatten(to_rows(j.at("act")), B->size(), X->size(), "act"));
    if (j.contains("left") && j.contains("right"))
        return SemiringAction(B, X, flatten(to_rows(j.at("left")), B->size(), X->size(), "left"),
                              flatten(to_rows(j.at("right")), X->size(), B->size(), "right"));
    throw StructuralError("action needs 'act' or both 'left' and 'right'");
}

SchreierWitness witness_from_json(const Json& j) {
    SchreierWitness w;
    auto status_of = [](const std::string& s) {
        if (s == "Schreier") return SchreierStatus::Schreier;
        if (s == "ExistenceFails") return SchreierStatus::ExistenceFails;
        if (s == "UniquenessFails") return SchreierStatus::UniquenessFails;
        throw StructuralError("unknown Schreier status '" + s + "'");
    };
    w.status = status_of(field(j, "status").get<std::string>());
    for (const auto& f : field(j, "failures")) {
        SchreierFailure failure{status_of(field(f, "kind").get<std::string>()), to_elem(field(f, "element")), 0, 0};
        if (f.contains("alpha1")) failure.alpha1 = to_elem(f.at("alpha1"));
        if (f.contains("alpha2")) failure.alpha2 = to_elem(f.at("alpha2"));
        w.failures.push_back(failure);
    }
    if (j.contains("retraction")) w.retraction = to_array(j.at("retraction"));
    return w;
}

AlgebraRef load_algebra_file(const fs::path& path) {
    return algebra_from_json(read_json_file(path), path.parent_path());
}

Hom load_hom_file(const fs::path& path) { return hom_from_json(read_json_file(path), path.parent_path()); }

Point load_point_file(const fs::path& path) {
    return point_from_json(read_json_file(path), path.parent_path());
}

AnyAction load_action_file(const fs::path& path) {
    return action_from_json(read_json_file(path), path.parent_path());
}

}  // namespace schreier
