#include "phiconv/problem.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace phiconv {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw ValidationError(where + ": " + what);
}

void reject_unknown_keys(const json& obj, const std::string& where,
                         const std::set<std::string>& allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key())) fail(where, "unknown key '" + it.key() + "'");
}

Eigen::MatrixXd parse_matrix(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) fail(where, "expected a nonempty array of rows");
    const size_t cols = j.front().is_array() ? j.front().size() : 0;
    if (cols == 0) fail(where, "expected rows to be nonempty arrays");
    Eigen::MatrixXd m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
    for (size_t r = 0; r < j.size(); ++r) {
        const auto& row = j[r];
        if (!row.is_array() || row.size() != cols)
            fail(where, "row " + std::to_string(r) + " has inconsistent length");
        for (size_t c = 0; c < cols; ++c) {
            if (!row[c].is_number())
                fail(where, "entry (" + std::to_string(r) + "," + std::to_string(c) +
                                ") is not a number");
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = row[c].get<double>();
        }
    }
    return m;
}

std::vector<int> parse_id_list(const json& j, const std::string& where, int n) {
    if (!j.is_array()) fail(where, "expected an array of point ids");
    std::vector<int> ids;
    for (size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number_integer())
            fail(where, "entry " + std::to_string(i) + " is not an integer");
        const int id = j[i].get<int>();
        if (id < 0 || id >= n)
            fail(where, "point id " + std::to_string(id) + " outside 0.." + std::to_string(n - 1));
        ids.push_back(id);
    }
    return ids;
}

GroundPtr parse_ground(const json& j) {
    if (!j.is_object()) fail("ground", "expected an object");
    reject_unknown_keys(j, "ground", {"points", "metric"});
    std::optional<std::vector<Eigen::VectorXd>> coords;
    std::optional<Eigen::MatrixXd> metric;
    if (j.contains("points")) {
        Eigen::MatrixXd m = parse_matrix(j["points"], "ground.points");
        std::vector<Eigen::VectorXd> pts;
        for (Eigen::Index i = 0; i < m.rows(); ++i) pts.push_back(m.row(i));
        coords = std::move(pts);
    }
    if (j.contains("metric")) metric = parse_matrix(j["metric"], "ground.metric");
    if (!coords && !metric) fail("ground", "needs 'points' or 'metric'");
    try {
        return build_ground_set(coords, metric);
    } catch (const Error& e) {
        fail("ground", e.what());
    }
}

NormKind parse_norm(const json& j) {
    const std::string s = j.get<std::string>();
    if (s == "sup") return NormKind::SupOnK;
    if (s == "l1") return NormKind::CoeffL1;
    if (s == "l2") return NormKind::CoeffL2;
    fail("phi.norm", "expected one of sup|l1|l2, got '" + s + "'");
}

PhiSpace parse_phi(const json& j, const GroundPtr& ground) {
    if (!j.is_object()) fail("phi", "expected an object");
    reject_unknown_keys(j, "phi", {"kind", "anchors", "gamma", "rows", "norm"});
    if (!j.contains("kind")) fail("phi", "missing 'kind'");
    const std::string kind = j["kind"].get<std::string>();
    const NormKind norm = j.contains("norm") ? parse_norm(j["norm"]) : NormKind::SupOnK;

    std::vector<int> anchors;
    if (j.contains("anchors")) anchors = parse_id_list(j["anchors"], "phi.anchors", ground->size());
    else
        for (int i = 0; i < ground->size(); ++i) anchors.push_back(i);

    try {
        if (kind == "linear") return PhiSpace::linear(ground, norm);
        if (kind == "affine") return PhiSpace::affine(ground, norm);
        if (kind == "distance") return PhiSpace::distance(ground, anchors, norm);
        if (kind == "rbf") {
            const double gamma = j.contains("gamma") ? j["gamma"].get<double>() : 1.0;
            return PhiSpace::rbf(ground, anchors, gamma, norm);
        }
        if (kind == "table") {
            if (!j.contains("rows")) fail("phi", "kind 'table' needs 'rows'");
            Eigen::MatrixXd rows = parse_matrix(j["rows"], "phi.rows");
            if (rows.cols() != ground->size()) fail("phi.rows", "row length must match point count");
            return PhiSpace::table(ground, std::move(rows), norm);
        }
    } catch (const ValidationError&) {
        throw;
    } catch (const Error& e) {
        fail("phi", e.what());
    }
    fail("phi.kind", "expected one of linear|affine|distance|rbf|table, got '" + kind + "'");
}

ExtendedFunction parse_f(const json& j, const GroundPtr& ground) {
    if (!j.is_object()) fail("f", "expected an object");
    reject_unknown_keys(j, "f", {"values", "infinite"});
    if (!j.contains("values")) fail("f", "missing 'values'");
    const auto& vals = j["values"];
    if (!vals.is_array() || static_cast<int>(vals.size()) != ground->size())
        fail("f.values", "expected one value per ground point");
    Eigen::VectorXd values(ground->size());
    for (int i = 0; i < ground->size(); ++i) {
        if (!vals[static_cast<size_t>(i)].is_number())
            fail("f.values", "entry " + std::to_string(i) + " is not a number");
        values[i] = vals[static_cast<size_t>(i)].get<double>();
    }
    std::vector<bool> finite(static_cast<size_t>(ground->size()), true);
    if (j.contains("infinite"))
        for (int id : parse_id_list(j["infinite"], "f.infinite", ground->size()))
            finite[static_cast<size_t>(id)] = false;
    try {
        return ExtendedFunction(ground, std::move(values), std::move(finite));
    } catch (const Error& e) {
        fail("f", e.what());
    }
}

}  // namespace

PointSubset ProblemFile::set(const std::string& name) const {
    auto it = sets.find(name);
    if (it == sets.end()) throw ValidationError("sets." + name + ": no such named set");
    return PointSubset(ground, it->second);
}

PointSubset ProblemFile::full() const { return PointSubset::full(ground); }

const PhiSpace& ProblemFile::space() const {
    if (!phi) throw ValidationError("phi: section required by this subcommand");
    return *phi;
}

ProblemFile parse_problem(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("problem file: ") + e.what());
    }
    if (!j.is_object()) throw ValidationError("top level: expected an object");
    reject_unknown_keys(j, "top level", {"ground", "phi", "f", "sets"});
    if (!j.contains("ground")) throw ValidationError("top level: missing 'ground'");

    ProblemFile p;
    p.ground = parse_ground(j["ground"]);
    if (j.contains("phi")) p.phi = parse_phi(j["phi"], p.ground);
    if (j.contains("f")) p.f = parse_f(j["f"], p.ground);
    if (j.contains("sets")) {
        const auto& sets = j["sets"];
        if (!sets.is_object()) throw ValidationError("sets: expected an object");
        for (auto it = sets.begin(); it != sets.end(); ++it) {
            auto ids = parse_id_list(it.value(), "sets." + it.key(), p.ground->size());
            if (ids.empty()) throw ValidationError("sets." + it.key() + ": empty set");
            p.sets.emplace(it.key(), std::move(ids));
        }
    }
    p.echo = ordered_json::parse(text);
    return p;
}

ProblemFile load_problem(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open problem file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_problem(buffer.str());
}

nlohmann::ordered_json ground_to_json(const GroundSet& g) {
    ordered_json out;
    if (g.has_coords()) {
        ordered_json pts = ordered_json::array();
        for (int i = 0; i < g.size(); ++i) {
            ordered_json row = ordered_json::array();
            for (int c = 0; c < g.dim(); ++c) row.push_back(g.coords()(i, c));
            pts.push_back(std::move(row));
        }
        out["points"] = std::move(pts);
    }
    ordered_json metric = ordered_json::array();
    for (int i = 0; i < g.size(); ++i) {
        ordered_json row = ordered_json::array();
        for (int c = 0; c < g.size(); ++c) row.push_back(g.metric()(i, c));
        metric.push_back(std::move(row));
    }
    out["metric"] = std::move(metric);
    return out;
}

GroundPtr ground_from_json(const nlohmann::json& j) { return parse_ground(j); }

}  // namespace phiconv
