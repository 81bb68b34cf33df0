#include "crtlab/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "crtlab/errors.hpp"

namespace crtlab {

using nlohmann::json;

namespace {

double number(const json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_number()) throw ValidationError(std::string("missing numeric field '") + key + "'");
    return j.at(key).get<double>();
}

const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ValidationError(std::string("missing field '") + key + "'");
    return j.at(key);
}

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double null_as_inf(const json& j) {
    if (j.is_null()) return std::numeric_limits<double>::infinity();
    if (!j.is_number()) throw ValidationError("expected a number or null");
    return j.get<double>();
}

std::vector<double> numbers(const json& j, const char* what) {
    if (!j.is_array()) throw ValidationError(std::string(what) + " must be an array");
    std::vector<double> v;
    for (const auto& e : j) {
        if (!e.is_number()) throw ValidationError(std::string(what) + " must hold numbers");
        v.push_back(e.get<double>());
    }
    return v;
}

}  // namespace

json path_to_json(const StepPath& p) {
    json jumps = json::array();
    for (const Jump& j : p.jumps()) jumps.push_back({j.time, j.size});
    return {{"domain_end", p.domain_end()}, {"drift", p.drift()}, {"jumps", jumps}, {"kind", to_string(p.kind())}};
}

StepPath path_from_json(const json& j) {
    const double T = number(j, "domain_end");
    const double drift = number(j, "drift");
    const json& js = field(j, "jumps");
    if (!js.is_array()) throw ValidationError("jumps must be an array");
    std::vector<Jump> jumps;
    for (const auto& e : js) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
            throw ValidationError("each jump must be [time, size]");
        jumps.push_back({e[0].get<double>(), e[1].get<double>()});
    }
    PathKind kind = PathKind::generic;
    if (j.contains("kind")) {
        if (!j.at("kind").is_string()) throw ValidationError("kind must be a string");
        kind = path_kind_from_string(j.at("kind").get<std::string>().c_str());
    }
    return StepPath(T, drift, std::move(jumps), kind);
}

json theta_to_json(const ThetaParam& t) {
    json j = {{"atoms", t.atoms()}, {"tail_l2", t.tail_l2()}};
    if (t.nominal_alpha()) j["nominal_alpha"] = *t.nominal_alpha();
    return j;
}

ThetaParam theta_from_json(const json& j) {
    std::vector<double> atoms = numbers(field(j, "atoms"), "atoms");
    const double tail = j.contains("tail_l2") ? number(j, "tail_l2") : 0.0;
    std::optional<double> alpha;
    if (j.contains("nominal_alpha") && !j.at("nominal_alpha").is_null()) alpha = number(j, "nominal_alpha");
    return ThetaParam(std::move(atoms), tail, alpha);
}

json labelled_to_json(const LabelledTree& t) {
    json parents = json::object();
    for (std::size_t v = 0; v < t.vertex_count(); ++v) {
        const int p = t.parent(v);
        parents[t.label(v)] = p < 0 ? json(nullptr) : json(t.label(static_cast<std::size_t>(p)));
    }
    return {{"k", t.k()}, {"parents", parents}, {"canonical", t.canonical()}};
}

json labelled_to_json(const MaybeLabelled& t, std::size_t k) {
    if (!t) return {{"k", k}, {"cemetery", true}, {"canonical", kCemetery}};
    return labelled_to_json(*t);
}

LabelledTree labelled_from_json(const json& j) {
    if (j.contains("cemetery") && j.at("cemetery") == true) throw ValidationError("tree is the cemetery state");
    const json& kj = field(j, "k");
    if (!kj.is_number_integer() || kj.get<long long>() < 0) throw ValidationError("k must be a non-negative integer");
    const auto k = kj.get<std::size_t>();
    const json& ps = field(j, "parents");
    if (!ps.is_object()) throw ValidationError("parents must be an object");
    const std::size_t n = ps.size();
    if (n < k + 1) throw ValidationError("parents lists fewer vertices than leaves");
    // any labelling is accepted as long as it names 0..k and b1..b_{n-k-1}
    auto id = [&](const std::string& s) -> int {
        if (!s.empty() && s[0] == 'b') {
            std::size_t pos = 0;
            const long i = std::stol(s.substr(1), &pos);
            if (pos + 1 != s.size() || i < 1 || static_cast<std::size_t>(i) > n - k - 1)
                throw ValidationError("bad branch label '" + s + "'");
            return static_cast<int>(k + static_cast<std::size_t>(i));
        }
        std::size_t pos = 0;
        long i = -1;
        try {
            i = std::stol(s, &pos);
        } catch (const std::exception&) {
            throw ValidationError("bad vertex label '" + s + "'");
        }
        if (pos != s.size() || i < 0 || static_cast<std::size_t>(i) > k) throw ValidationError("bad leaf label '" + s + "'");
        return static_cast<int>(i);
    };
    std::vector<int> parent(n, -2);
    for (auto it = ps.begin(); it != ps.end(); ++it) {
        const int v = id(it.key());
        if (it.value().is_null()) parent[static_cast<std::size_t>(v)] = -1;
        else if (it.value().is_string()) parent[static_cast<std::size_t>(v)] = id(it.value().get<std::string>());
        else throw ValidationError("parent labels must be strings or null");
    }
    return LabelledTree(k, std::move(parent));
}

json ordered_to_json(const OrderedTree& t) {
    json words = json::array();
    for (const auto& w : t.neveu_words()) words.push_back(neveu_to_string(w));
    return words;
}

OrderedTree ordered_from_json(const json& j) {
    if (!j.is_array()) throw ValidationError("ordered tree must be an array of Neveu words");
    std::vector<std::vector<int>> words;
    for (const auto& e : j) {
        if (!e.is_string()) throw ValidationError("Neveu words must be strings");
        const std::string s = e.get<std::string>();
        std::vector<int> w;
        if (!s.empty()) {
            std::stringstream ss(s);
            std::string part;
            while (std::getline(ss, part, '.')) {
                std::size_t pos = 0;
                int v = 0;
                try {
                    v = std::stoi(part, &pos);
                } catch (const std::exception&) {
                    throw ValidationError("bad Neveu word '" + s + "'");
                }
                if (pos != part.size() || v < 1) throw ValidationError("bad Neveu word '" + s + "'");
                w.push_back(v);
            }
        }
        words.push_back(std::move(w));
    }
    return OrderedTree::from_neveu_words(std::move(words));
}

json line_broken_to_json(const LineBrokenTree& t) {
    json segments = json::array(), attachments = json::array(), joins = json::array();
    double lo = 0.0;
    for (std::size_t j = 1; j <= t.k(); ++j) {
        segments.push_back({lo, t.cutpoint(j)});
        attachments.push_back(j == 1 ? 0.0 : t.attach_position(j));
        lo = t.cutpoint(j);
    }
    for (double v : t.joins()) joins.push_back(finite_or_null(v));
    return {{"theta", theta_to_json(t.theta())},
            {"segments", segments},
            {"attachments", attachments},
            {"colors", t.colors()},
            {"joins", joins}};
}

LineBrokenTree line_broken_from_json(const json& j) {
    ThetaParam theta = theta_from_json(field(j, "theta"));
    const json& segs = field(j, "segments");
    if (!segs.is_array()) throw ValidationError("segments must be an array");
    std::vector<double> eta;
    for (const auto& s : segs) {
        if (!s.is_array() || s.size() != 2 || !s[1].is_number()) throw ValidationError("segments must be [lo, hi]");
        eta.push_back(s[1].get<double>());
    }
    std::vector<int> colors;
    for (const auto& c : field(j, "colors")) {
        if (!c.is_number_integer()) throw ValidationError("colors must be integers");
        colors.push_back(c.get<int>());
    }
    std::vector<double> joins;
    for (const auto& v : field(j, "joins")) joins.push_back(null_as_inf(v));
    return LineBrokenTree(std::move(theta), std::move(joins), std::move(eta), std::move(colors));
}

json ptree_to_json(const PTree& t) {
    json parents = json::array();
    for (int p : t.parent) parents.push_back(p < 0 ? json(nullptr) : json(p + 1));
    return {{"n", t.n}, {"parents", parents}, {"root", t.root() + 1}, {"canonical", t.canonical()}};
}

PTree ptree_from_json(const json& j) {
    std::vector<int> parent;
    for (const auto& p : field(j, "parents")) {
        if (p.is_null()) parent.push_back(-1);
        else if (p.is_number_integer()) parent.push_back(p.get<int>() - 1);
        else throw ValidationError("ptree parents must be labels or null");
    }
    return make_ptree(std::move(parent));
}

json census_to_json(const ShapeCensus& c) {
    return {{"k", c.k}, {"total", c.total}, {"cemetery", c.cemetery}, {"counts", c.counts}};
}

void write_census_csv(std::ostream& os, const ShapeCensus& c) {
    os << "canonical_form,count\n";
    for (const auto& [shape, n] : c.counts) os << '"' << shape << "\"," << n << '\n';
    if (c.cemetery) os << kCemetery << ',' << c.cemetery << '\n';
}

void write_trajectory_csv(std::ostream& os, const Trajectory& t) {
    os.precision(17);
    os << "k_or_eps,estimate\n";
    for (const auto& [x, y] : t.points) os << x << ',' << y << '\n';
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ValidationError("'" + path + "' is not valid JSON: " + e.what());
    }
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << text;
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace crtlab
