#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "crtlab/errors.hpp"
#include "crtlab/experiments.hpp"
#include "crtlab/json_io.hpp"
#include "crtlab/line_breaking.hpp"
#include "crtlab/parallel.hpp"
#include "crtlab/ptree.hpp"
#include "crtlab/samplers.hpp"
#include "crtlab/tree_extract.hpp"

#ifndef CRTLAB_VERSION
#define CRTLAB_VERSION "dev"
#endif

using nlohmann::json;
using namespace crtlab;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct Settings {
    std::uint64_t seed = 1;
    std::uint64_t stream = 0;
    unsigned workers = 1;
    std::string out;
    std::string format = "json";
    std::string config;

    std::string kind;
    std::string theta;
    std::vector<double> weights;
    std::size_t n = 0;
    std::size_t k = 1;
    std::size_t reps = 1;
    std::string stable;
    bool bridge = false;

    std::string path;
    std::vector<double> marks;

    std::vector<std::string> names;
    std::vector<std::string> inputs;
    json experiments = json::object();
};

json settings_json(const Settings& s, const std::string& command) {
    json j = {{"command", command}, {"seed", s.seed}, {"stream", s.stream}, {"workers", s.workers},
              {"format", s.format}};
    if (!s.out.empty()) j["out"] = s.out;
    if (command == "sample") {
        j["kind"] = s.kind;
        if (!s.theta.empty()) j["theta"] = s.theta;
        if (!s.weights.empty()) j["weights"] = s.weights;
        if (s.n) j["n"] = s.n;
        j["k"] = s.k;
        j["reps"] = s.reps;
        if (!s.stable.empty()) j["stable"] = s.stable;
        j["bridge"] = s.bridge;
    } else if (command == "extract") {
        j["path"] = s.path;
        if (s.marks.empty()) j["k"] = s.k;
        else j["marks"] = s.marks;
    } else if (command == "verify") {
        j["names"] = s.names;
        j["experiments"] = s.experiments;
    } else if (command == "report") {
        j["inputs"] = s.inputs;
    }
    return j;
}

// Binds a JSON config key to a CLI option so that flags given on the command
// line win and the file fills in the rest.
struct Binding {
    CLI::Option* opt = nullptr;
    std::function<void(const json&)> set;
};

template <class T>
Binding bind(CLI::Option* opt, T& target) {
    return {opt, [&target](const json& v) { target = v.get<T>(); }};
}

void apply_config(const std::string& file, const std::map<std::string, Binding>& bindings) {
    const json cfg = read_json_file(file);
    if (!cfg.is_object()) throw ValidationError("config file must hold a JSON object");
    for (auto it = cfg.begin(); it != cfg.end(); ++it) {
        auto b = bindings.find(it.key());
        if (b == bindings.end()) throw ValidationError("unknown config key '" + it.key() + "'");
        if (b->second.opt && b->second.opt->count() > 0) continue;
        try {
            b->second.set(it.value());
        } catch (const json::exception&) {
            throw ValidationError("config key '" + it.key() + "' has the wrong type");
        }
    }
}

void emit(const Settings& s, const std::string& command, const std::string& body) {
    if (s.out.empty()) {
        std::cout << body;
        if (!body.empty() && body.back() != '\n') std::cout << '\n';
        return;
    }
    write_text_file(s.out, body);
    json manifest = {{"tool", "crtlab"}, {"version", CRTLAB_VERSION}, {"output", s.out},
                     {"settings", settings_json(s, command)}};
    write_text_file(s.out + ".manifest.json", manifest.dump(2) + "\n");
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

ThetaParam load_theta(const std::string& spec) {
    if (spec.empty()) throw ValidationError("--theta is required");
    if (spec.size() > 5 && spec.substr(spec.size() - 5) == ".json") return theta_from_json(read_json_file(spec));
    return parse_theta_spec(spec);
}

std::vector<double> load_weights(const Settings& s) {
    std::vector<double> p = s.weights;
    if (p.empty()) {
        if (s.n == 0) throw ValidationError("give --weights or --n");
        p.assign(s.n, 1.0 / static_cast<double>(s.n));
    } else if (s.n && s.n != p.size()) {
        throw ValidationError("--n does not match the number of weights");
    }
    validate_weights(p);
    return p;
}

void require_format(const Settings& s) {
    if (s.format != "json" && s.format != "csv") throw ValidationError("--format must be json or csv");
}

std::string census_body(const Settings& s, const ShapeCensus& c) {
    if (s.format == "csv") {
        std::ostringstream os;
        write_census_csv(os, c);
        return os.str();
    }
    return dump(census_to_json(c));
}

int cmd_sample(const Settings& s) {
    require_format(s);
    if (s.reps == 0) throw ValidationError("--reps must be positive");
    const unsigned workers = resolve_workers(s.workers);
    std::ostringstream csv;
    csv.precision(17);
    if (s.kind == "icrt") {
        const ThetaParam theta = load_theta(s.theta);
        if (s.k == 0) throw ValidationError("--k must be positive");
        if (s.reps > 1) {
            auto shapes = run_replicates<MaybeLabelled>(s.reps, workers, [&](std::size_t r) {
                Rng rng(s.seed, s.stream + r);
                return MaybeLabelled(sample_line_breaking(theta, s.k, rng).reduced_tree(s.k));
            });
            emit(s, "sample", census_body(s, shape_census(shapes)));
            return 0;
        }
        Rng rng(s.seed, s.stream);
        const LineBrokenTree t = sample_line_breaking(theta, s.k, rng);
        if (s.format == "csv") {
            csv << "segment,lo,hi,attach,color\n";
            double lo = 0.0;
            for (std::size_t j = 1; j <= t.k(); ++j) {
                csv << j << ',' << lo << ',' << t.cutpoint(j) << ',' << (j == 1 ? 0.0 : t.attach_position(j)) << ','
                    << t.colors()[j - 1] << '\n';
                lo = t.cutpoint(j);
            }
            emit(s, "sample", csv.str());
        } else {
            json j = line_broken_to_json(t);
            j["reduced_tree"] = labelled_to_json(t.reduced_tree(s.k));
            emit(s, "sample", dump(j));
        }
        return 0;
    }
    if (s.kind == "ptree") {
        const std::vector<double> p = load_weights(s);
        auto one = [&](std::size_t r) {
            Rng rng(s.seed, s.stream + r);
            const VervaatSample x = sample_X_n(p, rng);
            return ptree_from_genealogy(lifo_tree(x.excursion), x.labels);
        };
        if (s.reps > 1) {
            auto trees = run_replicates<PTree>(s.reps, workers, one);
            ShapeCensus c;
            c.k = p.size();
            for (const PTree& t : trees) {
                ++c.counts[t.canonical()];
                ++c.total;
            }
            emit(s, "sample", census_body(s, c));
            return 0;
        }
        const PTree t = one(0);
        if (s.format == "csv") {
            csv << "vertex,parent\n";
            for (std::size_t v = 0; v < t.n; ++v) {
                csv << v + 1 << ',';
                if (t.parent[v] >= 0) csv << t.parent[v] + 1;
                csv << '\n';
            }
            emit(s, "sample", csv.str());
        } else {
            json j = ptree_to_json(t);
            j["weights"] = p;
            j["probability"] = cayley_pmf(p, t);
            emit(s, "sample", dump(j));
        }
        return 0;
    }
    if (s.kind == "path") {
        Rng rng(s.seed, s.stream);
        StepPath path;
        json extra = json::object();
        if (!s.theta.empty()) {
            const ThetaParam theta = load_theta(s.theta);
            if (s.bridge) {
                std::vector<std::size_t> labels;
                path = sample_Y_theta(theta, rng, &labels);
                extra["labels"] = labels;
            } else {
                const VervaatSample x = sample_X_theta(theta, rng);
                path = x.excursion;
                extra["labels"] = x.labels;
                extra["rho"] = x.rho;
            }
        } else {
            const std::vector<double> p = load_weights(s);
            if (s.bridge) {
                std::vector<std::size_t> labels;
                path = sample_Y_n(p, rng, &labels);
                extra["labels"] = labels;
            } else {
                const VervaatSample x = sample_X_n(p, rng);
                path = x.excursion;
                extra["labels"] = x.labels;
                extra["rho"] = x.rho;
            }
        }
        if (s.format == "csv") {
            csv << "time,size\n";
            for (const Jump& j : path.jumps()) csv << j.time << ',' << j.size << '\n';
            emit(s, "sample", csv.str());
        } else {
            json j = path_to_json(path);
            j.update(extra);
            emit(s, "sample", dump(j));
        }
        return 0;
    }
    if (s.kind == "theta") {
        ThetaParam theta;
        if (!s.stable.empty()) {
            double alpha = 0.0, delta = 0.0;
            char comma = 0;
            std::istringstream is(s.stable);
            if (!(is >> alpha >> comma >> delta) || comma != ',' || !is.eof())
                throw ValidationError("--stable expects alpha,delta");
            Rng rng(s.seed, s.stream);
            theta = sample_stable_jump_surrogate(alpha, delta, rng);
        } else {
            theta = load_theta(s.theta);
        }
        if (s.format == "csv") {
            csv << "index,atom\n";
            for (std::size_t i = 0; i < theta.size(); ++i) csv << i + 1 << ',' << theta[i] << '\n';
            emit(s, "sample", csv.str());
        } else {
            emit(s, "sample", dump(theta_to_json(theta)));
        }
        return 0;
    }
    throw ValidationError("unknown sample kind '" + s.kind + "'");
}

int cmd_extract(const Settings& s) {
    require_format(s);
    if (s.path.empty()) throw ValidationError("--path is required");
    const StepPath path = path_from_json(read_json_file(s.path));
    Rng rng(s.seed, s.stream);
    MarkSet marks;
    std::vector<std::size_t> perm;
    if (!s.marks.empty()) {
        std::vector<double> m = s.marks;
        std::sort(m.begin(), m.end());
        marks = MarkSet(std::move(m));
        marks.check_against(path);
        perm.resize(marks.size());
        std::iota(perm.begin(), perm.end(), std::size_t{0});
    } else {
        if (s.k == 0) throw ValidationError("--k must be positive");
        marks = sample_marks(s.k, rng, path);
        perm = rng.permutation(s.k);
    }
    const OrderedTree tree = extract_tree(path, marks);
    const MaybeLabelled lab = to_labelled(tree, perm);
    if (s.format == "csv") {
        std::ostringstream os;
        if (!lab) {
            os << "cemetery\n";
        } else {
            os << "label,parent\n";
            for (std::size_t v = 0; v < lab->vertex_count(); ++v) {
                os << lab->label(v) << ',';
                if (lab->parent(v) >= 0) os << lab->label(static_cast<std::size_t>(lab->parent(v)));
                os << '\n';
            }
        }
        emit(s, "extract", os.str());
    } else {
        json j = labelled_to_json(lab, marks.size());
        j["marks"] = std::vector<double>(marks.times().begin(), marks.times().end());
        j["ordered"] = ordered_to_json(tree);
        emit(s, "extract", dump(j));
    }
    return 0;
}

int cmd_verify(Settings s) {
    require_format(s);
    std::vector<std::string> names = s.names;
    if (names.empty()) throw ValidationError("name at least one experiment, or 'all'");
    if (std::find(names.begin(), names.end(), "all") != names.end()) names = experiment_names();
    for (const auto& n : names)
        if (!is_experiment(n)) {
            std::string known;
            for (const auto& e : experiment_names()) known += " " + e;
            throw ValidationError("unknown experiment '" + n + "'; known:" + known + " all");
        }
    if (!s.experiments.is_object()) throw ValidationError("experiments must be an object keyed by name");
    for (auto it = s.experiments.begin(); it != s.experiments.end(); ++it)
        if (!is_experiment(it.key())) throw ValidationError("unknown experiment '" + it.key() + "' in config");
    std::vector<ExperimentReport> reports;
    bool all_pass = true;
    for (const auto& n : names) {
        json cfg = s.experiments.contains(n) ? s.experiments[n] : json::object();
        if (!cfg.contains("seed")) cfg["seed"] = s.seed;
        if (s.stream && !cfg.contains("stream")) cfg["stream"] = default_config(n)["stream"].get<std::uint64_t>() + s.stream;
        reports.push_back(run_experiment(n, cfg, s.workers));
        const auto& r = reports.back();
        all_pass = all_pass && r.pass;
        std::cerr << (r.pass ? "PASS " : "FAIL ") << r.name << " (" << r.wall_time << " s)\n";
    }
    std::string body;
    if (s.format == "csv") {
        body = report_csv_header() + "\n";
        for (const auto& r : reports) body += report_csv_line(r) + "\n";
    } else if (reports.size() == 1) {
        body = dump(report_to_json(reports.front()));
    } else {
        json arr = json::array();
        for (const auto& r : reports) arr.push_back(report_to_json(r));
        body = dump({{"pass", all_pass}, {"reports", arr}});
    }
    emit(s, "verify", body);
    return all_pass ? 0 : kExitFail;
}

int cmd_report(const Settings& s) {
    require_format(s);
    if (s.inputs.empty()) throw ValidationError("give one or more report files");
    std::vector<json> reports;
    for (const auto& f : s.inputs) {
        const json j = read_json_file(f);
        if (j.contains("reports")) {
            for (const auto& r : j.at("reports")) reports.push_back(r);
        } else {
            reports.push_back(j);
        }
    }
    bool all_pass = true;
    std::ostringstream os;
    os.precision(10);
    if (s.format == "csv") os << report_csv_header() << '\n';
    json summary = json::array();
    for (const auto& r : reports) {
        if (!r.is_object() || !r.contains("name") || !r.contains("pass") || !r.at("pass").is_boolean())
            throw ValidationError("not an experiment report");
        const bool pass = r.at("pass").get<bool>();
        all_pass = all_pass && pass;
        double value = 0.0;
        for (const char* key : {"p_value", "max_deviation", "fraction"})
            if (r.contains(key) && r.at(key).is_number()) {
                value = r.at(key).get<double>();
                break;
            }
        if (s.format == "csv") {
            os << r.at("name").get<std::string>() << ',' << (pass ? "pass" : "fail") << ','
               << r.value("statistic", 0.0) << ',' << value << ',' << r.value("threshold", 0.0) << ','
               << r.value("replicate_count", std::size_t{0}) << ',' << r.value("wall_time", 0.0) << '\n';
        } else {
            summary.push_back({{"name", r.at("name")}, {"pass", pass}, {"value", value},
                               {"threshold", r.value("threshold", 0.0)}});
        }
    }
    emit(s, "report", s.format == "csv" ? os.str() : dump({{"pass", all_pass}, {"experiments", summary}}));
    return all_pass ? 0 : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sampling, tree extraction and verification for path-encoded random trees"};
    app.set_version_flag("--version", CRTLAB_VERSION);
    app.require_subcommand(1);
    app.fallthrough();

    Settings s;
    std::map<std::string, Binding> keys;
    keys["seed"] = bind(app.add_option("--seed", s.seed, "Master seed"), s.seed);
    keys["stream"] = bind(app.add_option("--stream", s.stream, "Substream index"), s.stream);
    keys["workers"] = bind(app.add_option("--workers", s.workers, "Worker threads (0 = all cores)"), s.workers);
    keys["out"] = bind(app.add_option("--out", s.out, "Output file (stdout when omitted)"), s.out);
    keys["format"] =
        bind(app.add_option("--format", s.format, "json or csv")->check(CLI::IsMember({"json", "csv"})), s.format);
    app.add_option("--config", s.config, "JSON file with the same keys as the flags")->check(CLI::ExistingFile);

    auto* sample = app.add_subcommand("sample", "Sample an ICRT, p-tree, path or theta");
    keys["kind"] = bind(sample->add_option("kind", s.kind, "icrt|ptree|path|theta")
                            ->check(CLI::IsMember({"icrt", "ptree", "path", "theta"})),
                        s.kind);
    keys["theta"] = bind(sample->add_option("--theta", s.theta, "geometric:r,N | polynomial:c,p,N | stable:a,d,seed | file.json"), s.theta);
    keys["weights"] = bind(sample->add_option("--weights", s.weights, "Comma-separated p-tree weights")->delimiter(','), s.weights);
    keys["n"] = bind(sample->add_option("--n", s.n, "Number of vertices (uniform weights)"), s.n);
    auto* k_sample = sample->add_option("--k", s.k, "Number of leaves / cutpoints");
    keys["reps"] = bind(sample->add_option("--reps", s.reps, "Replicates; more than one gives a shape census"), s.reps);
    keys["stable"] = bind(sample->add_option("--stable", s.stable, "alpha,delta for the stable-jump surrogate"), s.stable);
    keys["bridge"] = bind(sample->add_flag("--bridge", s.bridge, "Emit the bridge instead of the excursion"), s.bridge);

    auto* extract = app.add_subcommand("extract", "Extract the labelled spanning tree of a path");
    keys["path"] = bind(extract->add_option("--path", s.path, "Path JSON file"), s.path);
    auto* k_extract = extract->add_option("--k", s.k, "Number of uniform marks");
    auto* marks = extract->add_option("--marks", s.marks, "Explicit comma-separated mark times")->delimiter(',');
    marks->excludes(k_extract);
    keys["marks"] = bind(marks, s.marks);
    keys["k"] = {nullptr, [&](const json& v) {
                     if ((k_sample->count() == 0) && (k_extract->count() == 0)) s.k = v.get<std::size_t>();
                 }};

    auto* verify = app.add_subcommand("verify", "Run verification experiments");
    keys["names"] = bind(verify->add_option("names", s.names, "Experiment names or 'all'"), s.names);
    keys["experiments"] = {nullptr, [&](const json& v) { s.experiments = v; }};

    auto* report = app.add_subcommand("report", "Summarise report files");
    keys["inputs"] = bind(report->add_option("inputs", s.inputs, "Report JSON files")->check(CLI::ExistingFile), s.inputs);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (!s.config.empty()) apply_config(s.config, keys);
        if (*sample) return cmd_sample(s);
        if (*extract) return cmd_extract(s);
        if (*verify) return cmd_verify(s);
        if (*report) return cmd_report(s);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
