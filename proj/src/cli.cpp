#include "sublin/cli.hpp"

#include "sublin/capacity.hpp"
#include "sublin/error.hpp"
#include "sublin/expectation.hpp"
#include "sublin/expr.hpp"
#include "sublin/model_io.hpp"
#include "sublin/report.hpp"
#include "sublin/slln.hpp"
#include "sublin/suites.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

namespace sublin {

namespace {

struct RunConfig {
    std::string model_path;
    std::string phi;
    std::string semantics;
    std::vector<std::string> suites;
    std::size_t trials = 200;
    std::uint64_t seed = 0;
    std::optional<double> tolerance;
    std::string out_path;
    std::size_t steps = 100'000;
    std::string policy;
    double tail_fraction = 0.2;
    std::size_t threads = 0;
    std::vector<std::string> inputs;
};

struct Failure {
    int code;
    std::string message;
};

// 15 significant digits hides last-place rounding from the vertex sums.
std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

int exit_code_for(ErrorCode c) {
    switch (c) {
    case ErrorCode::IoError: return kExitIo;
    case ErrorCode::NegativeWeight:
    case ErrorCode::NotNormalized:
    case ErrorCode::LengthMismatch:
    case ErrorCode::SpaceMismatch:
    case ErrorCode::InvalidSpace:
    case ErrorCode::NonFinite:
    case ErrorCode::EmptyCredalSet:
    case ErrorCode::FormatError: return kExitModel;
    case ErrorCode::SyntaxError:
    case ErrorCode::UnknownIdentifier:
    case ErrorCode::ArityError:
    case ErrorCode::EvalError: return kExitExpression;
    default: return kExitComputation;
    }
}

std::optional<Semantics> semantics_flag(const RunConfig& c) {
    if (c.semantics.empty()) return std::nullopt;
    auto s = parse_semantics(c.semantics);
    if (!s) throw Failure{kExitUsage, "unknown semantics '" + c.semantics + "' (peng-forward, peng-backward, qwise)"};
    return s;
}

ModelDocument require_model(const RunConfig& c) {
    if (c.model_path.empty()) throw Failure{kExitUsage, "--model is required"};
    if (!std::filesystem::is_regular_file(c.model_path)) {
        throw Failure{kExitIo, "model file '" + c.model_path + "' does not exist"};
    }
    return load_model(c.model_path);
}

// Output is assembled in memory and written only once the command succeeds.
void emit(const RunConfig& c, const std::string& text, std::ostream& out) {
    if (c.out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(c.out_path, std::ios::binary);
    if (!f) throw Failure{kExitIo, "cannot write '" + c.out_path + "'"};
    f << text;
    if (!f.flush()) throw Failure{kExitIo, "write to '" + c.out_path + "' failed"};
}

int cmd_eval(const RunConfig& c, std::ostream& out) {
    if (c.phi.empty()) throw Failure{kExitUsage, "--phi is required"};
    const ModelDocument doc = require_model(c);
    // Arity is the model horizon when given, otherwise the highest coordinate used.
    const std::size_t probe = doc.horizon.value_or(64);
    ExprPtr e = parse(c.phi, probe);
    const std::size_t n = doc.horizon.value_or(std::max<std::size_t>(1, max_coordinate(*e)));
    const Semantics s = semantics_flag(c).value_or(doc.semantics.value_or(Semantics::PengForward));
    const SequenceModel m = doc.sequence(n, s);
    const Functional f = to_functional(e, n);
    std::ostringstream ss;
    ss << "upper " << num(eval_upper(m, f)) << "\n";
    ss << "lower " << num(eval_lower(m, f)) << "\n";
    emit(c, ss.str(), out);
    return kExitOk;
}

int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream& err) {
    std::vector<std::string> suites;
    for (const auto& s : c.suites) {
        if (s == "all") {
            const auto all = suite_names();
            suites.insert(suites.end(), all.begin(), all.end());
        } else if (is_suite(s)) {
            suites.push_back(s);
        } else {
            throw Failure{kExitUsage, "unknown suite '" + s + "'"};
        }
    }
    std::optional<SequenceModel> fixed;
    if (!c.model_path.empty()) {
        const ModelDocument doc = require_model(c);
        fixed = doc.sequence(doc.horizon.value_or(3),
                             semantics_flag(c).value_or(doc.semantics.value_or(Semantics::PengBackward)));
    }
    SuiteOptions o;
    o.trials = c.trials;
    o.seed = c.seed;
    o.threads = c.threads;
    if (c.tolerance) o.tolerance = *c.tolerance;

    std::vector<InequalityReport> all;
    for (const auto& s : suites) {
        auto r = run_suite(s, o, fixed ? &*fixed : nullptr);
        const auto failed = std::count_if(r.begin(), r.end(), [](const auto& x) { return !x.pass; });
        err << s << ": " << r.size() << " checks, " << failed << " failed\n";
        all.insert(all.end(), r.begin(), r.end());
    }
    sort_reports(all);
    std::string text;
    for (const auto& r : all) text += to_jsonl(r) + "\n";
    emit(c, text, out);
    const bool ok = std::all_of(all.begin(), all.end(), [](const auto& r) { return r.pass; });
    return ok ? kExitOk : kExitChecksFailed;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f || !(f << text) || !f.flush()) throw Failure{kExitIo, "cannot write '" + path + "'"};
}

int cmd_simulate(const RunConfig& c, std::ostream& out) {
    if (c.policy.empty()) throw Failure{kExitUsage, "--policy is required"};
    if (!(c.tail_fraction > 0.0 && c.tail_fraction <= 1.0)) throw Failure{kExitUsage, "--tail-fraction must be in (0, 1]"};
    if (c.steps == 0 || c.trials == 0) throw Failure{kExitUsage, "--steps and --trials must be positive"};
    const ModelDocument doc = require_model(c);
    const SelectionPolicy policy = SelectionPolicy::parse(c.policy);
    SimulationOptions so;
    so.tail_fraction = c.tail_fraction;
    const auto ts = simulate_many(doc.marginal, doc.values, policy, c.steps, c.seed, c.trials,
                                  c.threads ? c.threads : default_thread_count(), so);
    const double delta = c.tolerance.value_or(0.02);
    const InequalityReport band = slln_band_check(ts, doc.marginal, doc.values, delta);

    if (!c.out_path.empty()) {
        for (std::size_t i = 0; i < ts.size(); ++i) {
            const std::string stem = ts.size() == 1 ? c.out_path : c.out_path + "_" + std::to_string(i);
            std::ostringstream csv;
            write_trajectory_csv(csv, ts[i]);
            write_file(stem + ".csv", csv.str());
            write_file(stem + ".json", trajectory_metadata_json(ts[i]) + "\n");
        }
    }
    out << to_jsonl(band) << "\n";
    return band.pass ? kExitOk : kExitChecksFailed;
}

int cmd_choquet(const RunConfig& c, std::ostream& out) {
    const ModelDocument doc = require_model(c);
    RandomVar x = doc.values;
    std::string label = "x1";
    if (!c.phi.empty()) {
        const ExprPtr e = parse(c.phi, 1);
        label = print(*e);
        std::vector<double> v(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double point[1] = {x[i]};
            v[i] = eval_ast(*e, point);
        }
        x = RandomVar(x.space(), std::move(v));
    }
    const CredalSet& p = doc.marginal;
    nlohmann::ordered_json j;
    j["format_version"] = 1;
    j["phi"] = label;
    j["choquet_upper"] = choquet(CapacityView(p, CapacityMode::Upper), x).value;
    j["choquet_lower"] = choquet(CapacityView(p, CapacityMode::Lower), x).value;
    j["expect_upper"] = upper_expect(p, x);
    j["expect_lower"] = lower_expect(p, x);
    emit(c, j.dump() + "\n", out);
    return kExitOk;
}

int cmd_report(const RunConfig& c, std::ostream& out) {
    struct Row {
        std::size_t total = 0, failed = 0;
        double min_slack = 0.0;
    };
    std::map<std::string, Row> rows;
    for (const auto& path : c.inputs) {
        std::ifstream in(path);
        if (!in) throw Failure{kExitIo, "cannot open report file '" + path + "'"};
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            const InequalityReport r = report_from_json(line);
            Row& row = rows[r.name];
            row.min_slack = row.total ? std::min(row.min_slack, r.slack) : r.slack;
            ++row.total;
            if (!r.pass) ++row.failed;
        }
    }
    std::ostringstream ss;
    std::size_t width = 4;
    for (const auto& [name, row] : rows) width = std::max(width, name.size());
    char buf[512];
    std::snprintf(buf, sizeof buf, "%-*s %8s %8s %14s\n", static_cast<int>(width), "name", "checks", "failed",
                  "min_slack");
    ss << buf;
    bool ok = true;
    for (const auto& [name, row] : rows) {
        std::snprintf(buf, sizeof buf, "%-*s %8zu %8zu %14.6g\n", static_cast<int>(width), name.c_str(), row.total,
                      row.failed, row.min_slack);
        ss << buf;
        ok = ok && row.failed == 0;
    }
    emit(c, ss.str(), out);
    return ok ? kExitOk : kExitChecksFailed;
}

} // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig c;
    CLI::App app{"Sublinear expectation toolkit", "sublin"};
    app.require_subcommand(1, 1);

    auto* eval = app.add_subcommand("eval", "Upper and lower expectation of an expression under a model");
    eval->add_option("--model", c.model_path, "Model JSON")->required();
    eval->add_option("--phi", c.phi, "Expression in x1..xn")->required();
    eval->add_option("--semantics", c.semantics, "peng-forward | peng-backward | qwise");
    eval->add_option("--out", c.out_path);

    auto* verify = app.add_subcommand("verify", "Run verification suites and write JSONL reports");
    verify->add_option("--suite", c.suites, "Suite name or 'all' (repeatable)")->required();
    verify->add_option("--model", c.model_path, "Also check this model");
    verify->add_option("--semantics", c.semantics);
    verify->add_option("--trials", c.trials);
    verify->add_option("--seed", c.seed);
    verify->add_option("--tolerance", c.tolerance);
    verify->add_option("--out", c.out_path);
    verify->add_option("--threads", c.threads);

    auto* simulate = app.add_subcommand("simulate", "Simulate running means and check the SLLN band");
    simulate->add_option("--model", c.model_path)->required();
    simulate->add_option("--policy", c.policy, "fixed:I | iid | periodic:L[:G] | greedy:T | schedule:I,J")->required();
    simulate->add_option("--steps", c.steps);
    simulate->add_option("--trials", c.trials, "Number of trajectories")->default_val(1);
    simulate->add_option("--seed", c.seed);
    simulate->add_option("--tolerance", c.tolerance, "Band width delta (default 0.02)");
    simulate->add_option("--tail-fraction", c.tail_fraction);
    simulate->add_option("--out", c.out_path, "Prefix for CSV and metadata files");
    simulate->add_option("--threads", c.threads);

    auto* choq = app.add_subcommand("choquet", "Choquet integrals of the model variable");
    choq->add_option("--model", c.model_path)->required();
    choq->add_option("--phi", c.phi, "Expression in x1 applied to the values");
    choq->add_option("--out", c.out_path);

    auto* report = app.add_subcommand("report", "Summarize JSONL report files");
    report->add_option("inputs", c.inputs, "Report files")->required();
    report->add_option("--out", c.out_path);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (eval->parsed()) return cmd_eval(c, out);
        if (verify->parsed()) return cmd_verify(c, out, err);
        if (simulate->parsed()) return cmd_simulate(c, out);
        if (choq->parsed()) return cmd_choquet(c, out);
        if (report->parsed()) return cmd_report(c, out);
    } catch (const Failure& f) {
        err << "error: " << f.message << "\n";
        return f.code;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitComputation;
    }
    return kExitUsage;
}

} // namespace sublin
