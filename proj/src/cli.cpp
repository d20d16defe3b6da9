#include "divkit/cli.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "divkit/differences.hpp"
#include "divkit/distributions.hpp"
#include "divkit/errors.hpp"
#include "divkit/measures.hpp"
#include "divkit/report.hpp"
#include "divkit/verification.hpp"

namespace divkit::cli {

namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

template <typename T>
T parse_number(std::string_view text, const char* what) {
    T value{};
    const char* first = text.data();
    const char* last = first + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) {
        throw RejectedInput(std::string("invalid ") + what + ": '" + std::string(text) + "'");
    }
    return value;
}

struct InputOptions {
    std::string p;
    std::string q;
    std::string input;
    std::string format;
    std::string policy = "reject";
    double zero_floor = 0.0;

    bool has_file() const { return !input.empty(); }
    bool has_inline() const { return !p.empty() || !q.empty(); }
};

void add_input_options(CLI::App* app, InputOptions& o) {
    app->add_option("--p", o.p, "first distribution, comma-separated");
    app->add_option("--q", o.q, "second distribution, comma-separated");
    app->add_option("--input", o.input, "CSV or JSON file of distribution pairs");
    app->add_option("--format", o.format, "input format (csv|json); default from the file extension");
    app->add_option("--policy", o.policy, "validation policy")->check(CLI::IsMember({"reject", "renormalize"}));
    app->add_option("--zero-floor", o.zero_floor, "floor for nonpositive entries under renormalize");
}

std::vector<DistributionPair> load_input(const InputOptions& o) {
    ValidationPolicy policy;
    policy.mode = o.policy == "renormalize" ? ValidationMode::renormalize : ValidationMode::reject;
    policy.zero_floor = o.zero_floor;
    if (o.has_file() && o.has_inline()) throw UsageError("--input cannot be combined with --p/--q");
    if (o.has_file()) {
        const std::filesystem::path path(o.input);
        const InputFormat format = !o.format.empty()          ? parse_input_format(o.format)
                                   : path.extension() == ".json" ? InputFormat::json
                                                                 : InputFormat::csv;
        return load_pairs(path, format, policy);
    }
    if (o.p.empty() || o.q.empty()) throw UsageError("provide both --p and --q, or --input");
    const auto p = validate(parse_csv_row(o.p, 1), policy);
    const auto q = validate(parse_csv_row(o.q, 2), policy);
    return {DistributionPair(p, q)};
}

void write_output(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw UsageError("cannot open output file " + path);
    file << text;
    if (!file) throw UsageError("failed writing " + path);
}

Json header(std::string_view command) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = std::string(command);
    return j;
}

// compute

struct ComputeOptions {
    InputOptions input;
    std::string measure = "all";
    double s = 0.0;
    bool has_s = false;
    std::string output_format = "json";
    std::string output;
};

struct Quantity {
    std::string name;
    std::optional<double> s;
    double value;
};

std::vector<Quantity> compute_quantities(const ComputeOptions& o, const DistributionPair& pair) {
    std::vector<Quantity> q;
    if (o.measure == "all") {
        const MeasureTable table(pair);
        for (const auto id : kAllMeasures) q.push_back({std::string(to_string(id)), std::nullopt, table[id]});
    } else if (o.measure != "zeta" && o.measure != "xi") {
        const auto id = parse_measure_id(o.measure);
        if (!id) throw UsageError("unknown measure '" + o.measure + "'");
        q.push_back({o.measure, std::nullopt, evaluate(*id, pair)});
    }
    if (o.has_s && (o.measure == "all" || o.measure == "zeta")) q.push_back({"zeta", o.s, zeta(o.s, pair)});
    if (o.has_s && (o.measure == "all" || o.measure == "xi")) q.push_back({"xi", o.s, xi(o.s, pair)});
    return q;
}

int cmd_compute(const ComputeOptions& o, std::ostream& out) {
    if ((o.measure == "zeta" || o.measure == "xi") && !o.has_s) {
        throw UsageError("--measure " + o.measure + " needs --s");
    }
    if (o.output_format != "json" && o.output_format != "csv") {
        throw UsageError("--output-format must be json or csv");
    }
    const auto pairs = load_input(o.input);
    std::string text;
    if (o.output_format == "csv") {
        text = "pair,quantity,s,value\n";
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            const auto row = [&](const std::string& name, const std::string& s, double v) {
                text += std::to_string(i) + "," + name + "," + s + "," + format_number(v) + "\n";
            };
            for (const auto& qv : compute_quantities(o, pairs[i])) {
                row(qv.name, qv.s ? format_number(*qv.s) : "", qv.value);
            }
            const auto normalized = normalized_values(pairs[i]);
            for (int r = 1; r <= kChainLength; ++r) {
                row("normalized_" + std::string(normalized_member(r).symbol), "", normalized[r - 1]);
            }
        }
    } else {
        Json root = header("compute");
        root["measure"] = o.measure;
        root["s"] = o.has_s ? Json(o.s) : Json(nullptr);
        Json list = Json::array();
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            Json pj;
            pj["index"] = i;
            pj["n"] = pairs[i].size();
            Json measures = Json::object();
            for (const auto& qv : compute_quantities(o, pairs[i])) {
                if (qv.s) {
                    Json fj;
                    fj["s"] = *qv.s;
                    fj["value"] = qv.value;
                    measures[qv.name] = fj;
                } else {
                    measures[qv.name] = qv.value;
                }
            }
            pj["measures"] = measures;
            const auto normalized = normalized_values(pairs[i]);
            Json seq = Json::array();
            for (int r = 1; r <= kChainLength; ++r) {
                const auto& member = normalized_member(r);
                Json mj;
                mj["rank"] = r;
                mj["member"] = std::string(member.symbol);
                mj["coefficient"] = member.coefficient.str();
                mj["value"] = normalized[r - 1];
                seq.push_back(mj);
            }
            pj["normalized"] = seq;
            list.push_back(pj);
        }
        root["pairs"] = list;
        text = dump_json(root);
    }
    write_output(text, o.output, out);
    return kExitSuccess;
}

// verify

struct VerifyOptions {
    InputOptions input;
    std::size_t samples = 10000;
    std::string dims = "2..10";
    std::uint64_t seed = 1;
    double tol = kDefaultChainTolerance;
    std::vector<std::string> chains;
    std::size_t max_failures = 16;
    std::string output;
};

int cmd_verify(const VerifyOptions& o, std::ostream& out) {
    if (o.samples < 1) throw UsageError("--samples must be >= 1");
    if (!(o.tol >= 0.0)) throw UsageError("--tol must be >= 0");
    const auto dims = parse_dims(o.dims);

    std::vector<InequalityChain> selected;
    if (o.chains.empty()) {
        selected = chain_registry();
    } else {
        for (const auto& name : o.chains) {
            auto found = find_chains(name);
            if (found.empty()) throw UsageError("unknown chain '" + name + "'");
            selected.insert(selected.end(), found.begin(), found.end());
        }
    }

    const bool from_file = o.input.has_file() || o.input.has_inline();
    const auto pairs = from_file ? load_input(o.input) : random_pairs(o.samples, dims, o.seed);
    const auto reports = run_chains(selected, pairs, o.tol, o.max_failures);

    bool passed = true;
    Json chains = Json::array();
    for (std::size_t i = 0; i < reports.size(); ++i) {
        if (selected[i].gating() && !reports[i].passed()) passed = false;
        chains.push_back(to_json(reports[i], selected[i]));
    }
    Json root = header("verify");
    root["seed"] = o.seed;
    root["tolerance"] = o.tol;
    root["source"] = from_file ? "input" : "random";
    if (!from_file) {
        root["samples"] = o.samples;
        root["dims"] = dims;
    }
    root["pairs"] = pairs.size();
    root["passed"] = passed;
    root["chains"] = chains;
    root["scans"] = Json::array();
    write_output(dump_json(root), o.output, out);
    return passed ? kExitSuccess : kExitVerificationFailure;
}

// scan

struct ScanOptions {
    std::vector<std::string> functions;
    std::string grid = "1e-6..1e6:100000";
    std::string spacing = "log";
    double tol = kScanTolerance;
    bool limits = false;
    std::string plot_data;
    std::string output;
};

bool is_k2_candidate(AuxFunctionId id) {
    return id == AuxFunctionId::k2 || id == AuxFunctionId::k2_const3 || id == AuxFunctionId::k2_lead2;
}

void write_plot(const std::filesystem::path& dir, const std::string& name, const GridSpec& grid,
                const std::function<std::optional<double>(double)>& f) {
    std::string file_name = name;
    std::replace(file_name.begin(), file_name.end(), ':', '_');
    std::string text = "x,value\n";
    for (std::size_t i = 0; i < grid.points; ++i) {
        const double x = grid.point(i);
        if (const auto v = f(x)) text += format_number(x) + "," + format_number(*v) + "\n";
    }
    std::ofstream file(dir / (file_name + ".csv"), std::ios::binary);
    if (!file) throw UsageError("cannot write plot data in " + dir.string());
    file << text;
}

int cmd_scan(const ScanOptions& o, std::ostream& out) {
    GridSpec grid = parse_grid(o.grid);
    if (o.spacing == "log") grid.spacing = Spacing::log;
    else if (o.spacing == "linear") grid.spacing = Spacing::linear;
    else throw UsageError("--spacing must be log or linear");
    grid.validate();
    if (!(o.tol >= 0.0)) throw UsageError("--tol must be >= 0");

    std::vector<std::string> names = o.functions;
    if (names.empty()) {
        for (const auto id : kAllAuxFunctions) names.emplace_back(to_string(id));
        for (const auto id : kAllGRatios) names.push_back("g:" + std::string(to_string(id)));
    }
    // resolve every id before doing any work
    struct Target {
        std::optional<AuxFunctionId> aux;
        std::optional<GRatioId> g;
    };
    std::vector<Target> targets;
    for (const auto& name : names) {
        if (name.starts_with("g:")) {
            const auto g = parse_g_ratio(std::string_view(name).substr(2));
            if (!g) throw UsageError("unknown g-ratio '" + name + "'");
            targets.push_back({std::nullopt, g});
        } else {
            const auto aux = parse_aux_function(name);
            if (!aux) throw UsageError("unknown function '" + name + "'");
            targets.push_back({aux, std::nullopt});
        }
    }
    if (!o.plot_data.empty()) std::filesystem::create_directories(o.plot_data);

    bool passed = true;
    Json scans = Json::array();
    for (const auto& t : targets) {
        Json sj;
        if (t.aux) {
            const auto rep = nonnegativity_scan(*t.aux, grid, o.tol);
            passed = passed && rep.pass;
            sj = to_json(rep);
            if (is_k2_candidate(*t.aux)) sj["factorization"] = to_json(k2_factorization_check(*t.aux));
            if (!o.plot_data.empty()) {
                write_plot(o.plot_data, rep.function, grid, [&](double x) -> std::optional<double> {
                    return static_cast<double>(aux_scaled<long double>(*t.aux, x).value);
                });
            }
        } else {
            const auto rep = g_monotonicity_scan(*t.g, grid, o.tol);
            passed = passed && rep.pass;
            sj = to_json(rep);
            if (o.limits) {
                const auto& info = g_ratio_info(*t.g);
                Json lj;
                lj["paper_limit"] = info.paper_limit.str();
                lj["paper_limit_value"] = info.paper_limit.value();
                try {
                    const double limit = g_limit_at_one(*t.g);
                    const double rel = std::abs(limit - info.paper_limit.value()) / info.paper_limit.value();
                    lj["value"] = limit;
                    lj["relative_error"] = rel;
                    lj["pass"] = rel <= 1e-6;
                    passed = passed && rel <= 1e-6;
                } catch (const ExtrapolationError& e) {
                    lj["value"] = nullptr;
                    lj["error"] = e.what();
                    lj["pass"] = false;
                    passed = false;
                }
                sj["limit"] = lj;
            }
            if (!o.plot_data.empty()) {
                write_plot(o.plot_data, rep.function, grid, [&](double x) -> std::optional<double> {
                    if (std::abs(x - 1.0) < kGExclusion) return std::nullopt;
                    return g_ratio(*t.g, x);
                });
            }
        }
        scans.push_back(sj);
    }
    Json root = header("scan");
    root["tolerance"] = o.tol;
    root["grid"] = to_json(grid);
    root["passed"] = passed;
    root["chains"] = Json::array();
    root["scans"] = scans;
    write_output(dump_json(root), o.output, out);
    return passed ? kExitSuccess : kExitVerificationFailure;
}

}  // namespace

std::vector<std::size_t> parse_dims(std::string_view text) {
    std::vector<std::size_t> dims;
    if (const auto dots = text.find(".."); dots != std::string_view::npos) {
        const auto lo = parse_number<std::size_t>(text.substr(0, dots), "dimension");
        const auto hi = parse_number<std::size_t>(text.substr(dots + 2), "dimension");
        if (lo > hi) throw RejectedInput("empty dimension range '" + std::string(text) + "'");
        if (hi - lo > 10000) throw RejectedInput("dimension range too long");
        for (std::size_t n = lo; n <= hi; ++n) dims.push_back(n);
    } else {
        std::size_t start = 0;
        while (start <= text.size()) {
            const auto comma = std::min(text.find(',', start), text.size());
            dims.push_back(parse_number<std::size_t>(text.substr(start, comma - start), "dimension"));
            start = comma + 1;
        }
    }
    for (const auto n : dims) {
        if (n < 2 || n > 1000000) throw RejectedInput("dimension " + std::to_string(n) + " outside [2, 10^6]");
    }
    return dims;
}

GridSpec parse_grid(std::string_view text) {
    const auto dots = text.find("..");
    const auto colon = text.rfind(':');
    if (dots == std::string_view::npos || colon == std::string_view::npos || colon < dots) {
        throw RejectedInput("grid must look like x_min..x_max:points, got '" + std::string(text) + "'");
    }
    GridSpec grid;
    grid.x_min = parse_number<double>(text.substr(0, dots), "grid bound");
    grid.x_max = parse_number<double>(text.substr(dots + 2, colon - dots - 2), "grid bound");
    grid.points = parse_number<std::size_t>(text.substr(colon + 1), "grid point count");
    grid.validate();
    return grid;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Divergence measures, inequality chains and scalar verification scans."};
    app.name("divkit");
    app.require_subcommand(1);

    ComputeOptions compute;
    auto* c = app.add_subcommand("compute", "evaluate measures on given distributions");
    add_input_options(c, compute.input);
    c->add_option("--measure", compute.measure, "all, a measure name, zeta or xi");
    auto* s_opt = c->add_option("--s", compute.s, "family parameter for zeta/xi");
    c->add_option("--output-format", compute.output_format, "json or csv");
    c->add_option("--output", compute.output, "write the report here instead of stdout");

    VerifyOptions verify;
    auto* v = app.add_subcommand("verify", "check inequality chains on random or supplied pairs");
    add_input_options(v, verify.input);
    v->add_option("--samples", verify.samples, "random pairs per dimension");
    v->add_option("--dims", verify.dims, "dimensions, 'a..b' or 'a,b,c'");
    v->add_option("--seed", verify.seed, "random seed");
    v->add_option("--tol", verify.tol, "absolute slack tolerance");
    v->add_option("--chain", verify.chains, "chain names (default: all)")->delimiter(',');
    v->add_option("--max-failures", verify.max_failures, "failures recorded per chain");
    v->add_option("--output", verify.output, "write the report here instead of stdout");

    ScanOptions scan;
    auto* sc = app.add_subcommand("scan", "grid scans of auxiliary functions and g-ratios");
    sc->add_option("--functions", scan.functions, "ids: m1.., k1.., ineq15.., g:<ratio>")->delimiter(',');
    sc->add_option("--grid", scan.grid, "x_min..x_max:points");
    sc->add_option("--spacing", scan.spacing, "log or linear");
    sc->add_option("--tol", scan.tol, "relative scan tolerance");
    sc->add_flag("--limits", scan.limits, "also extrapolate g-ratio limits at x = 1");
    sc->add_option("--plot-data", scan.plot_data, "directory for x,value CSV files");
    sc->add_option("--output", scan.output, "write the report here instead of stdout");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitSuccess : kExitUsage;
    }
    compute.has_s = s_opt->count() > 0;

    try {
        if (c->parsed()) return cmd_compute(compute, out);
        if (v->parsed()) return cmd_verify(verify, out);
        return cmd_scan(scan, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
    }
    return kExitUsage;
}

}  // namespace divkit::cli
