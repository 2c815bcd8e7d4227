#include "cli.hpp"

#include "sweep.hpp"
#include "validate.hpp"

#include <geaoi/geaoi.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace geaoi::cli {

namespace {

using json = nlohmann::ordered_json;

// Shortest representation that round-trips (at most 17 significant digits).
std::string shortest(double v) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

struct RateOptions {
    std::string scenario;
    double lambda = 0, mu = 0, mu_b = 0, mu_g = 0, lambda_b = 0, lambda_g = 0;
    CLI::Option *o_lambda = nullptr, *o_mu = nullptr, *o_mu_b = nullptr, *o_mu_g = nullptr,
                *o_lambda_b = nullptr, *o_lambda_g = nullptr;

    void attach(CLI::App &app, bool allow_single) {
        std::vector<std::string> kinds{"ge-service", "ge-arrival"};
        if (allow_single)
            kinds.push_back("single");
        app.add_option("--scenario", scenario, "Modulation scenario")
            ->required()
            ->check(CLI::IsMember(kinds));
        o_lambda = app.add_option("--lambda", lambda, "Arrival rate (ge-service, single)");
        o_mu = app.add_option("--mu", mu, "Service rate (ge-arrival, single)");
        o_mu_b = app.add_option("--mu-b", mu_b, "Bad-state service rate (ge-service)");
        o_mu_g = app.add_option("--mu-g", mu_g, "Good-state service rate (ge-service)");
        o_lambda_b = app.add_option("--lambda-b", lambda_b, "Bad-state arrival rate (ge-arrival)");
        o_lambda_g = app.add_option("--lambda-g", lambda_g, "Good-state arrival rate (ge-arrival)");
    }

    // Every flag in `needed` must be present and every other rate flag absent.
    void require_exactly(std::initializer_list<CLI::Option *> needed) const {
        for (CLI::Option *o : {o_lambda, o_mu, o_mu_b, o_mu_g, o_lambda_b, o_lambda_g}) {
            const bool want = std::find(needed.begin(), needed.end(), o) != needed.end();
            if (want && o->count() == 0)
                throw InvalidArgument("scenario " + scenario + " requires " + o->get_name());
            if (!want && o->count() > 0)
                throw InvalidArgument(o->get_name() + " is not a parameter of scenario " +
                                      scenario);
        }
    }

    Scenario make() const {
        if (scenario == "ge-service") {
            require_exactly({o_lambda, o_mu_b, o_mu_g});
            return GEServiceScenario(lambda, mu_b, mu_g);
        }
        if (scenario == "ge-arrival") {
            require_exactly({o_mu, o_lambda_b, o_lambda_g});
            return GEArrivalScenario(mu, lambda_b, lambda_g);
        }
        throw InvalidArgument("scenario " + scenario + " is not supported by this command");
    }
};

struct MatrixOptions {
    double p = 0, q = 0;
    CLI::Option *o_p = nullptr, *o_q = nullptr;

    void attach(CLI::App &app) {
        o_p = app.add_option("--p", p, "Transition probability bad -> good");
        o_q = app.add_option("--q", q, "Transition probability good -> bad");
    }
    TransitionMatrix make() const {
        if (o_p->count() == 0 || o_q->count() == 0)
            throw InvalidArgument("--p and --q are required");
        return TransitionMatrix(p, q);
    }
};

struct SimOptions {
    std::uint64_t cycles = 1'000'000;
    std::uint64_t seed = 0;
    std::uint32_t replications = 8;

    void attach(CLI::App &app) {
        app.add_option("--cycles", cycles, "Cycles per replication")->capture_default_str();
        app.add_option("--seed", seed, "Random seed")->capture_default_str();
        app.add_option("--replications", replications, "Independent replications")
            ->capture_default_str();
    }
};

struct OutputOptions {
    std::string format;
    std::string out;

    void attach(CLI::App &app, const std::string &default_format) {
        format = default_format;
        app.add_option("--format", format, "Output format")
            ->check(CLI::IsMember({"json", "csv"}))
            ->capture_default_str();
        app.add_option("--out", out, "Output path (default: standard output)");
    }
};

std::string csv_cell(const json &v) {
    if (v.is_null())
        return "";
    if (v.is_number_float())
        return shortest(v.get<double>());
    if (v.is_string())
        return v.get<std::string>();
    return v.dump();
}

// Flat object as a header line plus one row; arrays of flat objects as rows.
std::string render(const json &doc, const std::string &format) {
    if (format == "json")
        return doc.dump(2) + "\n";
    const json &first = doc.is_array() ? doc.front() : doc;
    std::ostringstream os;
    bool lead = true;
    for (const auto &[key, _] : first.items()) {
        os << (lead ? "" : ",") << key;
        lead = false;
    }
    os << '\n';
    const auto emit_row = [&os](const json &row) {
        bool lead = true;
        for (const auto &[_, value] : row.items()) {
            os << (lead ? "" : ",") << csv_cell(value);
            lead = false;
        }
        os << '\n';
    };
    if (doc.is_array())
        for (const auto &row : doc)
            emit_row(row);
    else
        emit_row(doc);
    return os.str();
}

void emit(const std::string &text, const OutputOptions &o, std::ostream &out) {
    if (o.out.empty()) {
        out << text;
        return;
    }
    std::ofstream file(o.out, std::ios::binary);
    if (!file)
        throw std::runtime_error("cannot open output file " + o.out);
    file << text;
}

// Expands `--config <file>` into flags inserted right after the subcommand,
// so explicit flags (parsed later) take precedence.
std::vector<std::string> expand_config(std::vector<std::string> args) {
    std::optional<std::string> path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size())
                throw InvalidArgument("--config requires a file path");
            path = args[i + 1];
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(i),
                       args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
            break;
        }
        if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
            break;
        }
    }
    if (!path)
        return args;

    std::ifstream in(*path);
    if (!in)
        throw InvalidArgument("cannot read config file " + *path);
    json cfg;
    try {
        cfg = json::parse(in);
    } catch (const json::exception &e) {
        throw InvalidArgument("config file " + *path + " is not valid JSON: " + e.what());
    }
    if (!cfg.is_object())
        throw InvalidArgument("config file must hold a JSON object");

    std::vector<std::string> tokens;
    for (const auto &[key, value] : cfg.items()) {
        std::string flag = "--" + key;
        std::replace(flag.begin(), flag.end(), '_', '-');
        if (value.is_boolean()) {
            if (value.get<bool>())
                tokens.push_back(flag);
            continue;
        }
        tokens.push_back(flag);
        if (value.is_number_float())
            tokens.push_back(shortest(value.get<double>()));
        else if (value.is_string())
            tokens.push_back(value.get<std::string>());
        else if (value.is_number())
            tokens.push_back(value.dump());
        else
            throw InvalidArgument("config value for '" + key + "' must be a scalar");
    }
    const auto at = args.empty() ? args.end() : args.begin() + 1;
    args.insert(at, tokens.begin(), tokens.end());
    return args;
}

struct AgeCommand {
    RateOptions rates;
    MatrixOptions matrix;
    OutputOptions output;

    void attach(CLI::App &app) {
        rates.attach(app, true);
        matrix.attach(app);
        output.attach(app, "json");
    }

    int run(std::ostream &out) const {
        json doc;
        doc["scenario"] = rates.scenario;
        if (rates.scenario == "single") {
            rates.require_exactly({rates.o_lambda, rates.o_mu});
            if (matrix.o_p->count() || matrix.o_q->count())
                throw InvalidArgument("scenario single takes no transition probabilities");
            doc["lambda"] = rates.lambda;
            doc["mu"] = rates.mu;
            doc["delta"] = age_single_state(rates.lambda, rates.mu);
        } else {
            const auto scenario = rates.make();
            const auto P = matrix.make();
            const auto pi = stationary_distribution(P);
            const auto b = age(scenario, P);
            doc["p"] = P.p();
            doc["q"] = P.q();
            doc["pi_b"] = pi.pi_b;
            doc["pi_g"] = pi.pi_g;
            doc["EQ_b"] = b.eq_b;
            doc["EQ_g"] = b.eq_g;
            doc["EY_b"] = b.ey_b;
            doc["EY_g"] = b.ey_g;
            doc["delta"] = b.delta;
        }
        emit(render(doc, output.format), output, out);
        return kExitOk;
    }
};

struct SimulateCommand {
    RateOptions rates;
    MatrixOptions matrix;
    SimOptions sim;
    OutputOptions output;
    std::string initial_state = "stationary";
    std::string estimator = "sawtooth";
    unsigned threads = 0;

    void attach(CLI::App &app) {
        rates.attach(app, false);
        matrix.attach(app);
        sim.attach(app);
        app.add_option("--initial-state", initial_state, "Starting modulation state")
            ->check(CLI::IsMember({"stationary", "bad", "good"}))
            ->capture_default_str();
        app.add_option("--estimator", estimator,
                       "Area partition: delivery-to-delivery sawtooth or per-cycle trapezoid")
            ->check(CLI::IsMember({"sawtooth", "trapezoid"}))
            ->capture_default_str();
        app.add_option("--threads", threads, "Worker threads (0: hardware concurrency)");
        output.attach(app, "json");
    }

    int run(std::ostream &out) const {
        SimConfig cfg{.scenario = rates.make(), .P = matrix.make()};
        if (initial_state == "bad")
            cfg.initial_state = State::Bad;
        else if (initial_state == "good")
            cfg.initial_state = State::Good;
        cfg.num_cycles = sim.cycles;
        cfg.seed = sim.seed;
        cfg.replications = sim.replications;
        cfg.threads = threads;
        const auto r = estimator == "sawtooth" ? simulate_cycles(cfg)
                                               : simulate_area_paper_partition(cfg);
        json doc;
        doc["scenario"] = rates.scenario;
        doc["p"] = cfg.P.p();
        doc["q"] = cfg.P.q();
        doc["estimator"] = estimator;
        doc["delta_hat"] = r.delta_hat;
        doc["std_error"] = r.std_error;
        doc["delta_analytic"] = age(cfg.scenario, cfg.P).delta;
        doc["cycles"] = sim.cycles;
        doc["cycles_total"] = r.cycles_total;
        doc["sim_time_total"] = r.sim_time_total;
        doc["seed"] = sim.seed;
        doc["replications"] = sim.replications;
        emit(render(doc, output.format), output, out);
        return kExitOk;
    }
};

struct OptimizeCommand {
    RateOptions rates;
    OutputOptions output;
    double c_b = 0, c_g = 0, budget = 0;
    double epsilon = default_epsilon;
    CLI::Option *o_cb = nullptr, *o_cg = nullptr, *o_budget = nullptr;

    void attach(CLI::App &app) {
        rates.attach(app, false);
        o_cb = app.add_option("--c-b", c_b, "Cost per unit time in the bad state");
        o_cg = app.add_option("--c-g", c_g, "Cost per unit time in the good state");
        o_budget = app.add_option("--budget", budget, "Average cost budget per unit time");
        app.add_option("--epsilon", epsilon, "Distance kept from open boundaries")
            ->capture_default_str();
        output.attach(app, "json");
    }

    int run(std::ostream &out, std::ostream &err) const {
        const auto scenario = rates.make();
        const auto given = o_cb->count() + o_cg->count() + o_budget->count();
        if (given != 0 && (o_cb->count() == 0 || o_cg->count() == 0 || o_budget->count() == 0))
            throw InvalidArgument("--c-b, --c-g and --budget must be given together");

        json doc;
        doc["scenario"] = rates.scenario;
        std::optional<CostModel> cm;
        if (given != 0) {
            cm.emplace(c_b, c_g, budget);
            if (classify(*cm).feasibility == Feasibility::Infeasible) {
                doc["feasibility"] = "infeasible";
                doc["c_b"] = c_b;
                doc["c_g"] = c_g;
                doc["budget"] = budget;
                emit(render(doc, output.format), output, out);
                err << "error: budget " << shortest(budget)
                    << " does not exceed the bad-state cost c_b = " << shortest(c_b)
                    << "; no feasible transition matrix\n";
                return kExitInfeasible;
            }
        }
        const auto r = cm ? optimal_constrained(scenario, *cm, epsilon)
                          : optimal_unconstrained(scenario, epsilon);
        doc["feasibility"] = std::string(to_string(r.feasibility));
        doc["alpha"] = r.alpha ? json(*r.alpha) : json(nullptr);
        doc["p_star"] = r.p_star;
        doc["q_star"] = r.q_star;
        doc["delta_star"] = r.delta_star;
        doc["attained"] = r.attained;
        doc["constant_along_line"] = r.constant_along_line;
        doc["tie"] = r.tie;
        doc["epsilon"] = epsilon;
        if (cm)
            doc["average_cost"] = average_cost(TransitionMatrix(r.p_star, r.q_star), *cm);
        emit(render(doc, output.format), output, out);
        return kExitOk;
    }
};

struct SweepCommand {
    RateOptions rates;
    SimOptions sim;
    OutputOptions output;
    std::string vary;
    std::string range;
    std::string fix;
    bool with_sim = false;

    void attach(CLI::App &app) {
        rates.attach(app, false);
        app.add_option("--vary", vary, "Varied axis")
            ->required()
            ->check(CLI::IsMember({"p", "q"}));
        app.add_option("--range", range, "start:stop:step of the varied axis")->required();
        app.add_option("--fix", fix, "Fixed values of the other axis, e.g. q=0.1,0.5,0.9")
            ->required();
        app.add_flag("--with-sim", with_sim, "Add Monte Carlo columns");
        sim.attach(app);
        output.attach(app, "csv");
    }

    int run(std::ostream &out) const {
        SweepSpec spec{.scenario = rates.make()};
        spec.vary = vary.front();
        spec.varied = parse_range(range);
        const auto fixed = parse_fixed(fix);
        if (fixed.axis == spec.vary)
            throw InvalidArgument("--fix must name the axis that is not varied");
        spec.fixed = fixed.values;
        spec.with_sim = with_sim;
        spec.cycles = sim.cycles;
        spec.seed = sim.seed;
        spec.replications = sim.replications;
        const auto rows = run_sweep(spec);

        if (output.format == "csv") {
            std::ostringstream os;
            write_csv(os, rows);
            emit(os.str(), output, out);
            return kExitOk;
        }
        json doc = json::array();
        for (const auto &r : rows) {
            json row;
            row["scenario"] = r.scenario;
            row["p"] = r.p;
            row["q"] = r.q;
            row["delta_analytic"] = r.delta_analytic;
            row["delta_sim"] = r.delta_sim ? json(*r.delta_sim) : json(nullptr);
            row["sim_stderr"] = r.sim_stderr ? json(*r.sim_stderr) : json(nullptr);
            doc.push_back(std::move(row));
        }
        emit(render(doc, "json"), output, out);
        return kExitOk;
    }
};

struct ValidateCommand {
    ValidateOptions opts;
    OutputOptions output;

    void attach(CLI::App &app) {
        app.add_flag("--quick", opts.quick, "Analytic checks only");
        app.add_option("--cycles", opts.cycles, "Cycles per replication")->capture_default_str();
        app.add_option("--replications", opts.replications, "Replications")
            ->capture_default_str();
        app.add_option("--seed", opts.seed, "Random seed")->capture_default_str();
        app.add_option("--inject-fault", opts.inject_fault)->group("");
        output.attach(app, "json");
    }

    int run(std::ostream &out) const {
        const auto report = run_validation(opts);
        std::string text;
        if (output.format == "json") {
            json doc;
            doc["mode"] = opts.quick ? "quick" : "full";
            doc["passed"] = report.passed();
            doc["checks"] = json::array();
            for (const auto &c : report.checks)
                doc["checks"].push_back({{"name", c.name}, {"passed", c.passed},
                                         {"detail", c.detail}});
            text = doc.dump(2) + "\n";
        } else {
            json rows = json::array();
            for (const auto &c : report.checks)
                rows.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
            text = render(rows, "csv");
        }
        emit(text, output, out);
        return report.passed() ? kExitOk : kExitInternal;
    }
};

} // namespace

int run(const std::vector<std::string> &raw_args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Average age of information for Gilbert-Elliot modulated blocking servers",
                 "geaoi"};
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.require_subcommand(1);

    AgeCommand age_cmd;
    SimulateCommand sim_cmd;
    OptimizeCommand opt_cmd;
    SweepCommand sweep_cmd;
    ValidateCommand validate_cmd;

    std::string config_path;
    const auto add = [&](const char *name, const char *help, auto &cmd) {
        CLI::App *sub = app.add_subcommand(name, help);
        sub->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
        sub->add_option("--config", config_path, "JSON file of flag values; flags override it");
        cmd.attach(*sub);
        return sub;
    };
    auto *age_sub = add("age", "Closed-form average age and its intermediate expectations", age_cmd);
    auto *sim_sub = add("simulate", "Monte Carlo estimate of the average age", sim_cmd);
    auto *opt_sub = add("optimize", "Age-optimal transition matrix, optionally under a budget", opt_cmd);
    auto *sweep_sub = add("sweep", "Average age over a grid of transition probabilities", sweep_cmd);
    auto *val_sub = add("validate", "Cross-check formulas, optimizer and simulator", validate_cmd);

    try {
        auto args = expand_config(raw_args);
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const InvalidArgument &e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalid;
    }

    try {
        if (age_sub->parsed())
            return age_cmd.run(out);
        if (sim_sub->parsed())
            return sim_cmd.run(out);
        if (opt_sub->parsed())
            return opt_cmd.run(out, err);
        if (sweep_sub->parsed())
            return sweep_cmd.run(out);
        if (val_sub->parsed())
            return validate_cmd.run(out);
    } catch (const InvalidArgument &e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const InfeasibleBudget &e) {
        err << "error: " << e.what() << '\n';
        return kExitInfeasible;
    } catch (const std::exception &e) {
        err << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
    return kExitInternal;
}

} // namespace geaoi::cli
