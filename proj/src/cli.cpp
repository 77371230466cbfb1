#include "dds/cli.hpp"

#include "dds/errors.hpp"
#include "dds/oracle.hpp"
#include "dds/pipeline.hpp"
#include "dds/roots.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <sstream>

namespace dds {

namespace {

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kBudgetError = 2;

struct Settings {
    std::string equation;
    std::string file;
    std::size_t max_solutions = 0;
    std::size_t node_budget = mdd::kDefaultNodeBudget;
    std::string format = "json";
    std::string emit_mdd;
    std::string cycles;
    unsigned w = 2;
    std::uint64_t p = 1, q = 1, n = 1;
    oracle::SearchBounds bounds;
};

// Equation text and the directory its file references are relative to.
std::pair<std::string, std::filesystem::path> equation_source(const Settings& s) {
    if (!s.file.empty()) {
        std::ifstream in(s.file);
        if (!in) throw std::runtime_error("cannot open equation file '" + s.file + "'");
        std::stringstream buf;
        buf << in.rdbuf();
        return {buf.str(), std::filesystem::path(s.file).parent_path()};
    }
    if (s.equation.empty()) throw std::runtime_error("no equation given (positional text or --file)");
    return {s.equation, std::filesystem::current_path()};
}

Instance load_instance(const Settings& s) {
    auto [text, base] = equation_source(s);
    if (base.empty()) base = ".";
    return resolve(parse_equation(text), base);
}

void print(std::ostream& out, const Settings& s, const nlohmann::json& j, const std::string& text) {
    if (s.format == "json") {
        out << j.dump(2) << '\n';
    } else {
        out << text;
    }
}

int run_solve(const Settings& s, Mode mode, bool capped, std::ostream& out) {
    Instance inst = load_instance(s);
    SolveOptions opts;
    if (capped) opts.max_solutions = s.max_solutions;
    opts.node_budget = s.node_budget;
    SolveReport report = solve(inst, mode, opts);
    if (!s.emit_mdd.empty()) {
        nlohmann::json dump = nlohmann::json::object();
        if (report.card_diagram) dump["c_mdd"] = mdd::to_json(*report.card_diagram);
        if (report.cycle_diagram) dump["cs_mdd"] = mdd::to_json(*report.cycle_diagram);
        std::ofstream f(s.emit_mdd);
        if (!f) throw std::runtime_error("cannot write '" + s.emit_mdd + "'");
        f << dump.dump(2) << '\n';
    }
    print(out, s, report_json(inst, report), report_text(inst, report));
    return kOk;
}

int run_root(const Settings& s, std::ostream& out) {
    if (s.w == 0) throw std::invalid_argument("root exponent must be positive");
    CycleSum target = parse_cycle_sum(s.cycles);
    auto root = wth_root(target, s.w);
    nlohmann::json j = {{"target", to_string(target)}, {"w", s.w}};
    j["root"] = root ? nlohmann::json(to_string(*root)) : nlohmann::json(nullptr);
    print(out, s, j, (root ? to_string(*root) : std::string("no root")) + "\n");
    return kOk;
}

int run_oracle_card(const Settings& s, std::ostream& out) {
    Instance inst = load_instance(s);
    nlohmann::json rows = nlohmann::json::array();
    std::ostringstream text;
    for (const CardSolution& sol : oracle::brute_card(inst.card, s.bounds)) {
        nlohmann::json row = nlohmann::json::object();
        for (const auto& [v, x] : sol) {
            row[inst.names[v - 1]] = x;
            text << ' ' << inst.names[v - 1] << '=' << x;
        }
        text << '\n';
        rows.push_back(row);
    }
    print(out, s, {{"c_solutions", rows}}, text.str());
    return kOk;
}

int run_oracle_a(const Settings& s, std::ostream& out) {
    Instance inst = load_instance(s);
    nlohmann::json rows = nlohmann::json::array();
    std::ostringstream text;
    if (inst.cycles_feasible) {
        for (const AAssignment& sol : oracle::brute_a_equation(inst.cycles, s.bounds)) {
            nlohmann::json row = nlohmann::json::object();
            for (const auto& [v, x] : sol) {
                row[inst.names[v - 1]] = to_string(x);
                text << ' ' << inst.names[v - 1] << " = " << to_string(x) << ';';
            }
            text << '\n';
            rows.push_back(row);
        }
    }
    print(out, s, {{"a_solutions", rows}}, text.str());
    return kOk;
}

int run_oracle_basic(const Settings& s, std::ostream& out) {
    if (s.p == 0 || s.q == 0 || s.n == 0) throw std::invalid_argument("p, q and n must be positive");
    nlohmann::json rows = nlohmann::json::array();
    std::ostringstream text;
    for (const CycleSum& x : oracle::brute_basic({s.p, s.q, s.n}, s.bounds)) {
        rows.push_back(to_string(x));
        text << to_string(x) << '\n';
    }
    print(out, s, {{"solutions", rows}}, text.str());
    return kOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Settings s;
    CLI::App app{"Solve polynomial equations over finite dynamical systems"};
    app.require_subcommand(1);
    app.fallthrough();
    auto* max_opt = app.add_option("--max-solutions", s.max_solutions, "Cap on enumerated c-solutions");
    app.add_option("--node-budget", s.node_budget, "Node budget per decision diagram")
        ->check(CLI::PositiveNumber);
    app.add_option("--format", s.format, "Output format")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--emit-mdd", s.emit_mdd, "Write the decision diagrams as JSON to this path");

    auto add_equation = [&](CLI::App* sub) {
        sub->add_option("equation", s.equation, "Equation text");
        sub->add_option("-f,--file", s.file, "Read the equation from a file");
    };
    auto* solve_c = app.add_subcommand("solve-c", "Solve the state-count abstraction");
    auto* solve_a = app.add_subcommand("solve-a", "Solve the cycle abstraction");
    auto* solve_all = app.add_subcommand("solve", "Solve both abstractions and pair them");
    for (auto* sub : {solve_c, solve_a, solve_all}) add_equation(sub);

    auto* root = app.add_subcommand("root", "w-th root of a cycle sum");
    root->add_option("cycles", s.cycles, "Cycle sum, e.g. '2*C2 + 3*C3'")->required();
    root->add_option("w", s.w, "Exponent")->required();

    auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force reference solvers");
    oracle_cmd->require_subcommand(1);
    oracle_cmd->add_option("--max-total-periodic", s.bounds.max_total_periodic, "Periodic size bound");
    oracle_cmd->add_option("--max-card", s.bounds.max_card, "State count bound (0: rhs)");
    oracle_cmd->add_option("--max-period", s.bounds.max_period, "Period bound (0: none)");
    auto* oracle_card = oracle_cmd->add_subcommand("card", "Exhaustive state-count search");
    auto* oracle_a = oracle_cmd->add_subcommand("a", "Exhaustive cycle-sum search");
    auto* oracle_basic = oracle_cmd->add_subcommand("basic", "Exhaustive basic-equation search");
    add_equation(oracle_card);
    add_equation(oracle_a);
    oracle_basic->add_option("p", s.p, "Coefficient period")->required();
    oracle_basic->add_option("q", s.q, "Target period")->required();
    oracle_basic->add_option("n", s.n, "Target count")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInputError;
    }

    try {
        const bool capped = max_opt->count() > 0;
        if (solve_c->parsed()) return run_solve(s, Mode::Card, capped, out);
        if (solve_a->parsed()) return run_solve(s, Mode::Cycles, capped, out);
        if (solve_all->parsed()) return run_solve(s, Mode::Full, capped, out);
        if (root->parsed()) return run_root(s, out);
        if (oracle_card->parsed()) return run_oracle_card(s, out);
        if (oracle_a->parsed()) return run_oracle_a(s, out);
        if (oracle_basic->parsed()) return run_oracle_basic(s, out);
    } catch (const ResourceError& e) {
        err << "error: " << e.what() << '\n';
        return kBudgetError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
    return kInputError;
}

}  // namespace dds
