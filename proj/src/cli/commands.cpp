#include "basefee/cli/commands.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>
#include <thread>

#include <CLI11.hpp>

#include "basefee/analytics.hpp"
#include "basefee/delay.hpp"
#include "basefee/mechanism.hpp"
#include "basefee/rng.hpp"
#include "basefee/simulator.hpp"

#ifndef BASEFEE_VERSION
#define BASEFEE_VERSION "dev"
#endif

namespace basefee::cli {

std::vector<double> arithmetic_grid(double from, double to, double step)
{
    if (!(step > 0.0))
        throw std::invalid_argument("grid step must be positive");
    if (!(to >= from))
        throw std::invalid_argument("grid end must not precede its start");
    auto const count = static_cast<long>(std::floor((to - from) / step + 1e-9)) + 1;
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(count));
    for (long i = 0; i < count; ++i)
        grid.push_back(from + static_cast<double>(i) * step);
    return grid;
}

std::vector<double> linspace(double from, double to, int points)
{
    if (points < 1)
        throw std::invalid_argument("grid needs at least one point");
    if (points == 1)
        return {from};
    if (!(to >= from))
        throw std::invalid_argument("grid end must not precede its start");
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i)
        grid.push_back(from + (to - from) * static_cast<double>(i) / static_cast<double>(points - 1));
    return grid;
}

namespace {

void stamp(OutputTable& table, std::string const& command)
{
    table.set_meta("tool", "basefee");
    table.set_meta("version", BASEFEE_VERSION);
    table.set_meta("command", command);
}

std::vector<std::string> split_list(std::string const& text)
{
    std::vector<std::string> items;
    std::string current;
    for (char c : text)
    {
        if (c == ',')
        {
            items.push_back(current);
            current.clear();
        }
        else if (c != ' ')
        {
            current += c;
        }
    }
    items.push_back(current);
    for (auto const& item : items)
    {
        if (item.empty())
            throw std::invalid_argument("empty entry in list '" + text + "'");
    }
    return items;
}

unsigned resolve_workers(unsigned requested)
{
    if (requested > 0)
        return requested;
    return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<double> grid_or_default(double from, double to, double step, double dfrom, double dto, double dstep)
{
    return arithmetic_grid(from < 0 ? dfrom : from, to < 0 ? dto : to, step < 0 ? dstep : step);
}

std::string canonical_axis(std::string axis)
{
    for (auto& c : axis)
    {
        if (c == '-')
            c = '_';
    }
    return axis;
}

// ---- analytic -------------------------------------------------------------

struct AnalyticPoint
{
    double attack;
    double honest;
};

AnalyticPoint evaluate(std::string const& scenario, ScenarioInputs const& in)
{
    if (scenario == "x")
        return {x_attack_expected(in), x_honest_expected(in)};
    if (scenario == "y-join")
        return {y_join_attack_expected(in), y_join_honest_expected(in)};
    return {y_init_attack_expected(in), y_init_honest_expected(in)};
}

ScenarioInputs analytic_inputs(AnalyticOptions const& opt, std::string const& axis, double value)
{
    double px = opt.px;
    double py = opt.py;
    double eps_ratio = opt.eps_ratio;
    double alpha = opt.alpha;
    double delta = opt.delta;
    if (axis == "px")
        px = value;
    else if (axis == "py")
        py = value;
    else if (axis == "eps_ratio")
        eps_ratio = value;
    else if (axis == "alpha")
        alpha = value;
    else if (axis == "delta")
        delta = value;
    if (opt.py_ratio > 0.0)
        py = opt.py_ratio * px;

    ScenarioInputs in;
    in.protocol = {.phi = opt.phi, .target_size = 1.0, .initial_base_fee = 1.0};
    in.demand = {.b_star = 1.0, .eps = eps_ratio, .alpha = alpha, .delta = delta};
    in.powers = {.p_x = px, .p_y = opt.scenario == "x" ? 0.0 : py};
    return in;
}

// ---- simulation helpers ----------------------------------------------------

SimConfig sim_template(double px, double eps_ratio, double alpha, double phi, std::uint64_t runs,
    std::uint64_t seed, double recovery, std::uint64_t max_blocks)
{
    SimConfig config;
    config.protocol = {.phi = phi, .target_size = 1.0, .initial_base_fee = 1.0};
    config.demand = {.b_star = 1.0, .eps = eps_ratio, .alpha = alpha, .delta = 0.0};
    config.p_x = px;
    config.runs = runs;
    config.base_seed = seed;
    config.recovery_fraction = recovery;
    config.max_blocks = max_blocks;
    return config;
}

void stamp_sim(OutputTable& table, SimConfig const& c)
{
    table.set_meta("phi", c.protocol.phi);
    table.set_meta("target_size", c.protocol.target_size);
    table.set_meta("b_star", c.demand.b_star);
    table.set_meta("alpha", c.demand.alpha);
    table.set_meta("runs", std::to_string(c.runs));
    table.set_meta("seed", std::to_string(c.base_seed));
    table.set_meta("recovery_fraction", c.recovery_fraction);
    table.set_meta("max_blocks", std::to_string(c.max_blocks));
    table.set_meta("prng", std::string(kPrngName));
}

void check_truncation(CommandResult& result, std::string const& where, SimSummary const& s)
{
    if (s.truncated_runs == 0)
        return;
    result.warnings.push_back("warning: " + where + ": " + std::to_string(s.truncated_runs) + " of "
        + std::to_string(s.runs) + " runs hit max_blocks before the base fee recovered");
    if (static_cast<double>(s.truncated_runs) > kMaxTruncatedShare * static_cast<double>(s.runs))
        result.exit_code = kExitTruncationDominated;
}

std::string region_label(Region region)
{
    switch (region)
    {
    case Region::BothProfit: return "both";
    case Region::OnlyEipProfit: return "eip_only";
    case Region::NeitherProfit: return "neither";
    }
    return "unknown";
}

}  // namespace

OutputTable cmd_analytic(AnalyticOptions const& opt)
{
    std::string const axis = canonical_axis(opt.axis);
    if (opt.scenario != "x" && opt.scenario != "y-join" && opt.scenario != "y-init")
        throw std::invalid_argument("unknown scenario '" + opt.scenario + "' (expected x, y-join or y-init)");
    if (axis != "px" && axis != "py" && axis != "eps_ratio" && axis != "alpha" && axis != "delta")
        throw std::invalid_argument("unknown axis '" + opt.axis + "'");
    if (opt.scenario == "x" && (axis == "py" || axis == "delta"))
        throw std::invalid_argument("scenario x does not depend on " + axis);
    if (opt.scenario == "x" && opt.py_ratio > 0.0)
        throw std::invalid_argument("--py-ratio applies to the y scenarios only");

    std::vector<double> grid;
    if (axis == "px")
        grid = grid_or_default(opt.from, opt.to, opt.step, 0.01, 0.5, 0.01);
    else if (axis == "py")
        grid = grid_or_default(opt.from, opt.to, opt.step, 0.01, 0.5, 0.01);
    else if (axis == "eps_ratio")
        grid = grid_or_default(opt.from, opt.to, opt.step, 0.005, 0.2, 0.005);
    else if (axis == "alpha")
        grid = grid_or_default(opt.from, opt.to, opt.step, 0.01, 1.0, 0.01);
    else
        grid = grid_or_default(opt.from, opt.to, opt.step, 0.0, 1.0, 0.01);

    OutputTable table("analytic/v1", {"axis_value", "rel_diff", "threshold_marker"});
    stamp(table, "analytic");
    table.set_meta("scenario", opt.scenario);
    table.set_meta("axis", axis);
    table.set_meta("from", grid.front());
    table.set_meta("to", grid.back());
    table.set_meta("points", std::to_string(grid.size()));
    table.set_meta("phi", opt.phi);
    table.set_meta("eps_ratio", opt.eps_ratio);
    table.set_meta("alpha", opt.alpha);
    table.set_meta("px", opt.px);
    if (opt.scenario != "x")
    {
        table.set_meta("delta", opt.delta);
        if (opt.py_ratio > 0.0)
            table.set_meta("py_ratio", opt.py_ratio);
        else
            table.set_meta("py", opt.py);
    }

    // Closed-form threshold at the base parameters.
    ScenarioInputs const base = analytic_inputs(opt, "none", 0.0);
    if (opt.scenario == "x")
    {
        table.set_meta("threshold_px", x_attack_threshold(base.protocol, base.demand));
    }
    else
    {
        auto const thr = opt.scenario == "y-join" ? y_join_threshold(base) : y_init_threshold(base);
        table.set_meta("threshold_py", thr ? format_number(*thr) : std::string("none"));
    }

    double previous = 0.0;
    bool first = true;
    for (double value : grid)
    {
        ScenarioInputs const in = analytic_inputs(opt, axis, value);
        auto const point = evaluate(opt.scenario, in);
        double const rel = relative_difference(point.attack, point.honest);
        bool const crossed = !first && ((previous > 0.0) != (rel > 0.0));
        table.add_row({value, rel, std::int64_t{crossed ? 1 : 0}});
        previous = rel;
        first = false;
    }
    return table;
}

CommandResult cmd_simulate(SimulateOptions const& opt)
{
    std::string const axis_name = canonical_axis(opt.axis);
    SweepAxis axis;
    std::vector<double> grid;
    if (axis_name == "px")
    {
        axis = SweepAxis::Px;
        grid = grid_or_default(opt.from, opt.to, opt.step, 0.1, 0.5, 0.05);
    }
    else if (axis_name == "eps_ratio")
    {
        axis = SweepAxis::EpsRatio;
        grid = grid_or_default(opt.from, opt.to, opt.step, 0.01, 0.1, 0.01);
    }
    else
    {
        throw std::invalid_argument("unknown simulate axis '" + opt.axis + "' (expected px or eps-ratio)");
    }

    std::vector<MechanismKind> kinds;
    for (auto const& name : split_list(opt.mechanisms))
        kinds.push_back(parse_mechanism(name));

    SimConfig const config = sim_template(
        opt.px, opt.eps_ratio, opt.alpha, opt.phi, opt.runs, opt.seed, opt.recovery, opt.max_blocks);
    validate(config);
    auto const rows = sweep(config, axis, grid, kinds, resolve_workers(opt.workers));

    CommandResult result{
        OutputTable("simulate/v1", {"axis_value", "mechanism", "mean_excess", "ci_half_width", "truncated_runs"}),
        {}, kExitOk};
    auto& table = result.table;
    stamp(table, "simulate");
    table.set_meta("axis", axis_name);
    table.set_meta("from", grid.front());
    table.set_meta("to", grid.back());
    table.set_meta("points", std::to_string(grid.size()));
    table.set_meta("mechanisms", opt.mechanisms);
    if (axis == SweepAxis::Px)
        table.set_meta("eps_ratio", opt.eps_ratio);
    else
        table.set_meta("px", opt.px);
    stamp_sim(table, config);

    for (auto const& row : rows)
    {
        std::string const mech = to_string(row.kind);
        table.add_row({row.axis_value, mech, row.summary.mean_excess, row.summary.ci_half_width,
            static_cast<std::int64_t>(row.summary.truncated_runs)});
        check_truncation(result, mech + " at " + axis_name + "=" + format_number(row.axis_value), row.summary);
    }
    return result;
}

CommandResult cmd_heatmap(HeatmapOptions const& opt)
{
    auto const px_grid = linspace(opt.px_from, opt.px_to, opt.px_points);
    auto const eps_grid = linspace(opt.eps_from, opt.eps_to, opt.eps_points);
    SimConfig const config = sim_template(
        px_grid.front(), eps_grid.front(), opt.alpha, opt.phi, opt.runs, opt.seed, opt.recovery, opt.max_blocks);
    validate(config);

    auto const cells = classify_grid(px_grid, eps_grid, opt.q, config, resolve_workers(opt.workers));

    CommandResult result{OutputTable("heatmap/v1", {"p_x", "eps_ratio", "label"}), {}, kExitOk};
    auto& table = result.table;
    stamp(table, "heatmap");
    table.set_meta("q", opt.q);
    table.set_meta("px_from", opt.px_from);
    table.set_meta("px_to", opt.px_to);
    table.set_meta("px_points", std::to_string(opt.px_points));
    table.set_meta("eps_from", opt.eps_from);
    table.set_meta("eps_to", opt.eps_to);
    table.set_meta("eps_points", std::to_string(opt.eps_points));
    stamp_sim(table, config);

    for (auto const& cell : cells)
    {
        table.add_row({cell.p_x, cell.eps_ratio, region_label(cell.region)});
        std::string const where = "p_x=" + format_number(cell.p_x) + " eps_ratio=" + format_number(cell.eps_ratio);
        check_truncation(result, "eip at " + where, cell.eip);
        check_truncation(result, "geo at " + where, cell.mitigated);
    }
    return result;
}

OutputTable cmd_delay(DelayOptions const& opt)
{
    auto const betas = arithmetic_grid(opt.beta_from, opt.beta_to, opt.beta_step);
    std::vector<double> qs;
    for (auto const& item : split_list(opt.qs))
    {
        auto const kind = parse_mechanism("geo:" + item);
        qs.push_back(std::get<GeometricAvg<double>>(kind).q);
    }

    OutputTable table("delay/v1", {"beta", "mechanism", "T"});
    stamp(table, "delay");
    table.set_meta("phi", opt.phi);
    table.set_meta("beta_from", betas.front());
    table.set_meta("beta_to", betas.back());
    table.set_meta("beta_step", opt.beta_step);
    table.set_meta("qs", opt.qs);

    for (double beta : betas)
    {
        table.add_row({beta, std::string("eip"), std::int64_t{t_eip(beta, opt.phi)}});
        for (double q : qs)
        {
            table.add_row({beta, to_string(MechanismKind{GeometricAvg<double>{q}}),
                std::int64_t{t_mitigated(beta, opt.phi, q)}});
        }
    }
    return table;
}

OutputTable cmd_bribe(BribeOptions const& opt)
{
    if (!(opt.phi >= 0.0) || !(opt.phi < 1.0))
        throw std::invalid_argument("phi must lie in [0, 1)");
    if (!(opt.b_star > 0.0) || !(opt.eps_ratio > 0.0) || !(opt.target_size > 0.0))
        throw std::invalid_argument("b_star, eps_ratio and target_size must be positive");

    ProtocolParams const protocol{.phi = opt.phi, .target_size = opt.target_size, .initial_base_fee = opt.b_star};
    DemandParams const demand{.b_star = opt.b_star, .eps = opt.eps_ratio * opt.b_star, .alpha = 1.0, .delta = 0.0};
    auto const res = bribe_profitable(opt.gas, protocol, demand);

    OutputTable table("bribe/v1", {"gas", "margin", "profitable"});
    stamp(table, "bribe");
    table.set_meta("phi", opt.phi);
    table.set_meta("b_star", opt.b_star);
    table.set_meta("eps_ratio", opt.eps_ratio);
    table.set_meta("target_size", opt.target_size);
    table.add_row({opt.gas, res.margin, std::string(res.profitable ? "true" : "false")});
    return table;
}

namespace {

void emit(OutputTable const& table, std::string const& out_path, std::ostream& out)
{
    if (out_path.empty())
    {
        table.write_csv(out);
        return;
    }
    std::filesystem::path path(out_path);
    if (path.is_relative())
    {
        if (char const* dir = std::getenv(kOutputDirEnv); dir != nullptr && *dir != '\0')
            path = std::filesystem::path(dir) / path;
    }
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
    std::ofstream file(path, std::ios::binary);
    if (!file)
        throw std::runtime_error("cannot open output file " + path.string());
    table.write_csv(file);
}

}  // namespace

int run_cli(std::vector<std::string> const& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"EIP-1559 base-fee manipulation: analytics, simulation and mitigation tables"};
    app.require_subcommand(1);
    app.set_version_flag("--version", BASEFEE_VERSION);
    std::string out_path;

    AnalyticOptions ana;
    auto* analytic = app.add_subcommand("analytic", "relative reward difference of attack vs honest");
    analytic->add_option("--scenario", ana.scenario, "x | y-join | y-init")->capture_default_str();
    analytic->add_option("--axis", ana.axis, "px | py | eps_ratio | alpha | delta")->capture_default_str();
    analytic->add_option("--from", ana.from, "grid start");
    analytic->add_option("--to", ana.to, "grid end");
    analytic->add_option("--step", ana.step, "grid step");
    analytic->add_option("--px", ana.px)->capture_default_str();
    analytic->add_option("--py", ana.py)->capture_default_str();
    analytic->add_option("--py-ratio", ana.py_ratio, "set p_y = ratio * p_x");
    analytic->add_option("--eps-ratio,--eps_ratio", ana.eps_ratio, "eps / b*")->capture_default_str();
    analytic->add_option("--alpha", ana.alpha)->capture_default_str();
    analytic->add_option("--delta", ana.delta)->capture_default_str();
    analytic->add_option("--phi", ana.phi)->capture_default_str();

    SimulateOptions sim;
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo excess profit, EIP-1559 vs mitigations");
    simulate->add_option("--axis", sim.axis, "px | eps-ratio")->capture_default_str();
    simulate->add_option("--from", sim.from, "grid start");
    simulate->add_option("--to", sim.to, "grid end");
    simulate->add_option("--step", sim.step, "grid step");
    simulate->add_option("--mechanisms", sim.mechanisms, "comma list of eip, geo:<q>, window:<W>, pool")
        ->capture_default_str();
    simulate->add_option("--runs", sim.runs)->capture_default_str()->check(CLI::PositiveNumber);
    simulate->add_option("--seed", sim.seed)->capture_default_str();
    simulate->add_option("--px", sim.px, "p_x when sweeping eps-ratio")->capture_default_str();
    simulate->add_option("--eps-ratio,--eps_ratio", sim.eps_ratio, "eps / b* when sweeping px")->capture_default_str();
    simulate->add_option("--alpha", sim.alpha)->capture_default_str();
    simulate->add_option("--phi", sim.phi)->capture_default_str();
    simulate->add_option("--recovery", sim.recovery, "stop once base fee >= recovery * b*")->capture_default_str();
    simulate->add_option("--max-blocks", sim.max_blocks)->capture_default_str();
    simulate->add_option("--workers", sim.workers, "threads (0 = all cores); does not affect output");

    HeatmapOptions heat;
    auto* heatmap = app.add_subcommand("heatmap", "where the geometric mitigation removes the incentive");
    heatmap->add_option("--q", heat.q)->capture_default_str();
    heatmap->add_option("--px-from", heat.px_from)->capture_default_str();
    heatmap->add_option("--px-to", heat.px_to)->capture_default_str();
    heatmap->add_option("--px-points", heat.px_points)->capture_default_str();
    heatmap->add_option("--eps-from", heat.eps_from)->capture_default_str();
    heatmap->add_option("--eps-to", heat.eps_to)->capture_default_str();
    heatmap->add_option("--eps-points", heat.eps_points)->capture_default_str();
    heatmap->add_option("--runs", heat.runs)->capture_default_str()->check(CLI::PositiveNumber);
    heatmap->add_option("--seed", heat.seed)->capture_default_str();
    heatmap->add_option("--alpha", heat.alpha)->capture_default_str();
    heatmap->add_option("--phi", heat.phi)->capture_default_str();
    heatmap->add_option("--recovery", heat.recovery)->capture_default_str();
    heatmap->add_option("--max-blocks", heat.max_blocks)->capture_default_str();
    heatmap->add_option("--workers", heat.workers, "threads (0 = all cores); does not affect output");

    DelayOptions del;
    auto* delay = app.add_subcommand("delay", "full blocks needed to raise the base fee by beta");
    delay->add_option("--beta-from", del.beta_from)->capture_default_str();
    delay->add_option("--beta-to", del.beta_to)->capture_default_str();
    delay->add_option("--beta-step", del.beta_step)->capture_default_str();
    delay->add_option("--phi", del.phi)->capture_default_str();
    delay->add_option("--q", del.qs, "comma list of geometric weights")->capture_default_str();

    BribeOptions bri;
    auto* bribe = app.add_subcommand("bribe", "profitability of bribing a proposer for an empty block");
    bribe->add_option("--gas", bri.gas)->capture_default_str();
    bribe->add_option("--phi", bri.phi)->capture_default_str();
    bribe->add_option("--b-star", bri.b_star)->capture_default_str();
    bribe->add_option("--eps-ratio,--eps_ratio", bri.eps_ratio)->capture_default_str();
    bribe->add_option("--target-size", bri.target_size)->capture_default_str();

    for (auto* sub : app.get_subcommands({}))
        sub->add_option("-o,--out", out_path,
            "write CSV here instead of stdout (relative paths resolve against $" + std::string(kOutputDirEnv) + ")");

    try
    {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    }
    catch (CLI::ParseError const& e)
    {
        int const code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInvalidArguments;
    }

    try
    {
        CommandResult result{OutputTable("none", {"none"}), {}, kExitOk};
        if (analytic->parsed())
            result.table = cmd_analytic(ana);
        else if (simulate->parsed())
            result = cmd_simulate(sim);
        else if (heatmap->parsed())
            result = cmd_heatmap(heat);
        else if (delay->parsed())
            result.table = cmd_delay(del);
        else
            result.table = cmd_bribe(bri);

        emit(result.table, out_path, out);
        for (auto const& w : result.warnings)
            err << w << '\n';
        if (result.exit_code == kExitTruncationDominated)
            err << "error: more than " << format_number(kMaxTruncatedShare * 100) << "% of runs truncated\n";
        return result.exit_code;
    }
    catch (std::invalid_argument const& e)
    {
        err << "error: " << e.what() << '\n';
        return kExitInvalidArguments;
    }
    catch (std::exception const& e)
    {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace basefee::cli
