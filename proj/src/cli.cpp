#include "bulsol/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bulsol/errors.hpp"
#include "bulsol/exact.hpp"
#include "bulsol/io.hpp"
#include "bulsol/montecarlo.hpp"
#include "bulsol/solitaire.hpp"
#include "bulsol/stats.hpp"
#include "bulsol/threshold.hpp"

namespace bulsol {

namespace {

void write_file(const std::string& path, const std::string& content) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::invalid_argument("cannot open '" + path + "' for writing");
    file << content;
}

std::pair<double, double> parse_interval(const std::string& text) {
    double lo = 0.0, hi = 0.0;
    if (std::sscanf(text.c_str(), "%lf:%lf", &lo, &hi) != 2 || lo > hi || lo < 0.0)
        throw std::invalid_argument("interval: expected lo:hi with 0 <= lo <= hi");
    return {lo, hi};
}

WeakComposition parse_start(const std::string& text, std::int64_t n) {
    if (text == "triangular")
        return WeakComposition(std::vector<std::int64_t>(triangular_start(n).parts()));
    if (text == "single")
        return WeakComposition({n});
    std::vector<std::int64_t> parts;
    std::stringstream stream(text);
    std::string token;
    while (std::getline(stream, token, ','))
        parts.push_back(std::stoll(token));
    WeakComposition start(std::move(parts));
    if (start.total() != n)
        throw std::invalid_argument("start configuration sums to " +
                                    std::to_string(start.total()) + ", expected n = " +
                                    std::to_string(n));
    return start;
}

LimitShape parse_shape(const std::string& name) {
    if (name == "exp") return LimitShape::exponential();
    if (name == "triangle") return LimitShape::triangle();
    throw std::invalid_argument("shape must be 'exp' or 'triangle'");
}

ScalingMode parse_scaling(const std::string& name) {
    if (name == "theoretical") return ScalingMode::Theoretical;
    if (name == "first-part") return ScalingMode::ByFirstPart;
    throw std::invalid_argument("scaling must be 'theoretical' or 'first-part'");
}

std::vector<Rational> parse_rational_set(const std::string& text) {
    std::vector<Rational> values;
    std::stringstream stream(text);
    std::string token;
    while (std::getline(stream, token, ','))
        values.push_back(Rational::parse(token));
    if (values.empty()) throw std::invalid_argument("empty rational list");
    return values;
}

std::string state_echo(const WeakComposition& state) {
    constexpr std::size_t limit = 40;
    if (state.count() <= limit) return state.to_string();
    std::string text;
    for (std::size_t i = 0; i < limit; ++i) {
        if (i) text += '+';
        text += std::to_string(state.parts()[i]);
    }
    text += "+... (" + std::to_string(state.count()) + " bowls)";
    return text;
}

struct SimulateOptions {
    std::int64_t n = 0;
    double p = 0.0;
    std::string q;
    std::uint64_t moves = 200;
    std::uint64_t burn_in = 0;
    std::uint64_t stride = 1;
    std::uint64_t seed = 1;
    std::uint64_t seed_count = 1;
    std::string start = "triangular";
    std::string shape = "exp";
    std::string scaling = "theoretical";
    std::string grid = "0:4:0.01";
    std::string interval = "0:3";
    double epsilon = 0.1;
    std::string csv_path = "boundary.csv";
    std::string json_path = "stats.json";
    std::string svg_path;
    std::string traces_path;
    bool serial = false;
};

int cmd_simulate(const SimulateOptions& opt, std::ostream& out) {
    const SolitaireParams params(opt.n, opt.p, Rational::parse(opt.q));
    const Schedule schedule = make_schedule(params);
    const WeakComposition start = parse_start(opt.start, opt.n);
    const auto [lo, hi] = parse_interval(opt.interval);

    ChainRunSpec spec;
    spec.burn_in = opt.burn_in;
    spec.window = opt.moves;
    spec.stride = opt.stride;
    spec.scaling = parse_scaling(opt.scaling);
    spec.shape = parse_shape(opt.shape);
    spec.grid = parse_grid(opt.grid);
    spec.interval_lo = lo;
    spec.interval_hi = hi;
    spec.epsilon = opt.epsilon;

    std::vector<std::uint64_t> seeds(opt.seed_count);
    for (std::uint64_t i = 0; i < opt.seed_count; ++i) seeds[i] = opt.seed + i;
    const auto chains = run_ensemble(start, params, spec, seeds,
                                     opt.serial ? Exec::Serial : Exec::Parallel);

    const auto& first = chains.front();
    const ScalingFactor a =
        spec.scaling == ScalingMode::ByFirstPart
            ? ScalingFactor::by_first_part(first.final_state)
            : ScalingFactor::theoretical(params.pick_prob, params.proportion);

    std::ostringstream csv;
    write_boundary_csv(csv, first.final_state, a, spec.shape, spec.grid);
    write_file(opt.csv_path, csv.str());

    std::string traces_path;
    if (!opt.traces_path.empty()) {
        std::ostringstream traces;
        write_traces_csv(traces, first);
        write_file(opt.traces_path, traces.str());
        traces_path = opt.traces_path;
    }
    write_file(opt.json_path, stats_json(params, schedule, chains, traces_path).dump(2) + "\n");
    if (!opt.svg_path.empty())
        write_file(opt.svg_path, svg_boundary_plot(first.final_state, a, spec.shape,
                                                   std::max(1.0, hi + 1.0)));

    out << "n=" << params.cards << " p=" << format_double(params.pick_prob)
        << " q=" << params.proportion.to_string() << " moves=" << opt.moves
        << " burn_in=" << opt.burn_in << " seeds=" << opt.seed_count << "\n";
    out << "schedule: burn_in=" << schedule.burn_in
        << " window_practical=" << schedule.window_practical
        << " chunk_moves=" << schedule.chunk_moves
        << " window_paper=" << format_double(schedule.window_paper) << "\n";
    for (const auto& chain : chains)
        out << "seed " << chain.seed
            << ": sup=" << format_double(chain.final_report.sup_on_interval)
            << " fraction_within=" << format_double(chain.final_report.fraction_within)
            << " piles=" << chain.final_state.count() << "\n";
    out << "final state (seed " << first.seed << "): " << state_echo(first.final_state)
        << "\n";
    return 0;
}

struct ExactOptions {
    std::int64_t n = 0;
    double p = 0.0;
    std::string q;
    std::int64_t cap = StateIndex::kDefaultCap;
    std::uint64_t budget = 100'000'000;
    std::string pi_path = "pi.csv";
    std::string kernel_path;
    std::string mass_path = "shape_mass.csv";
    std::string shape = "exp";
    std::string scaling = "first-part";
    double epsilon = 0.1;
    std::string grid = "0:3:0.25";
    bool compare_mc = false;
    std::uint64_t mc_samples = 2'000'000;
    std::uint64_t seed = 1;
    bool serial = false;
};

int cmd_exact(const ExactOptions& opt, std::ostream& out) {
    const SolitaireParams params(opt.n, opt.p, Rational::parse(opt.q));
    auto states = StateIndex::enumerate(opt.n, opt.cap);
    const auto kernel = build_kernel(std::move(states), params,
                                     opt.serial ? Exec::Serial : Exec::Parallel,
                                     opt.budget);
    const auto dist = stationary(kernel);

    std::ostringstream pi_csv;
    write_pi_csv(pi_csv, kernel.states, dist);
    write_file(opt.pi_path, pi_csv.str());
    if (!opt.kernel_path.empty()) {
        std::ostringstream kernel_csv;
        write_kernel_csv(kernel_csv, kernel);
        write_file(opt.kernel_path, kernel_csv.str());
    }

    const auto grid = parse_grid(opt.grid);
    const auto shape = parse_shape(opt.shape);
    const auto mode = parse_scaling(opt.scaling);
    std::vector<double> masses;
    masses.reserve(grid.size());
    for (const double x : grid)
        masses.push_back(
            stationary_shape_mass(dist, kernel.states, shape, mode, params, opt.epsilon, x));
    std::ostringstream mass_csv;
    write_mass_csv(mass_csv, grid, masses);
    write_file(opt.mass_path, mass_csv.str());

    out << "states=" << kernel.states.size() << " method=" << dist.method
        << " residual=" << format_double(dist.residual)
        << " irreducible=" << (dist.irreducible_reported ? "yes" : "no") << "\n";
    for (std::size_t i = 0; i < std::min<std::size_t>(kernel.states.size(), 8); ++i)
        out << "pi(" << kernel.states.state(i).to_string()
            << ")=" << format_double(dist.probabilities[i]) << "\n";

    if (opt.compare_mc) {
        const Schedule schedule = make_schedule(params);
        const auto counts = empirical_state_counts(params, kernel.states, opt.mc_samples,
                                                   schedule.burn_in, opt.seed);
        std::vector<double> empirical(counts.size());
        for (std::size_t i = 0; i < counts.size(); ++i)
            empirical[i] = static_cast<double>(counts[i]) /
                           static_cast<double>(opt.mc_samples);
        const double tv = total_variation(empirical, dist.probabilities);
        out << "mc_samples=" << opt.mc_samples << " burn_in=" << schedule.burn_in
            << " tv_distance=" << format_double(tv) << "\n";
    }
    return 0;
}

struct DominationOptions {
    bool exhaustive = false;
    std::int64_t max_a1 = 8;
    std::int64_t max_r = 4;
    std::string s_set = "1/4,1/2,3/4,1";
    std::string q_set = "1/4,1/2,3/4,1";
    std::int64_t a1 = 100;
    std::int64_t r = 10;
    std::string s = "1/2";
    std::string q = "1/2";
    double p = 0.1;
    std::uint64_t samples = 100'000;
    std::uint64_t seed = 1;
    std::string csv_path;
};

int cmd_oracle_domination(const DominationOptions& opt, std::ostream& out) {
    std::ostringstream csv;
    csv << "# bulsol domination csv v1\n";
    csv << "a1,r,s,q,runs,over_hypothesis,under_hypothesis_runs,violations_over,"
           "violations_under\n";
    const auto add_row = [&csv](std::int64_t a1, std::int64_t r, const Rational& s,
                                const Rational& q, const DominationReport& report) {
        csv << a1 << ',' << r << ',' << s.to_string() << ',' << q.to_string() << ','
            << report.runs << ',' << (report.over_hypothesis ? 1 : 0) << ','
            << report.under_hypothesis_runs << ',' << report.violations_over << ','
            << report.violations_under << '\n';
    };

    std::uint64_t violations = 0;
    if (opt.exhaustive) {
        const auto s_values = parse_rational_set(opt.s_set);
        const auto q_values = parse_rational_set(opt.q_set);
        std::uint64_t matrices = 0, under_hyp = 0;
        for (std::int64_t a1 = 1; a1 <= opt.max_a1; ++a1)
            for (std::int64_t r = 1; r <= opt.max_r; ++r)
                for (const auto& s : s_values)
                    for (const auto& q : q_values) {
                        const auto report = check_domination_exhaustive(a1, q, s, r);
                        matrices += report.runs;
                        under_hyp += report.under_hypothesis_runs;
                        violations += report.violations_over + report.violations_under;
                        add_row(a1, r, s, q, report);
                    }
        out << "exhaustive domination: matrices=" << matrices
            << " under_hypothesis=" << under_hyp << " violations=" << violations << "\n";
    } else {
        std::vector<std::uint64_t> seeds(opt.samples);
        for (std::uint64_t i = 0; i < opt.samples; ++i) seeds[i] = opt.seed + i;
        const Rational s = Rational::parse(opt.s);
        const Rational q = Rational::parse(opt.q);
        const auto report = check_domination(opt.a1, q, s, opt.p, opt.r, seeds,
                                             Exec::Parallel);
        violations = report.violations_over + report.violations_under;
        add_row(opt.a1, opt.r, s, q, report);
        out << "sampled domination: runs=" << report.runs
            << " over_hypothesis=" << (report.over_hypothesis ? "yes" : "no")
            << " under_hypothesis_runs=" << report.under_hypothesis_runs
            << " violations_over=" << report.violations_over
            << " violations_under=" << report.violations_under << "\n";
    }
    if (!opt.csv_path.empty()) write_file(opt.csv_path, csv.str());
    if (violations > 0)
        throw InvariantError("domination violated; see report");
    return 0;
}

struct ChernoffOptions {
    std::int64_t m = 100;
    double p = 0.5;
    std::string csv_path;
};

int cmd_oracle_chernoff(const ChernoffOptions& opt, std::ostream& out) {
    const double mu = static_cast<double>(opt.m) * opt.p;
    std::vector<double> gammas, bounds, tails;
    for (int k = 1; k <= 19; ++k) {
        const double gamma = mu * k / 20.0;
        gammas.push_back(gamma);
        bounds.push_back(chernoff_bound(opt.m, opt.p, gamma));
        tails.push_back(binomial_two_sided_tail(opt.m, opt.p, gamma));
    }
    out << "# m=" << opt.m << " p=" << format_double(opt.p)
        << " mu=" << format_double(mu) << "\n";
    out << "gamma,bound,exact_tail\n";
    std::uint64_t violations = 0;
    for (std::size_t i = 0; i < gammas.size(); ++i) {
        out << format_double(gammas[i]) << ',' << format_double(bounds[i]) << ','
            << format_double(tails[i]) << "\n";
        if (tails[i] > bounds[i]) ++violations;
    }
    if (!opt.csv_path.empty()) {
        std::ostringstream csv;
        write_chernoff_csv(csv, gammas, bounds, tails);
        write_file(opt.csv_path, csv.str());
    }
    if (violations > 0)
        throw InvariantError("exact binomial tail exceeded the bound");
    return 0;
}

struct UnionOptions {
    std::int64_t a1 = 1000;
    double p = 0.01;
    std::string q = "1/1";
    std::int64_t r = 0; // 0 = derive from the matching chain
    std::int64_t chunks = 4;
    std::uint64_t seeds = 1000;
    std::uint64_t seed = 1;
    double tolerance = 0.15;
    std::string csv_path;
};

int cmd_oracle_union(const UnionOptions& opt, std::ostream& out) {
    const Rational q = Rational::parse(opt.q);
    if (!q.in_unit_interval()) throw std::invalid_argument("q must be in (0,1]");
    const double qv = q.value();
    const double pq = opt.p * qv;
    if (pq <= 0.0 || pq >= 1.0)
        throw std::invalid_argument("union: requires 0 < p*q < 1");

    std::int64_t r = opt.r;
    if (r == 0) {
        // Chunk length of the chain whose typical new pile has this size.
        const auto n_match =
            std::max<std::int64_t>(1, static_cast<std::int64_t>(std::llround(
                                          static_cast<double>(opt.a1) / pq)));
        r = make_schedule(SolitaireParams(n_match, opt.p, q)).chunk_moves;
    }
    const double s = qv * (1.0 + 2.0 * opt.p * static_cast<double>(r));

    std::vector<std::int64_t> starts(static_cast<std::size_t>(opt.chunks));
    for (std::int64_t j = 0; j < opt.chunks; ++j)
        starts[static_cast<std::size_t>(j)] = static_cast<std::int64_t>(std::ceil(
            static_cast<double>(opt.a1) * std::pow(1.0 - pq, static_cast<double>(j * (r + 1)))));

    const std::size_t length = starts.size() * static_cast<std::size_t>(r + 1);
    std::vector<double> mean(length, 0.0), within(length, 0.0), expected(length, 0.0);
    for (std::size_t k = 0; k < length; ++k)
        expected[k] = expected_decay(static_cast<double>(opt.a1), opt.p, qv,
                                     static_cast<std::int64_t>(k));

    for (std::uint64_t sdx = 0; sdx < opt.seeds; ++sdx) {
        const auto process = run_union(starts, r, s, opt.p, opt.seed + sdx);
        for (std::size_t k = 0; k < length; ++k) {
            mean[k] += static_cast<double>(process.sizes[k]);
            if (std::abs(static_cast<double>(process.sizes[k]) - expected[k]) <=
                opt.tolerance * expected[k])
                within[k] += 1.0;
        }
    }
    for (std::size_t k = 0; k < length; ++k) {
        mean[k] /= static_cast<double>(opt.seeds);
        within[k] /= static_cast<double>(opt.seeds);
    }

    double min_within = 1.0;
    const std::size_t horizon = std::min(length, static_cast<std::size_t>(3 * (r + 1)));
    for (std::size_t k = 0; k < horizon; ++k) min_within = std::min(min_within, within[k]);

    out << "union decay: a1=" << opt.a1 << " r=" << r << " s=" << format_double(s)
        << " chunks=" << opt.chunks << " seeds=" << opt.seeds << "\n";
    out << "min fraction within " << format_double(opt.tolerance * 100.0)
        << "% of expected over first " << horizon << " piles: " << format_double(min_within)
        << "\n";
    if (!opt.csv_path.empty()) {
        std::ostringstream csv;
        write_union_decay_csv(csv, expected, mean, within);
        write_file(opt.csv_path, csv.str());
    }
    return 0;
}

struct RegimesOptions {
    std::string spec_path;
    std::uint64_t moves = 0;
    std::uint64_t seeds = 3;
    std::uint64_t seed = 1;
    std::string csv_path = "regimes.csv";
    bool serial = false;
};

int cmd_regimes(const RegimesOptions& opt, std::ostream& out) {
    std::ifstream file(opt.spec_path);
    if (!file)
        throw std::invalid_argument("cannot read regime spec '" + opt.spec_path + "'");
    nlohmann::json doc;
    try {
        file >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("regime spec is not valid JSON: ") + e.what());
    }
    if (!doc.is_array())
        throw std::invalid_argument("regime spec must be a JSON array of {n, p, q}");

    std::vector<RegimePoint> points;
    for (const auto& entry : doc) {
        RegimePoint point;
        point.n = entry.at("n").get<std::int64_t>();
        point.p = entry.at("p").get<double>();
        if (entry.at("q").is_string())
            point.q = Rational::parse(entry.at("q").get<std::string>());
        else
            point.q = Rational(entry.at("q").get<std::int64_t>(), 1);
        points.push_back(point);
    }

    RegimeScanConfig config;
    config.moves = opt.moves;
    config.seeds = opt.seeds;
    config.master_seed = opt.seed;
    config.mode = opt.serial ? Exec::Serial : Exec::Parallel;
    const auto rows = regime_scan(points, config);

    std::ostringstream csv;
    write_regimes_csv(csv, rows);
    write_file(opt.csv_path, csv.str());

    out << "n,p,q,pq2n,pq2n_over_log,dev_exponential,dev_triangle,label,fit\n";
    for (const auto& row : rows)
        out << row.point.n << ',' << format_double(row.point.p) << ','
            << row.point.q.to_string() << ',' << format_double(row.classification) << ','
            << format_double(row.classification_log) << ','
            << format_double(row.dev_exponential) << ','
            << format_double(row.dev_triangle) << ',' << row.label << ','
            << (row.neither_fits ? "intermediate" : "ok") << "\n";
    return 0;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"p-random q-proportion Bulgarian solitaire laboratory"};
    app.require_subcommand(1);

    SimulateOptions sim;
    auto* simulate = app.add_subcommand("simulate", "play the chain and report the boundary");
    simulate->add_option("--n", sim.n, "number of cards")->required();
    simulate->add_option("--p", sim.p, "pick probability")->required();
    simulate->add_option("--q", sim.q, "pick proportion as num/den")->required();
    simulate->add_option("--moves", sim.moves, "recorded moves after burn-in");
    simulate->add_option("--burn-in", sim.burn_in, "unrecorded moves first");
    simulate->add_option("--stride", sim.stride, "snapshot stride");
    simulate->add_option("--seed", sim.seed, "master seed");
    simulate->add_option("--seeds", sim.seed_count, "number of independent chains");
    simulate->add_option("--start", sim.start, "triangular, single, or a comma list");
    simulate->add_option("--shape", sim.shape, "exp or triangle");
    simulate->add_option("--scaling", sim.scaling, "theoretical or first-part");
    simulate->add_option("--grid", sim.grid, "grid as start:stop:step");
    simulate->add_option("--interval", sim.interval, "sup interval as lo:hi");
    simulate->add_option("--epsilon", sim.epsilon, "deviation tolerance");
    simulate->add_option("--csv", sim.csv_path, "boundary CSV path");
    simulate->add_option("--json", sim.json_path, "stats JSON path");
    simulate->add_option("--svg", sim.svg_path, "SVG plot path");
    simulate->add_option("--traces", sim.traces_path, "traces CSV path");
    simulate->add_flag("--serial", sim.serial, "disable the parallel ensemble path");

    ExactOptions exact;
    auto* exact_cmd = app.add_subcommand("exact", "exact kernel and stationary law");
    exact_cmd->add_option("--n", exact.n, "number of cards")->required();
    exact_cmd->add_option("--p", exact.p, "pick probability")->required();
    exact_cmd->add_option("--q", exact.q, "pick proportion as num/den")->required();
    exact_cmd->add_option("--cap", exact.cap, "state-space cap");
    exact_cmd->add_option("--budget", exact.budget, "per-row enumeration budget");
    exact_cmd->add_option("--pi-csv", exact.pi_path, "stationary CSV path");
    exact_cmd->add_option("--kernel-csv", exact.kernel_path, "kernel CSV path");
    exact_cmd->add_option("--mass-csv", exact.mass_path, "shape-mass CSV path");
    exact_cmd->add_option("--shape", exact.shape, "exp or triangle");
    exact_cmd->add_option("--scaling", exact.scaling, "theoretical or first-part");
    exact_cmd->add_option("--epsilon", exact.epsilon, "deviation tolerance");
    exact_cmd->add_option("--grid", exact.grid, "mass grid as start:stop:step");
    exact_cmd->add_flag("--compare-mc", exact.compare_mc,
                        "compare against a Monte Carlo run");
    exact_cmd->add_option("--mc-samples", exact.mc_samples, "Monte Carlo sample count");
    exact_cmd->add_option("--seed", exact.seed, "Monte Carlo seed");
    exact_cmd->add_flag("--serial", exact.serial, "build kernel rows serially");

    auto* oracle = app.add_subcommand("oracle", "process coupling and tail-bound checks");
    oracle->require_subcommand(1);

    DominationOptions dom;
    auto* domination = oracle->add_subcommand("domination", "threshold/q-process coupling");
    domination->add_flag("--exhaustive", dom.exhaustive, "cover all pick matrices");
    domination->add_option("--max-a1", dom.max_a1, "largest pile (exhaustive)");
    domination->add_option("--max-r", dom.max_r, "most moves (exhaustive)");
    domination->add_option("--s-set", dom.s_set, "thresholds (exhaustive)");
    domination->add_option("--q-set", dom.q_set, "proportions (exhaustive)");
    domination->add_option("--a1", dom.a1, "pile size (sampled)");
    domination->add_option("--r", dom.r, "moves (sampled)");
    domination->add_option("--s", dom.s, "threshold (sampled)");
    domination->add_option("--q", dom.q, "proportion (sampled)");
    domination->add_option("--p", dom.p, "pick probability (sampled)");
    domination->add_option("--samples", dom.samples, "seed count (sampled)");
    domination->add_option("--seed", dom.seed, "first seed (sampled)");
    domination->add_option("--csv", dom.csv_path, "report CSV path");

    ChernoffOptions chern;
    auto* chernoff = oracle->add_subcommand("chernoff", "bound vs exact binomial tails");
    chernoff->add_option("--m", chern.m, "trials")->required();
    chernoff->add_option("--p", chern.p, "success probability")->required();
    chernoff->add_option("--csv", chern.csv_path, "table CSV path");

    UnionOptions uni;
    auto* union_cmd = oracle->add_subcommand("union", "chunked threshold-process decay");
    union_cmd->add_option("--a1", uni.a1, "first chunk pile size")->required();
    union_cmd->add_option("--p", uni.p, "pick probability")->required();
    union_cmd->add_option("--q", uni.q, "proportion as num/den")->required();
    union_cmd->add_option("--r", uni.r, "chunk length (0 = derive)");
    union_cmd->add_option("--chunks", uni.chunks, "chunk count");
    union_cmd->add_option("--seeds", uni.seeds, "number of runs");
    union_cmd->add_option("--seed", uni.seed, "first seed");
    union_cmd->add_option("--tolerance", uni.tolerance, "relative band width");
    union_cmd->add_option("--csv", uni.csv_path, "decay CSV path");

    RegimesOptions reg;
    auto* regimes = app.add_subcommand("regimes", "shape comparison over (n,p,q) points");
    regimes->add_option("--spec", reg.spec_path, "JSON list of {n,p,q}")->required();
    regimes->add_option("--moves", reg.moves, "moves per point (0 = auto)");
    regimes->add_option("--seeds", reg.seeds, "seeds per point");
    regimes->add_option("--seed", reg.seed, "master seed");
    regimes->add_option("--csv", reg.csv_path, "table CSV path");
    regimes->add_flag("--serial", reg.serial, "scan points serially");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));

        if (*simulate) return cmd_simulate(sim, out);
        if (*exact_cmd) return cmd_exact(exact, out);
        if (*domination) return cmd_oracle_domination(dom, out);
        if (*chernoff) return cmd_oracle_chernoff(chern, out);
        if (*union_cmd) return cmd_oracle_union(uni, out);
        if (*regimes) return cmd_regimes(reg, out);
        err << "error: no command selected\n";
        return 2;
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const CapacityError& e) {
        err << "capacity error: " << e.what() << "\n";
        return 3;
    } catch (const ConvergenceError& e) {
        err << "solver error: " << e.what() << "\n";
        return 4;
    } catch (const InvariantError& e) {
        err << "invariant violation: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace bulsol
