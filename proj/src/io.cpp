#include "bulsol/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace bulsol {

std::string format_double(double value) {
    char buffer[64];
    const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, result.ptr);
}

std::vector<double> parse_grid(const std::string& text) {
    double start = 0.0, stop = 0.0, step = 0.0;
    if (std::sscanf(text.c_str(), "%lf:%lf:%lf", &start, &stop, &step) != 3)
        throw std::invalid_argument("grid: expected start:stop:step, got '" + text + "'");
    if (step <= 0.0) throw std::invalid_argument("grid: step must be positive");
    if (start < 0.0) throw std::invalid_argument("grid: start must be non-negative");
    if (stop < start) throw std::invalid_argument("grid: stop must be >= start");
    if ((stop - start) / step > 1e7)
        throw std::invalid_argument("grid: more than 10^7 points requested");
    std::vector<double> grid;
    for (int i = 0;; ++i) {
        const double x = start + step * i;
        if (x > stop + step * 0.5) break;
        grid.push_back(x);
    }
    return grid;
}

void write_boundary_csv(std::ostream& out, const WeakComposition& state,
                        const ScalingFactor& a, const LimitShape& shape,
                        std::span<const double> grid) {
    out << "# bulsol boundary csv v1\n";
    out << "x,rescaled_y,shape_y,abs_dev\n";
    for (const double x : grid) {
        const double y = rescaled_boundary(state, a, x);
        const double s = shape(x);
        out << format_double(x) << ',' << format_double(y) << ',' << format_double(s)
            << ',' << format_double(std::abs(y - s)) << '\n';
    }
}

void write_traces_csv(std::ostream& out, const ChainStats& stats) {
    out << "# bulsol traces csv v1\n";
    out << "move,N,new_pile\n";
    for (std::size_t i = 0; i < stats.pile_count_trace.size(); ++i)
        out << (i + 1) << ',' << stats.pile_count_trace[i] << ','
            << stats.new_pile_trace[i] << '\n';
}

void write_pi_csv(std::ostream& out, const StateIndex& states,
                  const StationaryDistribution& dist) {
    out << "# bulsol stationary csv v1\n";
    out << "state,probability\n";
    for (std::size_t i = 0; i < states.size(); ++i)
        out << states.state(i).to_string() << ',' << format_double(dist.probabilities[i])
            << '\n';
}

void write_kernel_csv(std::ostream& out, const TransitionKernel& kernel) {
    out << "# bulsol kernel csv v1\n";
    out << "from,to,probability\n";
    for (std::size_t i = 0; i < kernel.rows.size(); ++i)
        for (const auto& [j, p] : kernel.rows[i])
            out << kernel.states.state(i).to_string() << ','
                << kernel.states.state(j).to_string() << ',' << format_double(p) << '\n';
}

void write_mass_csv(std::ostream& out, std::span<const double> xs,
                    std::span<const double> masses) {
    out << "# bulsol shape-mass csv v1\n";
    out << "x,mass\n";
    for (std::size_t i = 0; i < xs.size(); ++i)
        out << format_double(xs[i]) << ',' << format_double(masses[i]) << '\n';
}

void write_chernoff_csv(std::ostream& out, std::span<const double> gammas,
                        std::span<const double> bounds,
                        std::span<const double> exact_tails) {
    out << "# bulsol chernoff csv v1\n";
    out << "gamma,bound,exact_tail\n";
    for (std::size_t i = 0; i < gammas.size(); ++i)
        out << format_double(gammas[i]) << ',' << format_double(bounds[i]) << ','
            << format_double(exact_tails[i]) << '\n';
}

void write_regimes_csv(std::ostream& out, std::span<const RegimeRow> rows) {
    out << "# bulsol regimes csv v1\n";
    out << "n,p,q,pq2n,pq2n_over_log,dev_exponential,dev_triangle,label,fit\n";
    for (const auto& row : rows)
        out << row.point.n << ',' << format_double(row.point.p) << ','
            << row.point.q.to_string() << ',' << format_double(row.classification)
            << ',' << format_double(row.classification_log) << ','
            << format_double(row.dev_exponential) << ','
            << format_double(row.dev_triangle) << ',' << row.label << ','
            << (row.neither_fits ? "intermediate" : "ok") << '\n';
}

void write_union_decay_csv(std::ostream& out, std::span<const double> expected,
                           std::span<const double> mean_sizes,
                           std::span<const double> frac_within) {
    out << "# bulsol union-decay csv v1\n";
    out << "k,expected,mean_size,frac_within\n";
    for (std::size_t i = 0; i < expected.size(); ++i)
        out << (i + 1) << ',' << format_double(expected[i]) << ','
            << format_double(mean_sizes[i]) << ',' << format_double(frac_within[i])
            << '\n';
}

nlohmann::json stats_json(const SolitaireParams& params, const Schedule& schedule,
                          std::span<const ChainStats> chains,
                          const std::string& traces_path) {
    nlohmann::json doc;
    doc["schema_version"] = 1;
    doc["params"] = {{"n", params.cards},
                     {"p", params.pick_prob},
                     {"q", params.proportion.to_string()}};
    doc["schedule"] = {{"burn_in", schedule.burn_in},
                       {"window_paper", schedule.window_paper},
                       {"window_practical", schedule.window_practical},
                       {"chunk_moves", schedule.chunk_moves},
                       {"regime_density", schedule.regime_density},
                       {"union_threshold", schedule.union_threshold}};
    doc["seeds"] = nlohmann::json::array();
    for (const auto& chain : chains) {
        doc["seeds"].push_back(
            {{"seed", chain.seed},
             {"sup", chain.final_report.sup_on_interval},
             {"fraction_within", chain.final_report.fraction_within},
             {"final_piles", chain.final_state.count()},
             {"new_pile", chain.final_state.part(1)}});
    }
    if (!chains.empty()) {
        const auto& first = chains.front().final_report;
        doc["deviation"] = {{"sup", first.sup_on_interval},
                            {"fraction_within", first.fraction_within},
                            {"epsilon", first.epsilon},
                            {"interval", {first.interval[0], first.interval[1]}}};
    }
    doc["traces_path"] = traces_path;
    return doc;
}

namespace {

std::string fixed2(double v) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.2f", v);
    return buffer;
}

} // namespace

std::string svg_boundary_plot(const WeakComposition& state, const ScalingFactor& a,
                              const LimitShape& shape, double x_max) {
    constexpr double width = 800, height = 500, margin = 55;
    const double plot_w = width - 2 * margin;
    const double plot_h = height - 2 * margin;

    double y_max = shape(0.0);
    const double inv_a = 1.0 / a.value;
    const double divisor = a.height_divisor > 0.0
                               ? a.height_divisor
                               : static_cast<double>(state.total()) / a.value;
    const double height_scale = state.total() > 0 ? 1.0 / divisor : 0.0;
    for (std::size_t i = 0; i < state.count(); ++i) {
        if (static_cast<double>(i) * inv_a > x_max) break;
        y_max = std::max(y_max,
                         static_cast<double>(state.parts()[i]) * height_scale);
    }
    y_max *= 1.05;
    if (y_max <= 0.0) y_max = 1.0;

    const auto px = [&](double x) { return margin + x / x_max * plot_w; };
    const auto py = [&](double y) { return height - margin - y / y_max * plot_h; };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"500\" "
           "viewBox=\"0 0 800 500\">\n";
    svg += "<rect width=\"800\" height=\"500\" fill=\"white\"/>\n";

    // axes with ticks every x_max/4 and y_max/4
    svg += "<line x1=\"" + fixed2(margin) + "\" y1=\"" + fixed2(height - margin) +
           "\" x2=\"" + fixed2(width - margin) + "\" y2=\"" + fixed2(height - margin) +
           "\" stroke=\"black\"/>\n";
    svg += "<line x1=\"" + fixed2(margin) + "\" y1=\"" + fixed2(margin) + "\" x2=\"" +
           fixed2(margin) + "\" y2=\"" + fixed2(height - margin) +
           "\" stroke=\"black\"/>\n";
    for (int t = 0; t <= 4; ++t) {
        const double xv = x_max * t / 4.0;
        const double yv = y_max * t / 4.0;
        svg += "<line x1=\"" + fixed2(px(xv)) + "\" y1=\"" + fixed2(height - margin) +
               "\" x2=\"" + fixed2(px(xv)) + "\" y2=\"" +
               fixed2(height - margin + 5) + "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + fixed2(px(xv)) + "\" y=\"" + fixed2(height - margin + 20) +
               "\" font-size=\"12\" text-anchor=\"middle\">" + fixed2(xv) + "</text>\n";
        svg += "<line x1=\"" + fixed2(margin - 5) + "\" y1=\"" + fixed2(py(yv)) +
               "\" x2=\"" + fixed2(margin) + "\" y2=\"" + fixed2(py(yv)) +
               "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + fixed2(margin - 8) + "\" y=\"" + fixed2(py(yv) + 4) +
               "\" font-size=\"12\" text-anchor=\"end\">" + fixed2(yv) + "</text>\n";
    }

    // step polyline of the rescaled boundary
    std::string steps;
    const auto n_parts = static_cast<std::int64_t>(state.count());
    for (std::int64_t i = 0; i <= n_parts; ++i) {
        const double xl = static_cast<double>(i) * inv_a;
        if (xl > x_max) break;
        const double xr = std::min(x_max, static_cast<double>(i + 1) * inv_a);
        const double y =
            i == n_parts ? 0.0
                         : static_cast<double>(state.parts()[static_cast<std::size_t>(i)]) *
                               height_scale;
        steps += fixed2(px(xl)) + "," + fixed2(py(y)) + " ";
        steps += fixed2(px(xr)) + "," + fixed2(py(y)) + " ";
        if (i == n_parts || xr >= x_max) break;
    }
    svg += "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"" +
           steps + "\"/>\n";

    // smooth shape curve sampled at 500 points
    std::string curve;
    for (int i = 0; i <= 500; ++i) {
        const double x = x_max * i / 500.0;
        curve += fixed2(px(x)) + "," + fixed2(py(shape(x))) + " ";
    }
    svg += "<polyline fill=\"none\" stroke=\"#d62728\" stroke-width=\"1.5\" points=\"" +
           curve + "\"/>\n";
    svg += "</svg>\n";
    return svg;
}

} // namespace bulsol
