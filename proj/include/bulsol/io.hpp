#pragma once

#include <ostream>
#include <span>
#include <string>

#include "bulsol/exact.hpp"
#include "bulsol/montecarlo.hpp"
#include "bulsol/shape.hpp"
#include "bulsol/threshold.hpp"

#include <json.hpp>

namespace bulsol {

/// Shortest decimal text that round-trips the exact double.
/// All file output goes through this: locale-free and deterministic.
std::string format_double(double value);

/// "start:stop:step" -> strictly increasing grid including start, stepping
/// while <= stop + step/2.
std::vector<double> parse_grid(const std::string& text);

// CSV emitters. Each writes a "# bulsol <name> csv v1" schema line, then a
// column header, then LF-terminated rows.
void write_boundary_csv(std::ostream& out, const WeakComposition& state,
                        const ScalingFactor& a, const LimitShape& shape,
                        std::span<const double> grid);
void write_traces_csv(std::ostream& out, const ChainStats& stats);
void write_pi_csv(std::ostream& out, const StateIndex& states,
                  const StationaryDistribution& dist);
void write_kernel_csv(std::ostream& out, const TransitionKernel& kernel);
void write_mass_csv(std::ostream& out, std::span<const double> xs,
                    std::span<const double> masses);
void write_chernoff_csv(std::ostream& out, std::span<const double> gammas,
                        std::span<const double> bounds,
                        std::span<const double> exact_tails);
void write_regimes_csv(std::ostream& out, std::span<const RegimeRow> rows);
void write_union_decay_csv(std::ostream& out, std::span<const double> expected,
                           std::span<const double> mean_sizes,
                           std::span<const double> frac_within);

/// Simulation stats document (schema_version, params, schedule, seeds,
/// deviation of the first seed's final state, traces_path).
nlohmann::json stats_json(const SolitaireParams& params, const Schedule& schedule,
                          std::span<const ChainStats> chains,
                          const std::string& traces_path);

/// Self-contained SVG: the rescaled boundary as a step polyline and the
/// reference shape sampled at 500 points. No external references.
std::string svg_boundary_plot(const WeakComposition& state, const ScalingFactor& a,
                              const LimitShape& shape, double x_max);

} // namespace bulsol
