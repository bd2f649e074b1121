// Timing harness for the serial reference paths against their OpenMP
// counterparts: multi-seed chain ensembles, kernel row construction, and
// sampled domination checks. Results must agree bit for bit; the only
// difference is wall time.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "bulsol/exact.hpp"
#include "bulsol/montecarlo.hpp"
#include "bulsol/parallel.hpp"
#include "bulsol/solitaire.hpp"
#include "bulsol/threshold.hpp"

using namespace bulsol;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <typename Fn>
double timed(Fn&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    return seconds_since(t0);
}

bool same_ensemble(const std::vector<ChainStats>& a, const std::vector<ChainStats>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].final_state != b[i].final_state) return false;
        if (a[i].final_report.sup_on_interval != b[i].final_report.sup_on_interval)
            return false;
    }
    return true;
}

bool same_kernel(const TransitionKernel& a, const TransitionKernel& b) {
    if (a.rows.size() != b.rows.size()) return false;
    for (std::size_t i = 0; i < a.rows.size(); ++i)
        if (a.rows[i] != b.rows[i]) return false;
    return true;
}

} // namespace

int main(int argc, char** argv) {
    std::int64_t n = 20000;
    std::uint64_t seeds = 12;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--n" && i + 1 < argc) n = std::stoll(argv[++i]);
        else if (arg == "--seeds" && i + 1 < argc) seeds = std::stoull(argv[++i]);
        else {
            std::printf("usage: bulsol_bench [--n N] [--seeds K]\n");
            return 2;
        }
    }

    std::printf("threads available: %d\n\n", max_threads());

    {
        const SolitaireParams params(n, 0.01, Rational(1, 1));
        const WeakComposition start(
            std::vector<std::int64_t>(triangular_start(n).parts()));
        ChainRunSpec spec;
        spec.window = 200;
        std::vector<std::uint64_t> seed_list(seeds);
        for (std::uint64_t i = 0; i < seeds; ++i) seed_list[i] = i + 1;

        std::vector<ChainStats> serial, parallel;
        const double t_serial = timed([&] {
            serial = run_ensemble(start, params, spec, seed_list, Exec::Serial);
        });
        const double t_parallel = timed([&] {
            parallel = run_ensemble(start, params, spec, seed_list, Exec::Parallel);
        });
        std::printf("chain ensemble (n=%lld, %llu seeds, 200 moves)\n",
                    static_cast<long long>(n), static_cast<unsigned long long>(seeds));
        std::printf("  serial   %.3f s\n  parallel %.3f s  (x%.2f)\n  identical: %s\n\n",
                    t_serial, t_parallel, t_serial / t_parallel,
                    same_ensemble(serial, parallel) ? "yes" : "NO");
    }

    {
        const SolitaireParams params(16, 0.3, Rational(1, 2));
        TransitionKernel serial{StateIndex::enumerate(16), {}, params};
        TransitionKernel parallel = serial;
        const double t_serial = timed([&] {
            serial = build_kernel(StateIndex::enumerate(16), params, Exec::Serial);
        });
        const double t_parallel = timed([&] {
            parallel = build_kernel(StateIndex::enumerate(16), params, Exec::Parallel);
        });
        std::printf("kernel build (n=16, %zu states)\n", serial.states.size());
        std::printf("  serial   %.3f s\n  parallel %.3f s  (x%.2f)\n  identical: %s\n\n",
                    t_serial, t_parallel, t_serial / t_parallel,
                    same_kernel(serial, parallel) ? "yes" : "NO");
    }

    {
        std::vector<std::uint64_t> seed_list(20000);
        for (std::size_t i = 0; i < seed_list.size(); ++i) seed_list[i] = i + 1;
        DominationReport serial, parallel;
        const double t_serial = timed([&] {
            serial = check_domination(200, Rational(1, 2), Rational(1, 2), 0.1, 12,
                                      seed_list, Exec::Serial);
        });
        const double t_parallel = timed([&] {
            parallel = check_domination(200, Rational(1, 2), Rational(1, 2), 0.1, 12,
                                        seed_list, Exec::Parallel);
        });
        std::printf("sampled domination (a1=200, r=12, %zu seeds)\n", seed_list.size());
        std::printf("  serial   %.3f s\n  parallel %.3f s  (x%.2f)\n  identical: %s\n",
                    t_serial, t_parallel, t_serial / t_parallel,
                    serial.violations_over == parallel.violations_over &&
                            serial.violations_under == parallel.violations_under &&
                            serial.under_hypothesis_runs == parallel.under_hypothesis_runs
                        ? "yes"
                        : "NO");
    }
    return 0;
}
