#ifndef GDC_HARNESS_HPP
#define GDC_HARNESS_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gdc/exact.hpp"
#include "gdc/scheduler.hpp"
#include "gdc/traces.hpp"

namespace gdc {

struct PolicySpec {
	std::string name;
	SchedulerConfig config;
};

// Everything needed to replay the evaluation methodology: a utilization x
// least-quality sweep of seeded workloads, each scheduled by every policy,
// averaged over repetitions.
struct ExperimentPlan {
	int machines = 16;
	int horizon = 120; // five days of hourly slots
	int slot_minutes = 60;
	ValuesConfig config{};
	int on_start_hour = 9;
	int on_end_hour = 23;

	// workload: uniform job class by default, a trace file when given
	int uniform_length = 2;
	int uniform_nodes = 4;
	std::optional<std::string> workload_csv;

	// green supply: daily synthetic bell by default, a trace file when given
	std::optional<std::string> solar_csv;
	Rat power_per_machine_watts{140};

	std::vector<double> utilizations{0.1, 1.0};
	std::vector<Rat> L_values{Rat(1, 5)};
	std::vector<PolicySpec> policies;

	int repetitions = 30;
	std::uint64_t base_seed = 1;
	bool resample_workload = true; // false: same workload every repetition,
	                               // only Random-Fit's draws vary
	bool offline = false;          // also run the exact solver per repetition
	SolveBudget budget{};
};

// ff, bf, gs, rf with the plan's pricing-derived defaults.
std::vector<PolicySpec> default_policies(const ValuesConfig& config);
PolicySpec policy_from_name(const std::string& name, const ValuesConfig& config);

struct RatioRow {
	double utilization = 0;
	Rat L{1};
	std::string policy;
	double mean_profit = 0;
	double std_profit = 0;
	std::string reference_kind; // "opt-prime", "exact", or "opt-prime(budget)"
	double reference_profit = 0;
	std::optional<double> ratio; // reference / mean; empty when undefined
};

struct RatioTable {
	std::vector<RatioRow> rows;
};

// Runs the sweep and fills in empirical competitive-ratio lower bounds.
RatioTable run_experiment(const ExperimentPlan& plan);

// Per (utilization, L) cell: reference = exact optimum when rows carry one,
// otherwise the best-performing policy (OPT'); ratio = reference / mean.
// Cells whose reference or mean is not positive stay undefined.
RatioTable ratio_lower_bound(const RatioTable& table);

// Online policy on the instance with green scaled by alpha, against the
// exact optimum of the *unscaled* instance.
std::pair<ProfitReport, ProfitReport>
augmentation_experiment(const Instance& instance, const Rat& alpha,
                        const SchedulerConfig& policy, const SolveBudget& budget = {});

struct MonteCarloResult {
	Rat ratio_exact{0};       // opt_profit / mean profit, exact
	double expected_ratio = 0;
	double se_ratio = 0;      // delta-method standard error of the ratio
	double mean_profit = 0;
	double se_mean = 0;       // standard error of the mean profit
	Rat opt_profit{0};
	long long trials = 0;
};

// Random-Fit with the optimal probabilities on one of the proof scenarios,
// repeated `trials` times with per-trial substreams of `seed`. A probability
// override collapses the randomized branch (p=1 behaves like First-Fit).
MonteCarloResult monte_carlo_ratio(AdversaryFamily scenario, int machines,
                                   const ValuesConfig& config, long long trials,
                                   std::uint64_t seed,
                                   std::optional<double> p_override = std::nullopt);

std::string to_csv(const RatioTable& table);
std::string to_text(const RatioTable& table);
RatioTable parse_ratio_csv(std::istream& in, const std::string& source);

} // namespace gdc

#endif
