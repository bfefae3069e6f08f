#ifndef GDC_SCHEDULER_HPP
#define GDC_SCHEDULER_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "gdc/model.hpp"
#include "gdc/rng.hpp"

namespace gdc {

enum class Policy { first_fit, best_fit, green_slot, random_fit };

// One irrevocable commitment: either a start slot or a rejection because no
// feasible start existed at decision time.
struct Decision {
	int job_id = 0;
	std::optional<int> start; // nullopt = rejected (no feasible start)

	bool operator==(const Decision&) const = default;
};

// Which optimal Random-Fit probability applies, per the direction the job
// could be shifted: from an on-peak greedy slot toward off-peak, or from an
// off-peak greedy slot toward on-peak (where green typically arrives).
enum class PriceClass { on_to_off, off_to_on };

struct SchedulerConfig {
	Policy policy = Policy::first_fit;

	// GreenSlot knobs
	Money greenslot_penalty{0};        // per machine-slot of the delayed job
	Rat greenslot_slack_fraction{1, 5}; // fraction of length counted as "about to miss"

	// Random-Fit knobs
	std::optional<double> randomfit_p_override;
	std::optional<NormalizedValues> values; // required unless the override is set
	Money on_peak_cost{0}; // per machine-slot; classifies a slot's price level

	std::uint64_t rng_seed = 0;
};

// p = x/(1+x-x^2) with x = v_on/v_off for on_to_off, and the analogous p'
// with y = v_off/v_g for off_to_on. Exact rational in (0, 1).
Rat optimal_probability(const NormalizedValues& values, PriceClass price_class);

Decision first_fit(const Instance& instance, const ScheduleState& state,
                   const Job& job, int now);

// Minimum placement cost, earliest start among ties.
Decision best_fit(const Instance& instance, const ScheduleState& state,
                  const Job& job, int now);

// Best-Fit plus a lateness penalty on starts within the last
// ceil(slack_fraction * length) slots of the feasible window.
Decision green_slot(const Instance& instance, const ScheduleState& state,
                    const Job& job, int now, const SchedulerConfig& config);

// The Random-Fit green test: the start the greedy branch would take (the
// earliest feasible start) is fully covered by free green energy. Returns
// that start, or nullopt when the job would have to pay for brown energy
// there (or has no feasible start at all).
std::optional<int> sufficient_green(const Instance& instance, const ScheduleState& state,
                                    const Job& job, int now);

// Schedules on green when sufficient_green holds; otherwise schedules at the
// earliest feasible start with probability p and at the most economic one
// with probability 1-p. p comes from optimal_probability for the price class
// of the earliest feasible slot, unless overridden.
Decision random_fit(const Instance& instance, const ScheduleState& state,
                    const Job& job, int now, const SchedulerConfig& config,
                    SplitMix64& rng);

struct RunResult {
	ScheduleState state;
	ProfitReport report;
	std::vector<Decision> decisions;
};

// Processes jobs in release order (ties by id), committing one decision per
// job on arrival. Deterministic given (instance, config) including the seed.
RunResult run_online(const Instance& instance, const SchedulerConfig& config);

// Config helpers with the conventional defaults: Random-Fit derives its
// probabilities from the value triple; GreenSlot's default penalty is twice
// the on-peak cost of a machine-slot.
SchedulerConfig make_config(Policy policy, const NormalizedValues& values,
                            Money on_peak_cost, std::uint64_t seed = 0);

} // namespace gdc

#endif
