#include "gdc/scheduler.hpp"

#include <algorithm>
#include <stdexcept>

namespace gdc {

Rat optimal_probability(const NormalizedValues& values, PriceClass price_class)
{
	if (!(Rat(0) < values.v_on && values.v_on < values.v_off && values.v_off < values.v_g))
		throw std::invalid_argument("optimal_probability: values must satisfy 0 < v_on < v_off < v_g");
	Rat k = price_class == PriceClass::on_to_off ? values.v_on / values.v_off
	                                             : values.v_off / values.v_g;
	return k / (Rat(1) + k - k * k);
}

Decision first_fit(const Instance& instance, const ScheduleState& state,
                   const Job& job, int now)
{
	auto starts = feasible_starts(instance, state, job, now);
	if (starts.empty())
		return Decision{job.id, std::nullopt};
	return Decision{job.id, starts.front()};
}

Decision best_fit(const Instance& instance, const ScheduleState& state,
                  const Job& job, int now)
{
	auto starts = feasible_starts(instance, state, job, now);
	if (starts.empty())
		return Decision{job.id, std::nullopt};
	int best = starts.front();
	Money best_cost = placement_cost(instance, state, job, best);
	for (std::size_t i = 1; i < starts.size(); ++i) {
		Money cost = placement_cost(instance, state, job, starts[i]);
		if (cost < best_cost) { // strict: earliest start wins ties
			best = starts[i];
			best_cost = cost;
		}
	}
	return Decision{job.id, best};
}

Decision green_slot(const Instance& instance, const ScheduleState& state,
                    const Job& job, int now, const SchedulerConfig& config)
{
	if (config.greenslot_penalty < Money(0) || config.greenslot_slack_fraction < Rat(0))
		throw std::invalid_argument("green_slot: penalty and slack fraction must be >= 0");
	auto starts = feasible_starts(instance, state, job, now);
	if (starts.empty())
		return Decision{job.id, std::nullopt};
	// starts later than this are considered at risk of missing the deadline
	int safe_until = job.deadline - job.length -
	                 static_cast<int>(rat_ceil(config.greenslot_slack_fraction * Rat(job.length)));
	Money penalty = config.greenslot_penalty * Rat(job.length) * Rat(job.nodes);
	int best = starts.front();
	Money best_cost = placement_cost(instance, state, job, best) +
	                  (best > safe_until ? penalty : Money(0));
	for (std::size_t i = 1; i < starts.size(); ++i) {
		Money cost = placement_cost(instance, state, job, starts[i]) +
		             (starts[i] > safe_until ? penalty : Money(0));
		if (cost < best_cost) {
			best = starts[i];
			best_cost = cost;
		}
	}
	return Decision{job.id, best};
}

std::optional<int> sufficient_green(const Instance& instance, const ScheduleState& state,
                                    const Job& job, int now)
{
	auto starts = feasible_starts(instance, state, job, now);
	if (starts.empty())
		return std::nullopt;
	if (placement_cost(instance, state, job, starts.front()) == Money(0))
		return starts.front();
	return std::nullopt;
}

Decision random_fit(const Instance& instance, const ScheduleState& state,
                    const Job& job, int now, const SchedulerConfig& config,
                    SplitMix64& rng)
{
	auto starts = feasible_starts(instance, state, job, now);
	if (starts.empty())
		return Decision{job.id, std::nullopt};
	int earliest = starts.front();
	if (placement_cost(instance, state, job, earliest) == Money(0))
		return Decision{job.id, earliest};

	double p;
	if (config.randomfit_p_override) {
		p = *config.randomfit_p_override;
		if (p < 0.0 || p > 1.0)
			throw std::invalid_argument("random_fit: probability override outside [0, 1]");
	} else {
		if (!config.values)
			throw std::invalid_argument("random_fit: config carries neither values nor an override");
		PriceClass price_class = instance.price[earliest] >= config.on_peak_cost
		                             ? PriceClass::on_to_off
		                             : PriceClass::off_to_on;
		p = to_double(optimal_probability(*config.values, price_class));
	}
	if (rng.next_unit() < p)
		return Decision{job.id, earliest};
	return best_fit(instance, state, job, now);
}

RunResult run_online(const Instance& instance, const SchedulerConfig& config)
{
	ScheduleState state(instance);
	std::vector<Decision> decisions;
	decisions.reserve(instance.jobs.size());
	for (std::size_t k = 0; k < instance.jobs.size(); ++k) {
		const Job& job = instance.jobs[k]; // release order, ties by id
		int now = job.release;
		Decision decision{};
		switch (config.policy) {
		case Policy::first_fit:
			decision = first_fit(instance, state, job, now);
			break;
		case Policy::best_fit:
			decision = best_fit(instance, state, job, now);
			break;
		case Policy::green_slot:
			decision = green_slot(instance, state, job, now, config);
			break;
		case Policy::random_fit: {
			SplitMix64 rng(substream_seed(config.rng_seed, k));
			decision = random_fit(instance, state, job, now, config, rng);
			break;
		}
		}
		if (decision.start)
			state.assign(instance, job, *decision.start);
		decisions.push_back(decision);
	}
	ProfitReport report = profit_report(instance, state);
	return RunResult{std::move(state), std::move(report), std::move(decisions)};
}

SchedulerConfig make_config(Policy policy, const NormalizedValues& values,
                            Money on_peak_cost, std::uint64_t seed)
{
	SchedulerConfig config;
	config.policy = policy;
	config.values = values;
	config.on_peak_cost = on_peak_cost;
	config.greenslot_penalty = Money(2) * on_peak_cost;
	config.rng_seed = seed;
	return config;
}

} // namespace gdc
