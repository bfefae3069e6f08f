#include "gdc/exact.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

namespace gdc {

namespace {

using Clock = std::chrono::steady_clock;

// Mutable search scratchpad with undo; the winning assignment is
// materialized into a ScheduleState only once at the end.
struct SearchState {
	const Instance& instance;
	std::vector<int> occupancy;
	Money profit{0};

	explicit SearchState(const Instance& inst)
	    : instance(inst), occupancy(inst.horizon, 0)
	{
	}

	bool fits(const Job& job, int start) const
	{
		for (int t = start; t < start + job.length; ++t)
			if (occupancy[t] + job.nodes > instance.machines)
				return false;
		return true;
	}

	Money marginal_cost(const Job& job, int start) const
	{
		Money cost(0);
		for (int t = start; t < start + job.length; ++t) {
			Rat before = std::max(Rat(0), Rat(occupancy[t]) - instance.green[t]);
			Rat after = std::max(Rat(0), Rat(occupancy[t] + job.nodes) - instance.green[t]);
			cost += instance.price[t] * (after - before);
		}
		return cost;
	}

	Money place(const Job& job, int start)
	{
		Money cost = marginal_cost(job, start);
		for (int t = start; t < start + job.length; ++t)
			occupancy[t] += job.nodes;
		Money revenue = instance.charge_rate * Rat(job.length) * Rat(job.nodes);
		profit += revenue - cost;
		return revenue - cost;
	}

	void unplace(const Job& job, int start, const Money& gain)
	{
		for (int t = start; t < start + job.length; ++t)
			occupancy[t] -= job.nodes;
		profit -= gain;
	}
};

ExactSolution materialize(const Instance& instance,
                          const std::vector<std::optional<int>>& assignment,
                          bool optimal, long long nodes, double seconds)
{
	ScheduleState state(instance);
	for (std::size_t i = 0; i < instance.jobs.size(); ++i)
		if (assignment[i])
			state.assign(instance, instance.jobs[i], *assignment[i]);
	ProfitReport report = profit_report(instance, state);
	return ExactSolution{std::move(state), std::move(report), optimal, nodes, seconds};
}

struct BranchAndBound {
	const Instance& instance;
	const SolveBudget& budget;
	Clock::time_point started;

	std::vector<std::size_t> order;   // job indices, descending revenue
	std::vector<Money> revenue_tail;  // sum of revenues of order[k..]

	SearchState state;
	std::vector<std::optional<int>> current;
	std::vector<std::optional<int>> best;
	Money best_profit{0};

	long long nodes = 0;
	bool budget_hit = false;

	BranchAndBound(const Instance& inst, const SolveBudget& bud)
	    : instance(inst), budget(bud), started(Clock::now()), state(inst),
	      current(inst.jobs.size()), best(inst.jobs.size())
	{
		order.resize(instance.jobs.size());
		std::iota(order.begin(), order.end(), std::size_t{0});
		std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
			const Job& ja = instance.jobs[a];
			const Job& jb = instance.jobs[b];
			return Rat(ja.length) * Rat(ja.nodes) > Rat(jb.length) * Rat(jb.nodes);
		});
		revenue_tail.assign(order.size() + 1, Money(0));
		for (std::size_t k = order.size(); k-- > 0;) {
			const Job& j = instance.jobs[order[k]];
			revenue_tail[k] = revenue_tail[k + 1] +
			                  instance.charge_rate * Rat(j.length) * Rat(j.nodes);
		}
	}

	bool out_of_budget()
	{
		if (nodes >= budget.max_nodes)
			return true;
		if ((nodes & 1023) == 0) {
			double elapsed = std::chrono::duration<double>(Clock::now() - started).count();
			if (elapsed > budget.max_seconds)
				return true;
		}
		return false;
	}

	void record_if_better()
	{
		if (state.profit > best_profit) {
			best_profit = state.profit;
			best = current;
		}
	}

	void search(std::size_t depth)
	{
		if (budget_hit)
			return;
		if (depth == order.size()) {
			record_if_better();
			return;
		}
		// optimistic completion: every undecided job at full revenue, zero cost
		if (state.profit + revenue_tail[depth] <= best_profit)
			return;

		const Job& job = instance.jobs[order[depth]];
		auto starts = window_starts(job);
		// ascending marginal cost, ties by earliest start; rejection last
		std::vector<std::pair<Money, int>> ranked;
		ranked.reserve(starts.size());
		for (int s : starts)
			ranked.emplace_back(state.marginal_cost(job, s), s);
		std::stable_sort(ranked.begin(), ranked.end(),
		                 [](const auto& a, const auto& b) { return a.first < b.first; });

		for (const auto& [cost, s] : ranked) {
			++nodes;
			if (out_of_budget()) {
				budget_hit = true;
				return;
			}
			Money gain = state.place(job, s);
			current[order[depth]] = s;
			search(depth + 1);
			state.unplace(job, s, gain);
			current[order[depth]] = std::nullopt;
			if (budget_hit)
				return;
		}
		++nodes;
		if (out_of_budget()) {
			budget_hit = true;
			return;
		}
		search(depth + 1); // reject
	}

	std::vector<int> window_starts(const Job& job) const
	{
		std::vector<int> starts;
		for (int s = job.release; s + job.length <= job.deadline; ++s)
			if (state.fits(job, s))
				starts.push_back(s);
		return starts;
	}
};

} // namespace

ExactSolution solve_exact(const Instance& instance, const SolveBudget& budget)
{
	BranchAndBound bb(instance, budget);
	bb.search(0);
	double seconds = std::chrono::duration<double>(Clock::now() - bb.started).count();
	return materialize(instance, bb.best, !bb.budget_hit, bb.nodes, seconds);
}

ExactSolution brute_force(const Instance& instance)
{
	if (instance.jobs.size() > 6 || instance.horizon > 12 || instance.machines > 4)
		throw std::invalid_argument("brute_force: instance exceeds the enumeration budget "
		                            "(max 6 jobs, 12 slots, 4 machines)");

	auto started = Clock::now();
	SearchState state(instance);
	std::vector<std::optional<int>> current(instance.jobs.size());
	std::vector<std::optional<int>> best(instance.jobs.size());
	Money best_profit{0};
	long long leaves = 0;

	// plain enumeration in instance order, every feasible start plus reject
	auto recurse = [&](auto&& self, std::size_t depth) -> void {
		if (depth == instance.jobs.size()) {
			++leaves;
			if (state.profit > best_profit) {
				best_profit = state.profit;
				best = current;
			}
			return;
		}
		const Job& job = instance.jobs[depth];
		self(self, depth + 1); // reject
		for (int s = job.release; s + job.length <= job.deadline; ++s) {
			if (!state.fits(job, s))
				continue;
			Money gain = state.place(job, s);
			current[depth] = s;
			self(self, depth + 1);
			state.unplace(job, s, gain);
			current[depth] = std::nullopt;
		}
	};
	recurse(recurse, 0);

	double seconds = std::chrono::duration<double>(Clock::now() - started).count();
	return materialize(instance, best, true, leaves, seconds);
}

} // namespace gdc
