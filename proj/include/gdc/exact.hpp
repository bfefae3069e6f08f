#ifndef GDC_EXACT_HPP
#define GDC_EXACT_HPP

#include "gdc/model.hpp"

namespace gdc {

struct SolveBudget {
	long long max_nodes = 100'000'000;
	double max_seconds = 300.0;
};

struct ExactSolution {
	ScheduleState state;
	ProfitReport report;
	bool optimal = false; // false when a budget cut the search short
	long long nodes_explored = 0;
	double wall_seconds = 0.0;
};

// Offline optimum by depth-first branch-and-bound over per-job start choices
// (including rejection). A node is pruned when its partial profit plus the
// full revenue of every undecided job cannot beat the incumbent; admissible
// because energy costs are nonnegative. Jobs branch in descending revenue
// order, starts in ascending marginal-cost order, rejection last. Accepts
// heterogeneous lengths and node counts.
ExactSolution solve_exact(const Instance& instance, const SolveBudget& budget = {});

// Validation oracle: exhaustively enumerates every capacity-feasible
// combination of {reject} + window starts, no pruning or ordering tricks.
// Throws std::invalid_argument beyond 6 jobs, 12 slots, or 4 machines.
ExactSolution brute_force(const Instance& instance);

} // namespace gdc

#endif
