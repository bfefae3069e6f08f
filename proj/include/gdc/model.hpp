#ifndef GDC_MODEL_HPP
#define GDC_MODEL_HPP

#include <map>
#include <vector>

#include "gdc/rational.hpp"

namespace gdc {

// Latest slot by which a job released at `release` with `length` processing
// slots must complete so that its stretch length/(completion - release) still
// meets `least_quality`. Rounded down: completing exactly at the returned
// slot always satisfies the quality bound, one slot later never does.
int deadline_for(int release, int length, const Rat& least_quality);

// A batch job: occupies `nodes` machines for `length` consecutive slots,
// may start anywhere in [release, deadline - length].
struct Job {
	int id = 0;
	int release = 0;      // earliest start slot
	int length = 1;       // processing slots
	int nodes = 1;        // machines held while running
	Rat least_quality{1}; // minimum acceptable stretch, in (0, 1]
	int deadline = 1;     // derived: deadline_for(release, length, least_quality)

	Job(int id, int release, int length, int nodes, Rat least_quality);

	bool operator==(const Job&) const = default;
};

// Immutable problem input. Jobs are kept in release order (ties by id).
struct Instance {
	std::vector<Job> jobs;
	int machines = 1;
	int horizon = 1;          // number of slots
	std::vector<Rat> green;   // per-slot green supply, machine-slots
	std::vector<Money> price; // per-slot brown price, dollars per machine-slot
	Money charge_rate{0};     // service charge per machine-slot (beta)
	int slot_minutes = 60;    // metadata: real-time length of one slot

	Instance(std::vector<Job> jobs, int machines, int horizon,
	         std::vector<Rat> green, std::vector<Money> price,
	         Money charge_rate, int slot_minutes = 60);

	bool operator==(const Instance&) const = default;
};

// Occupancy/assignment record. Built incrementally as jobs are committed;
// never un-assigns (online decisions are irrevocable, the exact solver
// copies states instead of backtracking in place).
class ScheduleState {
public:
	explicit ScheduleState(const Instance& instance);

	bool is_assigned(int job_id) const { return assignments_.count(job_id) != 0; }
	int start_of(int job_id) const { return assignments_.at(job_id); }

	// Commits the job at `start`. Throws std::runtime_error if the placement
	// violates the job window or the machine capacity.
	void assign(const Instance& instance, const Job& job, int start);

	const std::map<int, int>& assignments() const { return assignments_; }
	const std::vector<int>& occupancy() const { return occupancy_; } // e(t)
	const std::vector<int>& starts() const { return starts_; }       // n(t)

	bool operator==(const ScheduleState&) const = default;

private:
	std::map<int, int> assignments_; // job id -> start slot
	std::vector<int> occupancy_;
	std::vector<int> starts_;
};

struct ProfitReport {
	Money revenue{0};
	Money brown_cost{0};
	Money net_profit{0};
	Rat green_used{0};      // machine-slots actually covered by green
	Rat green_available{0}; // total green supply over the horizon
	int jobs_completed = 0;
	long long workload_completed = 0; // machine-slots of admitted work
};

// Dimensionless per-machine-slot profit fractions for a uniform job class.
// v_on/v_off/v_g drive Random-Fit's probabilities and every ratio identity.
struct NormalizedValues {
	Rat v_on{0};
	Rat v_off{0};
	Rat v_g{1};
};

// Revenue for completing `job` at slot `completion`: charge_rate * length *
// nodes when the stretch bound holds, zero otherwise.
Money revenue_of(const Instance& instance, const Job& job, int completion);

// Incremental brown cost of adding `job` at `start` on top of the current
// occupancy. Green energy is consumed first in every slot.
// Throws std::runtime_error if `start` is not feasible.
Money placement_cost(const Instance& instance, const ScheduleState& state,
                     const Job& job, int start);

// All starts s with max(now, release) <= s, s + length <= deadline, and
// enough free machines in every covered slot; ascending. Empty means the
// job has to be rejected.
std::vector<int> feasible_starts(const Instance& instance, const ScheduleState& state,
                                 const Job& job, int now);

// Normalized profit-per-machine-slot values for a job class (length, nodes)
// under charging rate beta and time-of-use brown prices. Throws
// std::invalid_argument unless 0 < v_on < v_off < v_g = 1 (in particular the
// charge rate must exceed the on-peak cost of one machine-slot).
NormalizedValues normalized_values(int length, int nodes, Money charge_rate,
                                   Money on_price_per_kwh, Money off_price_per_kwh,
                                   Rat energy_per_machine_slot_kwh);

// Full accounting of a schedule. Verifies the state invariants (capacity,
// occupancy consistency, deadline safety) and throws std::logic_error if the
// state was corrupted rather than silently mis-accounting.
ProfitReport profit_report(const Instance& instance, const ScheduleState& state);

} // namespace gdc

#endif
