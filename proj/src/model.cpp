#include "gdc/model.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>

namespace gdc {

int deadline_for(int release, int length, const Rat& least_quality)
{
	// d = floor(r + p / L); the floor errs toward the client's guarantee
	return release + static_cast<int>(rat_floor(Rat(length) / least_quality));
}

Job::Job(int id, int release, int length, int nodes, Rat least_quality)
    : id(id), release(release), length(length), nodes(nodes),
      least_quality(std::move(least_quality))
{
	if (release < 0)
		throw std::invalid_argument("job " + std::to_string(id) + ": negative release");
	if (length < 1)
		throw std::invalid_argument("job " + std::to_string(id) + ": length must be >= 1");
	if (nodes < 1)
		throw std::invalid_argument("job " + std::to_string(id) + ": nodes must be >= 1");
	if (this->least_quality <= Rat(0) || this->least_quality > Rat(1))
		throw std::invalid_argument("job " + std::to_string(id) + ": least quality must be in (0, 1]");
	deadline = deadline_for(release, length, this->least_quality);
}

Instance::Instance(std::vector<Job> jobs_in, int machines_in, int horizon_in,
                   std::vector<Rat> green_in, std::vector<Money> price_in,
                   Money charge_rate_in, int slot_minutes_in)
    : jobs(std::move(jobs_in)), machines(machines_in), horizon(horizon_in),
      green(std::move(green_in)), price(std::move(price_in)),
      charge_rate(std::move(charge_rate_in)), slot_minutes(slot_minutes_in)
{
	if (machines < 1)
		throw std::invalid_argument("instance: machines must be >= 1");
	if (horizon < 1)
		throw std::invalid_argument("instance: horizon must be >= 1");
	if (slot_minutes < 1)
		throw std::invalid_argument("instance: slot_minutes must be >= 1");
	if (green.size() != static_cast<std::size_t>(horizon))
		throw std::invalid_argument("instance: green series length != horizon");
	if (price.size() != static_cast<std::size_t>(horizon))
		throw std::invalid_argument("instance: price series length != horizon");
	for (const Rat& g : green)
		if (g < Rat(0))
			throw std::invalid_argument("instance: negative green supply");
	for (const Money& b : price)
		if (b <= Money(0))
			throw std::invalid_argument("instance: brown price must be positive");

	std::stable_sort(jobs.begin(), jobs.end(), [](const Job& a, const Job& b) {
		return a.release != b.release ? a.release < b.release : a.id < b.id;
	});
	std::unordered_set<int> ids;
	for (const Job& j : jobs) {
		if (!ids.insert(j.id).second)
			throw std::invalid_argument("instance: duplicate job id " + std::to_string(j.id));
		if (j.nodes > machines)
			throw std::invalid_argument("job " + std::to_string(j.id) + ": needs more nodes than the cluster has");
		if (j.deadline > horizon)
			throw std::invalid_argument("job " + std::to_string(j.id) + ": deadline past the horizon");
	}
}

ScheduleState::ScheduleState(const Instance& instance)
    : occupancy_(instance.horizon, 0), starts_(instance.horizon, 0)
{
}

void ScheduleState::assign(const Instance& instance, const Job& job, int start)
{
	if (is_assigned(job.id))
		throw std::runtime_error("job " + std::to_string(job.id) + " already assigned");
	if (start < job.release || start + job.length > job.deadline)
		throw std::runtime_error("job " + std::to_string(job.id) + ": start " +
		                         std::to_string(start) + " outside [release, deadline - length]");
	for (int t = start; t < start + job.length; ++t)
		if (occupancy_[t] + job.nodes > instance.machines)
			throw std::runtime_error("job " + std::to_string(job.id) + ": no capacity at slot " +
			                         std::to_string(t));
	for (int t = start; t < start + job.length; ++t)
		occupancy_[t] += job.nodes;
	starts_[start] += 1;
	assignments_.emplace(job.id, start);
}

Money revenue_of(const Instance& instance, const Job& job, int completion)
{
	if (completion < job.release + job.length)
		throw std::logic_error("completion before release + length");
	// stretch = length / (completion - release)
	Rat quality(job.length, completion - job.release);
	if (quality >= job.least_quality)
		return instance.charge_rate * Rat(job.length) * Rat(job.nodes);
	return Money(0);
}

Money placement_cost(const Instance& instance, const ScheduleState& state,
                     const Job& job, int start)
{
	if (start < job.release || start + job.length > job.deadline)
		throw std::runtime_error("placement_cost: start outside the job window");
	const auto& e = state.occupancy();
	Money cost(0);
	for (int t = start; t < start + job.length; ++t) {
		if (e[t] + job.nodes > instance.machines)
			throw std::runtime_error("placement_cost: no capacity at slot " + std::to_string(t));
		Rat before = std::max(Rat(0), Rat(e[t]) - instance.green[t]);
		Rat after = std::max(Rat(0), Rat(e[t] + job.nodes) - instance.green[t]);
		cost += instance.price[t] * (after - before);
	}
	return cost;
}

std::vector<int> feasible_starts(const Instance& instance, const ScheduleState& state,
                                 const Job& job, int now)
{
	std::vector<int> result;
	const auto& e = state.occupancy();
	int lower = std::max(now, job.release);
	for (int s = lower; s + job.length <= job.deadline; ++s) {
		bool fits = true;
		for (int t = s; t < s + job.length; ++t) {
			if (e[t] + job.nodes > instance.machines) {
				fits = false;
				break;
			}
		}
		if (fits)
			result.push_back(s);
	}
	return result;
}

NormalizedValues normalized_values(int length, int nodes, Money charge_rate,
                                   Money on_price_per_kwh, Money off_price_per_kwh,
                                   Rat energy_per_machine_slot_kwh)
{
	if (length < 1 || nodes < 1)
		throw std::invalid_argument("normalized_values: bad job class");
	if (charge_rate <= Money(0) || energy_per_machine_slot_kwh <= Rat(0))
		throw std::invalid_argument("normalized_values: charge rate and energy must be positive");
	Rat resource = Rat(length) * Rat(nodes);
	Money on_cost = on_price_per_kwh * energy_per_machine_slot_kwh;
	Money off_cost = off_price_per_kwh * energy_per_machine_slot_kwh;
	NormalizedValues v;
	v.v_on = Rat(1) - (on_cost * resource) / (charge_rate * resource);
	v.v_off = Rat(1) - (off_cost * resource) / (charge_rate * resource);
	v.v_g = Rat(1);
	if (!(Rat(0) < v.v_on && v.v_on < v.v_off && v.v_off < v.v_g))
		throw std::invalid_argument("normalized_values: need 0 < v_on < v_off < v_g; "
		                            "check that the charge rate exceeds the on-peak cost "
		                            "and that on-peak is priced above off-peak");
	return v;
}

ProfitReport profit_report(const Instance& instance, const ScheduleState& state)
{
	std::unordered_map<int, const Job*> by_id;
	for (const Job& j : instance.jobs)
		by_id.emplace(j.id, &j);

	// recompute e(t) from the assignments; any mismatch means the state was
	// corrupted and the report would be meaningless
	std::vector<int> recomputed(instance.horizon, 0);
	ProfitReport report;
	for (const auto& [job_id, start] : state.assignments()) {
		auto it = by_id.find(job_id);
		if (it == by_id.end())
			throw std::logic_error("schedule references unknown job " + std::to_string(job_id));
		const Job& job = *it->second;
		if (start < job.release || start + job.length > job.deadline)
			throw std::logic_error("assigned job " + std::to_string(job_id) + " violates its window");
		for (int t = start; t < start + job.length; ++t)
			recomputed[t] += job.nodes;
		report.revenue += revenue_of(instance, job, start + job.length);
		report.jobs_completed += 1;
		report.workload_completed += static_cast<long long>(job.length) * job.nodes;
	}
	for (int t = 0; t < instance.horizon; ++t) {
		if (recomputed[t] != state.occupancy()[t])
			throw std::logic_error("occupancy out of sync at slot " + std::to_string(t));
		if (recomputed[t] > instance.machines)
			throw std::logic_error("capacity exceeded at slot " + std::to_string(t));
		Rat load(recomputed[t]);
		Rat brown = std::max(Rat(0), load - instance.green[t]);
		report.brown_cost += instance.price[t] * brown;
		report.green_used += std::min(load, instance.green[t]);
		report.green_available += instance.green[t];
	}
	report.net_profit = report.revenue - report.brown_cost;
	return report;
}

} // namespace gdc
