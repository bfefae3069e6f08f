#ifndef GDC_TEST_SUPPORT_HPP
#define GDC_TEST_SUPPORT_HPP

#include <vector>

#include "gdc/model.hpp"
#include "gdc/rng.hpp"
#include "gdc/traces.hpp"

namespace gdc::testing {

// Deadlines are generated from an explicit slack so they always land inside
// the horizon: L = length / (length + slack) makes deadline_for() give back
// release + length + slack exactly.
inline Job random_job(SplitMix64& rng, int id, int horizon, int machines)
{
	int length = 1 + static_cast<int>(rng.next() % std::min(3, horizon));
	int release = static_cast<int>(rng.next() % static_cast<std::uint64_t>(horizon - length + 1));
	int max_slack = horizon - release - length;
	int slack = max_slack > 0 ? static_cast<int>(rng.next() % (max_slack + 1)) : 0;
	int nodes = 1 + static_cast<int>(rng.next() % machines);
	return Job(id, release, length, nodes, Rat(length, length + slack));
}

struct GenOptions {
	int max_jobs = 6;
	int max_slots = 12;
	int max_machines = 4;
	bool allow_green = true;
	bool allow_unprofitable_prices = true; // occasionally price brown above beta
};

inline Instance random_instance(SplitMix64& rng, const GenOptions& opt = {})
{
	ValuesConfig vc;
	int machines = 1 + static_cast<int>(rng.next() % opt.max_machines);
	int horizon = 2 + static_cast<int>(rng.next() % (opt.max_slots - 1));
	int jobs_n = static_cast<int>(rng.next() % (opt.max_jobs + 1));

	std::vector<Money> price;
	std::vector<Rat> green;
	for (int t = 0; t < horizon; ++t) {
		std::uint64_t roll = rng.next() % 8;
		if (opt.allow_unprofitable_prices && roll == 0)
			price.push_back(Money(2) * vc.charge_rate); // any use is a loss
		else
			price.push_back(roll % 2 ? vc.on_peak_cost() : vc.off_peak_cost());
		green.push_back(opt.allow_green ? Rat(static_cast<Int>(rng.next() % (machines + 1)))
		                                : Rat(0));
	}
	std::vector<Job> jobs;
	for (int i = 0; i < jobs_n; ++i)
		jobs.push_back(random_job(rng, i, horizon, machines));
	return Instance(std::move(jobs), machines, horizon, std::move(green), std::move(price),
	                vc.charge_rate);
}

} // namespace gdc::testing

#endif
