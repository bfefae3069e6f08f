#include "gdc/harness.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "gdc/rng.hpp"

namespace gdc {

namespace {

std::uint64_t cell_key(std::uint64_t base, double utilization, const Rat& L)
{
	std::uint64_t k = mix_seed(base, static_cast<std::uint64_t>(std::llround(utilization * 1000)));
	k = mix_seed(k, static_cast<std::uint64_t>(L.numerator()));
	k = mix_seed(k, static_cast<std::uint64_t>(L.denominator()));
	return k;
}

struct CellStats {
	double mean = 0;
	double stddev = 0;
};

CellStats stats_of(const std::vector<double>& xs)
{
	CellStats s;
	if (xs.empty())
		return s;
	double sum = 0;
	for (double x : xs)
		sum += x;
	s.mean = sum / static_cast<double>(xs.size());
	if (xs.size() > 1) {
		double ss = 0;
		for (double x : xs)
			ss += (x - s.mean) * (x - s.mean);
		s.stddev = std::sqrt(ss / static_cast<double>(xs.size() - 1));
	}
	return s;
}

} // namespace

std::vector<PolicySpec> default_policies(const ValuesConfig& config)
{
	return {policy_from_name("ff", config), policy_from_name("bf", config),
	        policy_from_name("gs", config), policy_from_name("rf", config)};
}

PolicySpec policy_from_name(const std::string& name, const ValuesConfig& config)
{
	NormalizedValues values = config.values();
	Money on_cost = config.on_peak_cost();
	if (name == "ff" || name == "first-fit")
		return {"ff", make_config(Policy::first_fit, values, on_cost)};
	if (name == "bf" || name == "best-fit")
		return {"bf", make_config(Policy::best_fit, values, on_cost)};
	if (name == "gs" || name == "green-slot" || name == "greenslot")
		return {"gs", make_config(Policy::green_slot, values, on_cost)};
	if (name == "rf" || name == "random-fit")
		return {"rf", make_config(Policy::random_fit, values, on_cost)};
	throw std::invalid_argument("unknown policy '" + name + "' (use ff, bf, gs, or rf)");
}

RatioTable run_experiment(const ExperimentPlan& plan)
{
	if (plan.repetitions < 1)
		throw std::invalid_argument("run_experiment: repetitions must be >= 1");
	if (plan.utilizations.empty() || plan.L_values.empty() || plan.policies.empty())
		throw std::invalid_argument("run_experiment: utilizations, L values, and policies "
		                            "must be nonempty");

	std::optional<WorkloadTrace> workload;
	if (plan.workload_csv)
		workload = parse_workload(*plan.workload_csv);
	std::vector<Rat> green;
	if (plan.solar_csv) {
		SolarTrace solar = parse_solar(*plan.solar_csv);
		green = scale_solar(solar, plan.machines, plan.power_per_machine_watts,
		                    plan.slot_minutes, plan.horizon);
	} else {
		green = synthetic_solar(plan.machines, plan.horizon);
	}
	PricingSchedule schedule{plan.config.on_peak_per_kwh, plan.config.off_peak_per_kwh,
	                         plan.on_start_hour, plan.on_end_hour};
	std::vector<Money> price = pricing_series(schedule, plan.horizon, plan.slot_minutes,
	                                          plan.config.energy_per_machine_slot_kwh);

	RatioTable table;
	for (double utilization : plan.utilizations) {
		for (const Rat& L : plan.L_values) {
			std::uint64_t key = cell_key(plan.base_seed, utilization, L);
			std::vector<std::vector<double>> profits(plan.policies.size());
			std::vector<double> exact_profits;
			bool budget_degraded = false;

			for (int rep = 0; rep < plan.repetitions; ++rep) {
				std::uint64_t workload_seed =
				    mix_seed(key, plan.resample_workload ? 10000 + rep : 10000);
				std::vector<Job> jobs =
				    workload ? scale_workload(*workload, plan.machines, plan.slot_minutes,
				                              utilization, L, plan.horizon, workload_seed)
				             : uniform_workload(plan.machines, plan.horizon, plan.uniform_length,
				                                plan.uniform_nodes, utilization, L, workload_seed);
				Instance instance(std::move(jobs), plan.machines, plan.horizon, green, price,
				                  plan.config.charge_rate, plan.slot_minutes);

				for (std::size_t i = 0; i < plan.policies.size(); ++i) {
					SchedulerConfig config = plan.policies[i].config;
					config.rng_seed = mix_seed(mix_seed(key, 20000 + rep), i);
					profits[i].push_back(to_double(run_online(instance, config).report.net_profit));
				}
				if (plan.offline) {
					ExactSolution solution = solve_exact(instance, plan.budget);
					exact_profits.push_back(to_double(solution.report.net_profit));
					if (!solution.optimal)
						budget_degraded = true;
				}
			}

			bool have_exact = plan.offline && !budget_degraded;
			std::string kind = have_exact ? "exact"
			                              : (plan.offline ? "opt-prime(budget)" : "opt-prime");
			double exact_mean = exact_profits.empty() ? 0 : stats_of(exact_profits).mean;
			for (std::size_t i = 0; i < plan.policies.size(); ++i) {
				CellStats s = stats_of(profits[i]);
				RatioRow row;
				row.utilization = utilization;
				row.L = L;
				row.policy = plan.policies[i].name;
				row.mean_profit = s.mean;
				row.std_profit = s.stddev;
				row.reference_kind = kind;
				row.reference_profit = have_exact ? exact_mean : 0; // OPT' filled below
				table.rows.push_back(row);
			}
		}
	}
	return ratio_lower_bound(table);
}

RatioTable ratio_lower_bound(const RatioTable& table)
{
	RatioTable result = table;
	// group rows by (utilization, L)
	for (RatioRow& row : result.rows) {
		double reference = 0;
		bool exact = row.reference_kind == "exact";
		if (exact) {
			reference = row.reference_profit;
		} else {
			for (const RatioRow& other : result.rows)
				if (other.utilization == row.utilization && other.L == row.L)
					reference = std::max(reference, other.mean_profit);
		}
		row.reference_profit = reference;
		if (reference > 0 && row.mean_profit > 0)
			row.ratio = reference / row.mean_profit;
		else
			row.ratio = std::nullopt; // undefined rather than divided
	}
	return result;
}

std::pair<ProfitReport, ProfitReport>
augmentation_experiment(const Instance& instance, const Rat& alpha,
                        const SchedulerConfig& policy, const SolveBudget& budget)
{
	if (alpha < Rat(1))
		throw std::invalid_argument("augmentation_experiment: alpha must be >= 1");
	std::vector<Rat> scaled = instance.green;
	for (Rat& g : scaled)
		g *= alpha;
	Instance augmented(instance.jobs, instance.machines, instance.horizon, std::move(scaled),
	                   instance.price, instance.charge_rate, instance.slot_minutes);
	ProfitReport online = run_online(augmented, policy).report;
	ProfitReport offline = solve_exact(instance, budget).report;
	return {online, offline};
}

MonteCarloResult monte_carlo_ratio(AdversaryFamily scenario, int machines,
                                   const ValuesConfig& config, long long trials,
                                   std::uint64_t seed, std::optional<double> p_override)
{
	if (trials < 1)
		throw std::invalid_argument("monte_carlo_ratio: trials must be >= 1");
	Instance instance = adversarial_instance(scenario, machines, config);
	ExactSolution opt = solve_exact(instance);

	SchedulerConfig rf = make_config(Policy::random_fit, config.values(), config.on_peak_cost());
	rf.randomfit_p_override = p_override;
	Rat sum(0);
	double mean_d = 0, m2 = 0; // Welford
	for (long long t = 0; t < trials; ++t) {
		rf.rng_seed = mix_seed(seed, static_cast<std::uint64_t>(t));
		Money profit = run_online(instance, rf).report.net_profit;
		sum += profit;
		double p = to_double(profit);
		double delta = p - mean_d;
		mean_d += delta / static_cast<double>(t + 1);
		m2 += delta * (p - mean_d);
	}

	MonteCarloResult result;
	result.trials = trials;
	result.opt_profit = opt.report.net_profit;
	Rat mean_exact = sum / Rat(trials);
	result.mean_profit = mean_d;
	if (trials > 1) {
		double var = m2 / static_cast<double>(trials - 1);
		result.se_mean = std::sqrt(std::max(0.0, var) / static_cast<double>(trials));
	}
	if (mean_exact > Rat(0)) {
		result.ratio_exact = opt.report.net_profit / mean_exact;
		result.expected_ratio = to_double(result.ratio_exact);
		result.se_ratio = to_double(opt.report.net_profit) * result.se_mean /
		                  (result.mean_profit * result.mean_profit);
	}
	return result;
}

std::string to_csv(const RatioTable& table)
{
	std::ostringstream out;
	out << "utilization,L,policy,mean_net_profit,std_net_profit,reference_kind,"
	       "reference_profit,ratio\n";
	out << std::setprecision(10);
	for (const RatioRow& row : table.rows) {
		out << row.utilization << "," << format_rat(row.L) << "," << row.policy << ","
		    << row.mean_profit << "," << row.std_profit << "," << row.reference_kind << ","
		    << row.reference_profit << ",";
		if (row.ratio)
			out << *row.ratio;
		else
			out << "undefined";
		out << "\n";
	}
	return out.str();
}

std::string to_text(const RatioTable& table)
{
	std::ostringstream out;
	out << std::left << std::setw(12) << "utilization" << std::setw(8) << "L"
	    << std::setw(8) << "policy" << std::right << std::setw(16) << "mean_profit"
	    << std::setw(14) << "std" << std::setw(20) << "reference" << std::setw(10)
	    << "ratio" << "\n";
	for (const RatioRow& row : table.rows) {
		out << std::left << std::setw(12) << row.utilization << std::setw(8)
		    << format_rat(row.L) << std::setw(8) << row.policy << std::right << std::fixed
		    << std::setprecision(4) << std::setw(16) << row.mean_profit << std::setw(14)
		    << row.std_profit << std::setw(20)
		    << (row.reference_kind + "=" +
		        (std::ostringstream{} << std::fixed << std::setprecision(4)
		                              << row.reference_profit)
		            .str());
		if (row.ratio)
			out << std::setw(10) << std::setprecision(4) << *row.ratio;
		else
			out << std::setw(10) << "undef";
		out << "\n";
		out.unsetf(std::ios::fixed);
	}
	return out.str();
}

RatioTable parse_ratio_csv(std::istream& in, const std::string& source)
{
	RatioTable table;
	std::string line;
	if (!std::getline(in, line) ||
	    line.rfind("utilization,L,policy,mean_net_profit", 0) != 0)
		throw std::runtime_error(source + ": not a sweep result CSV");
	int line_no = 1;
	while (std::getline(in, line)) {
		++line_no;
		if (line.empty())
			continue;
		std::stringstream ss(line);
		std::string field;
		std::vector<std::string> fields;
		while (std::getline(ss, field, ','))
			fields.push_back(field);
		if (fields.size() < 8)
			throw std::runtime_error(source + ":" + std::to_string(line_no) +
			                         ": expected 8 columns");
		RatioRow row;
		try {
			row.utilization = std::stod(fields[0]);
			row.L = parse_rat(fields[1]);
			row.policy = fields[2];
			row.mean_profit = std::stod(fields[3]);
			row.std_profit = std::stod(fields[4]);
			row.reference_kind = fields[5];
			row.reference_profit = std::stod(fields[6]);
		} catch (const std::exception& e) {
			throw std::runtime_error(source + ":" + std::to_string(line_no) + ": " + e.what());
		}
		table.rows.push_back(row);
	}
	return table;
}

} // namespace gdc
