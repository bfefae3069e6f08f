#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "gdc/harness.hpp"

using namespace gdc;
using nlohmann::json;

namespace {

// exit codes: 0 success, 1 usage, 2 input/parse, 3 solver budget exhausted
struct BudgetExhausted {};

struct PricingFlags {
	std::string charge_rate = "0.022";   // $ per machine-slot
	std::string on_price = "0.13";       // $ per kWh
	std::string off_price = "0.08";      // $ per kWh
	std::string power_watts = "140";     // per machine
	int on_start_hour = 9;
	int on_end_hour = 23;

	void attach(CLI::App* cmd)
	{
		cmd->add_option("--charge-rate", charge_rate, "service charge, $ per machine-slot");
		cmd->add_option("--on-peak-price", on_price, "$ per kWh at on-peak");
		cmd->add_option("--off-peak-price", off_price, "$ per kWh at off-peak");
		cmd->add_option("--power-watts", power_watts, "power draw of one busy machine");
		cmd->add_option("--on-start-hour", on_start_hour, "daily on-peak window start");
		cmd->add_option("--on-end-hour", on_end_hour, "daily on-peak window end");
	}

	ValuesConfig values_config(int slot_minutes) const
	{
		ValuesConfig config;
		config.charge_rate = parse_rat(charge_rate);
		config.on_peak_per_kwh = parse_rat(on_price);
		config.off_peak_per_kwh = parse_rat(off_price);
		config.energy_per_machine_slot_kwh =
		    parse_rat(power_watts) * Rat(slot_minutes, 60) / Rat(1000);
		return config;
	}

	std::string echo() const
	{
		return "charge-rate=" + charge_rate + " on-peak-price=" + on_price +
		       " off-peak-price=" + off_price + " power-watts=" + power_watts +
		       " on-hours=[" + std::to_string(on_start_hour) + "," +
		       std::to_string(on_end_hour) + ")";
	}
};

std::vector<std::string> split_list(const std::string& csv)
{
	std::vector<std::string> out;
	std::stringstream ss(csv);
	std::string item;
	while (std::getline(ss, item, ','))
		if (!item.empty())
			out.push_back(item);
	return out;
}

void print_report(std::ostream& out, const ProfitReport& report)
{
	out << "jobs_completed " << report.jobs_completed << "\n";
	out << "workload_completed " << report.workload_completed << "\n";
	out << "revenue " << format_rat(report.revenue) << "\n";
	out << "brown_cost " << format_rat(report.brown_cost) << "\n";
	out << "net_profit " << format_rat(report.net_profit) << "\n";
	out << "net_profit_decimal " << to_double(report.net_profit) << "\n";
	out << "green_used " << format_rat(report.green_used) << "\n";
	out << "green_available " << format_rat(report.green_available) << "\n";
}

SchedulerConfig build_policy_config(const std::string& policy_name, const Instance& instance,
                                    const PricingFlags& pricing,
                                    std::optional<double> p_override,
                                    std::optional<std::string> gs_penalty,
                                    const std::string& gs_slack, std::uint64_t seed)
{
	ValuesConfig values = pricing.values_config(instance.slot_minutes);
	values.charge_rate = instance.charge_rate; // the instance is authoritative
	PolicySpec spec = policy_from_name(policy_name, values);
	if (spec.config.policy == Policy::random_fit && p_override)
		spec.config.randomfit_p_override = p_override;
	if (gs_penalty)
		spec.config.greenslot_penalty = parse_rat(*gs_penalty);
	spec.config.greenslot_slack_fraction = parse_rat(gs_slack);
	spec.config.rng_seed = seed;
	return spec.config;
}

int run_simulate(const std::string& instance_path, const std::string& policy_name,
                 const PricingFlags& pricing, std::optional<double> p_override,
                 std::optional<std::string> gs_penalty, const std::string& gs_slack,
                 std::uint64_t seed, const std::optional<std::string>& decisions_path)
{
	Instance instance = read_instance(instance_path);
	SchedulerConfig config = build_policy_config(policy_name, instance, pricing, p_override,
	                                             gs_penalty, gs_slack, seed);
	std::cerr << "# resolved: simulate --instance " << instance_path << " --policy "
	          << policy_name << " --seed " << seed
	          << (p_override ? " --p-override " + std::to_string(*p_override) : "")
	          << " --greenslot-slack " << gs_slack << " "
	          << pricing.echo() << "\n";
	RunResult result = run_online(instance, config);
	std::cout << "policy " << policy_name << "\n";
	std::cout << "jobs_total " << instance.jobs.size() << "\n";
	print_report(std::cout, result.report);
	if (decisions_path) {
		std::ofstream out(*decisions_path);
		if (!out)
			throw std::runtime_error("cannot write '" + *decisions_path + "'");
		out << "job_id,start\n";
		for (const Decision& d : result.decisions)
			out << d.job_id << "," << (d.start ? std::to_string(*d.start) : "rejected") << "\n";
	}
	return 0;
}

} // namespace

int main(int argc, char** argv)
{
	CLI::App app{"gdcsched: job/energy scheduling for a solar-assisted data center"};
	app.require_subcommand(1);

	// ---- simulate ----
	auto* simulate = app.add_subcommand("simulate", "run one online policy on one instance");
	std::string sim_instance, sim_policy = "ff", sim_gs_slack = "1/5";
	std::optional<double> sim_p_override;
	std::optional<std::string> sim_gs_penalty, sim_decisions;
	std::uint64_t sim_seed = 0;
	PricingFlags sim_pricing;
	simulate->add_option("--instance", sim_instance, "instance file")->required();
	simulate->add_option("--policy", sim_policy, "ff | bf | gs | rf");
	simulate->add_option("--seed", sim_seed, "Random-Fit seed");
	simulate->add_option("--p-override", sim_p_override, "fixed Random-Fit probability");
	simulate->add_option("--greenslot-penalty", sim_gs_penalty,
	                     "GreenSlot penalty, $ per machine-slot (default 2x on-peak cost)");
	simulate->add_option("--greenslot-slack", sim_gs_slack, "GreenSlot slack fraction");
	simulate->add_option("--decisions", sim_decisions, "write the decision log here");
	sim_pricing.attach(simulate);

	// ---- exact ----
	auto* exact = app.add_subcommand("exact", "offline optimum by branch-and-bound");
	std::string exact_instance;
	SolveBudget exact_budget;
	exact->add_option("--instance", exact_instance, "instance file")->required();
	exact->add_option("--max-nodes", exact_budget.max_nodes, "node budget");
	exact->add_option("--max-seconds", exact_budget.max_seconds, "time budget");

	// ---- adversary ----
	auto* adversary = app.add_subcommand("adversary", "emit a lower-bound proof instance");
	std::string adv_family;
	int adv_machines = 100;
	std::optional<std::string> adv_out;
	PricingFlags adv_pricing;
	adversary->add_option("--family", adv_family,
	                      "thm1-on-green | thm1-on-off | thm2-on-off | thm2-off-green | "
	                      "thm3-scenario-{1.1,1.2,2.1,2.2}")
	    ->required();
	adversary->add_option("--machines", adv_machines, "cluster size");
	adversary->add_option("--out", adv_out, "output file (default stdout)");
	adv_pricing.attach(adversary);

	// ---- sweep ----
	auto* sweep = app.add_subcommand("sweep", "utilization x L experiment sweep");
	std::string sweep_plan_path, sweep_utils = "0.1,1.0", sweep_Ls = "1/5",
	            sweep_policies = "ff,bf,gs,rf", sweep_format = "csv",
	            sweep_power = "140";
	int sweep_machines = 16, sweep_horizon = 120, sweep_slot = 60, sweep_reps = 30,
	    sweep_ulen = 2, sweep_unodes = 4;
	std::uint64_t sweep_seed = 1;
	bool sweep_offline = false, sweep_fixed_workload = false;
	std::optional<std::string> sweep_workload, sweep_solar;
	SolveBudget sweep_budget;
	PricingFlags sweep_pricing;
	sweep->add_option("--plan", sweep_plan_path, "JSON experiment plan (flags override it)");
	auto* o_utils = sweep->add_option("--utilizations", sweep_utils, "comma list");
	auto* o_Ls = sweep->add_option("--L", sweep_Ls, "comma list of least qualities");
	auto* o_pols = sweep->add_option("--policies", sweep_policies, "comma list of ff,bf,gs,rf");
	auto* o_mach = sweep->add_option("--machines", sweep_machines);
	auto* o_hor = sweep->add_option("--horizon", sweep_horizon, "slots");
	auto* o_slot = sweep->add_option("--slot-minutes", sweep_slot);
	auto* o_reps = sweep->add_option("--reps", sweep_reps);
	auto* o_seed = sweep->add_option("--seed", sweep_seed);
	auto* o_ulen = sweep->add_option("--uniform-length", sweep_ulen, "uniform job slots");
	auto* o_unod = sweep->add_option("--uniform-nodes", sweep_unodes, "uniform job nodes");
	auto* o_work = sweep->add_option("--workload", sweep_workload, "workload CSV trace");
	auto* o_solar = sweep->add_option("--solar", sweep_solar, "solar CSV trace");
	auto* o_pow = sweep->add_option("--power-per-machine", sweep_power, "watts, for solar scaling");
	auto* o_off = sweep->add_flag("--offline", sweep_offline, "also run the exact solver");
	auto* o_fix = sweep->add_flag("--fixed-workload", sweep_fixed_workload,
	                              "reuse one workload across repetitions");
	sweep->add_option("--max-nodes", sweep_budget.max_nodes);
	sweep->add_option("--max-seconds", sweep_budget.max_seconds);
	sweep->add_option("--format", sweep_format, "csv | table | both");
	sweep_pricing.attach(sweep);

	// ---- ratio ----
	auto* ratio = app.add_subcommand("ratio", "recompute ratio lower bounds from a sweep CSV");
	std::string ratio_input;
	ratio->add_option("--input", ratio_input, "sweep result CSV")->required();

	// ---- mc-ratio ----
	auto* mc = app.add_subcommand("mc-ratio", "Monte-Carlo expected ratio on a proof scenario");
	std::string mc_family;
	int mc_machines = 16;
	long long mc_trials = 100000;
	std::uint64_t mc_seed = 1;
	PricingFlags mc_pricing;
	mc->add_option("--family", mc_family, "thm3-scenario-{1.1,1.2,2.1,2.2}")->required();
	mc->add_option("--machines", mc_machines);
	mc->add_option("--trials", mc_trials);
	mc->add_option("--seed", mc_seed);
	mc_pricing.attach(mc);

	try {
		app.parse(argc, argv);
	} catch (const CLI::ParseError& e) {
		int code = app.exit(e);
		return code == 0 ? 0 : 1;
	}

	try {
		if (simulate->parsed())
			return run_simulate(sim_instance, sim_policy, sim_pricing, sim_p_override,
			                    sim_gs_penalty, sim_gs_slack, sim_seed, sim_decisions);

		if (exact->parsed()) {
			Instance instance = read_instance(exact_instance);
			std::cerr << "# resolved: exact --instance " << exact_instance << " --max-nodes "
			          << exact_budget.max_nodes << " --max-seconds " << exact_budget.max_seconds
			          << "\n";
			ExactSolution solution = solve_exact(instance, exact_budget);
			std::cout << "optimal " << (solution.optimal ? "true" : "false") << "\n";
			std::cout << "nodes_explored " << solution.nodes_explored << "\n";
			print_report(std::cout, solution.report);
			for (const auto& [job_id, start] : solution.state.assignments())
				std::cout << "assignment " << job_id << " " << start << "\n";
			if (!solution.optimal) {
				std::cerr << "solver budget exhausted; result is a lower bound only\n";
				throw BudgetExhausted{};
			}
			return 0;
		}

		if (adversary->parsed()) {
			ValuesConfig config = adv_pricing.values_config(60);
			Instance instance =
			    adversarial_instance(family_from_name(adv_family), adv_machines, config);
			std::cerr << "# resolved: adversary --family " << adv_family << " --machines "
			          << adv_machines << " " << adv_pricing.echo() << "\n";
			if (adv_out) {
				std::ofstream out(*adv_out);
				if (!out)
					throw std::runtime_error("cannot write '" + *adv_out + "'");
				write_instance(instance, out);
			} else {
				write_instance(instance, std::cout);
			}
			return 0;
		}

		if (sweep->parsed()) {
			ExperimentPlan plan;
			if (!sweep_plan_path.empty()) {
				std::ifstream in(sweep_plan_path);
				if (!in)
					throw std::runtime_error("cannot open plan '" + sweep_plan_path + "'");
				json j = json::parse(in);
				if (j.contains("machines")) sweep_machines = o_mach->count() ? sweep_machines : j["machines"].get<int>();
				if (j.contains("horizon") && !o_hor->count()) sweep_horizon = j["horizon"].get<int>();
				if (j.contains("slot_minutes") && !o_slot->count()) sweep_slot = j["slot_minutes"].get<int>();
				if (j.contains("repetitions") && !o_reps->count()) sweep_reps = j["repetitions"].get<int>();
				if (j.contains("base_seed") && !o_seed->count()) sweep_seed = j["base_seed"].get<std::uint64_t>();
				if (j.contains("uniform_length") && !o_ulen->count()) sweep_ulen = j["uniform_length"].get<int>();
				if (j.contains("uniform_nodes") && !o_unod->count()) sweep_unodes = j["uniform_nodes"].get<int>();
				if (j.contains("offline") && !o_off->count()) sweep_offline = j["offline"].get<bool>();
				if (j.contains("resample_workload") && !o_fix->count())
					sweep_fixed_workload = !j["resample_workload"].get<bool>();
				if (j.contains("workload_csv") && !o_work->count()) sweep_workload = j["workload_csv"].get<std::string>();
				if (j.contains("solar_csv") && !o_solar->count()) sweep_solar = j["solar_csv"].get<std::string>();
				if (j.contains("power_per_machine_watts") && !o_pow->count())
					sweep_power = j["power_per_machine_watts"].get<std::string>();
				if (j.contains("charge_rate")) sweep_pricing.charge_rate = j["charge_rate"].get<std::string>();
				if (j.contains("on_peak_price_per_kwh")) sweep_pricing.on_price = j["on_peak_price_per_kwh"].get<std::string>();
				if (j.contains("off_peak_price_per_kwh")) sweep_pricing.off_price = j["off_peak_price_per_kwh"].get<std::string>();
				if (j.contains("on_start_hour")) sweep_pricing.on_start_hour = j["on_start_hour"].get<int>();
				if (j.contains("on_end_hour")) sweep_pricing.on_end_hour = j["on_end_hour"].get<int>();
				if (j.contains("utilizations") && !o_utils->count()) {
					sweep_utils.clear();
					for (const auto& u : j["utilizations"])
						sweep_utils += (sweep_utils.empty() ? "" : ",") + std::to_string(u.get<double>());
				}
				if (j.contains("L_values") && !o_Ls->count()) {
					sweep_Ls.clear();
					for (const auto& l : j["L_values"])
						sweep_Ls += (sweep_Ls.empty() ? "" : ",") + l.get<std::string>();
				}
				if (j.contains("policies") && !o_pols->count()) {
					sweep_policies.clear();
					for (const auto& p : j["policies"])
						sweep_policies += (sweep_policies.empty() ? "" : ",") + p.get<std::string>();
				}
			}
			plan.machines = sweep_machines;
			plan.horizon = sweep_horizon;
			plan.slot_minutes = sweep_slot;
			plan.config = sweep_pricing.values_config(sweep_slot);
			plan.on_start_hour = sweep_pricing.on_start_hour;
			plan.on_end_hour = sweep_pricing.on_end_hour;
			plan.uniform_length = sweep_ulen;
			plan.uniform_nodes = sweep_unodes;
			plan.workload_csv = sweep_workload;
			plan.solar_csv = sweep_solar;
			plan.power_per_machine_watts = parse_rat(sweep_power);
			plan.repetitions = sweep_reps;
			plan.base_seed = sweep_seed;
			plan.resample_workload = !sweep_fixed_workload;
			plan.offline = sweep_offline;
			plan.budget = sweep_budget;
			plan.utilizations.clear();
			for (const std::string& u : split_list(sweep_utils))
				plan.utilizations.push_back(std::stod(u));
			plan.L_values.clear();
			for (const std::string& l : split_list(sweep_Ls))
				plan.L_values.push_back(parse_rat(l));
			plan.policies.clear();
			for (const std::string& p : split_list(sweep_policies))
				plan.policies.push_back(policy_from_name(p, plan.config));

			std::cerr << "# resolved: sweep --machines " << plan.machines << " --horizon "
			          << plan.horizon << " --slot-minutes " << plan.slot_minutes
			          << " --utilizations " << sweep_utils << " --L " << sweep_Ls
			          << " --policies " << sweep_policies << " --reps " << plan.repetitions
			          << " --seed " << plan.base_seed << " --uniform-length "
			          << plan.uniform_length << " --uniform-nodes " << plan.uniform_nodes
			          << (plan.workload_csv ? " --workload " + *plan.workload_csv : "")
			          << (plan.solar_csv ? " --solar " + *plan.solar_csv : "")
			          << (plan.offline ? " --offline" : "")
			          << (sweep_fixed_workload ? " --fixed-workload" : "") << " "
			          << sweep_pricing.echo() << "\n";

			RatioTable table = run_experiment(plan);
			if (sweep_format == "csv" || sweep_format == "both")
				std::cout << to_csv(table);
			if (sweep_format == "table" || sweep_format == "both")
				std::cout << to_text(table);
			return 0;
		}

		if (ratio->parsed()) {
			std::ifstream in(ratio_input);
			if (!in)
				throw std::runtime_error("cannot open '" + ratio_input + "'");
			std::cerr << "# resolved: ratio --input " << ratio_input << "\n";
			RatioTable table = parse_ratio_csv(in, ratio_input);
			std::cout << to_csv(ratio_lower_bound(table));
			return 0;
		}

		if (mc->parsed()) {
			ValuesConfig config = mc_pricing.values_config(60);
			std::cerr << "# resolved: mc-ratio --family " << mc_family << " --machines "
			          << mc_machines << " --trials " << mc_trials << " --seed " << mc_seed
			          << " " << mc_pricing.echo() << "\n";
			MonteCarloResult result = monte_carlo_ratio(family_from_name(mc_family), mc_machines,
			                                            config, mc_trials, mc_seed);
			std::cout << "family " << mc_family << "\n";
			std::cout << "trials " << result.trials << "\n";
			std::cout << "opt_profit " << format_rat(result.opt_profit) << "\n";
			std::cout << "mean_profit " << result.mean_profit << "\n";
			std::cout << "expected_ratio " << result.expected_ratio << "\n";
			std::cout << "ratio_exact " << format_rat(result.ratio_exact) << "\n";
			std::cout << "se_mean " << result.se_mean << "\n";
			std::cout << "se_ratio " << result.se_ratio << "\n";
			return 0;
		}
	} catch (const BudgetExhausted&) {
		return 3;
	} catch (const std::exception& e) {
		std::cerr << "error: " << e.what() << "\n";
		return 2;
	}
	return 0;
}
