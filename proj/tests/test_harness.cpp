#include <doctest.h>

#include <cmath>
#include <sstream>

#include "gdc/harness.hpp"

using namespace gdc;

namespace {

const ValuesConfig kConfig{};

ExperimentPlan tiny_plan()
{
	ExperimentPlan plan;
	plan.machines = 4;
	plan.horizon = 24;
	plan.uniform_length = 1;
	plan.uniform_nodes = 2;
	plan.utilizations = {0.5};
	plan.L_values = {Rat(1, 4)};
	plan.repetitions = 3;
	plan.base_seed = 5;
	return plan;
}

} // namespace

TEST_CASE("single-policy plan references itself with ratio one")
{
	ExperimentPlan plan = tiny_plan();
	plan.repetitions = 1;
	plan.policies = {policy_from_name("ff", plan.config)};
	RatioTable table = run_experiment(plan);
	REQUIRE(table.rows.size() == 1);
	REQUIRE(table.rows[0].ratio.has_value());
	CHECK(*table.rows[0].ratio == doctest::Approx(1.0));
	CHECK(table.rows[0].reference_kind == "opt-prime");
	CHECK(table.rows[0].std_profit == 0.0);
}

TEST_CASE("fixed workload and deterministic policies have zero variance across reps")
{
	ExperimentPlan plan = tiny_plan();
	plan.resample_workload = false;
	plan.policies = {policy_from_name("ff", plan.config), policy_from_name("bf", plan.config)};
	RatioTable table = run_experiment(plan);
	for (const RatioRow& row : table.rows)
		CHECK(row.std_profit == 0.0);
}

TEST_CASE("resampled workloads vary across reps")
{
	ExperimentPlan plan = tiny_plan();
	plan.repetitions = 8;
	plan.policies = {policy_from_name("ff", plan.config)};
	RatioTable table = run_experiment(plan);
	CHECK(table.rows[0].std_profit > 0.0);
}

TEST_CASE("ratio_lower_bound definition cases")
{
	RatioTable table;
	RatioRow a;
	a.utilization = 0.1;
	a.L = Rat(1, 5);
	a.policy = "ff";
	a.mean_profit = 8;
	a.reference_kind = "opt-prime";
	RatioRow b = a;
	b.policy = "bf";
	b.mean_profit = 10;
	table.rows = {a, b};

	RatioTable out = ratio_lower_bound(table);
	CHECK(*out.rows[0].ratio == doctest::Approx(1.25));
	CHECK(*out.rows[1].ratio == doctest::Approx(1.0));
	CHECK(out.rows[0].reference_profit == doctest::Approx(10));

	SUBCASE("non-positive reference stays undefined")
	{
		table.rows[0].mean_profit = 0;
		table.rows[1].mean_profit = -2;
		RatioTable undef = ratio_lower_bound(table);
		CHECK(!undef.rows[0].ratio.has_value());
		CHECK(!undef.rows[1].ratio.has_value());
	}
	SUBCASE("an exact reference row keeps its own reference")
	{
		table.rows[0].reference_kind = "exact";
		table.rows[0].reference_profit = 12;
		table.rows[1].reference_kind = "exact";
		table.rows[1].reference_profit = 12;
		RatioTable exact = ratio_lower_bound(table);
		CHECK(*exact.rows[0].ratio == doctest::Approx(1.5));
		CHECK(*exact.rows[1].ratio == doctest::Approx(1.2));
	}
}

TEST_CASE("exact reference never lowers a ratio below the OPT' bound")
{
	ExperimentPlan plan = tiny_plan();
	plan.machines = 2;
	plan.horizon = 8;
	plan.repetitions = 2;
	plan.utilizations = {0.4};
	plan.policies = default_policies(plan.config);

	RatioTable prime = run_experiment(plan);
	plan.offline = true;
	RatioTable exact = run_experiment(plan);
	REQUIRE(prime.rows.size() == exact.rows.size());
	for (std::size_t i = 0; i < prime.rows.size(); ++i) {
		CHECK(exact.rows[i].reference_kind == "exact");
		REQUIRE(exact.rows[i].ratio.has_value());
		REQUIRE(prime.rows[i].ratio.has_value());
		CHECK(*exact.rows[i].ratio >= *prime.rows[i].ratio - 1e-12);
		CHECK(*exact.rows[i].ratio >= 1.0 - 1e-12);
	}
}

TEST_CASE("solver budget exhaustion downgrades the reference to OPT' with a flag")
{
	ExperimentPlan plan = tiny_plan();
	plan.repetitions = 1;
	plan.utilizations = {0.6};
	plan.policies = {policy_from_name("ff", plan.config), policy_from_name("bf", plan.config)};
	plan.offline = true;
	plan.budget.max_nodes = 1;
	RatioTable table = run_experiment(plan);
	double best = 0;
	for (const RatioRow& row : table.rows)
		best = std::max(best, row.mean_profit);
	for (const RatioRow& row : table.rows) {
		CHECK(row.reference_kind == "opt-prime(budget)");
		CHECK(row.reference_profit == doctest::Approx(best));
	}
}

TEST_CASE("appending policies or cells leaves existing cells' numbers untouched")
{
	ExperimentPlan plan = tiny_plan();
	plan.policies = {policy_from_name("rf", plan.config)};
	RatioTable narrow = run_experiment(plan);

	ExperimentPlan wider = plan;
	wider.policies.push_back(policy_from_name("ff", wider.config));
	wider.utilizations.push_back(0.9);
	RatioTable wide = run_experiment(wider);

	// the rf row of the original cell is bitwise the same experiment
	CHECK(narrow.rows[0].mean_profit == wide.rows[0].mean_profit);
	CHECK(narrow.rows[0].std_profit == wide.rows[0].std_profit);
}

TEST_CASE("augmentation_experiment")
{
	NormalizedValues values = kConfig.values();
	SchedulerConfig ff = make_config(Policy::first_fit, values, kConfig.on_peak_cost());
	SchedulerConfig bf = make_config(Policy::best_fit, values, kConfig.on_peak_cost());

	SUBCASE("alpha below one is rejected")
	{
		Instance inst = adversarial_instance(AdversaryFamily::thm1_on_green, 4);
		CHECK_THROWS_AS(augmentation_experiment(inst, Rat(1, 2), ff), std::invalid_argument);
	}
	SUBCASE("alpha = 1 is the plain comparison")
	{
		Instance inst = adversarial_instance(AdversaryFamily::thm1_on_green, 4);
		auto [online, opt] = augmentation_experiment(inst, Rat(1), ff);
		CHECK(online.net_profit == run_online(inst, ff).report.net_profit);
		CHECK(opt.net_profit == solve_exact(inst).report.net_profit);
	}
	SUBCASE("zero green is a fixed point of scaling")
	{
		Instance inst = adversarial_instance(AdversaryFamily::thm2_on_off, 4);
		auto [base_online, base_opt] = augmentation_experiment(inst, Rat(1), bf);
		for (int alpha : {2, 4}) {
			auto [online, opt] = augmentation_experiment(inst, Rat(alpha), bf);
			CHECK(online.net_profit == base_online.net_profit);
			CHECK(opt.net_profit == base_opt.net_profit);
		}
	}
	SUBCASE("doubling green does not rescue first-fit on the on/green pair")
	{
		Instance inst = adversarial_instance(AdversaryFamily::thm1_on_green, 4);
		auto [online, opt] = augmentation_experiment(inst, Rat(2), ff);
		CHECK(opt.net_profit / online.net_profit == Rat(110, 19)); // still v_g / v_on
	}
}

TEST_CASE("monte_carlo_ratio matches the scenario closed forms")
{
	NormalizedValues v = kConfig.values();
	Rat p = optimal_probability(v, PriceClass::on_to_off);
	Rat pp = optimal_probability(v, PriceClass::off_to_on);
	struct Case {
		AdversaryFamily family;
		Rat closed;
	};
	const Case cases[] = {
	    {AdversaryFamily::thm3_s11, v.v_off / (p * v.v_on + (Rat(1) - p) * v.v_off)},
	    {AdversaryFamily::thm3_s12, (v.v_on + v.v_off) / (p * v.v_on + v.v_off)},
	    {AdversaryFamily::thm3_s21, v.v_g / (pp * v.v_off + (Rat(1) - pp) * v.v_g)},
	    {AdversaryFamily::thm3_s22, (v.v_off + v.v_g) / (pp * v.v_off + v.v_g)},
	};
	for (const Case& c : cases) {
		MonteCarloResult r = monte_carlo_ratio(c.family, 8, kConfig, 20000, 31);
		REQUIRE(r.se_ratio > 0);
		CHECK(std::abs(r.expected_ratio - to_double(c.closed)) <= 3 * r.se_ratio);
	}
	// the two scenario pairs share their optimized worst case
	CHECK(cases[0].closed == Rat(3581, 2916)); // ~1.2281
	CHECK(cases[1].closed == Rat(3581, 2916));
	CHECK(cases[2].closed == Rat(3781, 3025)); // ~1.2499
	CHECK(cases[3].closed == Rat(3781, 3025));
}

TEST_CASE("monte_carlo_ratio with p = 1 collapses to the first-fit ratio exactly")
{
	NormalizedValues v = kConfig.values();
	MonteCarloResult r = monte_carlo_ratio(AdversaryFamily::thm3_s11, 8, kConfig, 50, 1, 1.0);
	CHECK(r.ratio_exact == v.v_off / v.v_on);
	CHECK(r.se_mean == 0.0);
}

TEST_CASE("standard error shrinks like the square root of the trial count")
{
	MonteCarloResult small = monte_carlo_ratio(AdversaryFamily::thm3_s11, 8, kConfig, 10000, 3);
	MonteCarloResult large =
	    monte_carlo_ratio(AdversaryFamily::thm3_s11, 8, kConfig, 1000000, 3);
	double shrink = small.se_mean / large.se_mean;
	CHECK(shrink > 5.0);
	CHECK(shrink < 20.0);
}

TEST_CASE("csv output round-trips through the ratio post-processor")
{
	ExperimentPlan plan = tiny_plan();
	plan.policies = default_policies(plan.config);
	RatioTable table = run_experiment(plan);
	std::string csv = to_csv(table);

	std::istringstream in(csv);
	RatioTable parsed = parse_ratio_csv(in, "mem");
	RatioTable rebound = ratio_lower_bound(parsed);
	REQUIRE(rebound.rows.size() == table.rows.size());
	for (std::size_t i = 0; i < table.rows.size(); ++i) {
		CHECK(rebound.rows[i].policy == table.rows[i].policy);
		REQUIRE(rebound.rows[i].ratio.has_value());
		CHECK(*rebound.rows[i].ratio ==
		      doctest::Approx(*table.rows[i].ratio).epsilon(1e-6));
	}
	CHECK(to_text(table).find("ratio") != std::string::npos);
}

TEST_CASE("plan validation")
{
	ExperimentPlan plan = tiny_plan();
	plan.policies = default_policies(plan.config);
	plan.repetitions = 0;
	CHECK_THROWS_AS(run_experiment(plan), std::invalid_argument);
	plan.repetitions = 1;
	plan.utilizations.clear();
	CHECK_THROWS_AS(run_experiment(plan), std::invalid_argument);
}
