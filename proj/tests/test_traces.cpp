#include <doctest.h>

#include <sstream>

#include "gdc/exact.hpp"
#include "gdc/scheduler.hpp"
#include "gdc/traces.hpp"
#include "test_support.hpp"

using namespace gdc;

namespace {
const ValuesConfig kConfig{};
}

TEST_CASE("parse_workload reads well-formed rows and reports bad ones")
{
	SUBCASE("three good rows")
	{
		std::istringstream in("arrival_s,runtime_s,nodes\n0,3600,2\n7200,1800,1\n3600,60,4\n");
		WorkloadTrace trace = parse_workload(in, "mem");
		REQUIRE(trace.records.size() == 3);
		CHECK(trace.diagnostics.empty());
		// sorted by arrival
		CHECK(trace.records[1].arrival_s == 3600);
	}
	SUBCASE("zero runtime is rejected with its line number")
	{
		std::istringstream in("arrival_s,runtime_s,nodes\n0,0,2\n100,60,1\n");
		WorkloadTrace trace = parse_workload(in, "mem");
		CHECK(trace.records.size() == 1);
		REQUIRE(trace.diagnostics.size() == 1);
		CHECK(trace.diagnostics[0].find("mem:2") != std::string::npos);
	}
	SUBCASE("wrong field count")
	{
		std::istringstream in("arrival_s,runtime_s,nodes\n1,2\n");
		WorkloadTrace trace = parse_workload(in, "mem");
		CHECK(trace.records.empty());
		CHECK(trace.diagnostics.size() == 2); // bad line + empty-trace warning
	}
	SUBCASE("empty file is valid but warned")
	{
		std::istringstream in("arrival_s,runtime_s,nodes\n");
		WorkloadTrace trace = parse_workload(in, "mem");
		CHECK(trace.records.empty());
		REQUIRE(trace.diagnostics.size() == 1);
	}
	SUBCASE("missing header is an error")
	{
		std::istringstream in("arrival,runtime,nodes\n0,60,1\n");
		CHECK_THROWS_AS(parse_workload(in, "mem"), std::runtime_error);
	}
}

TEST_CASE("scale_workload hits the utilization target within two percent")
{
	WorkloadTrace trace;
	SplitMix64 rng(5);
	for (int i = 0; i < 4000; ++i) {
		WorkloadRecord rec;
		rec.arrival_s = static_cast<long long>(rng.next() % (90ull * 3600)) ;
		rec.runtime_s = 1800 + static_cast<long long>(rng.next() % 7200);
		rec.nodes = 1 + static_cast<int>(rng.next() % 8);
		trace.records.push_back(rec);
	}

	SUBCASE("zero utilization gives an empty job list")
	{
		CHECK(scale_workload(trace, 100, 60, 0.0, Rat(1, 5), 120, 1).empty());
	}
	SUBCASE("full utilization lands near M * T")
	{
		auto jobs = scale_workload(trace, 100, 60, 1.0, Rat(1, 5), 120, 1);
		double total = 0;
		for (const Job& j : jobs) {
			total += static_cast<double>(j.length) * j.nodes;
			CHECK(j.nodes <= 100);
			CHECK(j.deadline <= 120);
			CHECK(j.least_quality == Rat(1, 5));
		}
		CHECK(total >= 0.98 * 12000);
		CHECK(total <= 1.02 * 12000);
	}
	SUBCASE("same seed, same jobs")
	{
		auto a = scale_workload(trace, 100, 60, 0.5, Rat(1, 5), 120, 42);
		auto b = scale_workload(trace, 100, 60, 0.5, Rat(1, 5), 120, 42);
		CHECK(a == b);
	}
	SUBCASE("a too-small trace names the shortfall")
	{
		WorkloadTrace tiny;
		tiny.records.push_back({0, 3600, 2});
		CHECK_THROWS_WITH_AS(scale_workload(tiny, 100, 60, 1.0, Rat(1, 5), 120, 1) /* */,
		                     doctest::Contains("trace too small"), std::runtime_error);
	}
}

TEST_CASE("scale_solar normalizes the peak to the whole cluster")
{
	SUBCASE("slot-granularity samples: peak slot contributes exactly M")
	{
		SolarTrace trace;
		trace.interval_s = 3600;
		for (int i = 0; i < 4; ++i)
			trace.samples.push_back({i * 3600LL, Rat(0)});
		trace.samples[2].watts = Rat(900); // the peak
		trace.samples[1].watts = Rat(450);
		auto series = scale_solar(trace, 16, Rat(140), 60, 4);
		REQUIRE(series.size() == 4);
		CHECK(series[2] == Rat(16));
		CHECK(series[1] == Rat(8));
		CHECK(series[0] == Rat(0)); // night sample
	}
	SUBCASE("constant half-peak five-minute samples give M/2 per slot")
	{
		SolarTrace trace;
		trace.interval_s = 300;
		for (int i = 0; i < 24; ++i)
			trace.samples.push_back({i * 300LL, i == 0 ? Rat(1000) : Rat(500)});
		auto series = scale_solar(trace, 10, Rat(140), 60, 2);
		// slot 1 holds twelve half-peak samples
		CHECK(series[1] == Rat(5));
	}
	SUBCASE("output never exceeds the cluster size")
	{
		SplitMix64 rng(9);
		for (int round = 0; round < 50; ++round) {
			SolarTrace trace;
			trace.interval_s = 300;
			int n = 12 * (1 + static_cast<int>(rng.next() % 36));
			for (int i = 0; i < n; ++i)
				trace.samples.push_back(
				    {i * 300LL, Rat(static_cast<Int>(rng.next() % 2000))});
			bool all_zero = true;
			for (const auto& s : trace.samples)
				all_zero = all_zero && s.watts == Rat(0);
			if (all_zero)
				continue;
			int machines = 1 + static_cast<int>(rng.next() % 64);
			for (const Rat& g : scale_solar(trace, machines, Rat(140), 60, n / 12))
				CHECK(g <= Rat(machines));
		}
	}
	SUBCASE("an all-zero trace cannot be scaled")
	{
		SolarTrace trace;
		trace.interval_s = 300;
		trace.samples = {{0, Rat(0)}, {300, Rat(0)}};
		CHECK_THROWS_AS(scale_solar(trace, 4, Rat(140), 60, 1), std::runtime_error);
	}
}

TEST_CASE("parse_solar validates the sampling interval")
{
	SUBCASE("good trace")
	{
		std::istringstream in("timestamp,watts\n0,0\n300,12.5\n600,20\n");
		SolarTrace trace = parse_solar(in, "mem");
		CHECK(trace.interval_s == 300);
		CHECK(trace.samples[1].watts == Rat(25, 2));
	}
	SUBCASE("irregular interval")
	{
		std::istringstream in("timestamp,watts\n0,0\n300,5\n900,5\n");
		CHECK_THROWS_AS(parse_solar(in, "mem"), std::runtime_error);
	}
	SUBCASE("negative power")
	{
		std::istringstream in("timestamp,watts\n0,-1\n300,5\n");
		CHECK_THROWS_AS(parse_solar(in, "mem"), std::runtime_error);
	}
}

TEST_CASE("pricing_series applies the daily on-peak window")
{
	PricingSchedule schedule; // 9..23 at 0.13 / 0.08
	auto series = pricing_series(schedule, 48, 60, Rat(7, 50));
	CHECK(series[10] == Rat(91, 5000)); // on-peak hour
	CHECK(series[2] == Rat(7, 625));    // off-peak hour
	CHECK(series[34] == Rat(91, 5000)); // 10am next day
	CHECK(series[23] == Rat(7, 625));   // 11pm is already off-peak

	SUBCASE("degenerate window is all off-peak")
	{
		PricingSchedule flat{Rat(13, 100), Rat(2, 25), 12, 12};
		for (const Money& b : pricing_series(flat, 24, 60, Rat(7, 50)))
			CHECK(b == Rat(7, 625));
	}
	SUBCASE("window wrapping midnight")
	{
		PricingSchedule night{Rat(13, 100), Rat(2, 25), 22, 5};
		auto wrapped = pricing_series(night, 24, 60, Rat(7, 50));
		CHECK(wrapped[23] == Rat(91, 5000));
		CHECK(wrapped[3] == Rat(91, 5000));
		CHECK(wrapped[12] == Rat(7, 625));
	}
}

TEST_CASE("adversarial instances match the proof constructions")
{
	Instance thm1 = adversarial_instance(AdversaryFamily::thm1_on_green, 8);
	CHECK(thm1.horizon == 2);
	CHECK(thm1.machines == 8);
	CHECK(thm1.green == std::vector<Rat>{Rat(0), Rat(8)});
	CHECK(thm1.price[0] == thm1.price[1]); // both on-peak
	REQUIRE(thm1.jobs.size() == 1);
	CHECK(thm1.jobs[0].nodes == 8);
	CHECK(thm1.jobs[0].length == 1);
	CHECK(thm1.jobs[0].release == 0);
	CHECK(thm1.jobs[0].deadline == 2);

	Instance thm2 = adversarial_instance(AdversaryFamily::thm2_on_off, 8);
	CHECK(thm2.green == std::vector<Rat>{Rat(0), Rat(0)});
	CHECK(thm2.price[0] == kConfig.on_peak_cost());
	CHECK(thm2.price[1] == kConfig.off_peak_cost());
	REQUIRE(thm2.jobs.size() == 2);
	CHECK(thm2.jobs[1].release == 1);
	CHECK(thm2.jobs[1].deadline == 2);

	Instance thm2g = adversarial_instance(AdversaryFamily::thm2_off_green, 8);
	CHECK(thm2g.price[0] == kConfig.off_peak_cost());
	CHECK(thm2g.green == std::vector<Rat>{Rat(0), Rat(8)});
}

TEST_CASE("exact ratio identities on the adversarial families")
{
	NormalizedValues v = kConfig.values();
	auto ratio = [](const Money& opt, const Money& alg) { return opt / alg; };

	SUBCASE("thm1-on-green: OPT / FF == v_g / v_on")
	{
		Instance inst = adversarial_instance(AdversaryFamily::thm1_on_green, 16);
		Money opt = solve_exact(inst).report.net_profit;
		Money ff = run_online(inst, make_config(Policy::first_fit, v, kConfig.on_peak_cost()))
		               .report.net_profit;
		CHECK(ratio(opt, ff) == v.v_g / v.v_on);
		CHECK(ratio(opt, ff) == Rat(110, 19)); // ~5.7895
	}
	SUBCASE("thm1-on-off: OPT / FF == v_off / v_on")
	{
		Instance inst = adversarial_instance(AdversaryFamily::thm1_on_off, 16);
		Money opt = solve_exact(inst).report.net_profit;
		Money ff = run_online(inst, make_config(Policy::first_fit, v, kConfig.on_peak_cost()))
		               .report.net_profit;
		CHECK(ratio(opt, ff) == v.v_off / v.v_on);
	}
	SUBCASE("thm2-on-off: OPT / BF == 1 + v_on / v_off")
	{
		Instance inst = adversarial_instance(AdversaryFamily::thm2_on_off, 16);
		Money opt = solve_exact(inst).report.net_profit;
		Money bf = run_online(inst, make_config(Policy::best_fit, v, kConfig.on_peak_cost()))
		               .report.net_profit;
		CHECK(ratio(opt, bf) == Rat(1) + v.v_on / v.v_off);
	}
	SUBCASE("thm2-off-green: OPT / BF == 1 + v_off / v_g")
	{
		Instance inst = adversarial_instance(AdversaryFamily::thm2_off_green, 16);
		Money opt = solve_exact(inst).report.net_profit;
		Money bf = run_online(inst, make_config(Policy::best_fit, v, kConfig.on_peak_cost()))
		               .report.net_profit;
		CHECK(ratio(opt, bf) == Rat(1) + v.v_off / v.v_g);
	}
}

TEST_CASE("family names round-trip")
{
	for (AdversaryFamily f :
	     {AdversaryFamily::thm1_on_green, AdversaryFamily::thm1_on_off,
	      AdversaryFamily::thm2_on_off, AdversaryFamily::thm2_off_green,
	      AdversaryFamily::thm3_s11, AdversaryFamily::thm3_s12, AdversaryFamily::thm3_s21,
	      AdversaryFamily::thm3_s22})
		CHECK(family_from_name(family_name(f)) == f);
	CHECK_THROWS_AS(family_from_name("thm9"), std::invalid_argument);
}

TEST_CASE("uniform_workload")
{
	auto jobs = uniform_workload(16, 120, 2, 4, 1.0, Rat(1, 5), 7);
	CHECK(jobs.size() == 240); // util * M * T / (p * q)
	for (const Job& j : jobs) {
		CHECK(j.length == 2);
		CHECK(j.nodes == 4);
		CHECK(j.deadline <= 120);
	}
	CHECK(uniform_workload(16, 120, 2, 4, 0.0, Rat(1, 5), 7).empty());
	CHECK(uniform_workload(16, 120, 2, 4, 1.0, Rat(1, 5), 7) == jobs); // deterministic
	// a class whose window cannot fit is rejected
	CHECK_THROWS_AS(uniform_workload(16, 4, 2, 4, 1.0, Rat(1, 5), 7), std::invalid_argument);
}

TEST_CASE("synthetic_solar is a daily bell peaking at the cluster size")
{
	auto series = synthetic_solar(16, 48);
	CHECK(series[12] == Rat(16)); // noon
	CHECK(series[36] == Rat(16)); // noon, day two
	CHECK(series[0] == Rat(0));
	CHECK(series[20] == Rat(0));
	for (const Rat& g : series)
		CHECK(g <= Rat(16));
}

TEST_CASE("instance files round-trip exactly")
{
	SplitMix64 rng(211);
	for (int i = 0; i < 60; ++i) {
		Instance inst = testing::random_instance(rng);
		std::string text = instance_to_text(inst);
		std::istringstream in(text);
		Instance back = read_instance(in, "mem");
		CHECK(back == inst);
	}

	SUBCASE("fractional green survives the trip")
	{
		SolarTrace trace;
		trace.interval_s = 300;
		for (int i = 0; i < 24; ++i)
			trace.samples.push_back({i * 300LL, Rat(100 + 7 * (i % 5), 3)});
		auto green = scale_solar(trace, 5, Rat(140), 60, 2);
		Instance inst({}, 5, 2, green, {Rat(91, 5000), Rat(7, 625)}, Rat(11, 500));
		std::istringstream in(instance_to_text(inst));
		CHECK(read_instance(in, "mem") == inst);
	}
	SUBCASE("bad magic")
	{
		std::istringstream in("not-an-instance\n");
		CHECK_THROWS_AS(read_instance(in, "mem"), std::runtime_error);
	}
	SUBCASE("unknown directive carries a line number")
	{
		std::istringstream in("gdcsched-instance v1\n[cluster]\nmachine_count 4\n");
		CHECK_THROWS_WITH_AS(read_instance(in, "mem"), doctest::Contains("mem:3"),
		                     std::runtime_error);
	}
}
