#include "gdc/traces.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "gdc/rng.hpp"

namespace gdc {

namespace {

std::string trim(const std::string& s)
{
	auto begin = s.find_first_not_of(" \t\r\n");
	if (begin == std::string::npos)
		return "";
	auto end = s.find_last_not_of(" \t\r\n");
	return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_csv(const std::string& line)
{
	std::vector<std::string> fields;
	std::stringstream ss(line);
	std::string field;
	while (std::getline(ss, field, ','))
		fields.push_back(trim(field));
	if (!line.empty() && line.back() == ',')
		fields.push_back("");
	return fields;
}

long long parse_ll(const std::string& s)
{
	std::size_t pos = 0;
	long long v = std::stoll(s, &pos);
	if (pos != s.size())
		throw std::invalid_argument("trailing characters in '" + s + "'");
	return v;
}

} // namespace

WorkloadTrace parse_workload(std::istream& in, const std::string& source)
{
	WorkloadTrace trace;
	trace.source = source;
	std::string line;
	if (!std::getline(in, line) || trim(line) != "arrival_s,runtime_s,nodes")
		throw std::runtime_error(source + ": missing 'arrival_s,runtime_s,nodes' header");
	int line_no = 1;
	while (std::getline(in, line)) {
		++line_no;
		std::string stripped = trim(line);
		if (stripped.empty())
			continue;
		auto fields = split_csv(stripped);
		std::string where = source + ":" + std::to_string(line_no);
		if (fields.size() != 3) {
			trace.diagnostics.push_back(where + ": expected 3 fields, got " +
			                            std::to_string(fields.size()));
			continue;
		}
		try {
			WorkloadRecord rec;
			rec.arrival_s = parse_ll(fields[0]);
			rec.runtime_s = parse_ll(fields[1]);
			rec.nodes = static_cast<int>(parse_ll(fields[2]));
			if (rec.arrival_s < 0)
				throw std::invalid_argument("negative arrival");
			if (rec.runtime_s <= 0)
				throw std::invalid_argument("runtime must be positive");
			if (rec.nodes < 1)
				throw std::invalid_argument("nodes must be >= 1");
			trace.records.push_back(rec);
		} catch (const std::exception& e) {
			trace.diagnostics.push_back(where + ": " + e.what());
		}
	}
	std::stable_sort(trace.records.begin(), trace.records.end(),
	                 [](const WorkloadRecord& a, const WorkloadRecord& b) {
		                 return a.arrival_s < b.arrival_s;
	                 });
	if (trace.records.empty())
		trace.diagnostics.push_back(source + ": no records");
	return trace;
}

WorkloadTrace parse_workload(const std::string& path)
{
	std::ifstream in(path);
	if (!in)
		throw std::runtime_error("cannot open workload trace '" + path + "'");
	return parse_workload(in, path);
}

SolarTrace parse_solar(std::istream& in, const std::string& source)
{
	SolarTrace trace;
	trace.source = source;
	std::string line;
	if (!std::getline(in, line) || trim(line) != "timestamp,watts")
		throw std::runtime_error(source + ": missing 'timestamp,watts' header");
	int line_no = 1;
	while (std::getline(in, line)) {
		++line_no;
		std::string stripped = trim(line);
		if (stripped.empty())
			continue;
		auto fields = split_csv(stripped);
		std::string where = source + ":" + std::to_string(line_no);
		if (fields.size() != 2)
			throw std::runtime_error(where + ": expected 2 fields");
		SolarSample sample;
		try {
			sample.timestamp_s = parse_ll(fields[0]);
			sample.watts = parse_rat(fields[1]);
		} catch (const std::exception& e) {
			throw std::runtime_error(where + ": " + e.what());
		}
		if (sample.watts < Rat(0))
			throw std::runtime_error(where + ": negative power");
		trace.samples.push_back(sample);
	}
	if (trace.samples.size() < 2)
		throw std::runtime_error(source + ": need at least two samples to fix the interval");
	trace.interval_s = trace.samples[1].timestamp_s - trace.samples[0].timestamp_s;
	if (trace.interval_s <= 0)
		throw std::runtime_error(source + ": timestamps must increase");
	for (std::size_t i = 1; i < trace.samples.size(); ++i)
		if (trace.samples[i].timestamp_s - trace.samples[i - 1].timestamp_s != trace.interval_s)
			throw std::runtime_error(source + ": sampling interval is not uniform near sample " +
			                         std::to_string(i));
	return trace;
}

SolarTrace parse_solar(const std::string& path)
{
	std::ifstream in(path);
	if (!in)
		throw std::runtime_error("cannot open solar trace '" + path + "'");
	return parse_solar(in, path);
}

std::vector<Money> pricing_series(const PricingSchedule& schedule, int horizon,
                                  int slot_minutes, const Rat& energy_per_machine_slot_kwh)
{
	if (schedule.off_peak_per_kwh <= Money(0) || schedule.on_peak_per_kwh < schedule.off_peak_per_kwh)
		throw std::invalid_argument("pricing_series: need on_peak >= off_peak > 0");
	if (schedule.on_start_hour < 0 || schedule.on_start_hour > 23 ||
	    schedule.on_end_hour < 0 || schedule.on_end_hour > 24)
		throw std::invalid_argument("pricing_series: bad on-peak window");
	Money on = schedule.on_peak_per_kwh * energy_per_machine_slot_kwh;
	Money off = schedule.off_peak_per_kwh * energy_per_machine_slot_kwh;
	std::vector<Money> series;
	series.reserve(horizon);
	for (int t = 0; t < horizon; ++t) {
		int hour = static_cast<int>((static_cast<long long>(t) * slot_minutes / 60) % 24);
		bool on_peak;
		if (schedule.on_start_hour == schedule.on_end_hour)
			on_peak = false; // degenerate window
		else if (schedule.on_start_hour < schedule.on_end_hour)
			on_peak = hour >= schedule.on_start_hour && hour < schedule.on_end_hour;
		else
			on_peak = hour >= schedule.on_start_hour || hour < schedule.on_end_hour;
		series.push_back(on_peak ? on : off);
	}
	return series;
}

std::vector<Job> scale_workload(const WorkloadTrace& trace, int machines, int slot_minutes,
                                double utilization, const Rat& least_quality, int horizon,
                                std::uint64_t seed)
{
	if (utilization < 0)
		throw std::invalid_argument("scale_workload: negative utilization");
	if (utilization == 0)
		return {};
	const long long slot_s = static_cast<long long>(slot_minutes) * 60;
	const double target = utilization * machines * horizon;
	const double lo = 0.98 * target;
	const double hi = 1.02 * target;

	// seeded shuffle, then greedy inclusion of whatever still fits under the cap
	std::vector<std::size_t> index(trace.records.size());
	for (std::size_t i = 0; i < index.size(); ++i)
		index[i] = i;
	SplitMix64 rng(seed);
	for (std::size_t i = index.size(); i > 1; --i)
		std::swap(index[i - 1], index[rng.next() % i]);

	std::vector<Job> jobs;
	double total = 0;
	int next_id = 0;
	for (std::size_t idx : index) {
		if (total >= lo)
			break;
		const WorkloadRecord& rec = trace.records[idx];
		int release = static_cast<int>(rec.arrival_s / slot_s);
		int length = static_cast<int>((rec.runtime_s + slot_s - 1) / slot_s); // round up
		int nodes = std::clamp(rec.nodes, 1, machines);
		if (release >= horizon)
			continue;
		if (deadline_for(release, length, least_quality) > horizon)
			continue; // cannot meet its quality bound inside the horizon
		double demand = static_cast<double>(length) * nodes;
		if (total + demand > hi)
			continue;
		jobs.emplace_back(next_id++, release, length, nodes, least_quality);
		total += demand;
	}
	if (total < lo)
		throw std::runtime_error("scale_workload: trace too small for utilization " +
		                         std::to_string(utilization) + ": reached " +
		                         std::to_string(total) + " of target " +
		                         std::to_string(target) + " machine-slots");
	return jobs;
}

std::vector<Rat> scale_solar(const SolarTrace& trace, int machines,
                             const Rat& power_per_machine_watts, int slot_minutes,
                             int horizon)
{
	if (trace.samples.empty())
		throw std::runtime_error("scale_solar: empty trace");
	if (power_per_machine_watts <= Rat(0))
		throw std::invalid_argument("scale_solar: machine power must be positive");
	Rat peak(0);
	for (const SolarSample& s : trace.samples)
		peak = std::max(peak, s.watts);
	if (peak == Rat(0))
		throw std::runtime_error("scale_solar: all samples are zero, scaling undefined");

	// peak sample -> full cluster draw; one sample contributes
	// (watts * scale * interval) / (machine power * slot) machine-slots
	Rat scale = Rat(machines) * power_per_machine_watts / peak;
	const long long slot_s = static_cast<long long>(slot_minutes) * 60;
	std::vector<Rat> series(horizon, Rat(0));
	const long long t0 = trace.samples.front().timestamp_s;
	for (const SolarSample& s : trace.samples) {
		long long slot = (s.timestamp_s - t0) / slot_s;
		if (slot < 0 || slot >= horizon)
			continue;
		series[slot] += s.watts * scale * Rat(trace.interval_s) /
		                (power_per_machine_watts * Rat(slot_s));
	}
	return series;
}

Instance adversarial_instance(AdversaryFamily family, int machines, const ValuesConfig& config)
{
	config.values(); // rejects configurations with non-positive v_on
	Money on = config.on_peak_cost();
	Money off = config.off_peak_cost();
	const Rat half{1, 2};

	std::vector<Money> price;
	std::vector<Rat> green;
	std::vector<Job> jobs;
	// job (t1, t2) in release/deadline notation: may run in either slot
	Job spanning(0, 0, 1, machines, half);
	// job (t2, t2): its only slot is t2
	Job tight(1, 1, 1, machines, Rat(1));

	switch (family) {
	case AdversaryFamily::thm1_on_green:
		price = {on, on};
		green = {Rat(0), Rat(machines)};
		jobs = {spanning};
		break;
	case AdversaryFamily::thm1_on_off:
	case AdversaryFamily::thm3_s11:
		price = {on, off};
		green = {Rat(0), Rat(0)};
		jobs = {spanning};
		break;
	case AdversaryFamily::thm2_on_off:
	case AdversaryFamily::thm3_s12:
		price = {on, off};
		green = {Rat(0), Rat(0)};
		jobs = {spanning, tight};
		break;
	case AdversaryFamily::thm3_s21:
		price = {off, on};
		green = {Rat(0), Rat(machines)};
		jobs = {spanning};
		break;
	case AdversaryFamily::thm2_off_green:
	case AdversaryFamily::thm3_s22:
		price = {off, on};
		green = {Rat(0), Rat(machines)};
		jobs = {spanning, tight};
		break;
	}
	return Instance(std::move(jobs), machines, 2, std::move(green), std::move(price),
	                config.charge_rate);
}

const char* family_name(AdversaryFamily family)
{
	switch (family) {
	case AdversaryFamily::thm1_on_green: return "thm1-on-green";
	case AdversaryFamily::thm1_on_off: return "thm1-on-off";
	case AdversaryFamily::thm2_on_off: return "thm2-on-off";
	case AdversaryFamily::thm2_off_green: return "thm2-off-green";
	case AdversaryFamily::thm3_s11: return "thm3-scenario-1.1";
	case AdversaryFamily::thm3_s12: return "thm3-scenario-1.2";
	case AdversaryFamily::thm3_s21: return "thm3-scenario-2.1";
	case AdversaryFamily::thm3_s22: return "thm3-scenario-2.2";
	}
	return "unknown";
}

AdversaryFamily family_from_name(const std::string& name)
{
	for (AdversaryFamily f : {AdversaryFamily::thm1_on_green, AdversaryFamily::thm1_on_off,
	                          AdversaryFamily::thm2_on_off, AdversaryFamily::thm2_off_green,
	                          AdversaryFamily::thm3_s11, AdversaryFamily::thm3_s12,
	                          AdversaryFamily::thm3_s21, AdversaryFamily::thm3_s22})
		if (name == family_name(f))
			return f;
	throw std::invalid_argument("unknown adversarial family '" + name + "'");
}

std::vector<Job> uniform_workload(int machines, int horizon, int length, int nodes,
                                  double utilization, const Rat& least_quality,
                                  std::uint64_t seed)
{
	if (utilization < 0)
		throw std::invalid_argument("uniform_workload: negative utilization");
	int window = deadline_for(0, length, least_quality);
	if (window > horizon)
		throw std::invalid_argument("uniform_workload: job class cannot fit the horizon");
	int release_max = horizon - window;
	long long count = std::llround(utilization * machines * horizon /
	                               (static_cast<double>(length) * nodes));
	std::vector<Job> jobs;
	jobs.reserve(count);
	SplitMix64 rng(seed);
	for (long long i = 0; i < count; ++i) {
		int release = static_cast<int>(rng.next() % static_cast<std::uint64_t>(release_max + 1));
		jobs.emplace_back(static_cast<int>(i), release, length, nodes, least_quality);
	}
	return jobs;
}

std::vector<Rat> synthetic_solar(int machines, int horizon)
{
	// sin(pi * (h - 6) / 12) for h in 6..18, scaled by 1000 and frozen so the
	// series is identical on every platform
	static constexpr int bell[13] = {0, 259, 500, 707, 866, 966, 1000, 966, 866, 707, 500, 259, 0};
	std::vector<Rat> series;
	series.reserve(horizon);
	for (int t = 0; t < horizon; ++t) {
		int hour = t % 24;
		int milli = (hour >= 6 && hour <= 18) ? bell[hour - 6] : 0;
		series.push_back(Rat(machines) * Rat(milli, 1000));
	}
	return series;
}

} // namespace gdc
