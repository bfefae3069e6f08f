#ifndef GDC_TRACES_HPP
#define GDC_TRACES_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "gdc/model.hpp"

namespace gdc {

struct WorkloadRecord {
	long long arrival_s = 0;
	long long runtime_s = 0;
	int nodes = 1;

	bool operator==(const WorkloadRecord&) const = default;
};

struct WorkloadTrace {
	std::vector<WorkloadRecord> records; // sorted by arrival
	std::string source;
	std::vector<std::string> diagnostics; // skipped lines, empty-file warning
};

// CSV with required header "arrival_s,runtime_s,nodes". Malformed lines are
// skipped and reported with their line number in `diagnostics`; an
// unreadable file or a wrong header throws std::runtime_error.
WorkloadTrace parse_workload(const std::string& path);
WorkloadTrace parse_workload(std::istream& in, const std::string& source);

struct SolarSample {
	long long timestamp_s = 0;
	Rat watts{0};

	bool operator==(const SolarSample&) const = default;
};

struct SolarTrace {
	std::vector<SolarSample> samples;
	long long interval_s = 0; // fixed sampling interval
	std::string source;
};

// CSV with required header "timestamp,watts"; the sampling interval is
// inferred from the first gap and must be uniform.
SolarTrace parse_solar(const std::string& path);
SolarTrace parse_solar(std::istream& in, const std::string& source);

struct PricingSchedule {
	Money on_peak_per_kwh{13, 100};
	Money off_peak_per_kwh{2, 25};
	int on_start_hour = 9; // daily on-peak window [start, end)
	int on_end_hour = 23;
};

// Per-slot brown price in dollars per machine-slot. A slot is classified by
// the hour of day at which it begins.
std::vector<Money> pricing_series(const PricingSchedule& schedule, int horizon,
                                  int slot_minutes, const Rat& energy_per_machine_slot_kwh);

// Seeded subsample of the trace whose total demand lands within 2% of
// utilization * machines * horizon machine-slots. Runtimes are rounded up to
// whole slots, node counts clamped to [1, machines]; records whose derived
// deadline would overrun the horizon are not eligible. Throws
// std::runtime_error naming the shortfall when the trace cannot reach the
// target.
std::vector<Job> scale_workload(const WorkloadTrace& trace, int machines, int slot_minutes,
                                double utilization, const Rat& least_quality, int horizon,
                                std::uint64_t seed);

// Rescales the trace so its peak sample covers the whole cluster's power
// draw, then aggregates sample energy into per-slot machine-slot units.
// The result is truncated or zero-padded to exactly `horizon` slots.
// Throws std::runtime_error on an empty or all-zero trace.
std::vector<Rat> scale_solar(const SolarTrace& trace, int machines,
                             const Rat& power_per_machine_watts, int slot_minutes,
                             int horizon);

// Pricing/charging configuration from which the value triple is derived.
struct ValuesConfig {
	Money charge_rate{11, 500};          // $0.022 per machine-slot
	Money on_peak_per_kwh{13, 100};      // $0.13
	Money off_peak_per_kwh{2, 25};       // $0.08
	Rat energy_per_machine_slot_kwh{7, 50}; // 140 W machine, one-hour slot

	Money on_peak_cost() const { return on_peak_per_kwh * energy_per_machine_slot_kwh; }
	Money off_peak_cost() const { return off_peak_per_kwh * energy_per_machine_slot_kwh; }
	NormalizedValues values() const
	{
		return normalized_values(1, 1, charge_rate, on_peak_per_kwh, off_peak_per_kwh,
		                         energy_per_machine_slot_kwh);
	}
};

// The two-slot lower-bound constructions. Every job is unit-length and needs
// the whole cluster; slot price classes and green arrivals follow the family.
enum class AdversaryFamily {
	thm1_on_green,  // on/on prices, green [0, M], one job spanning both slots
	thm1_on_off,    // on/off prices, no green, one job
	thm2_on_off,    // on/off prices, no green, jobs (t1,t2) and (t2,t2)
	thm2_off_green, // off/on prices, green [0, M], jobs (t1,t2) and (t2,t2)
	thm3_s11,       // on/off, no green, one job
	thm3_s12,       // on/off, no green, two jobs
	thm3_s21,       // off/on, green [0, M], one job
	thm3_s22,       // off/on, green [0, M], two jobs
};

Instance adversarial_instance(AdversaryFamily family, int machines,
                              const ValuesConfig& config = {});

const char* family_name(AdversaryFamily family);
AdversaryFamily family_from_name(const std::string& name); // throws on unknown

// Uniform job class (same length and node count), releases sampled uniformly
// over the starts from which the derived deadline still fits the horizon.
std::vector<Job> uniform_workload(int machines, int horizon, int length, int nodes,
                                  double utilization, const Rat& least_quality,
                                  std::uint64_t seed);

// Hourly solar bell (zero before 6h and after 18h, peak = full cluster at
// noon), repeated daily. Exact rational weights so instances round-trip.
std::vector<Rat> synthetic_solar(int machines, int horizon);

// Canonical instance file (see docs/formats.md). Writing then parsing
// reproduces the instance exactly.
void write_instance(const Instance& instance, std::ostream& out);
std::string instance_to_text(const Instance& instance);
Instance read_instance(std::istream& in, const std::string& source);
Instance read_instance(const std::string& path);

} // namespace gdc

#endif
