#ifndef GDC_RNG_HPP
#define GDC_RNG_HPP

#include <cstdint>

namespace gdc {

// SplitMix64 (Steele, Lea & Flood, "Fast splittable pseudorandom number
// generators", OOPSLA 2014). Chosen because its output is fully specified by
// the algorithm, so decision logs replay identically across platforms and
// standard-library versions.
class SplitMix64 {
public:
	explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

	std::uint64_t next()
	{
		std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
		z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
		z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
		return z ^ (z >> 31);
	}

	// uniform in [0, 1) with 53 random bits
	double next_unit()
	{
		return static_cast<double>(next() >> 11) * 0x1.0p-53;
	}

private:
	std::uint64_t state_;
};

// Order-sensitive seed combinator. Used both for per-job substreams inside
// one simulation and for per-cell/per-repetition seeds in the harness, so
// adding cells, repetitions, or policies never perturbs unrelated streams.
inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b)
{
	SplitMix64 g(a ^ (b + 0x9E3779B97F4A7C15ULL + (a << 6) + (a >> 2)));
	return g.next();
}

// Substream for the k-th decision of a simulation seeded with `seed`.
// One substream per job sequence number: draws made for one job never shift
// the draws any other job sees.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t k)
{
	return mix_seed(seed, k);
}

} // namespace gdc

#endif
