#pragma once
/* BPSK/AWGN Monte-Carlo harness with deterministic per-frame random streams. */

#include "srfsc/srfsc_decoder.hpp"

namespace srfsc {

// Counter-based deterministic stream (splitmix64 core). Frame streams are keyed
// by (seed, point, frame), so results are independent of worker count and order.
struct RngStream {
	std::uint64_t state = 0;
	bool have_spare = false;
	double spare = 0.0;

	explicit RngStream(std::uint64_t key) : state(key) {}
	static RngStream frame_stream(std::uint64_t seed, std::uint64_t point, std::uint64_t frame);

	std::uint64_t next_u64();
	double next_unit();      // uniform in (0, 1]
	double next_gaussian();  // standard normal via Box-Muller
	int next_bit();
};

double awgn_sigma2(double ebn0_db, double rate);

// BPSK (0 -> +1, 1 -> -1), noise variance 1/(2 R 10^(EbN0/10)), LLR = 2y/sigma^2
LlrVector awgn_llrs(const BitVector& x, double ebn0_db, double rate, RngStream& rng);

enum class DecoderKind { srfsc, sc };

struct SimConfig {
	DecoderKind decoder = DecoderKind::srfsc;
	QuantSpec quant;
	std::vector<double> ebn0_db;
	std::int64_t max_frames = 100000;
	std::int64_t max_frame_errors = 100;  // stop at whichever limit hits first
	std::uint64_t seed = 1;
	int workers = 1;
	int p = 64;
	double gain = 1.0;       // channel-LLR scaling applied before quantization
	bool all_zero = false;   // send the all-zero codeword instead of random data
	CostModel cost_model;
};

struct PointResult {
	double ebn0_db = 0.0;
	std::int64_t frames = 0;
	std::int64_t frame_errors = 0;
	std::int64_t bit_errors = 0;  // over information bits
	double fer = 0.0;
	double ber = 0.0;
};

struct SimResult {
	std::vector<PointResult> points;
	std::int64_t cycles_per_frame = 0;  // program cycles; 0 for the sc decoder
};

SimResult run_trials(const CodeSpec& spec, const SimConfig& cfg);

// header: ebn0_db,frames,frame_errors,bit_errors,fer,ber
std::string to_csv(const SimResult& result);
std::string to_json(const SimResult& result);
SimResult sim_result_from_json(const std::string& text);

}
