#include "srfsc/channel_sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace srfsc {

namespace {

std::uint64_t mix64(std::uint64_t z)
{
	z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
	z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
	return z ^ (z >> 31);
}

}

RngStream RngStream::frame_stream(std::uint64_t seed, std::uint64_t point, std::uint64_t frame)
{
	std::uint64_t s = mix64(seed + 0x9e3779b97f4a7c15ull);
	s = mix64(s ^ (point + 0xd1b54a32d192ed03ull));
	s = mix64(s ^ (frame + 0x2545f4914f6cdd1dull));
	return RngStream(s);
}

std::uint64_t RngStream::next_u64()
{
	state += 0x9e3779b97f4a7c15ull;
	return mix64(state);
}

double RngStream::next_unit()
{
	return double((next_u64() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
}

double RngStream::next_gaussian()
{
	if (have_spare) {
		have_spare = false;
		return spare;
	}
	double u1 = next_unit();
	double u2 = next_unit();
	double radius = std::sqrt(-2.0 * std::log(u1));
	double angle = 2.0 * std::numbers::pi * u2;
	spare = radius * std::sin(angle);
	have_spare = true;
	return radius * std::cos(angle);
}

int RngStream::next_bit()
{
	return int(next_u64() >> 63);
}

double awgn_sigma2(double ebn0_db, double rate)
{
	if (rate <= 0.0 || rate > 1.0)
		throw std::invalid_argument("rate must be in (0, 1]");
	return 1.0 / (2.0 * rate * std::pow(10.0, ebn0_db / 10.0));
}

LlrVector awgn_llrs(const BitVector& x, double ebn0_db, double rate, RngStream& rng)
{
	double sigma2 = awgn_sigma2(ebn0_db, rate);
	double sigma = std::sqrt(sigma2);
	LlrVector llrs(x.size());
	for (size_t k = 0; k < x.size(); ++k) {
		double sym = x[k] ? -1.0 : 1.0;
		double y = sym + sigma * rng.next_gaussian();
		llrs[k] = 2.0 * y / sigma2;
	}
	return llrs;
}

namespace {

struct FrameOutcome {
	std::uint8_t error = 0;
	std::int32_t bit_errors = 0;
};

struct PointRunner {
	const CodeSpec& spec;
	const SimConfig& cfg;
	const DecodingProgram* prog;  // null for the sc decoder
	int point_index;
	double rate;

	FrameOutcome frame(std::int64_t index) const
	{
		RngStream rng = RngStream::frame_stream(cfg.seed, std::uint64_t(point_index),
		                                        std::uint64_t(index));
		BitVector info(spec.info_length, 0);
		if (!cfg.all_zero)
			for (auto& b : info)
				b = std::uint8_t(rng.next_bit());
		BitVector u = expand_info(spec, info);
		BitVector x = encode(spec, u);
		LlrVector llrs = awgn_llrs(x, cfg.ebn0_db[point_index], rate, rng);
		for (auto& v : llrs)
			v = quantize_channel(cfg.gain * v, cfg.quant);

		BitVector u_hat;
		if (prog)
			u_hat = srfsc_decode(*prog, llrs, cfg.quant, false, cfg.cost_model).u_hat;
		else
			u_hat = sc_decode(spec, llrs, cfg.quant).u_hat;

		FrameOutcome res;
		for (int k : spec.info_set)
			res.bit_errors += u_hat[k] != u[k];
		res.error = res.bit_errors != 0;
		return res;
	}
};

}

SimResult run_trials(const CodeSpec& spec, const SimConfig& cfg)
{
	if (cfg.max_frames < 1)
		throw std::invalid_argument("need at least one frame");
	if (cfg.workers < 1)
		throw std::invalid_argument("need at least one worker");

	SimResult result;
	DecodingProgram prog;
	if (cfg.decoder == DecoderKind::srfsc) {
		prog = emit_program(spec, cfg.p, cfg.cost_model);
		result.cycles_per_frame = prog.total_cycles;
	}
	double rate = double(spec.info_length) / double(spec.code_length);
	if (spec.info_length == 0)
		rate = 0.5;  // BPSK scaling only; no information is carried

	for (size_t pi = 0; pi < cfg.ebn0_db.size(); ++pi) {
		PointRunner runner{spec, cfg, cfg.decoder == DecoderKind::srfsc ? &prog : nullptr,
		                   int(pi), rate};
		PointResult point;
		point.ebn0_db = cfg.ebn0_db[pi];

		// Frames are evaluated in index blocks; outcomes depend only on
		// (seed, point, frame), so worker count and block size cannot change
		// the statistics. The stopping rule reads outcomes in frame order.
		const std::int64_t block = 4096;
		std::vector<FrameOutcome> outcomes(block);
		std::int64_t done = 0;
		bool stopped = false;
		while (!stopped && done < cfg.max_frames) {
			std::int64_t count = std::min(block, cfg.max_frames - done);
			int workers = int(std::min<std::int64_t>(cfg.workers, count));
			std::mutex failure_lock;
			std::exception_ptr failure;
			auto job = [&](int w) {
				try {
					for (std::int64_t i = w; i < count; i += workers)
						outcomes[i] = runner.frame(done + i);
				} catch (...) {
					std::lock_guard<std::mutex> hold(failure_lock);
					if (!failure)
						failure = std::current_exception();
				}
			};
			if (workers == 1) {
				job(0);
			} else {
				std::vector<std::thread> pool;
				for (int w = 0; w < workers; ++w)
					pool.emplace_back(job, w);
				for (auto& t : pool)
					t.join();
			}
			if (failure)
				std::rethrow_exception(failure);

			for (std::int64_t i = 0; i < count && !stopped; ++i) {
				point.frames++;
				point.frame_errors += outcomes[i].error;
				point.bit_errors += outcomes[i].bit_errors;
				if (cfg.max_frame_errors > 0 && point.frame_errors >= cfg.max_frame_errors)
					stopped = true;
			}
			done += count;
		}

		point.fer = point.frames ? double(point.frame_errors) / double(point.frames) : 0.0;
		std::int64_t info_bits = point.frames * spec.info_length;
		point.ber = info_bits ? double(point.bit_errors) / double(info_bits) : 0.0;
		result.points.push_back(point);
	}
	return result;
}

std::string to_csv(const SimResult& result)
{
	std::string csv = "ebn0_db,frames,frame_errors,bit_errors,fer,ber\n";
	char row[256];
	for (const auto& p : result.points) {
		std::snprintf(row, sizeof row, "%.10g,%lld,%lld,%lld,%.12g,%.12g\n",
		              p.ebn0_db, (long long)p.frames, (long long)p.frame_errors,
		              (long long)p.bit_errors, p.fer, p.ber);
		csv += row;
	}
	return csv;
}

std::string to_json(const SimResult& result)
{
	nlohmann::json j;
	j["cycles_per_frame"] = result.cycles_per_frame;
	auto& points = j["points"] = nlohmann::json::array();
	for (const auto& p : result.points)
		points.push_back({
			{"ebn0_db", p.ebn0_db},
			{"frames", p.frames},
			{"frame_errors", p.frame_errors},
			{"bit_errors", p.bit_errors},
			{"fer", p.fer},
			{"ber", p.ber},
		});
	return j.dump(2) + "\n";
}

SimResult sim_result_from_json(const std::string& text)
{
	SimResult result;
	try {
		nlohmann::json j = nlohmann::json::parse(text);
		result.cycles_per_frame = j.value("cycles_per_frame", std::int64_t(0));
		for (const auto& pj : j.at("points")) {
			PointResult p;
			p.ebn0_db = pj.at("ebn0_db").get<double>();
			p.frames = pj.at("frames").get<std::int64_t>();
			p.frame_errors = pj.at("frame_errors").get<std::int64_t>();
			p.bit_errors = pj.at("bit_errors").get<std::int64_t>();
			p.fer = pj.at("fer").get<double>();
			p.ber = pj.at("ber").get<double>();
			result.points.push_back(p);
		}
	} catch (const nlohmann::json::exception& e) {
		throw std::runtime_error(std::string("bad simulation JSON: ") + e.what());
	}
	return result;
}

}
