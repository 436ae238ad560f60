#include "srfsc/srfsc_decoder.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace srfsc {

std::vector<ParityGroup> parity_groups(int fro_num, int source_length)
{
	if (source_length < 2 || (source_length & (source_length - 1)) != 0)
		throw std::invalid_argument("source length must be a power of two >= 2");
	if (fro_num < 0 || fro_num > 3)
		throw std::invalid_argument("fro_num must be 0..3");
	// fro_num leading frozen bits leave contiguous blocks of 2^(r+1-fro_num) bits
	// whose parities are the only remaining constraints
	std::vector<ParityGroup> groups;
	if (fro_num >= 1) {
		int count = 1 << (fro_num - 1);
		if (source_length < 2 * count)
			throw std::invalid_argument("source too short for fro_num");
		int len = source_length / count;
		for (int g = 0; g < count; ++g)
			groups.push_back({g * len, len});
	}
	return groups;
}

LlrVector sr_step1_transform(const LlrVector& alpha, const BitVector& seq,
                             int source_length, const QuantSpec& q)
{
	if (source_length < 1 || alpha.size() != seq.size() * size_t(source_length))
		throw std::invalid_argument("alpha length must be source length times sequence length");
	int block = int(seq.size());
	LlrVector out(source_length);
	for (int k = 0; k < source_length; ++k) {
		Llr acc = 0.0;
		for (int m = 0; m < block; ++m) {
			Llr term = alpha[size_t(k) * block + m];
			acc = sat_add(acc, seq[m] ? -term : term, q);
		}
		out[k] = acc;
	}
	return out;
}

WagnerResult wagner_decode(const LlrVector& alpha, int parity, const QuantSpec&)
{
	if (alpha.empty())
		throw std::invalid_argument("empty Wagner input");
	WagnerResult r;
	r.beta.resize(alpha.size());
	int par = 0;
	for (size_t k = 0; k < alpha.size(); ++k) {
		r.beta[k] = std::uint8_t(hard_bit(alpha[k]));
		par ^= r.beta[k];
		r.metric += std::abs(alpha[k]);
	}
	if (par != (parity & 1)) {
		size_t weakest = 0;
		for (size_t k = 1; k < alpha.size(); ++k)
			if (std::abs(alpha[k]) < std::abs(alpha[weakest]))
				weakest = k;
		r.beta[weakest] ^= 1;
		r.metric -= 2.0 * std::abs(alpha[weakest]);
		r.flipped = int(weakest);
	}
	return r;
}

SrDecodeResult sr_node_decode(const LlrVector& alpha, int fro_num,
                              const std::vector<BitVector>& sequences, const QuantSpec& q)
{
	if (sequences.empty())
		throw std::invalid_argument("need at least one repetition sequence");
	size_t block = sequences.front().size();
	for (const auto& s : sequences)
		if (s.size() != block)
			throw std::invalid_argument("repetition sequences must share one length");
	if (block == 0 || alpha.size() % block)
		throw std::invalid_argument("alpha length must be a multiple of the sequence length");
	int source_length = int(alpha.size() / block);

	SrDecodeResult best;
	BitVector source_beta(source_length);
	for (int l = 0; l < int(sequences.size()); ++l) {
		LlrVector a = sr_step1_transform(alpha, sequences[l], source_length, q);
		double metric = 0.0;
		std::vector<int> flipped;
		if (fro_num == 0) {
			for (int k = 0; k < source_length; ++k) {
				source_beta[k] = std::uint8_t(hard_bit(a[k]));
				metric += std::abs(a[k]);
			}
		} else if (fro_num < 3) {
			for (const auto& g : parity_groups(fro_num, source_length)) {
				LlrVector part(a.begin() + g.begin, a.begin() + g.begin + g.length);
				WagnerResult w = wagner_decode(part, 0, q);
				std::copy(w.beta.begin(), w.beta.end(), source_beta.begin() + g.begin);
				metric += w.metric;
				if (w.flipped)
					flipped.push_back(g.begin + *w.flipped);
			}
		} else {
			// four quarters tied to a single shared parity: try both values
			auto groups = parity_groups(fro_num, source_length);
			double gamma_metric[2];
			BitVector gamma_beta[2];
			std::vector<int> gamma_flips[2];
			for (int gamma = 0; gamma < 2; ++gamma) {
				gamma_metric[gamma] = 0.0;
				gamma_beta[gamma].resize(source_length);
				for (const auto& g : groups) {
					LlrVector part(a.begin() + g.begin, a.begin() + g.begin + g.length);
					WagnerResult w = wagner_decode(part, gamma, q);
					std::copy(w.beta.begin(), w.beta.end(), gamma_beta[gamma].begin() + g.begin);
					gamma_metric[gamma] += w.metric;
					if (w.flipped)
						gamma_flips[gamma].push_back(g.begin + *w.flipped);
				}
			}
			int pick = gamma_metric[1] > gamma_metric[0] ? 1 : 0;
			metric = gamma_metric[pick];
			source_beta = gamma_beta[pick];
			flipped = std::move(gamma_flips[pick]);
		}
		if (l == 0 || metric > best.metric) {
			best.metric = metric;
			best.selected_seq = l;
			best.flipped = std::move(flipped);
			best.beta.resize(alpha.size());
			const BitVector& s = sequences[l];
			for (int k = 0; k < source_length; ++k)
				for (size_t m = 0; m < block; ++m)
					best.beta[size_t(k) * block + m] = source_beta[k] ^ s[m];
		}
	}
	return best;
}

namespace {

struct Executor {
	const DecodingProgram& prog;
	const QuantSpec& q;
	bool want_trace;
	std::vector<LlrVector> alpha;                // per level
	std::vector<BitVector> left_beta, right_beta;  // per level scratch
	size_t next = 0;
	DecodeOutput* out;

	void run(int level, int start, BitVector& beta)
	{
		if (next < prog.instructions.size()
		    && prog.instructions[next].start == start
		    && prog.instructions[next].sr_stage == level) {
			exec_leaf(prog.instructions[next], beta);
			++next;
			return;
		}
		if (level == 0)
			throw std::invalid_argument("program does not tile the code block");
		int half = 1 << (level - 1);
		const LlrVector& a = alpha[level];
		LlrVector& c = alpha[level - 1];
		for (int k = 0; k < half; ++k)
			c[k] = f_op(a[2 * k], a[2 * k + 1]);
		run(level - 1, start, left_beta[level - 1]);
		for (int k = 0; k < half; ++k)
			c[k] = g_op(a[2 * k], a[2 * k + 1], left_beta[level - 1][k], q);
		run(level - 1, start + half, right_beta[level - 1]);
		const BitVector& lb = left_beta[level - 1];
		const BitVector& rb = right_beta[level - 1];
		for (int k = 0; k < half; ++k) {
			beta[2 * k] = lb[k] ^ rb[k];
			beta[2 * k + 1] = rb[k];
		}
	}

	void exec_leaf(const Instruction& ins, BitVector& beta)
	{
		int len = 1 << ins.sr_stage;
		const LlrVector& a = alpha[ins.sr_stage];
		switch (ins.opcode) {
		case Opcode::rate0:
			std::fill(beta.begin(), beta.begin() + len, 0);
			break;
		case Opcode::rate1:
			for (int k = 0; k < len; ++k)
				beta[k] = std::uint8_t(hard_bit(a[k]));
			break;
		case Opcode::sr: {
			const std::vector<BitVector>* seqs;
			std::vector<BitVector> zero_table;
			if (ins.node_type) {
				seqs = &prog.rep_seq_tables[ins.node_type];
			} else {
				zero_table.assign(1, BitVector(size_t(1) << (ins.sr_stage - ins.source_stage), 0));
				seqs = &zero_table;
			}
			SrDecodeResult r = sr_node_decode(LlrVector(a.begin(), a.begin() + len),
			                                  ins.fro_num, *seqs, q);
			std::copy(r.beta.begin(), r.beta.end(), beta.begin());
			if (want_trace)
				out->trace.push_back(TraceEntry{int(next), ins.start, r.selected_seq,
				                                std::move(r.flipped)});
			break;
		}
		}
	}
};

std::int64_t walk_cycles(const DecodingProgram& prog, const CostModel& cm,
                         size_t& next, int level, int start)
{
	if (next < prog.instructions.size()
	    && prog.instructions[next].start == start
	    && prog.instructions[next].sr_stage == level) {
		const Instruction& ins = prog.instructions[next++];
		switch (ins.opcode) {
		case Opcode::rate0: return cm.rate0;
		case Opcode::rate1: return cm.rate1;
		case Opcode::sr: return cm.sr_leaf();
		}
	}
	if (level == 0)
		throw std::invalid_argument("program does not tile the code block");
	int half = 1 << (level - 1);
	std::int64_t total = 2 * fg_cycles(level, prog.p) + cm.combine;
	total += walk_cycles(prog, cm, next, level - 1, start);
	return total + walk_cycles(prog, cm, next, level - 1, start + half);
}

void attribute_cycles(const DecodingProgram& prog, const CostModel& cm, size_t& next,
                      std::int64_t& pending, std::vector<std::int64_t>& out,
                      int level, int start)
{
	if (next < prog.instructions.size()
	    && prog.instructions[next].start == start
	    && prog.instructions[next].sr_stage == level) {
		const Instruction& ins = prog.instructions[next];
		std::int64_t leaf = 0;
		switch (ins.opcode) {
		case Opcode::rate0: leaf = cm.rate0; break;
		case Opcode::rate1: leaf = cm.rate1; break;
		case Opcode::sr: leaf = cm.sr_leaf(); break;
		}
		out[next++] = pending + leaf;
		pending = 0;
		return;
	}
	if (level == 0)
		throw std::invalid_argument("program does not tile the code block");
	int half = 1 << (level - 1);
	pending += fg_cycles(level, prog.p);
	attribute_cycles(prog, cm, next, pending, out, level - 1, start);
	pending += fg_cycles(level, prog.p);
	attribute_cycles(prog, cm, next, pending, out, level - 1, start + half);
	pending += cm.combine;
}

}

DecodeOutput srfsc_decode(const DecodingProgram& prog, const LlrVector& channel_llrs,
                          const QuantSpec& q, bool want_trace, const CostModel& cm)
{
	if (int(channel_llrs.size()) != prog.code_length)
		throw std::invalid_argument("LLR length does not match the program");
	int n = 0;
	while ((1 << n) < prog.code_length)
		++n;

	DecodeOutput out;
	Executor ex{prog, q, want_trace, {}, {}, {}, 0, &out};
	ex.alpha.resize(n + 1);
	ex.left_beta.resize(std::max(n, 1));
	ex.right_beta.resize(std::max(n, 1));
	for (int level = 0; level < n; ++level) {
		ex.alpha[level].resize(size_t(1) << level);
		ex.left_beta[level].resize(size_t(1) << level);
		ex.right_beta[level].resize(size_t(1) << level);
	}
	ex.alpha[n] = channel_llrs;

	out.x_hat.resize(prog.code_length);
	ex.run(n, 0, out.x_hat);
	if (ex.next != prog.instructions.size())
		throw std::invalid_argument("program has trailing instructions");
	out.u_hat = polar_transform(out.x_hat);
	out.cycles = count_cycles(prog, cm);
	return out;
}

std::int64_t count_cycles(const DecodingProgram& prog, const CostModel& cm)
{
	if (prog.instructions.empty())
		return 0;
	int n = 0;
	while ((1 << n) < prog.code_length)
		++n;
	size_t next = 0;
	std::int64_t total = walk_cycles(prog, cm, next, n, 0);
	if (next != prog.instructions.size())
		throw std::invalid_argument("program has trailing instructions");
	return total;
}

std::vector<std::int64_t> instruction_cycles(const DecodingProgram& prog, const CostModel& cm)
{
	std::vector<std::int64_t> out(prog.instructions.size(), 0);
	if (prog.instructions.empty())
		return out;
	int n = 0;
	while ((1 << n) < prog.code_length)
		++n;
	size_t next = 0;
	std::int64_t pending = 0;
	attribute_cycles(prog, cm, next, pending, out, n, 0);
	if (next != prog.instructions.size())
		throw std::invalid_argument("program has trailing instructions");
	out.back() += pending;
	return out;
}

ThroughputReport throughput_report(std::int64_t cycles, int code_length, double f_max_hz)
{
	if (cycles <= 0)
		throw std::invalid_argument("cycle count must be positive");
	if (code_length <= 0 || f_max_hz <= 0.0)
		throw std::invalid_argument("need a positive code length and clock rate");
	ThroughputReport r;
	r.cycles = cycles;
	r.code_length = code_length;
	r.f_max_hz = f_max_hz;
	r.bits_per_second = double(code_length) * f_max_hz / double(cycles);
	return r;
}

}
