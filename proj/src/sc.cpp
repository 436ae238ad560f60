#include "srfsc/sc.hpp"

#include <cmath>
#include <stdexcept>

namespace srfsc {

Llr f_op(Llr a, Llr b)
{
	double mag = std::min(std::abs(a), std::abs(b));
	return (a < 0) == (b < 0) ? mag : -mag;
}

Llr g_op(Llr a, Llr b, int bit, const QuantSpec& q)
{
	return sat_add(bit ? -a : a, b, q);
}

int hard_bit(Llr llr)
{
	return llr < 0 ? 1 : 0;
}

int bit_decision(Llr llr, int position, const CodeSpec& spec)
{
	return spec.frozen(position) ? 0 : hard_bit(llr);
}

BitVector combine(const BitVector& left, const BitVector& right)
{
	if (left.size() != right.size())
		throw std::invalid_argument("combine halves must match in length");
	BitVector out(left.size() * 2);
	for (size_t k = 0; k < left.size(); ++k) {
		out[2 * k] = left[k] ^ right[k];
		out[2 * k + 1] = right[k];
	}
	return out;
}

namespace {

struct ScState {
	const CodeSpec& spec;
	const QuantSpec& q;
	BitVector u_hat;
};

BitVector sc_node(ScState& st, const LlrVector& alpha, int start)
{
	int len = int(alpha.size());
	if (len == 1) {
		int bit = bit_decision(alpha[0], start, st.spec);
		st.u_hat[start] = std::uint8_t(bit);
		return BitVector{std::uint8_t(bit)};
	}
	int half = len / 2;
	LlrVector child(half);
	for (int k = 0; k < half; ++k)
		child[k] = f_op(alpha[2 * k], alpha[2 * k + 1]);
	BitVector left = sc_node(st, child, start);
	for (int k = 0; k < half; ++k)
		child[k] = g_op(alpha[2 * k], alpha[2 * k + 1], left[k], st.q);
	BitVector right = sc_node(st, child, start + half);
	return combine(left, right);
}

}

ScResult sc_decode(const CodeSpec& spec, const LlrVector& channel_llrs, const QuantSpec& q)
{
	if (int(channel_llrs.size()) != spec.code_length)
		throw std::invalid_argument("LLR length does not match the code length");
	ScState st{spec, q, BitVector(spec.code_length, 0)};
	BitVector x_hat = sc_node(st, channel_llrs, 0);
	return ScResult{std::move(st.u_hat), std::move(x_hat)};
}

NodeCodebook node_codebook(const BitVector& leaf_frozen)
{
	int len = int(leaf_frozen.size());
	if (len < 1 || (len & (len - 1)) != 0)
		throw std::invalid_argument("leaf pattern length must be a power of two");
	if (len > 64)
		throw std::runtime_error("codebook refused: node length above 64");
	std::vector<int> free_pos;
	for (int k = 0; k < len; ++k)
		if (!leaf_frozen[k])
			free_pos.push_back(k);
	if (free_pos.size() > 20)
		throw std::runtime_error("codebook refused: more than 2^20 codewords");

	NodeCodebook cb;
	cb.length = len;
	cb.codewords.reserve(size_t(1) << free_pos.size());
	BitVector u(len, 0);
	for (std::uint64_t m = 0; m < (std::uint64_t(1) << free_pos.size()); ++m) {
		for (size_t i = 0; i < free_pos.size(); ++i)
			u[free_pos[i]] = (m >> i) & 1;
		cb.codewords.push_back(polar_transform(u));
	}
	return cb;
}

double codeword_metric(const BitVector& beta, const LlrVector& alpha)
{
	if (beta.size() != alpha.size())
		throw std::invalid_argument("metric operands must match in length");
	double metric = 0.0;
	for (size_t k = 0; k < beta.size(); ++k)
		metric += beta[k] ? -alpha[k] : alpha[k];
	return metric;
}

BitVector ml_node_oracle(const NodeCodebook& codebook, const LlrVector& alpha)
{
	if (codebook.codewords.empty())
		throw std::invalid_argument("empty codebook");
	if (int(alpha.size()) != codebook.length)
		throw std::invalid_argument("LLR length does not match the codebook");
	const BitVector* best = nullptr;
	double best_metric = 0.0;
	for (const auto& word : codebook.codewords) {
		double metric = codeword_metric(word, alpha);
		if (!best || metric > best_metric
		    || (metric == best_metric && word < *best)) {
			best = &word;
			best_metric = metric;
		}
	}
	return *best;
}

}
