#pragma once
/* Successive-cancellation reference decoder and exhaustive per-node ML oracle. */

#include "srfsc/fixedpoint.hpp"
#include "srfsc/polar_code.hpp"

namespace srfsc {

using LlrVector = std::vector<Llr>;

// sign(a) sign(b) min(|a|, |b|), with sign(0) treated as +
Llr f_op(Llr a, Llr b);

// (-1)^bit * a + b, saturating in fixed mode
Llr g_op(Llr a, Llr b, int bit, const QuantSpec& q);

// frozen position -> 0, otherwise 0 iff llr >= 0
int bit_decision(Llr llr, int position, const CodeSpec& spec);
int hard_bit(Llr llr);

// interleaved partial-sum combine: out[2k] = left[k] ^ right[k], out[2k+1] = right[k]
BitVector combine(const BitVector& left, const BitVector& right);

struct ScResult {
	BitVector u_hat;
	BitVector x_hat;
};
ScResult sc_decode(const CodeSpec& spec, const LlrVector& channel_llrs, const QuantSpec& q);

struct NodeCodebook {
	int length = 0;
	std::vector<BitVector> codewords;
};
// every word the subtree with this frozen-leaf mask can emit (local polar transform
// over all free-leaf assignments); refuses more than 2^20 codewords or length > 64
NodeCodebook node_codebook(const BitVector& leaf_frozen);

double codeword_metric(const BitVector& beta, const LlrVector& alpha);

// argmax of codeword_metric over the codebook, lexicographically smallest on ties
BitVector ml_node_oracle(const NodeCodebook& codebook, const LlrVector& alpha);

}
