#pragma once
/* Instruction-driven fast-SSC decoder with sequence-repetition leaf handling. */

#include "srfsc/sc.hpp"
#include "srfsc/sr_compiler.hpp"

#include <optional>

namespace srfsc {

struct ParityGroup { int begin = 0; int length = 0; };
// fro_num 0 -> none; 1 -> whole source, even; 2 -> two halves, even;
// 3 -> four quarters constrained to one shared parity
std::vector<ParityGroup> parity_groups(int fro_num, int source_length);

// blockwise signed reduction of alpha onto the source: out[k] = sum over the k-th
// block of alpha[.] * (-1)^seq[.], folded left to right with sat_add in fixed mode
LlrVector sr_step1_transform(const LlrVector& alpha, const BitVector& seq,
                             int source_length, const QuantSpec& q);

struct WagnerResult {
	BitVector beta;
	double metric = 0.0;             // sum of (-1)^beta[k] alpha[k] after any flip
	std::optional<int> flipped;      // index whose hard decision was inverted
};
// ML word of the even- (parity=0) or odd-parity coset: hard decisions, then if the
// parity is off, flip the smallest-|alpha| position (lowest index on ties)
WagnerResult wagner_decode(const LlrVector& alpha, int parity, const QuantSpec& q);

struct SrDecodeResult {
	BitVector beta;            // expanded word, length = |alpha|
	double metric = 0.0;       // achieved source-domain correlation metric
	int selected_seq = 0;      // 0-based index into the sequence table
	std::vector<int> flipped;  // source positions adjusted to satisfy parity
};
// sequences must all share one length 2^(j-r) dividing |alpha|; pass a single
// all-zero sequence for seq_num = 0 nodes
SrDecodeResult sr_node_decode(const LlrVector& alpha, int fro_num,
                              const std::vector<BitVector>& sequences, const QuantSpec& q);

struct TraceEntry {
	int instruction = 0;
	int start = 0;
	int selected_seq = 0;
	std::vector<int> flipped;
};
struct DecodeOutput {
	BitVector x_hat;
	BitVector u_hat;
	std::int64_t cycles = 0;
	std::vector<TraceEntry> trace;
};
DecodeOutput srfsc_decode(const DecodingProgram& prog, const LlrVector& channel_llrs,
                          const QuantSpec& q, bool want_trace = false,
                          const CostModel& cm = {});

// traversal f/g cycles reconstructed from instruction spans, plus per-leaf costs;
// pure function of the program and cost model
std::int64_t count_cycles(const DecodingProgram& prog, const CostModel& cm = {});

// the same cycles attributed per instruction the way the compiler prices them:
// traversal work folds into the instruction that runs after it, trailing
// combines into the last one; sums to count_cycles for any model
std::vector<std::int64_t> instruction_cycles(const DecodingProgram& prog,
                                             const CostModel& cm = {});

struct ThroughputReport {
	std::int64_t cycles = 0;
	int code_length = 0;
	double f_max_hz = 0.0;
	double bits_per_second = 0.0;  // N * f_max / cycles (coded throughput)
};
ThroughputReport throughput_report(std::int64_t cycles, int code_length, double f_max_hz);

}
