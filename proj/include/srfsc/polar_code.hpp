#pragma once
/* Polar code construction, butterfly encoding and code-spec file I/O. */

#include <cstdint>
#include <string>
#include <vector>

namespace srfsc {

using BitVector = std::vector<std::uint8_t>;

struct CodeSpec {
	int n = 0;            // tree depth, N = 2^n
	int code_length = 0;  // N
	int info_length = 0;  // K
	std::vector<int> frozen_set;  // sorted ascending, 0-based
	std::vector<int> info_set;    // complement, sorted ascending
	BitVector is_frozen;          // length-N mask

	bool frozen(int k) const { return is_frozen[k] != 0; }
};

// order lists positions least reliable first; the N-K least reliable are frozen.
CodeSpec build_code_spec(int code_length, int info_length, const std::vector<int>& order);

// permutation p with p[k] = bit-reversed k (involution), length must be a power of two
std::vector<int> bit_reversal_permutation(int code_length);

// x = u G_N over GF(2), G_N = R_N F^{(x)n}. G_N is an involution, so the same
// transform maps x back to u.
BitVector polar_transform(const BitVector& u);

// polar_transform with the precondition that frozen positions of u are zero
BitVector encode(const CodeSpec& spec, const BitVector& u);

BitVector expand_info(const CodeSpec& spec, const BitVector& info_bits);
BitVector extract_info(const CodeSpec& spec, const BitVector& u);

// dense row-major G_N; only sized for small N (test oracle for encode)
std::vector<BitVector> generator_matrix(int code_length);

// {"n": length, "k": info length, "frozen": [0-based indices sorted ascending]}
CodeSpec load_code_spec(const std::string& path);
void save_code_spec(const CodeSpec& spec, const std::string& path);

// newline-separated 0-based indices, least reliable first
std::vector<int> load_reliability_order(const std::string& path);
// entries < code_length, in order (the 1024-entry asset nests for all shorter N)
std::vector<int> reliability_subsequence(const std::vector<int>& order, int code_length);

}
