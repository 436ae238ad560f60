/* Reference SC decoder, node codebooks and the per-node ML oracle. */

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "srfsc/sc.hpp"
#include "srfsc/srfsc_decoder.hpp"
#include "oracles.hpp"

using namespace srfsc;

static std::vector<int> identity_order(int n_len)
{
	std::vector<int> order(n_len);
	for (int k = 0; k < n_len; ++k)
		order[k] = k;
	return order;
}

TEST_CASE("f and g evaluate the min-sum update rules")
{
	CHECK(f_op(2, -3) == -2.0);
	CHECK(f_op(0, 5) == 0.0);
	CHECK(f_op(-4, -4) == 4.0);
	CHECK(f_op(5, 0) == 0.0);  // sign(0) treated as +

	QuantSpec q = QuantSpec::fixed(6, 4, 0);
	QuantSpec f = QuantSpec::floating();
	CHECK(g_op(-1, 4, 0, f) == 3.0);
	CHECK(g_op(-1, 4, 1, f) == 5.0);
	CHECK(g_op(31, 31, 0, q) == 31.0);
	CHECK(g_op(31, 31, 1, q) == 0.0);
}

TEST_CASE("bit decisions respect frozen positions and the zero boundary")
{
	CodeSpec spec = build_code_spec(4, 2, identity_order(4));  // frozen {0, 1}
	CHECK(bit_decision(-9, 0, spec) == 0);
	CHECK(bit_decision(-0.5, 2, spec) == 1);
	CHECK(bit_decision(0, 2, spec) == 0);
	CHECK(hard_bit(0) == 0);
	CHECK(hard_bit(-1e-9) == 1);
}

TEST_CASE("combine interleaves partial sums")
{
	CHECK(combine({1}, {1}) == BitVector{0, 1});
	CHECK(combine({0, 0}, {0, 0}) == BitVector{0, 0, 0, 0});
	CHECK(combine({1, 0}, {0, 1}) == BitVector{1, 0, 1, 1});
	CHECK_THROWS_AS(combine({1}, {1, 0}), std::invalid_argument);
}

TEST_CASE("two-bit decode trace")
{
	CodeSpec spec = build_code_spec(2, 1, identity_order(2));  // frozen {0}
	ScResult r = sc_decode(spec, {-3, 1}, QuantSpec::floating());
	CHECK(r.u_hat == BitVector{0, 1});
	CHECK(r.x_hat == BitVector{1, 1});

	CodeSpec none = build_code_spec(4, 0, identity_order(4));
	ScResult z = sc_decode(none, {-5, -4, -3, -2}, QuantSpec::floating());
	CHECK(z.u_hat == BitVector{0, 0, 0, 0});
	CHECK(z.x_hat == BitVector{0, 0, 0, 0});
}

TEST_CASE("sc_decode matches the straight-line eight-point decoder")
{
	CodeSpec spec = build_code_spec(8, 4, {0, 1, 2, 4, 3, 5, 6, 7});
	QuantSpec fl = QuantSpec::floating();
	QuantSpec fx = QuantSpec::fixed(6, 4, 0);
	oracle::TestRng rng(21);
	for (int t = 0; t < 1000; ++t) {
		LlrVector a(8);
		for (auto& v : a)
			v = rng.llr();
		CHECK(sc_decode(spec, a, fl).u_hat == oracle::sc8(spec, a, fl));
		for (auto& v : a)
			v = rng.fixed_llr(4);
		CHECK(sc_decode(spec, a, fx).u_hat == oracle::sc8(spec, a, fx));
	}
}

TEST_CASE("noiseless round-trip for every message up to N=16")
{
	QuantSpec fl = QuantSpec::floating();
	QuantSpec fx = QuantSpec::fixed(6, 4, 0);
	for (int n_len : {2, 4, 8, 16}) {
		// a mid-rate frozen set: freeze the naturally weakest half (low indices)
		CodeSpec spec = build_code_spec(n_len, n_len / 2, identity_order(n_len));
		for (std::uint32_t m = 0; m < (1u << (n_len / 2)); ++m) {
			BitVector info(n_len / 2);
			for (int k = 0; k < n_len / 2; ++k)
				info[k] = std::uint8_t((m >> k) & 1);
			BitVector u = expand_info(spec, info);
			BitVector x = encode(spec, u);
			LlrVector soft(n_len), hard(n_len);
			for (int k = 0; k < n_len; ++k) {
				soft[k] = x[k] ? -50.0 : 50.0;
				hard[k] = x[k] ? -7.0 : 7.0;
			}
			CHECK(sc_decode(spec, soft, fl).u_hat == u);
			CHECK(sc_decode(spec, hard, fx).u_hat == u);
		}
	}
}

TEST_CASE("node codebooks enumerate the local code")
{
	NodeCodebook rep = node_codebook({1, 1, 1, 0});
	REQUIRE(rep.codewords.size() == 2);
	CHECK(rep.codewords[0] == BitVector{0, 0, 0, 0});
	CHECK(rep.codewords[1] == BitVector{1, 1, 1, 1});

	NodeCodebook spc = node_codebook({1, 0, 0, 0});
	REQUIRE(spc.codewords.size() == 8);
	for (const auto& w : spc.codewords) {
		int weight = w[0] + w[1] + w[2] + w[3];
		CHECK(weight % 2 == 0);
	}

	// matches the independent matrix-built codebook
	for (int len : {2, 4, 8, 16}) {
		oracle::TestRng rng(len);
		BitVector mask(len);
		for (auto& b : mask)
			b = std::uint8_t(rng.bit());
		auto expect = oracle::codebook(mask);
		auto got = node_codebook(mask);
		REQUIRE(got.codewords.size() == expect.size());
		std::sort(expect.begin(), expect.end());
		auto sorted = got.codewords;
		std::sort(sorted.begin(), sorted.end());
		CHECK(sorted == expect);
	}

	CHECK_THROWS_AS(node_codebook(BitVector(128, 0)), std::runtime_error);
	CHECK_THROWS_AS(node_codebook(BitVector(32, 0)), std::runtime_error);  // 2^32 words
}

TEST_CASE("ml oracle picks the metric argmax with lexicographic ties")
{
	NodeCodebook rep = node_codebook({1, 1, 1, 0});
	CHECK(ml_node_oracle(rep, {1, 1, 1, -5}) == BitVector{1, 1, 1, 1});

	NodeCodebook two = node_codebook({0, 0});
	CHECK(ml_node_oracle(two, {3, -2}) == BitVector{0, 1});

	NodeCodebook spc = node_codebook({1, 0, 0, 0});
	CHECK(ml_node_oracle(spc, {1, -2, 3, 4}) == BitVector{1, 1, 0, 0});

	// zero LLRs tie every codeword; the all-zero word is lexicographically first
	CHECK(ml_node_oracle(spc, {0, 0, 0, 0}) == BitVector{0, 0, 0, 0});
}

TEST_CASE("specialized node rules achieve the oracle metric")
{
	QuantSpec fl = QuantSpec::floating();
	for (int len : {2, 4, 8, 16}) {
		BitVector zero_mask(len, 1), one_mask(len, 0);
		BitVector rep_mask(len, 1);
		rep_mask[len - 1] = 0;
		BitVector spc_mask(len, 0);
		spc_mask[0] = 1;
		NodeCodebook cb_rep = node_codebook(rep_mask);
		NodeCodebook cb_spc = node_codebook(spc_mask);

		oracle::TestRng rng(100 + len);
		for (int t = 0; t < 1000; ++t) {
			LlrVector a(len);
			for (auto& v : a)
				v = rng.llr();

			// Rate-1: per-bit hard decision
			double rate1 = 0.0;
			for (auto v : a)
				rate1 += std::fabs(v);
			CHECK(rate1 == oracle::best_metric(oracle::codebook(one_mask), a));

			// REP: sign of the sum
			double total = 0.0;
			for (auto v : a)
				total += v;
			CHECK(std::fabs(total) == oracle::best_metric(cb_rep.codewords, a));

			// SPC: Wagner decoding
			WagnerResult w = wagner_decode(a, 0, fl);
			CHECK(w.metric == oracle::best_metric(cb_spc.codewords, a));
		}
	}
}
