/* Code construction, butterfly encoding and file round-trips. */

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "srfsc/polar_code.hpp"
#include "oracles.hpp"

#include <cstdio>
#include <fstream>

using namespace srfsc;

TEST_CASE("build_code_spec splits the reliability order")
{
	CodeSpec spec = build_code_spec(8, 4, {0, 1, 2, 4, 3, 5, 6, 7});
	CHECK(spec.frozen_set == std::vector<int>{0, 1, 2, 4});
	CHECK(spec.info_set == std::vector<int>{3, 5, 6, 7});
	CHECK(spec.n == 3);
	CHECK(spec.frozen(4));
	CHECK(!spec.frozen(3));

	CodeSpec none = build_code_spec(2, 0, {0, 1});
	CHECK(none.frozen_set == std::vector<int>{0, 1});
	CHECK(none.info_set.empty());
	CHECK(build_code_spec(4, 4, {0, 1, 2, 3}).frozen_set.empty());

	CHECK_THROWS_AS(build_code_spec(8, 9, {0, 1, 2, 3, 4, 5, 6, 7}), std::invalid_argument);
	CHECK_THROWS_AS(build_code_spec(8, 4, {0, 0, 2, 4, 3, 5, 6, 7}), std::invalid_argument);
	CHECK_THROWS_AS(build_code_spec(6, 3, {0, 1, 2, 3, 4, 5}), std::invalid_argument);
}

TEST_CASE("bit reversal permutation")
{
	CHECK(bit_reversal_permutation(2) == std::vector<int>{0, 1});
	CHECK(bit_reversal_permutation(4) == std::vector<int>{0, 2, 1, 3});
	CHECK(bit_reversal_permutation(8) == std::vector<int>{0, 4, 2, 6, 1, 5, 3, 7});
	auto p = bit_reversal_permutation(64);
	for (int k = 0; k < 64; ++k)
		CHECK(p[p[k]] == k);
	CHECK_THROWS_AS(bit_reversal_permutation(12), std::invalid_argument);
}

TEST_CASE("generator matrix pins the known rows")
{
	auto g2 = generator_matrix(2);
	CHECK(g2[0] == BitVector{1, 0});
	CHECK(g2[1] == BitVector{1, 1});
	auto g8 = generator_matrix(8);
	CHECK(g8[1] == BitVector{1, 0, 0, 0, 1, 0, 0, 0});
}

TEST_CASE("encode fixed vectors")
{
	CodeSpec all2 = build_code_spec(2, 2, {0, 1});
	CHECK(encode(all2, {0, 1}) == BitVector{1, 1});
	CodeSpec all4 = build_code_spec(4, 4, {0, 1, 2, 3});
	CHECK(encode(all4, {0, 0, 0, 1}) == BitVector{1, 1, 1, 1});
	CHECK(encode(all4, {0, 1, 0, 0}) == BitVector{1, 0, 1, 0});

	CodeSpec spec = build_code_spec(4, 2, {0, 1, 2, 3});
	CHECK_THROWS_AS(encode(spec, {1, 0, 0, 0}), std::invalid_argument);
	CHECK_THROWS_AS(encode(spec, {0, 0, 0}), std::invalid_argument);
}

TEST_CASE("encode equals the independent matrix oracle, exhaustively to N=16")
{
	for (int n_len : {2, 4, 8, 16}) {
		auto g = oracle::generator_matrix(n_len);
		CodeSpec spec = build_code_spec(n_len, n_len, bit_reversal_permutation(n_len));
		for (std::uint32_t m = 0; m < (1u << n_len); ++m) {
			BitVector u(n_len);
			for (int k = 0; k < n_len; ++k)
				u[k] = std::uint8_t((m >> k) & 1);
			CHECK(encode(spec, u) == oracle::matrix_encode(g, u));
		}
	}
}

TEST_CASE("encode equals the matrix oracle on random vectors at N=1024")
{
	auto g = oracle::generator_matrix(1024);
	std::vector<int> order(1024);
	for (int k = 0; k < 1024; ++k)
		order[k] = k;
	CodeSpec spec = build_code_spec(1024, 1024, order);
	oracle::TestRng rng(7);
	for (int trial = 0; trial < 1000; ++trial) {
		BitVector u(1024);
		for (auto& b : u)
			b = std::uint8_t(rng.bit());
		CHECK(encode(spec, u) == oracle::matrix_encode(g, u));
	}
}

TEST_CASE("encode is linear and the transform is an involution")
{
	oracle::TestRng rng(11);
	for (int trial = 0; trial < 200; ++trial) {
		BitVector u(64), v(64), uv(64);
		for (int k = 0; k < 64; ++k) {
			u[k] = std::uint8_t(rng.bit());
			v[k] = std::uint8_t(rng.bit());
			uv[k] = u[k] ^ v[k];
		}
		BitVector xu = polar_transform(u), xv = polar_transform(v), xuv = polar_transform(uv);
		for (int k = 0; k < 64; ++k)
			CHECK(xuv[k] == (xu[k] ^ xv[k]));
		CHECK(polar_transform(xu) == u);
	}
}

TEST_CASE("info expansion and extraction round-trip")
{
	CodeSpec spec = build_code_spec(8, 4, {0, 1, 2, 4, 3, 5, 6, 7});
	BitVector info{1, 0, 1, 1};
	BitVector u = expand_info(spec, info);
	CHECK(u == BitVector{0, 0, 0, 1, 0, 0, 1, 1});
	CHECK(extract_info(spec, u) == info);
	CHECK_THROWS_AS(expand_info(spec, {1, 0}), std::invalid_argument);
}

TEST_CASE("code spec files round-trip and reject malformed input")
{
	CodeSpec spec = build_code_spec(8, 4, {0, 1, 2, 4, 3, 5, 6, 7});
	std::string path = "test_spec_roundtrip.json";
	save_code_spec(spec, path);
	CodeSpec back = load_code_spec(path);
	CHECK(back.code_length == 8);
	CHECK(back.info_length == 4);
	CHECK(back.frozen_set == spec.frozen_set);
	CHECK(back.info_set == spec.info_set);
	std::remove(path.c_str());

	std::ofstream bad("test_spec_bad.json");
	bad << "{\"n\": 8, \"k\": 4, \"frozen\": [0, 1, 2]}";
	bad.close();
	CHECK_THROWS_AS(load_code_spec("test_spec_bad.json"), std::runtime_error);
	std::remove("test_spec_bad.json");
	CHECK_THROWS_AS(load_code_spec("no_such_file.json"), std::runtime_error);
}

TEST_CASE("shipped reliability order builds the 5G codes")
{
	auto order = load_reliability_order(SRFSC_DATA_DIR "/nr_reliability_1024.txt");
	REQUIRE(order.size() == 1024);
	CodeSpec spec = build_code_spec(1024, 512, order);
	CHECK(spec.info_length == 512);
	CHECK(spec.frozen_set.size() == 512);
	CHECK(spec.frozen(0));  // u1 is never an information bit

	auto sub = reliability_subsequence(order, 128);
	CHECK(sub.size() == 128);
	CodeSpec small = build_code_spec(128, 64, sub);
	CHECK(small.info_length == 64);
}
