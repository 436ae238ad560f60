/* Saturating quantization arithmetic. */

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "srfsc/fixedpoint.hpp"
#include "oracles.hpp"

using namespace srfsc;

TEST_CASE("profile construction and ranges")
{
	QuantSpec q = QuantSpec::fixed(6, 4, 0);
	CHECK(q.is_fixed());
	CHECK(q.internal_max() == 31.0);
	CHECK(q.channel_max() == 7.0);
	CHECK(!QuantSpec::floating().is_fixed());

	CHECK_THROWS_AS(QuantSpec::fixed(4, 6, 0), std::invalid_argument);  // Qc > Qi
	CHECK_THROWS_AS(QuantSpec::fixed(6, 4, 4), std::invalid_argument);  // Qf >= Qc
	CHECK_THROWS_AS(QuantSpec::fixed(1, 1, 0), std::invalid_argument);
}

TEST_CASE("channel quantization rounds half away from zero and saturates")
{
	QuantSpec q = QuantSpec::fixed(6, 4, 0);
	CHECK(quantize_channel(9.3, q) == 7.0);
	CHECK(quantize_channel(-0.4, q) == 0.0);
	CHECK(quantize_channel(-7.5, q) == -7.0);
	CHECK(quantize_channel(0.5, q) == 1.0);
	CHECK(quantize_channel(-0.5, q) == -1.0);
	CHECK(quantize_channel(6.49, q) == 6.0);
	CHECK_THROWS_AS(quantize_channel(std::nan(""), q), std::invalid_argument);

	// one fraction bit doubles the stored scale
	QuantSpec q1 = QuantSpec::fixed(6, 4, 1);
	CHECK(quantize_channel(1.25, q1) == 3.0);  // 2.5 rounds away to 3 units
	CHECK(quantize_channel(100.0, q1) == 7.0);

	QuantSpec f = QuantSpec::floating();
	CHECK(quantize_channel(9.3, f) == 9.3);
	CHECK(quantize_channel(-1e9, f) == -1e9);
}

TEST_CASE("saturating addition")
{
	QuantSpec q = QuantSpec::fixed(6, 4, 0);
	CHECK(sat_add(20, 15, q) == 31.0);
	CHECK(sat_add(-20, 5, q) == -15.0);
	CHECK(sat_add(-31, -31, q) == -31.0);
	CHECK(sat_add(31, -31, q) == 0.0);
	CHECK(sat_add(1e9, 1e9, QuantSpec::floating()) == 2e9);

	// commutativity, identity, range containment
	oracle::TestRng rng(3);
	for (int t = 0; t < 2000; ++t) {
		double a = rng.fixed_llr(6), b = rng.fixed_llr(6);
		CHECK(sat_add(a, b, q) == sat_add(b, a, q));
		CHECK(sat_add(a, 0, q) == a);
		CHECK(std::fabs(sat_add(a, b, q)) <= 31.0);
	}
}

TEST_CASE("quantize_channel is monotone")
{
	QuantSpec q = QuantSpec::fixed(6, 4, 0);
	double prev = quantize_channel(-12.0, q);
	for (double x = -12.0; x <= 12.0; x += 0.0625) {
		double cur = quantize_channel(x, q);
		CHECK(cur >= prev);
		prev = cur;
	}
}

TEST_CASE("profile parsing")
{
	QuantSpec q = parse_quant("6,4,0");
	CHECK(q.is_fixed());
	CHECK(q.qi == 6);
	CHECK(q.qc == 4);
	CHECK(q.qf == 0);
	CHECK(!parse_quant("float").is_fixed());
	CHECK_THROWS_AS(parse_quant("6,4"), std::invalid_argument);
	CHECK_THROWS_AS(parse_quant("6,4,0,1"), std::invalid_argument);
	CHECK_THROWS_AS(parse_quant("fancy"), std::invalid_argument);
	CHECK(parse_quant("6,4,2").describe() == "Q(6,4,2)");
	CHECK(parse_quant("float").describe() == "float");
}
