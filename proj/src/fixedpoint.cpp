#include "srfsc/fixedpoint.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace srfsc {

QuantSpec QuantSpec::fixed(int qi, int qc, int qf)
{
	if (qi < 2 || qi > 30 || qc < 2 || qc > qi || qf < 0 || qf >= qc)
		throw std::invalid_argument("invalid quant spec Q(" + std::to_string(qi) + ","
			+ std::to_string(qc) + "," + std::to_string(qf) + ")");
	QuantSpec q;
	q.mode = Mode::fixed;
	q.qi = qi;
	q.qc = qc;
	q.qf = qf;
	return q;
}

Llr QuantSpec::internal_max() const
{
	return is_fixed() ? double((1 << (qi - 1)) - 1) : 0.0;
}

Llr QuantSpec::channel_max() const
{
	return is_fixed() ? double((1 << (qc - 1)) - 1) : 0.0;
}

std::string QuantSpec::describe() const
{
	if (!is_fixed())
		return "float";
	return "Q(" + std::to_string(qi) + "," + std::to_string(qc) + "," + std::to_string(qf) + ")";
}

Llr quantize_channel(double llr, const QuantSpec& q)
{
	if (std::isnan(llr))
		throw std::invalid_argument("NaN channel LLR");
	if (!q.is_fixed())
		return llr;
	double units = llr * double(1 << q.qf);
	double rounded = std::trunc(std::abs(units) + 0.5);  // half away from zero
	if (units < 0)
		rounded = -rounded;
	double lim = q.channel_max();
	if (rounded > lim)
		return lim;
	if (rounded < -lim)
		return -lim;
	return rounded;
}

Llr sat_add(Llr a, Llr b, const QuantSpec& q)
{
	double s = a + b;
	if (!q.is_fixed())
		return s;
	double lim = q.internal_max();
	if (s > lim)
		return lim;
	if (s < -lim)
		return -lim;
	return s;
}

QuantSpec parse_quant(const std::string& text)
{
	if (text == "float")
		return QuantSpec::floating();
	int qi = 0, qc = 0, qf = 0;
	char extra = 0;
	if (std::sscanf(text.c_str(), "%d,%d,%d%c", &qi, &qc, &qf, &extra) != 3)
		throw std::invalid_argument("quant must be \"Qi,Qc,Qf\" or \"float\": " + text);
	return QuantSpec::fixed(qi, qc, qf);
}

}
