#pragma once
/* Saturating fixed-point LLR arithmetic: Q(Qi, Qc, Qf) profile or exact floats. */

#include <string>

namespace srfsc {

using Llr = double;

// Fixed mode stores LLRs as signed multiples of 2^-Qf: Qi-bit internal values,
// Qc-bit channel values, both with symmetric saturation ranges. Float mode is
// exact real arithmetic behind the same interface.
struct QuantSpec {
	enum class Mode { fixed, floating };
	Mode mode = Mode::floating;
	int qi = 0, qc = 0, qf = 0;

	static QuantSpec fixed(int qi, int qc, int qf);
	static QuantSpec floating() { return QuantSpec{}; }

	bool is_fixed() const { return mode == Mode::fixed; }
	Llr internal_max() const;  // +(2^(Qi-1) - 1), in storage units
	Llr channel_max() const;   // +(2^(Qc-1) - 1), in storage units
	std::string describe() const;
};

// Scale to storage units, round half away from zero, saturate to the channel range.
Llr quantize_channel(double llr, const QuantSpec& q);

// a + b with symmetric saturation to the internal range; plain + in float mode.
Llr sat_add(Llr a, Llr b, const QuantSpec& q);

// "Qi,Qc,Qf" (e.g. "6,4,0") or "float"
QuantSpec parse_quant(const std::string& text);

}
