#pragma once
/* Cycle-cost constants for the instruction-stream cost model. */

#include <cstdint>
#include <string>

namespace srfsc {

struct CostModel {
	std::int64_t rate0 = 1;
	std::int64_t rate1 = 1;
	std::int64_t sr_step1 = 1;
	std::int64_t sr_step2 = 2;
	std::int64_t combine = 0;

	std::int64_t sr_leaf() const { return sr_step1 + sr_step2; }
	static CostModel from_json_file(const std::string& path);
};

// one f or g producing 2^(stage-1) outputs on P lanes: ceil(2^(stage-1) / P)
std::int64_t fg_cycles(int stage, int p);

}
