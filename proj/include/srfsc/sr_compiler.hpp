#pragma once
/* Compiles a frozen-bit pattern into the sequence-repetition instruction stream. */

#include "srfsc/cost_model.hpp"
#include "srfsc/polar_code.hpp"

namespace srfsc {

enum class NodeLabel { rate0, rate1, rep, spc, egpc, generic };

struct NodeClass {
	NodeLabel label = NodeLabel::generic;
	int h = -1;  // level of the leftmost Rate-0/REP descendant for egpc
};

// labels[level][index] for the full tree, level 0 = leaves
struct TreeClassification {
	int n = 0;
	std::vector<std::vector<NodeClass>> labels;
	const NodeClass& at(int level, int index) const { return labels[level][index]; }
};
TreeClassification classify_tree(const CodeSpec& spec);

struct SrNodeDescriptor {
	int level = 0;         // j: node covers [start, start + 2^j)
	int index = 0;         // 0-based within level
	int start = 0;         // = index << level
	int source_level = 0;  // r
	int source_index = 0;  // = start >> source_level
	std::vector<std::uint8_t> v;  // v[j] .. v[r+1], topmost first (0 Rate-0, 1 REP)
	int fro_num = 0;       // leading frozen bits of the source, 0..3
	int h = -1;            // leftmost Rate-0/REP level in the source when fro_num >= 2
	int w_v = 0;           // ones in v
	int seq_num = 0;       // = w_v; table holds 2^seq_num sequences
};

// maximal decodable nodes with SR structure, in depth-first (execution) order
std::vector<SrNodeDescriptor> identify_sr_nodes(const CodeSpec& spec, int p);

// all repetition sequences for chain v, each of length 2^|v|; index l assigns its
// bit t to the free eta of the t-th REP entry of v counted topmost first, so
// l = 0 is the all-zero sequence
std::vector<BitVector> repetition_sequences(const std::vector<std::uint8_t>& v);

enum class Opcode { rate0, rate1, sr };
const char* opcode_name(Opcode op);

struct Instruction {
	Opcode opcode = Opcode::rate0;
	int sr_stage = 0;
	int source_stage = 0;
	int fro_num = 0;
	int seq_num = 0;
	int node_type = 0;
	int start = 0;
	std::int64_t cycle_cost = 0;
};

struct DecodingProgram {
	int code_length = 0;
	int p = 0;
	std::vector<Instruction> instructions;
	// indexed by node_type; [0] is empty (all-zero sequence, synthesized per node)
	std::vector<std::vector<BitVector>> rep_seq_tables;
	std::int64_t total_cycles = 0;
};

DecodingProgram emit_program(const CodeSpec& spec, int p, const CostModel& cm = {});

// 13-bit word, MSB to LSB: sr_stage(3) source_stage(3) fro_num(2) seq_num(2) node_type(3).
// opcode and start are contextual (reconstructed from visit order), not packed.
std::uint16_t pack_instruction(const Instruction& ins);
Instruction unpack_instruction(std::uint16_t word);

// datapath mux selectors of the P = 64 profile
struct SelectorSet { int cmd1 = 0, cmd2 = 0, cmd3 = 0, cmd4 = 0; };
SelectorSet derive_selectors(const Instruction& ins, int p);

void save_program_json(const DecodingProgram& prog, const std::string& path);
DecodingProgram load_program_json(const std::string& path);
// packed instruction words as 16-bit little-endian, high 3 bits zero
void save_program_bin(const DecodingProgram& prog, const std::string& path);
std::vector<Instruction> load_program_bin(const std::string& path);

}
