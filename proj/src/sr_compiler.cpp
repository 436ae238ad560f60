#include "srfsc/sr_compiler.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <stdexcept>

#include <json.hpp>

namespace srfsc {

std::int64_t fg_cycles(int stage, int p)
{
	std::int64_t outputs = std::int64_t(1) << (stage - 1);
	return (outputs + p - 1) / p;
}

CostModel CostModel::from_json_file(const std::string& path)
{
	std::ifstream in(path);
	if (!in)
		throw std::runtime_error("cannot open cost model: " + path);
	nlohmann::json j;
	try {
		in >> j;
	} catch (const nlohmann::json::exception& e) {
		throw std::runtime_error("bad cost model JSON in " + path + ": " + e.what());
	}
	CostModel cm;
	cm.rate0 = j.value("rate0", cm.rate0);
	cm.rate1 = j.value("rate1", cm.rate1);
	cm.sr_step1 = j.value("sr_step1", cm.sr_step1);
	cm.sr_step2 = j.value("sr_step2", cm.sr_step2);
	cm.combine = j.value("combine", cm.combine);
	if (cm.rate0 < 0 || cm.rate1 < 0 || cm.sr_step1 < 0 || cm.sr_step2 < 0 || cm.combine < 0)
		throw std::runtime_error("cost model entries must be non-negative: " + path);
	return cm;
}

const char* opcode_name(Opcode op)
{
	switch (op) {
	case Opcode::rate0: return "RATE0";
	case Opcode::rate1: return "RATE1";
	case Opcode::sr: return "SR";
	}
	return "?";
}

namespace {

int log2_exact_pow2(int v, const char* what)
{
	if (v <= 0 || (v & (v - 1)) != 0)
		throw std::invalid_argument(std::string(what) + " must be a positive power of two");
	int n = 0;
	while ((1 << n) < v)
		++n;
	return n;
}

// frozen-count prefix sums for O(1) span pattern queries
struct FrozenView {
	const CodeSpec* spec;
	std::vector<int> prefix;

	explicit FrozenView(const CodeSpec& s) : spec(&s), prefix(s.code_length + 1, 0)
	{
		for (int i = 0; i < s.code_length; ++i)
			prefix[i + 1] = prefix[i] + (s.is_frozen[i] ? 1 : 0);
	}
	int frozen_in(int begin, int len) const { return prefix[begin + len] - prefix[begin]; }
	bool all_frozen(int begin, int len) const { return frozen_in(begin, len) == len; }
	bool none_frozen(int begin, int len) const { return frozen_in(begin, len) == 0; }
	// one info bit sitting at the last position
	bool rep(int begin, int len) const
	{
		return len >= 2 && frozen_in(begin, len) == len - 1 && !spec->frozen(begin + len - 1);
	}
	// b if the span is exactly "first b frozen, rest info" with b < len, else -1
	int leading_frozen_exact(int begin, int len) const
	{
		int b = frozen_in(begin, len);
		if (b == len || frozen_in(begin, b) != b)
			return -1;
		return b;
	}
};

// fro_num of a supported source pattern at (begin, level), or -1.
// fro_num 2 needs level >= 2 and fro_num 3 needs level >= 3; shorter spans with
// those patterns degenerate into Rate-0/REP and are reached through the v-chain.
int source_fro_num(const FrozenView& fv, int begin, int level)
{
	if (level < 1)
		return -1;
	int b = fv.leading_frozen_exact(begin, 1 << level);
	if (b < 0 || b > 3)
		return -1;
	if (b >= 2 && level < b)
		return -1;
	return b;
}

struct SrShape {
	bool ok = false;
	int source_level = 0;
	int fro_num = 0;
	std::vector<std::uint8_t> v;
	int w_v = 0;
};

// walk the right spine collecting v while left children are Rate-0/REP; stop at
// the first (largest) supported source
SrShape try_sr(const FrozenView& fv, int level, int start)
{
	SrShape shape;
	int cur = start;
	for (int t = level; t >= 1; --t) {
		int b = source_fro_num(fv, cur, t);
		if (b >= 0) {
			shape.ok = true;
			shape.source_level = t;
			shape.fro_num = b;
			return shape;
		}
		int half = 1 << (t - 1);
		if (fv.all_frozen(cur, half))
			shape.v.push_back(0);
		else if (fv.rep(cur, half))
			shape.v.push_back(1), ++shape.w_v;
		else
			return shape;
		cur += half;
	}
	return shape;
}

struct EmitState {
	const FrozenView& fv;
	int p;
	int cap;  // 1 + log2(p): shared ceiling for stages and stage+seq_num
	const CostModel& cm;
	DecodingProgram& prog;
	std::map<std::vector<BitVector>, int> table_ids;
	std::vector<SrNodeDescriptor>* descriptors;
	std::int64_t pending = 0;  // f/g/combine cycles since the last leaf

	void leaf(Opcode op, int level, int start, const SrShape* shape)
	{
		Instruction ins;
		ins.opcode = op;
		ins.sr_stage = level;
		ins.start = start;
		if (op == Opcode::sr) {
			ins.source_stage = shape->source_level;
			ins.fro_num = shape->fro_num;
			ins.seq_num = shape->w_v;
			if (shape->w_v > 0) {
				auto seqs = repetition_sequences(shape->v);
				auto [it, fresh] = table_ids.try_emplace(seqs, int(table_ids.size()) + 1);
				ins.node_type = it->second;
				if (fresh)
					prog.rep_seq_tables.push_back(std::move(seqs));
			}
			ins.cycle_cost = pending + cm.sr_leaf();
		} else {
			ins.source_stage = level;
			ins.cycle_cost = pending + (op == Opcode::rate0 ? cm.rate0 : cm.rate1);
		}
		pending = 0;
		if (descriptors && op == Opcode::sr) {
			SrNodeDescriptor d;
			d.level = level;
			d.index = start >> level;
			d.start = start;
			d.source_level = shape->source_level;
			d.source_index = start >> shape->source_level;
			d.v = shape->v;
			d.fro_num = shape->fro_num;
			d.h = shape->fro_num >= 2 ? shape->fro_num - 1 : (shape->fro_num == 1 ? 0 : -1);
			d.w_v = shape->w_v;
			d.seq_num = shape->w_v;
			descriptors->push_back(std::move(d));
		}
		prog.instructions.push_back(std::move(ins));
	}

	void node(int level, int start)
	{
		if (level <= cap) {
			if (fv.all_frozen(start, 1 << level))
				return leaf(Opcode::rate0, level, start, nullptr);
			if (fv.none_frozen(start, 1 << level))
				return leaf(Opcode::rate1, level, start, nullptr);
			SrShape shape = try_sr(fv, level, start);
			if (shape.ok && level + shape.w_v <= cap)
				return leaf(Opcode::sr, level, start, &shape);
		}
		// does not fit an instruction: descend with explicit f/g (and a combine after)
		pending += fg_cycles(level, p);
		node(level - 1, start);
		pending += fg_cycles(level, p);
		node(level - 1, start + (1 << (level - 1)));
		pending += cm.combine;
	}
};

DecodingProgram compile(const CodeSpec& spec, int p, const CostModel& cm,
                        std::vector<SrNodeDescriptor>* descriptors)
{
	int log2p = log2_exact_pow2(p, "P");
	FrozenView fv(spec);
	DecodingProgram prog;
	prog.code_length = spec.code_length;
	prog.p = p;
	prog.rep_seq_tables.push_back({});  // node_type 0: implicit all-zero sequence
	EmitState st{fv, p, 1 + log2p, cm, prog, {}, descriptors, 0};
	st.node(spec.n, 0);
	if (st.pending)  // combines trailing the final leaf
		prog.instructions.back().cycle_cost += st.pending;
	for (const auto& ins : prog.instructions)
		prog.total_cycles += ins.cycle_cost;
	return prog;
}

}

TreeClassification classify_tree(const CodeSpec& spec)
{
	FrozenView fv(spec);
	TreeClassification tc;
	tc.n = spec.n;
	tc.labels.resize(spec.n + 1);
	for (int level = 0; level <= spec.n; ++level) {
		tc.labels[level].resize(size_t(spec.code_length) >> level);
		for (int i = 0; i < int(tc.labels[level].size()); ++i) {
			int begin = i << level, len = 1 << level;
			NodeClass& c = tc.labels[level][i];
			if (fv.all_frozen(begin, len))
				c.label = NodeLabel::rate0;
			else if (fv.none_frozen(begin, len))
				c.label = NodeLabel::rate1;
			else if (fv.rep(begin, len))
				c.label = NodeLabel::rep;
			else if (fv.frozen_in(begin, len) == 1 && spec.frozen(begin))
				c.label = NodeLabel::spc;
			else {
				int b = fv.leading_frozen_exact(begin, len);
				// leftmost descendant at level h is Rate-0 (b = 2^h) or REP (b = 2^h - 1)
				for (int h = 1; h < level && c.label == NodeLabel::generic; ++h)
					if (b == (1 << h) || b == (1 << h) - 1) {
						c.label = NodeLabel::egpc;
						c.h = h;
					}
			}
		}
	}
	return tc;
}

std::vector<SrNodeDescriptor> identify_sr_nodes(const CodeSpec& spec, int p)
{
	std::vector<SrNodeDescriptor> out;
	compile(spec, p, CostModel{}, &out);
	return out;
}

std::vector<BitVector> repetition_sequences(const std::vector<std::uint8_t>& v)
{
	if (v.size() > 24)
		throw std::invalid_argument("v chain too long");
	// s = (eta_r, 0) (+) ... (+) (eta_{j-1}, 0), leftmost factor slowest varying;
	// v is stored topmost (j) first, so build from the back
	int w = 0;
	for (auto b : v)
		w += b ? 1 : 0;
	std::vector<BitVector> seqs;
	seqs.reserve(size_t(1) << w);
	for (std::uint32_t l = 0; l < (1u << w); ++l) {
		// processing v top-down lets each factor prepend on the left, which lands
		// (eta_r, 0) leftmost (slowest varying) as the Kronecker order requires
		BitVector s{0};
		int free_done = 0;
		for (auto bit : v) {
			int eta = bit ? int((l >> free_done) & 1) : 0;
			free_done += bit ? 1 : 0;
			BitVector next(s.size() * 2);
			for (size_t m = 0; m < s.size(); ++m) {
				next[m] = std::uint8_t((eta ^ s[m]) & 1);
				next[s.size() + m] = s[m];
			}
			s = std::move(next);
		}
		seqs.push_back(std::move(s));
	}
	return seqs;
}

DecodingProgram emit_program(const CodeSpec& spec, int p, const CostModel& cm)
{
	return compile(spec, p, cm, nullptr);
}

static void check_field(int value, int bits, const char* name)
{
	if (value < 0 || value >= (1 << bits))
		throw std::out_of_range(std::string(name) + " does not fit its field: "
			+ std::to_string(value));
}

std::uint16_t pack_instruction(const Instruction& ins)
{
	check_field(ins.sr_stage, 3, "sr_stage");
	check_field(ins.source_stage, 3, "source_stage");
	check_field(ins.fro_num, 2, "fro_num");
	check_field(ins.seq_num, 2, "seq_num");
	check_field(ins.node_type, 3, "node_type");
	return std::uint16_t(ins.sr_stage << 10 | ins.source_stage << 7
		| ins.fro_num << 5 | ins.seq_num << 3 | ins.node_type);
}

Instruction unpack_instruction(std::uint16_t word)
{
	if (word >> 13)
		throw std::out_of_range("instruction word uses more than 13 bits");
	Instruction ins;
	ins.sr_stage = word >> 10 & 7;
	ins.source_stage = word >> 7 & 7;
	ins.fro_num = word >> 5 & 3;
	ins.seq_num = word >> 3 & 3;
	ins.node_type = word & 7;
	ins.opcode = Opcode::sr;  // opcode and start are contextual, not packed
	return ins;
}

SelectorSet derive_selectors(const Instruction& ins, int p)
{
	int log2p = log2_exact_pow2(p, "P");
	SelectorSet s;
	s.cmd1 = 1 + log2p - (ins.sr_stage - ins.source_stage);
	s.cmd2 = 4 - ins.source_stage;
	s.cmd3 = 2 - ins.seq_num;
	s.cmd4 = ins.fro_num == 0 ? 1 + log2p : log2p - ins.source_stage + ins.fro_num;
	return s;
}

namespace {

nlohmann::json instruction_to_json(const Instruction& ins)
{
	return nlohmann::json{
		{"opcode", opcode_name(ins.opcode)},
		{"sr_stage", ins.sr_stage},
		{"source_stage", ins.source_stage},
		{"fro_num", ins.fro_num},
		{"seq_num", ins.seq_num},
		{"node_type", ins.node_type},
		{"start", ins.start},
		{"cycle_cost", ins.cycle_cost},
	};
}

Opcode opcode_from_name(const std::string& name)
{
	if (name == "RATE0")
		return Opcode::rate0;
	if (name == "RATE1")
		return Opcode::rate1;
	if (name == "SR")
		return Opcode::sr;
	throw std::runtime_error("unknown opcode: " + name);
}

}

void save_program_json(const DecodingProgram& prog, const std::string& path)
{
	nlohmann::json j;
	j["p"] = prog.p;
	j["total_cycles"] = prog.total_cycles;
	auto& arr = j["instructions"] = nlohmann::json::array();
	for (const auto& ins : prog.instructions)
		arr.push_back(instruction_to_json(ins));
	auto& tables = j["rep_seqs"] = nlohmann::json::object();
	for (size_t t = 1; t < prog.rep_seq_tables.size(); ++t) {
		nlohmann::json seqs = nlohmann::json::array();
		for (const auto& s : prog.rep_seq_tables[t])
			seqs.push_back(std::vector<int>(s.begin(), s.end()));
		tables[std::to_string(t)] = std::move(seqs);
	}
	std::ofstream out(path);
	if (!out)
		throw std::runtime_error("cannot write program: " + path);
	out << j.dump(2) << '\n';
}

DecodingProgram load_program_json(const std::string& path)
{
	std::ifstream in(path);
	if (!in)
		throw std::runtime_error("cannot open program: " + path);
	nlohmann::json j;
	try {
		in >> j;
	} catch (const nlohmann::json::exception& e) {
		throw std::runtime_error("bad program JSON in " + path + ": " + e.what());
	}

	DecodingProgram prog;
	try {
		prog.p = j.at("p").get<int>();
		prog.total_cycles = j.at("total_cycles").get<std::int64_t>();
		for (const auto& ij : j.at("instructions")) {
			Instruction ins;
			ins.opcode = opcode_from_name(ij.at("opcode").get<std::string>());
			ins.sr_stage = ij.at("sr_stage").get<int>();
			ins.source_stage = ij.at("source_stage").get<int>();
			ins.fro_num = ij.at("fro_num").get<int>();
			ins.seq_num = ij.at("seq_num").get<int>();
			ins.node_type = ij.at("node_type").get<int>();
			ins.start = ij.at("start").get<int>();
			ins.cycle_cost = ij.at("cycle_cost").get<std::int64_t>();
			prog.instructions.push_back(ins);
		}
		prog.rep_seq_tables.push_back({});
		if (j.contains("rep_seqs")) {
			std::map<int, std::vector<BitVector>> ordered;
			for (const auto& [key, seqs] : j.at("rep_seqs").items()) {
				std::vector<BitVector> table;
				for (const auto& s : seqs) {
					auto bits = s.get<std::vector<int>>();
					table.emplace_back(bits.begin(), bits.end());
				}
				ordered[std::stoi(key)] = std::move(table);
			}
			for (auto& [id, table] : ordered) {
				if (id != int(prog.rep_seq_tables.size()))
					throw std::runtime_error("rep_seqs ids must be 1..T contiguous");
				prog.rep_seq_tables.push_back(std::move(table));
			}
		}
	} catch (const nlohmann::json::exception& e) {
		throw std::runtime_error("bad program JSON in " + path + ": " + e.what());
	}

	// structural validation
	int log2p = log2_exact_pow2(prog.p, "P");
	int pos = 0;
	for (const auto& ins : prog.instructions) {
		if (ins.start != pos)
			throw std::runtime_error("instructions do not tile the block: " + path);
		if (ins.sr_stage < 0 || ins.sr_stage > 1 + log2p
		    || ins.source_stage < 0 || ins.source_stage > ins.sr_stage
		    || ins.fro_num < 0 || ins.fro_num > 3
		    || ins.seq_num < 0 || ins.seq_num > 3
		    || ins.sr_stage + ins.seq_num > 1 + log2p)
			throw std::runtime_error("instruction field out of range: " + path);
		if ((ins.seq_num == 0) != (ins.node_type == 0))
			throw std::runtime_error("node_type 0 must pair with seq_num 0: " + path);
		if (ins.node_type) {
			if (ins.node_type >= int(prog.rep_seq_tables.size()))
				throw std::runtime_error("node_type without a sequence table: " + path);
			const auto& table = prog.rep_seq_tables[ins.node_type];
			if (int(table.size()) != 1 << ins.seq_num)
				throw std::runtime_error("sequence table size must be 2^seq_num: " + path);
			for (const auto& s : table)
				if (int(s.size()) != 1 << (ins.sr_stage - ins.source_stage))
					throw std::runtime_error("sequence length must be 2^(j-r): " + path);
		}
		pos += 1 << ins.sr_stage;
	}
	if (pos == 0 || (pos & (pos - 1)) != 0)
		throw std::runtime_error("instructions must cover a power-of-two block: " + path);
	prog.code_length = pos;
	return prog;
}

void save_program_bin(const DecodingProgram& prog, const std::string& path)
{
	std::ofstream out(path, std::ios::binary);
	if (!out)
		throw std::runtime_error("cannot write program: " + path);
	for (const auto& ins : prog.instructions) {
		std::uint16_t w = pack_instruction(ins);
		char bytes[2] = {char(w & 0xff), char(w >> 8)};
		out.write(bytes, 2);
	}
}

std::vector<Instruction> load_program_bin(const std::string& path)
{
	std::ifstream in(path, std::ios::binary);
	if (!in)
		throw std::runtime_error("cannot open program: " + path);
	std::vector<Instruction> out;
	char bytes[2];
	while (in.read(bytes, 2))
		out.push_back(unpack_instruction(
			std::uint16_t(std::uint8_t(bytes[0]) | std::uint8_t(bytes[1]) << 8)));
	if (in.gcount() != 0)
		throw std::runtime_error("truncated program word: " + path);
	return out;
}

}
