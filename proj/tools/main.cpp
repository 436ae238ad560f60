/* Command-line front end: compile programs, decode frames, run channel sweeps. */

#include "srfsc/channel_sim.hpp"
#include "srfsc/version.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

namespace {

using namespace srfsc;

std::vector<double> parse_points(const std::string& text)
{
	// "a:step:b" sweep or a comma-separated list
	std::vector<double> points;
	double a = 0, s = 0, b = 0;
	char extra = 0;
	if (std::sscanf(text.c_str(), "%lf:%lf:%lf%c", &a, &s, &b, &extra) == 3) {
		if (s <= 0)
			throw std::invalid_argument("sweep step must be positive");
		for (double v = a; v <= b + 1e-9; v += s)
			points.push_back(v);
		return points;
	}
	std::stringstream ss(text);
	std::string item;
	while (std::getline(ss, item, ','))
		points.push_back(std::stod(item));
	if (points.empty())
		throw std::invalid_argument("no Eb/N0 points given");
	return points;
}

LlrVector load_llr_file(const std::string& path)
{
	std::ifstream in(path);
	if (!in)
		throw std::runtime_error("cannot open LLR file: " + path);
	LlrVector llrs;
	double v;
	while (in >> v)
		llrs.push_back(v);
	if (!in.eof())
		throw std::runtime_error("non-numeric LLR entry in " + path);
	return llrs;
}

void write_text(const std::string& path, const std::string& text)
{
	if (path.empty() || path == "-") {
		std::cout << text;
		return;
	}
	std::ofstream out(path);
	if (!out)
		throw std::runtime_error("cannot write " + path);
	out << text;
}

int run(int argc, char** argv)
{
	CLI::App app{"sequence-repetition fast-SSC polar codec"};
	app.require_subcommand(1);
	app.set_version_flag("--version", std::string("srfsc ") + library_version
		+ " (reliability asset " + reliability_asset_version + ")");

	std::string code_path, rel_path, out_path, bin_path, program_path, llr_path;
	std::string quant_text = "float", cost_path, decoder_text = "srfsc", ebn0_text;
	std::string format = "csv";
	int n = 1024, k = 512, p = 64, workers = 1;
	std::int64_t max_frames = 100000, max_errors = 100;
	std::uint64_t seed = 1;
	double gain = 1.0, fmax_mhz = 0.0;
	bool all_zero = false, trace = false;

	auto* makecode = app.add_subcommand("makecode", "build a code-spec file from a reliability order");
	makecode->add_option("--n", n, "code length (power of two)")->required();
	makecode->add_option("--k", k, "information length")->required();
	makecode->add_option("--reliability", rel_path, "reliability file, least reliable first")
		->required()->check(CLI::ExistingFile);
	makecode->add_option("--out", out_path, "output code-spec JSON")->required();

	auto* compile = app.add_subcommand("compile", "compile a code spec into a decoding program");
	compile->add_option("--code", code_path, "code-spec JSON")->required()->check(CLI::ExistingFile);
	compile->add_option("--p", p, "parallelism (power of two)")->capture_default_str();
	compile->add_option("--cost-model", cost_path, "cycle-cost JSON overrides")->check(CLI::ExistingFile);
	compile->add_option("--out", out_path, "output program JSON")->required();
	compile->add_option("--bin", bin_path, "also write packed 13-bit words (16-bit LE)");

	auto* decode = app.add_subcommand("decode", "decode one frame of channel LLRs");
	decode->add_option("--program", program_path, "program JSON")->required()->check(CLI::ExistingFile);
	decode->add_option("--llrs", llr_path, "channel LLRs, one per line")->required()->check(CLI::ExistingFile);
	decode->add_option("--quant", quant_text, "\"Qi,Qc,Qf\" or \"float\"")->capture_default_str();
	decode->add_option("--cost-model", cost_path, "cycle-cost JSON overrides")->check(CLI::ExistingFile);
	decode->add_flag("--trace", trace, "include per-node decisions");
	decode->add_option("--out", out_path, "output JSON (default stdout)");

	auto* simulate = app.add_subcommand("simulate", "run a BPSK/AWGN error-rate sweep");
	simulate->add_option("--code", code_path, "code-spec JSON")->required()->check(CLI::ExistingFile);
	simulate->add_option("--decoder", decoder_text, "srfsc or sc")->capture_default_str();
	simulate->add_option("--quant", quant_text, "\"Qi,Qc,Qf\" or \"float\"")->capture_default_str();
	simulate->add_option("--ebn0", ebn0_text, "points: \"a:step:b\" or \"x,y,z\" (dB)")->required();
	simulate->add_option("--p", p, "parallelism for the srfsc decoder")->capture_default_str();
	simulate->add_option("--max-frames", max_frames, "frame budget per point")->capture_default_str();
	simulate->add_option("--max-errors", max_errors, "stop a point after this many frame errors")
		->capture_default_str();
	simulate->add_option("--seed", seed, "master seed")->capture_default_str();
	simulate->add_option("--workers", workers, "worker threads")->capture_default_str();
	simulate->add_option("--gain", gain, "LLR scaling before quantization")->capture_default_str();
	simulate->add_flag("--all-zero", all_zero, "send the all-zero codeword");
	simulate->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
	simulate->add_option("--out", out_path, "output file (default stdout)");

	auto* report = app.add_subcommand("report", "print a program listing with cycle counts");
	report->add_option("--program", program_path, "program JSON")->required()->check(CLI::ExistingFile);
	report->add_option("--fmax-mhz", fmax_mhz, "clock rate for the throughput estimate");
	report->add_option("--cost-model", cost_path, "cycle-cost JSON overrides")->check(CLI::ExistingFile);

	try {
		app.parse(argc, argv);
	} catch (const CLI::ParseError& e) {
		int code = app.exit(e);
		return code == 0 ? 0 : 1;
	}

	CostModel cm;
	if (!cost_path.empty())
		cm = CostModel::from_json_file(cost_path);

	if (makecode->parsed()) {
		auto order = load_reliability_order(rel_path);
		save_code_spec(build_code_spec(n, k, reliability_subsequence(order, n)), out_path);
	} else if (compile->parsed()) {
		CodeSpec spec = load_code_spec(code_path);
		DecodingProgram prog = emit_program(spec, p, cm);
		save_program_json(prog, out_path);
		if (!bin_path.empty())
			save_program_bin(prog, bin_path);
	} else if (decode->parsed()) {
		DecodingProgram prog = load_program_json(program_path);
		QuantSpec q = parse_quant(quant_text);
		LlrVector llrs = load_llr_file(llr_path);
		for (auto& v : llrs)
			v = quantize_channel(v, q);
		DecodeOutput res = srfsc_decode(prog, llrs, q, true, cm);
		nlohmann::json j;
		j["u_hat"] = std::vector<int>(res.u_hat.begin(), res.u_hat.end());
		j["x_hat"] = std::vector<int>(res.x_hat.begin(), res.x_hat.end());
		j["cycles"] = res.cycles;
		auto& sel = j["selected_sequences"] = nlohmann::json::array();
		if (trace)
			for (const auto& t : res.trace)
				sel.push_back({{"instruction", t.instruction}, {"start", t.start},
				               {"selected_seq", t.selected_seq}, {"flipped", t.flipped}});
		else
			for (const auto& t : res.trace)
				sel.push_back(t.selected_seq);
		write_text(out_path, j.dump(2) + "\n");
	} else if (simulate->parsed()) {
		CodeSpec spec = load_code_spec(code_path);
		SimConfig cfg;
		if (decoder_text == "srfsc")
			cfg.decoder = DecoderKind::srfsc;
		else if (decoder_text == "sc")
			cfg.decoder = DecoderKind::sc;
		else
			throw std::invalid_argument("decoder must be srfsc or sc");
		cfg.quant = parse_quant(quant_text);
		cfg.ebn0_db = parse_points(ebn0_text);
		cfg.max_frames = max_frames;
		cfg.max_frame_errors = max_errors;
		cfg.seed = seed;
		cfg.workers = workers;
		cfg.p = p;
		cfg.gain = gain;
		cfg.all_zero = all_zero;
		cfg.cost_model = cm;
		SimResult result = run_trials(spec, cfg);
		write_text(out_path, format == "csv" ? to_csv(result) : to_json(result));
	} else if (report->parsed()) {
		DecodingProgram prog = load_program_json(program_path);
		std::int64_t cycles = count_cycles(prog, cm);
		std::vector<std::int64_t> costs = instruction_cycles(prog, cm);
		std::printf("# %3s %-5s %6s %3s %3s %4s %4s %5s %7s %17s\n", "ix", "op", "start",
		            "j", "r", "fro", "seq", "type", "cycles", "cmd1/2/3/4");
		for (size_t i = 0; i < prog.instructions.size(); ++i) {
			const Instruction& ins = prog.instructions[i];
			SelectorSet s = derive_selectors(ins, prog.p);
			std::printf("%5zu %-5s %6d %3d %3d %4d %4d %5d %7lld %5d %3d %3d %3d\n",
			            i, opcode_name(ins.opcode), ins.start, ins.sr_stage,
			            ins.source_stage, ins.fro_num, ins.seq_num, ins.node_type,
			            (long long)costs[i], s.cmd1, s.cmd2, s.cmd3, s.cmd4);
		}
		std::printf("instructions: %zu\n", prog.instructions.size());
		std::printf("cycles: %lld\n", (long long)cycles);
		if (fmax_mhz > 0.0) {
			ThroughputReport tr = throughput_report(cycles, prog.code_length, fmax_mhz * 1e6);
			std::printf("throughput at %.6g MHz: %.6g Mbps\n", fmax_mhz,
			            tr.bits_per_second / 1e6);
		}
	}
	return 0;
}

}

int main(int argc, char** argv)
{
	try {
		return run(argc, argv);
	} catch (const std::exception& e) {
		std::cerr << "error: " << e.what() << '\n';
		return 2;
	}
}
