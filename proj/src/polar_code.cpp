#include "srfsc/polar_code.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace srfsc {

static bool is_pow2(int v)
{
	return v > 0 && (v & (v - 1)) == 0;
}

static int log2_exact(int v)
{
	int n = 0;
	while ((1 << n) < v)
		++n;
	return n;
}

CodeSpec build_code_spec(int code_length, int info_length, const std::vector<int>& order)
{
	if (!is_pow2(code_length))
		throw std::invalid_argument("code length must be a power of two");
	if (info_length < 0 || info_length > code_length)
		throw std::invalid_argument("info length out of range");
	if (int(order.size()) != code_length)
		throw std::invalid_argument("reliability order has wrong length");
	std::vector<char> seen(code_length, 0);
	for (int k : order) {
		if (k < 0 || k >= code_length || seen[k])
			throw std::invalid_argument("reliability order is not a permutation");
		seen[k] = 1;
	}

	CodeSpec spec;
	spec.code_length = code_length;
	spec.n = log2_exact(code_length);
	spec.info_length = info_length;
	spec.is_frozen.assign(code_length, 0);
	for (int i = 0; i < code_length - info_length; ++i)
		spec.is_frozen[order[i]] = 1;
	for (int k = 0; k < code_length; ++k)
		(spec.is_frozen[k] ? spec.frozen_set : spec.info_set).push_back(k);
	return spec;
}

std::vector<int> bit_reversal_permutation(int code_length)
{
	if (!is_pow2(code_length))
		throw std::invalid_argument("length must be a power of two");
	int n = log2_exact(code_length);
	std::vector<int> perm(code_length);
	for (int k = 0; k < code_length; ++k) {
		int r = 0;
		for (int b = 0; b < n; ++b)
			r |= ((k >> b) & 1) << (n - 1 - b);
		perm[k] = r;
	}
	return perm;
}

BitVector polar_transform(const BitVector& u)
{
	if (!is_pow2(int(u.size())))
		throw std::invalid_argument("length must be a power of two");
	int n = int(u.size());
	BitVector t = u;
	for (int half = 1; half < n; half <<= 1)
		for (int base = 0; base < n; base += half << 1)
			for (int k = base; k < base + half; ++k)
				t[k] ^= t[k + half];
	const auto perm = bit_reversal_permutation(n);
	BitVector x(n);
	for (int k = 0; k < n; ++k)
		x[k] = t[perm[k]];
	return x;
}

BitVector encode(const CodeSpec& spec, const BitVector& u)
{
	if (int(u.size()) != spec.code_length)
		throw std::invalid_argument("message length mismatch");
	for (int k : spec.frozen_set)
		if (u[k])
			throw std::invalid_argument("nonzero bit at frozen position " + std::to_string(k));
	return polar_transform(u);
}

BitVector expand_info(const CodeSpec& spec, const BitVector& info_bits)
{
	if (int(info_bits.size()) != spec.info_length)
		throw std::invalid_argument("info length mismatch");
	BitVector u(spec.code_length, 0);
	for (size_t i = 0; i < info_bits.size(); ++i)
		u[spec.info_set[i]] = info_bits[i] & 1;
	return u;
}

BitVector extract_info(const CodeSpec& spec, const BitVector& u)
{
	if (int(u.size()) != spec.code_length)
		throw std::invalid_argument("message length mismatch");
	BitVector info(spec.info_length);
	for (size_t i = 0; i < info.size(); ++i)
		info[i] = u[spec.info_set[i]];
	return info;
}

std::vector<BitVector> generator_matrix(int code_length)
{
	if (!is_pow2(code_length) || code_length > 4096)
		throw std::invalid_argument("generator matrix limited to small powers of two");
	std::vector<BitVector> g(code_length);
	for (int row = 0; row < code_length; ++row) {
		BitVector u(code_length, 0);
		u[row] = 1;
		g[row] = polar_transform(u);
	}
	return g;
}

CodeSpec load_code_spec(const std::string& path)
{
	std::ifstream in(path);
	if (!in)
		throw std::runtime_error("cannot open code spec: " + path);
	nlohmann::json j;
	try {
		in >> j;
	} catch (const nlohmann::json::exception& e) {
		throw std::runtime_error("bad code spec JSON in " + path + ": " + e.what());
	}
	if (!j.is_object() || !j.contains("n") || !j.contains("k") || !j.contains("frozen"))
		throw std::runtime_error("code spec needs fields n, k, frozen: " + path);
	int n = j.at("n").get<int>();
	int k = j.at("k").get<int>();
	auto frozen = j.at("frozen").get<std::vector<int>>();
	if (!is_pow2(n))
		throw std::runtime_error("code length must be a power of two: " + path);
	if (int(frozen.size()) != n - k)
		throw std::runtime_error("frozen set size must be n - k: " + path);
	if (!std::is_sorted(frozen.begin(), frozen.end()))
		throw std::runtime_error("frozen set must be sorted ascending: " + path);
	std::vector<int> order = frozen;  // frozen first, rest in index order
	std::vector<char> in_frozen(n, 0);
	for (int f : frozen) {
		if (f < 0 || f >= n || in_frozen[f])
			throw std::runtime_error("frozen index out of range or repeated: " + path);
		in_frozen[f] = 1;
	}
	for (int i = 0; i < n; ++i)
		if (!in_frozen[i])
			order.push_back(i);
	return build_code_spec(n, k, order);
}

void save_code_spec(const CodeSpec& spec, const std::string& path)
{
	nlohmann::json j;
	j["n"] = spec.code_length;
	j["k"] = spec.info_length;
	j["frozen"] = spec.frozen_set;
	std::ofstream out(path);
	if (!out)
		throw std::runtime_error("cannot write code spec: " + path);
	out << j.dump(2) << '\n';
}

std::vector<int> load_reliability_order(const std::string& path)
{
	std::ifstream in(path);
	if (!in)
		throw std::runtime_error("cannot open reliability file: " + path);
	std::vector<int> order;
	std::string line;
	while (std::getline(in, line)) {
		std::istringstream ls(line);
		int v;
		if (ls >> v)
			order.push_back(v);
		std::string rest;
		if (ls >> rest)
			throw std::runtime_error("reliability file must hold one index per line: " + path);
	}
	if (order.empty())
		throw std::runtime_error("empty reliability file: " + path);
	return order;
}

std::vector<int> reliability_subsequence(const std::vector<int>& order, int code_length)
{
	std::vector<int> sub;
	for (int k : order)
		if (k < code_length)
			sub.push_back(k);
	if (int(sub.size()) != code_length)
		throw std::invalid_argument("reliability order does not cover the code length");
	return sub;
}

}
