#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace adlex {

// Writes content to path atomically (temp file + rename).
void atomic_write_file(const std::string& path, std::string_view content);

std::string read_file(const std::string& path);

// Shortest decimal form that round-trips a double exactly.
std::string format_double(double v);

// Fixed significant-digit form, e.g. for lexicon weights (>= 10 significant digits).
std::string format_double_sig(double v, int digits);

// Fixed decimal places, e.g. "0.67" for DOT edge labels.
std::string format_fixed(double v, int places);

// 64-bit FNV-1a over a list of strings, separator-framed; used as vocab_hash.
std::uint64_t fnv1a_hash(const std::vector<std::string>& items);

std::string to_hex(std::uint64_t v);

}  // namespace adlex
