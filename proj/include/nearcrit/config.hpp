#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace nearcrit {

/// Flat `key = value` configuration. Blank lines and lines starting with '#'
/// are ignored; keys are normalized so `n_list` and `n-list` are the same key.
/// Throws std::invalid_argument on malformed lines or duplicate keys.
std::map<std::string, std::string> parse_config_text(const std::string& text);
std::map<std::string, std::string> load_config_file(const std::string& path);

std::string normalize_key(std::string key);

std::vector<double> parse_real_list(const std::string& text);
std::vector<int> parse_int_list(const std::string& text);
double parse_real(const std::string& text, const std::string& what);
long long parse_int(const std::string& text, const std::string& what);
std::uint64_t parse_seed(const std::string& text);

}  // namespace nearcrit
