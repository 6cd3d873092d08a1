#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "modcert/arith/int_poly.hpp"

namespace modcert {

using json = nlohmann::json;

/// Integers with more than 18 decimal digits are written as strings.
json bigint_to_json(const arith::BigInt& v);
/// Accepts a JSON integer or a decimal string.
arith::BigInt bigint_from_json(const json& j);

json poly_to_json(const arith::IntPolynomial& f);
arith::IntPolynomial poly_from_json(const json& j);

json read_json_file(const std::filesystem::path& path);
std::string read_text_file(const std::filesystem::path& path);
/// Writes text atomically enough for our purposes: temp file then rename.
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace modcert
