#pragma once

#include <filesystem>

#include "modcert/counting/fibration.hpp"
#include "modcert/json_util.hpp"

namespace modcert::counting {

/// Parses a fibration fixture.
///
/// Either a single fibration at top level (`a_coeffs`, `b_coeffs`, optional
/// `a2_coeffs`, `model_at_infinity`), read as a self-fiber product, or a
/// `fibrations` array of two such objects. Common fields: `bad_primes`,
/// `conductor`, `bad_fiber_mode` (skip | corrected), optional
/// `tate_correction` (defaults to true for self-products) and
/// `expected_eta_pair`.
FiberProductVariety fiber_product_from_json(const json& j);
FiberProductVariety load_fiber_product(const std::filesystem::path& path);

json trace_system_to_json(const congruence::TraceSystem& T);
congruence::TraceSystem trace_system_from_json(const json& j);

}  // namespace modcert::counting
