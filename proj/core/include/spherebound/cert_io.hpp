#pragma once

#include <string>
#include <string_view>

#include "spherebound/sdp_cert.hpp"

namespace spherebound {

/// Certificate files are JSON objects with the keys, in this order,
///   dim, degree, f0, theta_cos, separable_g | matrices, B, T, g
/// Rationals and polynomials are strings ("p/q", "[c0, c1, ...]"), T uses the
/// interval set syntax and matrices are arrays of rows of rational strings.
///
/// Throws ParseError with a line and column for malformed input. Decimal
/// numbers are rejected unless allow_decimal is set; *used_decimal reports
/// whether any were read.
Certificate parse_certificate(std::string_view text, bool allow_decimal = false, bool* used_decimal = nullptr);
Certificate read_certificate_file(const std::string& path, bool allow_decimal = false, bool* used_decimal = nullptr);

/// Canonical form; parse_certificate(emit_certificate(c)) re-emits byte for byte.
std::string emit_certificate(const Certificate& cert);

}  // namespace spherebound
