#pragma once

// JSON matrix and channel files, tolerance profiles, number formatting and
// SHA-256 digests for run reports.

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "genfid/channels.hpp"

namespace genfid::io {

/// Malformed or invalid input file. The message is anchored as `file:line: ...`.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class MatrixKind { generic, hermitian, pd, unitary };

std::string_view to_string(MatrixKind kind);

struct MatrixFile {
  MatrixC m;
  MatrixKind kind = MatrixKind::generic;
};

/// {"d": int, "re": [[...]], "im": [[...]], "kind": "generic|hermitian|pd|unitary"}.
/// The declared kind is validated on load.
MatrixFile read_matrix_file(const std::filesystem::path& path,
                            const ToleranceProfile& tol = kDefaultTolerances);
MatrixFile parse_matrix(std::string_view text, const std::string& source,
                        const ToleranceProfile& tol = kDefaultTolerances);

nlohmann::ordered_json matrix_to_json(const MatrixC& m, MatrixKind kind);
void write_matrix_file(const std::filesystem::path& path, const MatrixC& m, MatrixKind kind);

/// {"d_in": int, "d_out": int, "kraus": [{"re": [[...]], "im": [[...]]}, ...]}.
KrausSet read_channel_file(const std::filesystem::path& path,
                           const ToleranceProfile& tol = kDefaultTolerances);
KrausSet parse_channel(std::string_view text, const std::string& source,
                       const ToleranceProfile& tol = kDefaultTolerances);
void write_channel_file(const std::filesystem::path& path, const KrausSet& k);

/// Field-by-field overrides of the defaults; unknown keys are rejected.
ToleranceProfile read_tolerance_file(const std::filesystem::path& path);
nlohmann::ordered_json tolerances_to_json(const ToleranceProfile& tol);

/// Nearest double to the 15-significant-digit decimal form of v.
double round15(double v);
/// 15 significant digits, "C" locale.
std::string format15(double v);

std::string sha256_hex(std::string_view bytes);
std::string sha256_file(const std::filesystem::path& path);

std::string read_text(const std::filesystem::path& path);

/// `x,phi_p,phi_q,f_pol` with "\n" line endings.
std::string curve_csv(const PolarCurve& c);

}  // namespace genfid::io
