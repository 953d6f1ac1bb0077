#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace glform {

enum class ErrorCode {
  malformed_code,
  bad_valence,
  non_spherical_embedding,
  not_symmetric,
  disconnected,
  multi_component,
  odd_sigma,
  missing_data,
  even_n,
  non_positive_n,
  inconsistent_input,
  not_dealternating,
  inconsistent_diagrams,
  not_certified,
  missing_column,
  bad_row,
  unknown_name,
  io_error,
};

// Stable machine-readable names, used in CLI JSON output.
constexpr std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::malformed_code: return "MalformedCode";
    case ErrorCode::bad_valence: return "BadValence";
    case ErrorCode::non_spherical_embedding: return "NonSphericalEmbedding";
    case ErrorCode::not_symmetric: return "NotSymmetric";
    case ErrorCode::disconnected: return "Disconnected";
    case ErrorCode::multi_component: return "MultiComponent";
    case ErrorCode::odd_sigma: return "OddSigma";
    case ErrorCode::missing_data: return "MissingData";
    case ErrorCode::even_n: return "EvenN";
    case ErrorCode::non_positive_n: return "NonPositiveN";
    case ErrorCode::inconsistent_input: return "InconsistentInput";
    case ErrorCode::not_dealternating: return "NotDealternating";
    case ErrorCode::inconsistent_diagrams: return "InconsistentDiagrams";
    case ErrorCode::not_certified: return "NotCertified";
    case ErrorCode::missing_column: return "MissingColumn";
    case ErrorCode::bad_row: return "BadRow";
    case ErrorCode::unknown_name: return "UnknownName";
    case ErrorCode::io_error: return "IOError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace glform
