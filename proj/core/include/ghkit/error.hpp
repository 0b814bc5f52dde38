#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace ghkit {

/// Failure categories raised by the toolkit. Each maps onto one named error
/// condition of the public operations.
enum class Errc {
  invalid_argument,
  non_square_matrix,
  asymmetric_matrix,
  nonzero_diagonal,
  negative_distance,
  zero_distance,
  triangle_violation,
  index_out_of_range,
  empty_subset,
  spaces_differ,
  negative_scale,
  negative_length,
  too_few_points,
  odd_order,
  lambda_too_small,
  lambda_out_of_range,
  negative_lambda,
  disconnected_graph,
  invalid_correspondence,
  grid_too_coarse,
  outside_rectangle,
  coverage_gap,
  not_lipschitz,
  invalid_witness,
  too_large,
  not_antipodal_involution,
  not_round,
  c_exceeds_diameter,
  stale_certificate,
  inconsistent_bounds,
  certificate_failed,
  parse_error,
};

const char* to_string(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what, std::vector<std::size_t> indices = {});

  Errc code() const noexcept { return code_; }

  /// Point indices witnessing the failure (e.g. the triple of a triangle
  /// violation). Empty when not applicable.
  const std::vector<std::size_t>& indices() const noexcept { return indices_; }

 private:
  Errc code_;
  std::vector<std::size_t> indices_;
};

}  // namespace ghkit
