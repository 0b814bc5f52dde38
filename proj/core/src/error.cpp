#include "ghkit/error.hpp"

namespace ghkit {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_argument: return "InvalidArgument";
    case Errc::non_square_matrix: return "NonSquareMatrix";
    case Errc::asymmetric_matrix: return "AsymmetricMatrix";
    case Errc::nonzero_diagonal: return "NonzeroDiagonal";
    case Errc::negative_distance: return "NegativeDistance";
    case Errc::zero_distance: return "ZeroDistance";
    case Errc::triangle_violation: return "TriangleViolation";
    case Errc::index_out_of_range: return "IndexOutOfRange";
    case Errc::empty_subset: return "EmptySubset";
    case Errc::spaces_differ: return "SpacesDiffer";
    case Errc::negative_scale: return "NegativeScale";
    case Errc::negative_length: return "NegativeLength";
    case Errc::too_few_points: return "TooFewPoints";
    case Errc::odd_order: return "OddOrder";
    case Errc::lambda_too_small: return "LambdaTooSmall";
    case Errc::lambda_out_of_range: return "LambdaOutOfRange";
    case Errc::negative_lambda: return "NegativeLambda";
    case Errc::disconnected_graph: return "DisconnectedGraph";
    case Errc::invalid_correspondence: return "InvalidCorrespondence";
    case Errc::grid_too_coarse: return "GridTooCoarse";
    case Errc::outside_rectangle: return "OutsideRectangle";
    case Errc::coverage_gap: return "CoverageGap";
    case Errc::not_lipschitz: return "NotLipschitz";
    case Errc::invalid_witness: return "InvalidWitness";
    case Errc::too_large: return "TooLarge";
    case Errc::not_antipodal_involution: return "NotAntipodalInvolution";
    case Errc::not_round: return "NotRound";
    case Errc::c_exceeds_diameter: return "CExceedsDiameter";
    case Errc::stale_certificate: return "StaleCertificate";
    case Errc::inconsistent_bounds: return "InconsistentBounds";
    case Errc::certificate_failed: return "CertificateFailed";
    case Errc::parse_error: return "ParseError";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& what, std::vector<std::size_t> indices)
    : std::runtime_error(std::string(to_string(code)) + ": " + what),
      code_(code),
      indices_(std::move(indices)) {}

}  // namespace ghkit
