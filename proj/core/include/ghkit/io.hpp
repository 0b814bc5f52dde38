#pragma once

#include <string>
#include <string_view>

#include "ghkit/bounds.hpp"
#include "ghkit/correspondence.hpp"
#include "ghkit/exact.hpp"
#include "ghkit/metric_space.hpp"
#include "ghkit/model_spaces.hpp"
#include "ghkit/nonlinearity.hpp"
#include "ghkit/plane_region.hpp"
#include "ghkit/segment_circle.hpp"

// Text formats for every artifact. All floats are rounded to 12 significant
// digits on output, so emit -> parse -> emit is byte-stable. Parse failures
// throw Error(Errc::parse_error); well-formed inputs are validated with the
// usual constructors (so a bad matrix raises e.g. TriangleViolation).
namespace ghkit::io {

double round12(double v);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view text);

/// {"labels": [...], "dist": [[...], ...]}; labels optional.
std::string space_to_json(const FiniteMetricSpace& x);
FiniteMetricSpace space_from_json(std::string_view text);

/// Header row of labels, then one row of distances per point.
std::string space_to_csv(const FiniteMetricSpace& x);
FiniteMetricSpace space_from_csv(std::string_view text);

/// Dispatches on the extension (.csv, otherwise JSON).
FiniteMetricSpace load_space(const std::string& path);

/// {"vertices": n, "edges": [[u, v, length], ...]}
std::string graph_to_json(const MetricGraph& g);
MetricGraph graph_from_json(std::string_view text);

/// {"left_size": n, "right_size": m, "pairs": [[i, j], ...]}. The sizes may
/// be omitted on input when the caller supplies them.
std::string correspondence_to_json(const Correspondence& r);
Correspondence correspondence_from_json(std::string_view text, std::size_t left_size = 0,
                                        std::size_t right_size = 0);

/// {"lambda": l, "segments": [{"from": [t, phi], "to": [t, phi], "label": s}, ...]}
std::string pl_to_json(const PLCorrespondence& p);
PLCorrespondence pl_from_json(std::string_view text);

/// {"values": [...], "objective": c}
std::string witness_to_json(const LipschitzWitness& w);
LipschitzWitness witness_from_json(std::string_view text);

/// One line of JSON per record (no trailing newline).
std::string bound_to_json_line(const BoundRecord& r);

/// {"value": v, "pairs": [...], "status": "optimal"|"upper", "nodes": k}
std::string exact_to_json(const ExactResult& r);

std::string certificate_to_json(const SegmentCircleCertificate& c);
SegmentCircleCertificate certificate_from_json(std::string_view text);

}  // namespace ghkit::io
