#pragma once

#include <string>
#include <vector>

#include "qhtk/bounds.hpp"
#include "qhtk/geometry.hpp"
#include "qhtk/qmatrix.hpp"
#include "qhtk/volume.hpp"

namespace qhtk {

// Wire formats used by the CLI. Quaternions are 4-arrays [w,x,y,z],
// matrices { "rows": m, "cols": m, "entries": [[w,x,y,z], ...] }
// row-major, points either bare arrays of 4-arrays or horospherical
// triples { "xi": [...], "v": [x,y,z], "u": u }.
//
// All doubles print through %.17g so equal values serialize to equal
// bytes; report output is deterministic per seed.

std::string quaternion_to_json(const Quaternion& q);
std::string qmatrix_to_json(const QMatrix& a);
QMatrix qmatrix_from_json(const std::string& text); // throws DomainError on shape/parse errors

std::string point_to_json(const std::vector<Quaternion>& z);
// Accepts both point encodings; n is needed to lift a horospherical triple.
std::vector<Quaternion> point_from_json(const std::string& text, int n);

std::string bound_report_to_json(const BoundReport& rep);
std::string bound_constants_to_json(const BoundConstants& c, const MarginResult& m);
std::string volume_result_to_json(const VolumeResult& v);
std::string manifold_bound_to_json(const ManifoldBound& b);

// CSV rows; headers match the field names exactly.
std::string bound_report_csv_header();
std::string bound_report_csv_row(const BoundReport& rep);
std::string volume_csv_header();
std::string volume_csv_row(const VolumeResult& v);
std::string manifold_csv_header();
std::string manifold_csv_row(const ManifoldBound& b);

// %.17g, shared by every emitter above.
std::string format_double(double v);

} // namespace qhtk
