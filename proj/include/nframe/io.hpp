#pragma once

#include <string>

#include <json.hpp>

#include "nframe/dense.hpp"
#include "nframe/frames.hpp"
#include "nframe/nspace.hpp"
#include "nframe/verify.hpp"

namespace nframe::io {

using nlohmann::json;

// Complex numbers serialise as [re, im]; plain JSON numbers decode as
// purely real.  Matrices are arrays of row arrays.  Every decoder names
// the offending field when it rejects a document.

json encode(const Complex& z);
json encode(const Vector& v);
json encode(const Matrix& m);
json encode(const AmbientSpace& space);
json encode_fixing(const std::vector<Vector>& vectors);
json encode(const FrameBounds& b);
json encode(const SuiteConfig& cfg);
json encode(const VerificationReport& rep);

Complex decode_complex(const json& j, const std::string& field);
Vector decode_vector(const json& j, const std::string& field);
Matrix decode_matrix(const json& j, const std::string& field);
AmbientSpace decode_space(const json& j, const std::string& field);
std::vector<Vector> decode_fixing(const json& j, const std::string& field);
SuiteConfig decode_config(const json& j, const std::string& field);
VerificationReport decode_report(const json& j, const std::string& field);

// {"space": ..., "fixing": ..., "vectors": [...]}.
struct FrameFile {
  AmbientSpace space;
  std::vector<Vector> fixing;
  std::vector<Vector> vectors;
};
FrameFile decode_frame_file(const json& j, const std::string& field);
json encode_frame_file(const AmbientSpace& space, const std::vector<Vector>& fixing,
                       const std::vector<Vector>& vectors);

// Parses a whole document, wrapping parse failures with the path so the
// caller can exit with a usage error rather than a stack trace.
json load_json_file(const std::string& path);
json parse_json_text(const std::string& text, const std::string& what);

}  // namespace nframe::io
