#include "nframe/io.hpp"

#include <fstream>
#include <sstream>

#include "nframe/errors.hpp"

namespace nframe::io {

namespace {

[[noreturn]] void reject(const std::string& field, const std::string& why) {
  throw InvalidInputError("field \"" + field + "\": " + why);
}

const json& need(const json& j, const char* key, const std::string& field) {
  if (!j.is_object()) reject(field, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) reject(field + "." + key, "missing");
  return *it;
}

}  // namespace

json encode(const Complex& z) { return json::array({z.real(), z.imag()}); }

json encode(const Vector& v) {
  json a = json::array();
  for (std::size_t i = 0; i < v.dim(); ++i) a.push_back(encode(v[i]));
  return a;
}

json encode(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(encode(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json encode(const AmbientSpace& space) {
  json j;
  j["dim"] = space.dim;
  j["gram"] = encode(space.gram);
  j["label"] = space.label;
  return j;
}

json encode_fixing(const std::vector<Vector>& vectors) {
  json j;
  json arr = json::array();
  for (const Vector& v : vectors) arr.push_back(encode(v));
  j["vectors"] = std::move(arr);
  return j;
}

json encode(const FrameBounds& b) {
  return json{{"lower", b.lower}, {"upper", b.upper}, {"is_frame", b.is_frame}, {"is_tight", b.is_tight}};
}

json encode(const SuiteConfig& cfg) {
  return json{{"theorem", theorem_name(cfg.theorem)}, {"trials", cfg.trials},
              {"seed", cfg.seed},                     {"dim_h", cfg.dim_h},
              {"dim_k", cfg.dim_k},                   {"order_n", cfg.order_n},
              {"frame_size", cfg.frame_size},         {"sabotage", cfg.sabotage}};
}

json encode(const VerificationReport& rep) {
  return json{{"config", encode(rep.config)},
              {"residuals", rep.residuals},
              {"failures", rep.failures},
              {"max_residual", rep.max_residual},
              {"verdict", rep.verdict},
              {"wall_time_seconds", rep.wall_time_seconds}};
}

Complex decode_complex(const json& j, const std::string& field) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return Complex(j[0].get<double>(), j[1].get<double>());
  reject(field, "expected a number or [re, im]");
}

Vector decode_vector(const json& j, const std::string& field) {
  if (!j.is_array()) reject(field, "expected an array of entries");
  Vector v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    v[i] = decode_complex(j[i], field + "[" + std::to_string(i) + "]");
  if (!v.is_finite()) reject(field, "non-finite entry");
  return v;
}

Matrix decode_matrix(const json& j, const std::string& field) {
  if (!j.is_array()) reject(field, "expected an array of rows");
  const std::size_t rows = j.size();
  std::size_t cols = 0;
  if (rows > 0) {
    if (!j[0].is_array()) reject(field + "[0]", "expected a row array");
    cols = j[0].size();
  }
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const std::string row_field = field + "[" + std::to_string(i) + "]";
    if (!j[i].is_array() || j[i].size() != cols) reject(row_field, "ragged row");
    for (std::size_t c = 0; c < cols; ++c)
      m(i, c) = decode_complex(j[i][c], row_field + "[" + std::to_string(c) + "]");
  }
  if (!m.is_finite()) reject(field, "non-finite entry");
  return m;
}

AmbientSpace decode_space(const json& j, const std::string& field) {
  const json& dim_j = need(j, "dim", field);
  if (!dim_j.is_number_unsigned()) reject(field + ".dim", "expected a nonnegative integer");
  const std::size_t dim = dim_j.get<std::size_t>();
  const Matrix gram = decode_matrix(need(j, "gram", field), field + ".gram");
  std::string label;
  if (auto it = j.find("label"); it != j.end()) {
    if (!it->is_string()) reject(field + ".label", "expected a string");
    label = it->get<std::string>();
  }
  try {
    return AmbientSpace(dim, gram, label);
  } catch (const std::exception& e) {
    reject(field, e.what());
  }
}

std::vector<Vector> decode_fixing(const json& j, const std::string& field) {
  const json& arr = need(j, "vectors", field);
  if (!arr.is_array()) reject(field + ".vectors", "expected an array of vectors");
  std::vector<Vector> out;
  out.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i)
    out.push_back(decode_vector(arr[i], field + ".vectors[" + std::to_string(i) + "]"));
  return out;
}

SuiteConfig decode_config(const json& j, const std::string& field) {
  SuiteConfig cfg;
  const json& th = need(j, "theorem", field);
  if (!th.is_string()) reject(field + ".theorem", "expected a string");
  const auto parsed = parse_theorem(th.get<std::string>());
  if (!parsed) reject(field + ".theorem", "unknown suite name");
  cfg.theorem = *parsed;
  auto get_size = [&](const char* key, std::size_t& slot) {
    const json& v = need(j, key, field);
    if (!v.is_number_unsigned()) reject(field + "." + key, "expected a nonnegative integer");
    slot = v.get<std::size_t>();
  };
  get_size("trials", cfg.trials);
  const json& seed = need(j, "seed", field);
  if (!seed.is_number_unsigned()) reject(field + ".seed", "expected a nonnegative integer");
  cfg.seed = seed.get<std::uint64_t>();
  get_size("dim_h", cfg.dim_h);
  get_size("dim_k", cfg.dim_k);
  get_size("order_n", cfg.order_n);
  get_size("frame_size", cfg.frame_size);
  const json& sab = need(j, "sabotage", field);
  if (!sab.is_boolean()) reject(field + ".sabotage", "expected a boolean");
  cfg.sabotage = sab.get<bool>();
  return cfg;
}

VerificationReport decode_report(const json& j, const std::string& field) {
  VerificationReport rep;
  rep.config = decode_config(need(j, "config", field), field + ".config");
  const json& res = need(j, "residuals", field);
  if (!res.is_array()) reject(field + ".residuals", "expected an array");
  for (std::size_t i = 0; i < res.size(); ++i) {
    if (!res[i].is_number()) reject(field + ".residuals[" + std::to_string(i) + "]", "expected a number");
    rep.residuals.push_back(res[i].get<double>());
  }
  const json& failures = need(j, "failures", field);
  if (!failures.is_number_unsigned()) reject(field + ".failures", "expected a nonnegative integer");
  rep.failures = failures.get<std::size_t>();
  const json& mr = need(j, "max_residual", field);
  if (!mr.is_number()) reject(field + ".max_residual", "expected a number");
  rep.max_residual = mr.get<double>();
  const json& verdict = need(j, "verdict", field);
  if (!verdict.is_string()) reject(field + ".verdict", "expected a string");
  rep.verdict = verdict.get<std::string>();
  const json& wt = need(j, "wall_time_seconds", field);
  if (!wt.is_number()) reject(field + ".wall_time_seconds", "expected a number");
  rep.wall_time_seconds = wt.get<double>();
  return rep;
}

FrameFile decode_frame_file(const json& j, const std::string& field) {
  FrameFile f{decode_space(need(j, "space", field), field + ".space"),
              decode_fixing(need(j, "fixing", field), field + ".fixing"),
              {}};
  const json& arr = need(j, "vectors", field);
  if (!arr.is_array() || arr.empty()) reject(field + ".vectors", "expected a nonempty array of vectors");
  for (std::size_t i = 0; i < arr.size(); ++i)
    f.vectors.push_back(decode_vector(arr[i], field + ".vectors[" + std::to_string(i) + "]"));
  return f;
}

json encode_frame_file(const AmbientSpace& space, const std::vector<Vector>& fixing,
                       const std::vector<Vector>& vectors) {
  json j;
  j["space"] = encode(space);
  j["fixing"] = encode_fixing(fixing);
  json arr = json::array();
  for (const Vector& v : vectors) arr.push_back(encode(v));
  j["vectors"] = std::move(arr);
  return j;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInputError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json_text(buf.str(), path);
}

json parse_json_text(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidInputError(what + ": " + e.what());
  }
}

}  // namespace nframe::io
