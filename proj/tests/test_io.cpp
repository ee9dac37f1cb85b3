#include <doctest.h>

#include <functional>
#include <string>

#include "helpers.hpp"
#include "nframe/errors.hpp"
#include "nframe/io.hpp"
#include "nframe/verify.hpp"

using namespace nframe;
using namespace th;
using io::json;

namespace {

std::string thrown_message(const std::function<void()>& f) {
  try {
    f();
  } catch (const std::exception& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("complex numbers round-trip and accept plain reals") {
  const Complex z(1.5, -2.0);
  CHECK(io::decode_complex(io::encode(z), "z") == z);
  CHECK(io::decode_complex(json(3.0), "z") == Complex(3.0, 0.0));
  CHECK_THROWS_AS(io::decode_complex(json("nope"), "z"), InvalidInputError);
}

TEST_CASE("vectors and matrices round-trip") {
  const Vector v{Complex(1.0, 2.0), Complex(0.0, -1.0)};
  CHECK(io::decode_vector(io::encode(v), "v") == v);

  Matrix m(2, 3);
  m(0, 0) = Complex(1.0, 0.5);
  m(1, 2) = Complex(-2.0, 0.0);
  CHECK(io::decode_matrix(io::encode(m), "m") == m);

  const std::string ragged = thrown_message([] {
    io::decode_matrix(json::parse("[[1, 2], [3]]"), "m");
  });
  CHECK(ragged.find("field \"m[1]\"") != std::string::npos);
}

TEST_CASE("spaces round-trip with their labels") {
  const AmbientSpace space(2, th::rm({{2, 1}, {1, 2}}), "demo");
  const AmbientSpace back = io::decode_space(io::encode(space), "space");
  CHECK(back == space);

  const std::string missing = thrown_message([] {
    io::decode_space(json::parse("{\"dim\": 2}"), "space");
  });
  CHECK(missing.find("space.gram") != std::string::npos);

  // A non-definite metric is caught on decode and named.
  const std::string bad = thrown_message([] {
    io::decode_space(json::parse("{\"dim\": 2, \"gram\": [[1, 0], [0, -1]]}"), "space");
  });
  CHECK(bad.find("field \"space\"") != std::string::npos);
  CHECK(bad.find("definite") != std::string::npos);
}

TEST_CASE("fixing lists round-trip") {
  const std::vector<Vector> fixing = {th::e(3, 2), th::rv({1, 1, 0})};
  const auto back = io::decode_fixing(io::encode_fixing(fixing), "fixing");
  CHECK(back == fixing);

  const std::string named = thrown_message([] {
    io::decode_fixing(json::parse("{\"vectors\": [[1, 2], [\"x\"]]}"), "fixing");
  });
  CHECK(named.find("fixing.vectors[1][0]") != std::string::npos);
}

TEST_CASE("frame files round-trip") {
  const AmbientSpace space = th::std_space(3);
  const std::vector<Vector> fixing = {th::e(3, 2)};
  const std::vector<Vector> family = {th::e(3, 0), th::e(3, 0), th::e(3, 1)};
  const json j = io::encode_frame_file(space, fixing, family);
  const io::FrameFile ff = io::decode_frame_file(j, "frame");
  CHECK(ff.space == space);
  CHECK(ff.fixing == fixing);
  CHECK(ff.vectors == family);

  json empty = j;
  empty["vectors"] = json::array();
  const std::string msg = thrown_message([&] { io::decode_frame_file(empty, "frame"); });
  CHECK(msg.find("frame.vectors") != std::string::npos);
}

TEST_CASE("bounds serialise all four fields") {
  const FrameBounds b{1.0, 2.0, true, false};
  const json j = io::encode(b);
  CHECK(j["lower"] == 1.0);
  CHECK(j["upper"] == 2.0);
  CHECK(j["is_frame"] == true);
  CHECK(j["is_tight"] == false);
}

TEST_CASE("suite configs round-trip") {
  SuiteConfig cfg;
  cfg.theorem = TheoremId::T3_12;
  cfg.trials = 17;
  cfg.seed = 99;
  cfg.dim_h = 4;
  cfg.dim_k = 2;
  cfg.order_n = 2;
  cfg.frame_size = 6;
  cfg.sabotage = true;
  CHECK(io::decode_config(io::encode(cfg), "config") == cfg);

  json j = io::encode(cfg);
  j["theorem"] = "T9.9";
  const std::string msg = thrown_message([&] { io::decode_config(j, "config"); });
  CHECK(msg.find("config.theorem") != std::string::npos);
}

TEST_CASE("verification reports round-trip exactly") {
  VerificationReport rep;
  rep.config.theorem = TheoremId::T4_5;
  rep.config.trials = 3;
  rep.residuals = {1.25e-11, 0.0, 3.5e-10};
  rep.failures = 0;
  rep.max_residual = 3.5e-10;
  rep.verdict = "pass";
  rep.wall_time_seconds = 0.125;
  CHECK(io::decode_report(io::encode(rep), "report") == rep);
}

TEST_CASE("file loading failures are usage errors") {
  CHECK_THROWS_AS(io::load_json_file("/definitely/not/here.json"), InvalidInputError);
  CHECK_THROWS_AS(io::parse_json_text("{oops", "inline"), InvalidInputError);
  const std::string msg = thrown_message([] { io::parse_json_text("{oops", "inline"); });
  CHECK(msg.find("inline") != std::string::npos);
}
