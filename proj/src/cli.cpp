#include "nframe/cli.hpp"

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nframe/errors.hpp"
#include "nframe/frames.hpp"
#include "nframe/io.hpp"
#include "nframe/quotient.hpp"
#include "nframe/tensorframe.hpp"
#include "nframe/verify.hpp"

namespace nframe {

namespace {

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

std::string fmt(const Complex& z) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), "%.12g%+.12gi", z.real(), z.imag());
  return buf;
}

struct SpaceArgs {
  std::string space_path;
  std::string fixing_path;

  void attach(CLI::App* cmd) {
    cmd->add_option("--space", space_path, "JSON file with the ambient space")->required();
    cmd->add_option("--fixing", fixing_path, "JSON file with the conditioning vectors")->required();
  }

  std::pair<AmbientSpace, ConditioningTuple> load() const {
    AmbientSpace space = io::decode_space(io::load_json_file(space_path), "space");
    std::vector<Vector> fixing = io::decode_fixing(io::load_json_file(fixing_path), "fixing");
    ConditioningTuple cond(space, std::move(fixing));
    return {std::move(space), std::move(cond)};
  }
};

Frame load_frame(const std::string& path, const std::string& field) {
  io::FrameFile ff = io::decode_frame_file(io::load_json_file(path), field);
  ConditioningTuple cond(ff.space, ff.fixing);
  QuotientSpace qs(ff.space, cond);
  return Frame(std::move(qs), std::move(ff.vectors));
}

Vector parse_vector_arg(const std::string& text, const std::string& field) {
  return io::decode_vector(io::parse_json_text(text, field), field);
}

void print_json(const io::json& j) { std::cout << j.dump(2) << "\n"; }

int cmd_nip(const SpaceArgs& sa, const std::string& xs, const std::string& ys, bool as_json) {
  const auto [space, cond] = sa.load();
  const Vector x = parse_vector_arg(xs, "--x");
  const Vector y = parse_vector_arg(ys, "--y");
  const Complex value = n_inner(space, x, y, cond);
  if (as_json)
    print_json(io::json{{"value", io::encode(value)}});
  else
    std::cout << fmt(value) << "\n";
  return 0;
}

int cmd_nnorm(const SpaceArgs& sa, const std::string& xs, bool as_json) {
  const auto [space, cond] = sa.load();
  const Vector x = parse_vector_arg(xs, "--x");
  const double value = n_norm(space, x, cond);
  if (as_json)
    print_json(io::json{{"value", value}});
  else
    std::cout << fmt(value) << "\n";
  return 0;
}

int cmd_quotient(const SpaceArgs& sa, const std::string& project_arg, bool as_json) {
  const auto [space, cond] = sa.load();
  const QuotientSpace qs(space, cond);
  io::json j{{"dim", qs.dim()},
             {"ambient_dim", qs.ambient_dim()},
             {"mf_basis", io::encode(qs.mf_basis())},
             {"induced_gram", io::encode(qs.induced_gram())}};
  std::string projected;
  if (!project_arg.empty()) {
    const Vector p = parse_vector_arg(project_arg, "--project");
    const Vector coords = qs.project(p);
    j["projection"] = io::encode(coords);
    projected = "projection:";
    for (std::size_t i = 0; i < coords.dim(); ++i) projected += " " + fmt(coords[i]);
  }
  if (as_json) {
    print_json(j);
  } else {
    std::cout << "quotient dimension " << qs.dim() << " inside ambient dimension " << qs.ambient_dim()
              << "\n";
    if (!projected.empty()) std::cout << projected << "\n";
  }
  return 0;
}

int cmd_bounds(const std::string& frame_path, bool as_json) {
  const Frame f = load_frame(frame_path, "frame");
  const FrameBounds b = frame_bounds(f);
  if (as_json) {
    print_json(io::encode(b));
  } else {
    std::cout << "lower " << fmt(b.lower) << "\nupper " << fmt(b.upper) << "\nframe "
              << (b.is_frame ? "yes" : "no") << "\ntight " << (b.is_tight ? "yes" : "no") << "\n";
  }
  return 0;
}

int cmd_dual(const std::string& frame_path, bool as_json) {
  const Frame f = load_frame(frame_path, "frame");
  const Frame d = canonical_dual(f);
  const DualCheck dc = is_dual_pair(f, d);
  if (as_json) {
    io::json vecs = io::json::array();
    for (const Vector& v : d.vectors()) vecs.push_back(io::encode(v));
    print_json(io::json{{"vectors", vecs},
                        {"dual", dc.dual},
                        {"residual_fg", dc.residual_fg},
                        {"residual_gf", dc.residual_gf}});
  } else {
    for (const Vector& v : d.vectors()) {
      std::cout << "[";
      for (std::size_t i = 0; i < v.dim(); ++i) std::cout << (i ? ", " : " ") << fmt(v[i]);
      std::cout << " ]\n";
    }
    std::cout << "residuals " << fmt(dc.residual_fg) << " " << fmt(dc.residual_gf) << "\n";
  }
  return dc.dual ? 0 : 1;
}

int cmd_tensor(const std::string& left_path, const std::string& right_path, bool as_json) {
  const Frame left = load_frame(left_path, "left");
  const Frame right = load_frame(right_path, "right");
  const TensorFrame tf = tensor_frame(left, right);
  const TensorEquivalenceReport rep = check_tensor_equivalence(tf);

  const Matrix s = op_from_synthesis(tf.synthesis_matrix(), tf.working_gram());
  const Matrix expected = kron(frame_operator(left), frame_operator(right));
  const double op_residual =
      frobenius_norm(s - expected) / std::max(frobenius_norm(expected), 1e-300);

  if (as_json) {
    print_json(io::json{{"product_bounds", io::encode(rep.product)},
                        {"left_bounds", io::encode(rep.left)},
                        {"right_bounds", io::encode(rep.right)},
                        {"working_dim", tf.working_dim()},
                        {"full_quotient_dim", tf.full_quotient().dim()},
                        {"operator_residual", op_residual},
                        {"family_size", tf.product_vectors().size()}});
  } else {
    std::cout << "product family of " << tf.product_vectors().size() << " vectors\n"
              << "working dimension " << tf.working_dim() << ", full quotient dimension "
              << tf.full_quotient().dim() << "\n"
              << "bounds [" << fmt(rep.product.lower) << ", " << fmt(rep.product.upper) << "] frame "
              << (rep.product.is_frame ? "yes" : "no") << "\n"
              << "factor bounds [" << fmt(rep.left.lower) << ", " << fmt(rep.left.upper) << "] x ["
              << fmt(rep.right.lower) << ", " << fmt(rep.right.upper) << "]\n"
              << "operator residual " << fmt(op_residual) << "\n";
  }
  return 0;
}

int cmd_verify(const SuiteConfig& base, const std::string& theorem_arg, bool as_json) {
  std::vector<SuiteConfig> configs;
  if (theorem_arg == "all" || theorem_arg == "ALL") {
    for (TheoremId id : all_theorems()) {
      SuiteConfig cfg = base;
      cfg.theorem = id;
      configs.push_back(cfg);
    }
  } else {
    const auto parsed = parse_theorem(theorem_arg);
    if (!parsed) throw InvalidInputError("unknown theorem name: " + theorem_arg);
    SuiteConfig cfg = base;
    cfg.theorem = *parsed;
    configs.push_back(cfg);
  }

  bool all_pass = true;
  io::json out = io::json::array();
  for (const SuiteConfig& cfg : configs) {
    const VerificationReport rep = run_suite(cfg);
    all_pass = all_pass && rep.verdict == "pass";
    if (as_json) {
      out.push_back(io::encode(rep));
    } else {
      std::cout << theorem_name(cfg.theorem) << ": " << rep.verdict << " (trials=" << cfg.trials
                << ", failures=" << rep.failures << ", max_residual=" << fmt(rep.max_residual)
                << ", " << fmt(rep.wall_time_seconds) << "s)\n";
    }
  }
  if (as_json) print_json(configs.size() == 1 ? out.front() : out);
  return all_pass ? 0 : 1;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"frames conditioned on fixed vector tuples: construction, bounds, duals, verification"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "machine-readable JSON output");

  SpaceArgs nip_args, nnorm_args, quot_args;
  std::string x_arg, y_arg, nx_arg, project_arg;
  std::string frame_path, dual_path, left_path, right_path;

  CLI::App* nip = app.add_subcommand("nip", "rank-n inner product of two vectors");
  nip_args.attach(nip);
  nip->add_option("--x", x_arg, "first vector, JSON array")->required();
  nip->add_option("--y", y_arg, "second vector, JSON array")->required();

  CLI::App* nnorm = app.add_subcommand("nnorm", "rank-n norm of a vector");
  nnorm_args.attach(nnorm);
  nnorm->add_option("--x", nx_arg, "vector, JSON array")->required();

  CLI::App* quot = app.add_subcommand("quotient", "induced quotient space data");
  quot_args.attach(quot);
  quot->add_option("--project", project_arg, "vector to project, JSON array");

  CLI::App* bounds = app.add_subcommand("bounds", "optimal frame bounds of a family");
  bounds->add_option("--frame", frame_path, "JSON frame file")->required();

  CLI::App* dual = app.add_subcommand("dual", "canonical dual family");
  dual->add_option("--frame", dual_path, "JSON frame file")->required();

  CLI::App* tensor = app.add_subcommand("tensor", "tensor product of two frame files");
  tensor->add_option("--left", left_path, "left factor frame file")->required();
  tensor->add_option("--right", right_path, "right factor frame file")->required();

  CLI::App* verify = app.add_subcommand("verify", "randomized theorem verification suites");
  SuiteConfig base;
  std::string theorem_arg = "all";
  verify->add_option("--theorem", theorem_arg, "suite name (AXIOMS, T2.4, ...) or 'all'");
  verify->add_option("--trials", base.trials, "trials per suite");
  verify->add_option("--seed", base.seed, "base seed");
  verify->add_option("--dim-h", base.dim_h, "left factor dimension");
  verify->add_option("--dim-k", base.dim_k, "right factor dimension");
  verify->add_option("--n", base.order_n, "conditioning order n");
  verify->add_option("--frame-size", base.frame_size, "family size per factor");
  verify->add_flag("--sabotage", base.sabotage, "degrade every instance and demand detection");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    app.exit(e);
    return 2;
  }

  try {
    if (nip->parsed()) return cmd_nip(nip_args, x_arg, y_arg, as_json);
    if (nnorm->parsed()) return cmd_nnorm(nnorm_args, nx_arg, as_json);
    if (quot->parsed()) return cmd_quotient(quot_args, project_arg, as_json);
    if (bounds->parsed()) return cmd_bounds(frame_path, as_json);
    if (dual->parsed()) return cmd_dual(dual_path, as_json);
    if (tensor->parsed()) return cmd_tensor(left_path, right_path, as_json);
    if (verify->parsed()) return cmd_verify(base, theorem_arg, as_json);
  } catch (const InvalidInputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DimensionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace nframe
