#include "nframe/verify.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <utility>

#include "nframe/errors.hpp"
#include "nframe/frames.hpp"
#include "nframe/quotient.hpp"
#include "nframe/rng.hpp"
#include "nframe/tensorframe.hpp"
#include "nframe/tolerances.hpp"

namespace nframe {

const std::vector<TheoremId>& all_theorems() {
  static const std::vector<TheoremId> ids = {
      TheoremId::Axioms, TheoremId::T2_4,  TheoremId::T3_3,  TheoremId::T3_5,
      TheoremId::T3_9,   TheoremId::T3_10, TheoremId::T3_12, TheoremId::T3_13,
      TheoremId::T3_14,  TheoremId::T4_2,  TheoremId::T4_3,  TheoremId::T4_5,
      TheoremId::T4_6};
  return ids;
}

std::string theorem_name(TheoremId id) {
  switch (id) {
    case TheoremId::Axioms: return "AXIOMS";
    case TheoremId::T2_4: return "T2.4";
    case TheoremId::T3_3: return "T3.3";
    case TheoremId::T3_5: return "T3.5";
    case TheoremId::T3_9: return "T3.9";
    case TheoremId::T3_10: return "T3.10";
    case TheoremId::T3_12: return "T3.12";
    case TheoremId::T3_13: return "T3.13";
    case TheoremId::T3_14: return "T3.14";
    case TheoremId::T4_2: return "T4.2";
    case TheoremId::T4_3: return "T4.3";
    case TheoremId::T4_5: return "T4.5";
    case TheoremId::T4_6: return "T4.6";
  }
  return "?";
}

std::optional<TheoremId> parse_theorem(const std::string& name) {
  std::string up = name;
  std::transform(up.begin(), up.end(), up.begin(), [](unsigned char c) { return std::toupper(c); });
  for (TheoremId id : all_theorems())
    if (theorem_name(id) == up) return id;
  return std::nullopt;
}

namespace {

// Suites whose statement has an "only if" direction get deliberately
// degenerate instances every fourth trial even without sabotage.
bool has_degradation_schedule(TheoremId id) {
  return id == TheoremId::T2_4 || id == TheoremId::T3_9 || id == TheoremId::T3_10 ||
         id == TheoremId::T3_14;
}

bool uses_second_factor(TheoremId id) {
  switch (id) {
    case TheoremId::Axioms:
    case TheoremId::T3_5:
    case TheoremId::T4_2:
    case TheoremId::T4_3:
      return false;
    default:
      return true;
  }
}

void validate_config(const SuiteConfig& cfg) {
  if (cfg.trials < 1) throw InvalidInputError("trials must be at least 1");
  if (cfg.order_n < 1) throw InvalidInputError("order_n must be at least 1");
  if (cfg.frame_size < 1) throw InvalidInputError("frame_size must be at least 1");
  if (cfg.theorem == TheoremId::T2_4) {
    if (cfg.dim_h < 1 || cfg.dim_k < 1) throw InvalidInputError("dimensions must be at least 1");
    return;
  }
  if (cfg.dim_h < cfg.order_n) throw InvalidInputError("dim_h is smaller than order_n");
  if (uses_second_factor(cfg.theorem) && cfg.dim_k < cfg.order_n)
    throw InvalidInputError("dim_k is smaller than order_n");
}

struct TrialCheck {
  double residual = 0.0;
  bool ok = true;
  void value(double resid, double tolerance) {
    if (!(resid >= 0.0)) {  // catches NaN
      ok = false;
      return;
    }
    residual = std::max(residual, resid);
    if (resid > tolerance) ok = false;
  }
  void truth(bool b) {
    if (!b) ok = false;
  }
};

Complex std_inner(const Vector& v, const Vector& u) {
  Complex s = 0.0;
  for (std::size_t i = 0; i < v.dim(); ++i) s += std::conj(u[i]) * v[i];
  return s;
}

Matrix random_unitary(KeyedRng& rng, std::size_t d, bool cx) {
  while (true) {
    const Matrix g = rng.next_gaussian_matrix(d, d, cx);
    std::vector<Vector> cols;
    cols.reserve(d);
    bool ok = true;
    for (std::size_t j = 0; j < d && ok; ++j) {
      Vector v = g.column(j);
      for (const Vector& u : cols) v -= std_inner(v, u) * u;
      const double len = v.norm2();
      if (len < 1e-6) {
        ok = false;
        break;
      }
      v *= Complex(1.0 / len, 0.0);
      cols.push_back(std::move(v));
    }
    if (ok) return Matrix::from_columns(cols);
  }
}

Matrix random_hpd_gram(KeyedRng& rng, std::size_t d, bool cx) {
  const Matrix u = random_unitary(rng, d, cx);
  Matrix scaled(d, d);
  for (std::size_t j = 0; j < d; ++j) {
    const double lambda = rng.next_uniform(0.2, 10.0);
    for (std::size_t i = 0; i < d; ++i) scaled(i, j) = u(i, j) * lambda;
  }
  Matrix g = scaled * u.adjoint();
  // Symmetrise away the last few ulps so the constructor's Hermiticity
  // check never depends on the accumulation order above.
  Matrix herm(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) herm(i, j) = 0.5 * (g(i, j) + std::conj(g(j, i)));
  return herm;
}

std::vector<Vector> random_fixing(KeyedRng& rng, std::size_t d, std::size_t count, bool cx) {
  if (count == 0) return {};
  while (true) {
    std::vector<Vector> vs;
    vs.reserve(count);
    for (std::size_t i = 0; i < count; ++i) vs.push_back(rng.next_gaussian_vector(d, cx));
    if (numeric_rank(Matrix::from_columns(vs)) == count) return vs;
  }
}

// Dependent tuple that the conditioning constructor must reject: scalar
// multiples of one vector, or the zero vector when there is only one slot.
std::vector<Vector> dependent_fixing(KeyedRng& rng, std::size_t d, std::size_t count, bool cx) {
  std::vector<Vector> vs;
  if (count == 0) return vs;
  if (count == 1) {
    vs.push_back(Vector::zero(d));
    return vs;
  }
  const Vector base = rng.next_gaussian_vector(d, cx);
  vs.push_back(base);
  for (std::size_t i = 1; i < count; ++i) vs.push_back(rng.next_complex_gaussian() * base);
  return vs;
}

std::vector<Vector> random_family(KeyedRng& rng, std::size_t d, std::size_t m, bool cx) {
  std::vector<Vector> vs;
  vs.reserve(m);
  for (std::size_t i = 0; i < m; ++i) vs.push_back(rng.next_gaussian_vector(d, cx));
  return vs;
}

// Family confined to a proper subspace of the quotient (plus harmless
// coset noise): never a frame, so the negative verdicts get exercised.
std::vector<Vector> deficient_family(KeyedRng& rng, const QuotientSpace& qs, std::size_t m, bool cx) {
  const std::size_t k = qs.dim();
  Matrix span;
  if (k > 1) span = rng.next_gaussian_matrix(k, k - 1, cx);
  std::vector<Vector> out;
  out.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    Vector v = Vector::zero(qs.ambient_dim());
    if (k > 1) v = qs.lift(span * rng.next_gaussian_vector(k - 1, cx));
    for (const Vector& a : qs.fixing().vectors()) v += (0.25 * rng.next_complex_gaussian()) * a;
    out.push_back(std::move(v));
  }
  return out;
}

// U diag(s) V* with singular values in [0.5, 2]; one of them zeroed when
// the caller wants a singular operator.
Matrix shaped_operator(KeyedRng& rng, std::size_t k, bool singular, bool cx) {
  const Matrix u = random_unitary(rng, k, cx);
  const Matrix v = random_unitary(rng, k, cx);
  Matrix mid(k, k);
  for (std::size_t i = 0; i < k; ++i) mid(i, i) = rng.next_uniform(0.5, 2.0);
  if (singular && k > 0) mid(k - 1, k - 1) = 0.0;
  return u * mid * v.adjoint();
}

struct FactorPack {
  AmbientSpace space;
  std::vector<Vector> fixing;
  std::vector<Vector> family;
};

FactorPack gen_factor(KeyedRng& rng, std::size_t d, std::size_t order_n, std::size_t m,
                      bool degrade_family, bool cx) {
  AmbientSpace space(d, random_hpd_gram(rng, d, cx));
  std::vector<Vector> fixing = random_fixing(rng, d, order_n - 1, cx);
  std::vector<Vector> family;
  if (m > 0) {
    if (degrade_family) {
      const QuotientSpace qs(space, ConditioningTuple(space, fixing));
      family = deficient_family(rng, qs, m, cx);
    } else {
      family = random_family(rng, d, m, cx);
    }
  }
  return {std::move(space), std::move(fixing), std::move(family)};
}

}  // namespace

Instance gen_instance(const SuiteConfig& cfg, std::size_t trial) {
  validate_config(cfg);
  KeyedRng rng(cfg.seed, 2 * trial);
  const bool scheduled = has_degradation_schedule(cfg.theorem) && trial % 4 == 3;
  const bool degrade = cfg.sabotage || scheduled;
  const int site = degrade ? 1 + static_cast<int>(trial % 2) : 0;

  Instance inst;
  inst.degraded = degrade;
  inst.degraded_site = site;

  const bool cx = true;
  switch (cfg.theorem) {
    case TheoremId::T2_4: {
      inst.op_left = shaped_operator(rng, cfg.dim_h, degrade && site == 1, cx);
      inst.op_right = shaped_operator(rng, cfg.dim_k, degrade && site == 2, cx);
      return inst;
    }
    case TheoremId::Axioms: {
      inst.space_h = AmbientSpace(cfg.dim_h, random_hpd_gram(rng, cfg.dim_h, cx));
      // With no conditioning vectors there is no rank-deficient tuple to
      // inject; the degenerate element of the pairing is just zero.
      if (degrade && cfg.order_n >= 2)
        inst.fixing_h = dependent_fixing(rng, cfg.dim_h, cfg.order_n - 1, cx);
      else
        inst.fixing_h = random_fixing(rng, cfg.dim_h, cfg.order_n - 1, cx);
      return inst;
    }
    case TheoremId::T3_3: {
      FactorPack left = gen_factor(rng, cfg.dim_h, cfg.order_n, 0, false, cx);
      FactorPack right = gen_factor(rng, cfg.dim_k, cfg.order_n, 0, false, cx);
      if (degrade && cfg.order_n >= 2) {
        if (site == 1) left.fixing = dependent_fixing(rng, cfg.dim_h, cfg.order_n - 1, cx);
        else right.fixing = dependent_fixing(rng, cfg.dim_k, cfg.order_n - 1, cx);
      }
      inst.space_h = std::move(left.space);
      inst.fixing_h = std::move(left.fixing);
      inst.space_k = std::move(right.space);
      inst.fixing_k = std::move(right.fixing);
      return inst;
    }
    case TheoremId::T3_5:
    case TheoremId::T4_2:
    case TheoremId::T4_3: {
      FactorPack f = gen_factor(rng, cfg.dim_h, cfg.order_n, cfg.frame_size, degrade, cx);
      inst.space_h = std::move(f.space);
      inst.fixing_h = std::move(f.fixing);
      inst.frame_h = std::move(f.family);
      return inst;
    }
    case TheoremId::T3_9:
    case TheoremId::T3_10:
    case TheoremId::T3_12:
    case TheoremId::T3_13: {
      FactorPack left = gen_factor(rng, cfg.dim_h, cfg.order_n, cfg.frame_size, degrade && site == 1, cx);
      FactorPack right = gen_factor(rng, cfg.dim_k, cfg.order_n, cfg.frame_size, degrade && site == 2, cx);
      inst.space_h = std::move(left.space);
      inst.fixing_h = std::move(left.fixing);
      inst.frame_h = std::move(left.family);
      inst.space_k = std::move(right.space);
      inst.fixing_k = std::move(right.fixing);
      inst.frame_k = std::move(right.family);
      return inst;
    }
    case TheoremId::T3_14: {
      // Degradation goes into the transported operators, never the base
      // frames, so the "only if" branch is what gets tested.
      FactorPack left = gen_factor(rng, cfg.dim_h, cfg.order_n, cfg.frame_size, false, cx);
      FactorPack right = gen_factor(rng, cfg.dim_k, cfg.order_n, cfg.frame_size, false, cx);
      const std::size_t kl = cfg.dim_h - (cfg.order_n - 1);
      const std::size_t kr = cfg.dim_k - (cfg.order_n - 1);
      inst.op_left = shaped_operator(rng, kl, degrade && site == 1, cx);
      inst.op_right = shaped_operator(rng, kr, degrade && site == 2, cx);
      inst.space_h = std::move(left.space);
      inst.fixing_h = std::move(left.fixing);
      inst.frame_h = std::move(left.family);
      inst.space_k = std::move(right.space);
      inst.fixing_k = std::move(right.fixing);
      inst.frame_k = std::move(right.family);
      return inst;
    }
    case TheoremId::T4_5:
    case TheoremId::T4_6: {
      FactorPack left = gen_factor(rng, cfg.dim_h, cfg.order_n, cfg.frame_size, degrade && site == 1, cx);
      FactorPack right = gen_factor(rng, cfg.dim_k, cfg.order_n, cfg.frame_size, degrade && site == 2, cx);
      inst.space_h = std::move(left.space);
      inst.fixing_h = std::move(left.fixing);
      inst.frame_h = std::move(left.family);
      inst.space_k = std::move(right.space);
      inst.fixing_k = std::move(right.fixing);
      inst.frame_k = std::move(right.family);
      return inst;
    }
  }
  throw ContractError("gen_instance: unhandled suite");
}

namespace {

double mag_floor(double x) { return 1.0 + x; }

// Hadamard-style magnitude of the rank-n pairing of x and y: product of
// the conditioning norms squared times the two operand norms.
double pairing_scale(const AmbientSpace& space, const ConditioningTuple& cond, const Vector& x,
                     const Vector& y) {
  double s = base_norm(space, x) * base_norm(space, y);
  for (const Vector& c : cond.vectors()) {
    const double cn = base_norm(space, c);
    s *= cn * cn;
  }
  return mag_floor(s);
}

void axioms_trial(const Instance& inst, const SuiteConfig& cfg, KeyedRng& extras, TrialCheck& check) {
  const AmbientSpace& space = *inst.space_h;
  const ConditioningTuple cond(space, inst.fixing_h);
  const std::size_t d = space.dim;
  const std::size_t n = cond.order_n();
  const double t = tol::t1e9();

  const Vector x = extras.next_gaussian_vector(d, true);
  const Vector y = extras.next_gaussian_vector(d, true);
  const Vector x2 = extras.next_gaussian_vector(d, true);
  const Complex alpha = extras.next_complex_gaussian();

  const Complex ip_xy = n_inner(space, x, y, cond);
  const Complex ip_yx = n_inner(space, y, x, cond);
  const double sxy = pairing_scale(space, cond, x, y);

  // Conjugate symmetry and sesquilinearity in the first slot.
  check.value(std::abs(ip_xy - std::conj(ip_yx)) / sxy, t);
  Vector combo = alpha * x;
  combo += x2;
  const Complex lhs = n_inner(space, combo, y, cond);
  check.value(std::abs(lhs - alpha * ip_xy - n_inner(space, x2, y, cond)) / mag_floor(std::abs(lhs)),
              t);

  // Positivity with a real value, and strict positivity off the span.
  const Complex ip_xx = n_inner(space, x, x, cond);
  const double sxx = pairing_scale(space, cond, x, x);
  check.value(std::abs(ip_xx.imag()) / sxx, t);
  check.value(std::max(0.0, -ip_xx.real()) / sxx, t);
  std::vector<Vector> bordered = cond.vectors();
  bordered.push_back(x);
  if (numeric_rank(Matrix::from_columns(bordered)) == n) check.truth(ip_xx.real() > 0.0);

  // Degeneracy on the span of the tuple, in both slots.
  Vector l = Vector::zero(d);
  if (n >= 2) {
    do {
      l = Vector::zero(d);
      for (const Vector& c : cond.vectors()) l += extras.next_complex_gaussian() * c;
    } while (base_norm(space, l) < 1e-8);
    l *= Complex(1.0 / base_norm(space, l), 0.0);
  }
  check.value(std::abs(n_inner(space, l, l, cond)) / pairing_scale(space, cond, l, l), t);
  check.value(std::abs(n_inner(space, l, y, cond)) / pairing_scale(space, cond, l, y), t);
  check.value(std::abs(n_inner(space, x, l, cond)) / pairing_scale(space, cond, x, l), t);

  // Invariance under reordering of the conditioning vectors.
  if (n >= 3) {
    std::vector<Vector> shuffled = cond.vectors();
    for (std::size_t i = shuffled.size(); i > 1; --i)
      std::swap(shuffled[i - 1], shuffled[extras.next_u64() % i]);
    const ConditioningTuple cond_pi(space, shuffled);
    check.value(std::abs(ip_xy - n_inner(space, x, y, cond_pi)) / sxy, t);
  }

  // Cauchy-Schwarz, norm homogeneity, triangle, parallelogram.
  const double nx = n_norm(space, x, cond);
  const double ny = n_norm(space, y, cond);
  check.value(std::max(0.0, std::abs(ip_xy) - nx * ny) / mag_floor(nx * ny), t);
  check.value(std::abs(n_norm(space, alpha * x, cond) - std::abs(alpha) * nx) / mag_floor(std::abs(alpha) * nx), t);
  check.value(std::max(0.0, n_norm(space, x + y, cond) - nx - ny) / mag_floor(nx + ny), t);
  const double np = n_norm(space, x + y, cond);
  const double nm = n_norm(space, x - y, cond);
  check.value(std::abs(np * np + nm * nm - 2.0 * (nx * nx + ny * ny)) / mag_floor(nx * nx + ny * ny),
              t);

  // Polarisation over the reals needs a real instance of its own.
  const AmbientSpace rspace(d, random_hpd_gram(extras, d, false));
  const ConditioningTuple rcond(rspace, random_fixing(extras, d, cfg.order_n - 1, false));
  const Vector rx = extras.next_gaussian_vector(d, false);
  const Vector ry = extras.next_gaussian_vector(d, false);
  const double rip = n_inner(rspace, rx, ry, rcond).real();
  const double rp = n_norm(rspace, rx + ry, rcond);
  const double rm = n_norm(rspace, rx - ry, rcond);
  check.value(std::abs(rip - 0.25 * (rp * rp - rm * rm)) / pairing_scale(rspace, rcond, rx, ry), t);
}

void t2_4_trial(const Instance& inst, const SuiteConfig& cfg, KeyedRng& extras, TrialCheck& check) {
  const Matrix& q = inst.op_left;
  const Matrix& t = inst.op_right;
  const Matrix q2 = extras.next_gaussian_matrix(cfg.dim_h, cfg.dim_h, true);
  const Matrix t2 = extras.next_gaussian_matrix(cfg.dim_k, cfg.dim_k, true);
  const Vector f = extras.next_gaussian_vector(cfg.dim_h, true);
  const Vector g = extras.next_gaussian_vector(cfg.dim_k, true);

  const Matrix qt = kron(q, t);

  const double norm_prod = operator_norm(q) * operator_norm(t);
  check.value(std::abs(operator_norm(qt) - norm_prod) / mag_floor(norm_prod), tol::t1e8());

  const Vector via_kron = qt * kron(f, g);
  const Vector direct = kron(q * f, t * g);
  check.value((via_kron - direct).norm2() / mag_floor(direct.norm2()), tol::t1e10());

  const Matrix comp_kron = qt * kron(q2, t2);
  const Matrix comp_direct = kron(q * q2, t * t2);
  check.value(frobenius_norm(comp_kron - comp_direct) / mag_floor(frobenius_norm(comp_direct)),
              tol::t1e10());

  check.value(frobenius_norm(qt.adjoint() - kron(q.adjoint(), t.adjoint())) / mag_floor(frobenius_norm(qt)),
              1e-14 * tol::scale());

  const bool kron_full = numeric_rank(qt) == qt.rows();
  const bool factors_full =
      numeric_rank(q) == cfg.dim_h && numeric_rank(t) == cfg.dim_k;
  check.truth(kron_full == factors_full);
  if (inst.degraded) check.truth(!kron_full);
}

void t3_3_trial(const Instance& inst, KeyedRng& extras, TrialCheck& check) {
  const AmbientSpace& hs = *inst.space_h;
  const AmbientSpace& ks = *inst.space_k;
  const ConditioningTuple hc(hs, inst.fixing_h);
  const ConditioningTuple kc(ks, inst.fixing_k);
  const Matrix pairing = tensor_pairing(hs, hc, ks, kc);

  const Vector x = extras.next_gaussian_vector(hs.dim, true);
  const Vector x2 = extras.next_gaussian_vector(hs.dim, true);
  const Vector y = extras.next_gaussian_vector(ks.dim, true);
  const Vector y2 = extras.next_gaussian_vector(ks.dim, true);

  auto pair_with = [&](const Vector& u, const Vector& v) {
    Complex s = 0.0;
    for (std::size_t i = 0; i < u.dim(); ++i) {
      Complex row = 0.0;
      for (std::size_t j = 0; j < u.dim(); ++j) row += pairing(i, j) * u[j];
      s += std::conj(v[i]) * row;
    }
    return s;
  };

  const Complex factored = n_inner(hs, x, x2, hc) * n_inner(ks, y, y2, kc);
  const Complex joint = pair_with(kron(x, y), kron(x2, y2));
  check.value(std::abs(joint - factored) / mag_floor(std::abs(factored)), tol::t1e9());

  const double norm_prod = n_norm(hs, x, hc) * n_norm(ks, y, kc);
  const Complex joint_xx = pair_with(kron(x, y), kron(x, y));
  const double joint_norm = joint_xx.real() > 0.0 ? std::sqrt(joint_xx.real()) : 0.0;
  check.value(std::abs(joint_norm - norm_prod) / mag_floor(norm_prod), tol::t1e9());
  check.value(std::abs(joint_xx.imag()) / mag_floor(std::abs(joint_xx)), tol::t1e9());
}

// Bounds from first principles: the coefficient matrices of the two
// quadratic forms p -> sum |<p, p_k|.>|^2 and p -> <p, p|.> on ambient
// coordinates, reduced to the positive directions of the latter.
std::pair<double, double> raw_pencil_bounds(const AmbientSpace& space, const ConditioningTuple& cond,
                                            const std::vector<Vector>& family,
                                            std::size_t* kernel_dim = nullptr) {
  const std::size_t d = space.dim;
  Matrix m_raw(d, d);
  for (const Vector& p : family) {
    Vector w(d);
    for (std::size_t j = 0; j < d; ++j) w[j] = n_inner(space, Vector::unit(d, j), p, cond);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) m_raw(i, j) += std::conj(w[i]) * w[j];
  }
  const Matrix n_raw = conditioned_gram(space, cond);
  const EigResult eig_n = herm_eig(n_raw);
  const double top = eig_n.values.back();
  std::size_t kernel = 0;
  while (kernel < d && eig_n.values[kernel] <= tol::rank() * top) ++kernel;
  if (kernel_dim != nullptr) *kernel_dim = kernel;
  const std::size_t k = d - kernel;
  Matrix p_pos(d, k);
  for (std::size_t j = 0; j < k; ++j) {
    const double inv_root = 1.0 / std::sqrt(eig_n.values[kernel + j]);
    for (std::size_t i = 0; i < d; ++i) p_pos(i, j) = eig_n.vectors(i, kernel + j) * inv_root;
  }
  const EigResult red = herm_eig(p_pos.adjoint() * m_raw * p_pos);
  return {std::max(red.values.front(), 0.0), std::max(red.values.back(), 0.0)};
}

void t3_5_trial(const Instance& inst, KeyedRng& extras, TrialCheck& check) {
  const AmbientSpace& space = *inst.space_h;
  const ConditioningTuple cond(space, inst.fixing_h);
  const QuotientSpace qs(space, cond);
  const std::size_t d = space.dim;

  const Vector p = extras.next_gaussian_vector(d, true);
  const Vector q = extras.next_gaussian_vector(d, true);

  // Quotient geometry: coordinate norm equals the direct pairing norm,
  // cosets do not feel shifts along the fixing span, projection is
  // idempotent and annihilates the span.
  const Vector pc = qs.project(p);
  const Matrix& gamma = qs.induced_gram();
  Complex coord_sq = 0.0;
  for (std::size_t i = 0; i < qs.dim(); ++i)
    for (std::size_t j = 0; j < qs.dim(); ++j) coord_sq += std::conj(pc[i]) * gamma(i, j) * pc[j];
  const double nn = qs.induced_norm(p);
  check.value(std::abs(std::sqrt(std::max(coord_sq.real(), 0.0)) - nn) / mag_floor(nn), tol::t1e9());

  if (!cond.vectors().empty()) {
    Vector l = Vector::zero(d);
    for (const Vector& c : cond.vectors()) l += extras.next_complex_gaussian() * c;
    const Complex base = qs.induced_inner(p, q);
    const double mag = mag_floor(std::abs(base));
    check.value(std::abs(qs.induced_inner(p + l, q) - base) / mag, tol::t1e9());
    check.value(std::abs(qs.induced_inner(p, q + l) - base) / mag, tol::t1e9());
    check.value(qs.project(l).norm2() / mag_floor(l.norm2()), tol::t1e9());
  }
  const Vector reproj = qs.project(qs.lift(pc));
  check.value((reproj - pc).norm2() / mag_floor(pc.norm2()), tol::t1e10());
  const EigResult gamma_eig = herm_eig(gamma);
  check.truth(gamma_eig.values.front() > 0.0);

  // Frame operator: self-adjoint for the induced pairing, nonnegative
  // quadratic form, bounds agreeing with the raw two-form reduction.
  const Frame frame(qs, inst.frame_h);
  const Matrix s = frame_operator(frame);
  const Matrix gs = gamma * s;
  check.value(frobenius_norm(gs - gs.adjoint()) / mag_floor(frobenius_norm(gs)), tol::t1e10());
  const Vector sp = s * pc;
  Complex form = 0.0;
  for (std::size_t i = 0; i < qs.dim(); ++i)
    for (std::size_t j = 0; j < qs.dim(); ++j) form += std::conj(pc[i]) * gamma(i, j) * sp[j];
  check.value(std::max(0.0, -form.real()) / mag_floor(std::abs(form)), tol::t1e9());

  const FrameBounds bounds = frame_bounds(frame);
  std::size_t kernel_dim = 0;
  const auto [raw_lo, raw_hi] = raw_pencil_bounds(space, cond, inst.frame_h, &kernel_dim);
  check.truth(kernel_dim == cond.vectors().size());
  check.value(std::abs(raw_lo - bounds.lower) / mag_floor(bounds.upper), tol::t1e8());
  check.value(std::abs(raw_hi - bounds.upper) / mag_floor(bounds.upper), tol::t1e8());

  // Frame inequality at a probe.
  if (bounds.is_frame) {
    const Vector coeffs = analysis(frame, p);
    const double energy = coeffs.norm2() * coeffs.norm2();
    const double nn2 = nn * nn;
    const double slack = tol::t1e8() * mag_floor(bounds.upper * nn2);
    check.truth(energy >= bounds.lower * nn2 - slack);
    check.truth(energy <= bounds.upper * nn2 + slack);

    // Inverse operator spectrum sits inside [1/upper, 1/lower].
    const Matrix s_inv = inverse(s);
    const Whitening wh = hpd_whitening(gamma);
    const EigResult inv_eig = herm_eig(wh.w * s_inv * wh.w_inv);
    check.value(std::max(0.0, 1.0 / bounds.upper - inv_eig.values.front()), tol::t1e9());
    check.value(std::max(0.0, inv_eig.values.back() - 1.0 / bounds.lower), tol::t1e9());
    check.truth(numeric_rank(s) == qs.dim());
  }
  if (inst.degraded) check.truth(!bounds.is_frame);
}

struct TensorTrialData {
  QuotientSpace left_qs;
  QuotientSpace right_qs;
  Frame left;
  Frame right;
  TensorFrame tf;
};

TensorTrialData build_tensor(const Instance& inst) {
  const AmbientSpace& hs = *inst.space_h;
  const AmbientSpace& ks = *inst.space_k;
  QuotientSpace lqs(hs, ConditioningTuple(hs, inst.fixing_h));
  QuotientSpace rqs(ks, ConditioningTuple(ks, inst.fixing_k));
  Frame left(lqs, inst.frame_h);
  Frame right(rqs, inst.frame_k);
  TensorFrame tf = tensor_frame(left, right);
  return {std::move(lqs), std::move(rqs), std::move(left), std::move(right), std::move(tf)};
}

void t3_9_trial(const Instance& inst, KeyedRng& extras, TrialCheck& check) {
  const TensorTrialData data = build_tensor(inst);
  const TensorEquivalenceReport rep = check_tensor_equivalence(data.tf);

  check.truth(rep.forward_consistent);
  check.truth(rep.backward_consistent);

  // Optimal product bounds factor through the optimal factor bounds.
  const double scale = mag_floor(rep.product.upper);
  check.value(std::abs(rep.product.lower - rep.left.lower * rep.right.lower) / scale, tol::t1e8());
  check.value(std::abs(rep.product.upper - rep.left.upper * rep.right.upper) / scale, tol::t1e8());

  if (rep.closed_form_valid) {
    check.truth(rep.a1_within);
    check.truth(rep.b1_within);
    // The transferred bounds are extremes over single right-factor
    // vectors; sampled vectors must respect them.
    const AmbientSpace& ks = *inst.space_k;
    const ConditioningTuple kc = data.right.space().fixing();
    for (int probe = 0; probe < 3; ++probe) {
      const Vector qv = extras.next_gaussian_vector(ks.dim, true);
      double den = 0.0;
      for (const Vector& gj : inst.frame_k) den += std::norm(n_inner(ks, qv, gj, kc));
      const double qn = n_norm(ks, qv, kc);
      if (den <= 1e-12 * mag_floor(qn * qn)) continue;
      const double lo_ratio = rep.product.lower * qn * qn / den;
      const double hi_ratio = rep.product.upper * qn * qn / den;
      const double slack = tol::t1e8() * mag_floor(rep.b1);
      check.truth(lo_ratio >= rep.a1 - slack);
      check.truth(hi_ratio <= rep.b1 + slack);
    }
  }
  if (inst.degraded) {
    check.truth(!rep.product.is_frame);
    check.truth(!(rep.left.is_frame && rep.right.is_frame));
  }
}

void t3_10_trial(const Instance& inst, KeyedRng& extras, TrialCheck& check) {
  const TensorTrialData data = build_tensor(inst);
  const TensorFrame& tf = data.tf;
  const FrameBounds product = tf.bounds();
  const FrameBounds lb = frame_bounds(data.left);
  const FrameBounds rb = frame_bounds(data.right);

  // Being a frame for the working space (inequality route, probed on
  // arbitrary product vectors) must agree with the operator route.
  const std::size_t dprod = tf.fixing().spaces().product.dim;
  for (int probe = 0; probe < 3; ++probe) {
    const Vector x = extras.next_gaussian_vector(dprod, true);
    double energy = 0.0;
    for (const Vector& pv : tf.product_vectors()) energy += std::norm(tf.tensor_inner(x, pv));
    const double xn = tf.tensor_norm(x);
    const double xn2 = xn * xn;
    const double slack = tol::t1e8() * mag_floor(product.upper * xn2);
    check.truth(energy >= product.lower * xn2 - slack);
    check.truth(energy <= product.upper * xn2 + slack);
  }

  check.truth(product.is_frame == (lb.is_frame && rb.is_frame));

  // The full quotient of the product space is strictly larger than the
  // working space once both factors are conditioned; report-only, but the
  // dimension arithmetic itself is fixed.
  const std::size_t n_minus_1 = tf.fixing().pairs().size();
  check.truth(tf.full_quotient().dim() == dprod - n_minus_1);
  check.truth(tf.working_dim() == data.left_qs.dim() * data.right_qs.dim());

  if (inst.degraded) check.truth(!product.is_frame);
}

void t3_12_trial(const Instance& inst, TrialCheck& check) {
  const TensorTrialData data = build_tensor(inst);
  const TensorFrame& tf = data.tf;

  const Matrix s = op_from_synthesis(tf.synthesis_matrix(), tf.working_gram());
  const Matrix expected = kron(frame_operator(data.left), frame_operator(data.right));
  check.value(frobenius_norm(s - expected) / mag_floor(frobenius_norm(expected)), tol::t1e9());

  bool asserted_ok = true;
  try {
    (void)tensor_frame_operator(tf);
  } catch (const ContractError&) {
    asserted_ok = false;
  }
  check.truth(asserted_ok);

  const FrameBounds lb = frame_bounds(data.left);
  const FrameBounds rb = frame_bounds(data.right);
  if (lb.is_frame && rb.is_frame) {
    const Matrix s_inv = inverse(s);
    const Matrix expected_inv =
        kron(inverse(frame_operator(data.left)), inverse(frame_operator(data.right)));
    check.value(frobenius_norm(s_inv - expected_inv) / mag_floor(frobenius_norm(expected_inv)),
                tol::t1e9());
  }
  if (inst.degraded) check.truth(!tf.bounds().is_frame);
}

void t3_13_trial(const Instance& inst, TrialCheck& check) {
  const TensorTrialData data = build_tensor(inst);
  const InverseImageResult res = inverse_image_frame(data.tf);
  if (inst.degraded) {
    // A degenerate product family must not make it past the
    // inverse-image precondition.
    check.truth(false);
    return;
  }

  check.value(res.op_residual, tol::t1e8());
  check.truth(res.bounds_within_interval);
  check.truth(res.bounds.is_frame);

  // The family is the image under the inverse operator, so its optimal
  // bounds are exactly the reciprocals of the product bounds.
  const FrameBounds product = data.tf.bounds();
  check.value(std::abs(res.bounds.lower - 1.0 / product.upper) / mag_floor(1.0 / product.upper),
              tol::t1e8());
  check.value(std::abs(res.bounds.upper - 1.0 / product.lower) / mag_floor(1.0 / product.lower),
              tol::t1e8());
}

void t3_14_trial(const Instance& inst, TrialCheck& check) {
  const TensorTrialData data = build_tensor(inst);
  const OperatorImageResult res = operator_image_frame(data.tf, inst.op_left, inst.op_right);

  check.truth(res.is_frame == res.kron_invertible);
  if (res.is_frame) check.value(res.op_residual, tol::t1e8());
  if (inst.degraded) {
    check.truth(!res.kron_invertible);
    check.truth(!res.is_frame);
  }
}

Frame alternative_dual(const Frame& f, const Frame& canonical, KeyedRng& extras) {
  const Matrix& cf = f.synthesis_matrix();
  const std::size_t k = cf.rows();
  const std::size_t m = cf.cols();
  const Matrix row_proj = cf.adjoint() * solve(cf * cf.adjoint(), cf);
  const Matrix z = extras.next_gaussian_matrix(k, m, true) * (Matrix::identity(m) - row_proj);
  Matrix alt = canonical.synthesis_matrix();
  alt += z;
  std::vector<Vector> vs;
  vs.reserve(m);
  for (std::size_t j = 0; j < m; ++j) vs.push_back(f.space().lift(alt.column(j)));
  return Frame(f.space(), std::move(vs));
}

void t4_2_trial(const Instance& inst, KeyedRng& extras, TrialCheck& check) {
  const AmbientSpace& space = *inst.space_h;
  const QuotientSpace qs(space, ConditioningTuple(space, inst.fixing_h));
  const Frame f(qs, inst.frame_h);
  const Frame fd = canonical_dual(f);
  if (inst.degraded) {
    // canonical_dual above should already have rejected the family.
    check.truth(false);
    return;
  }

  const DualCheck dc = is_dual_pair(f, fd);
  check.truth(dc.dual);
  check.value(dc.residual_fg, tol::dual());
  check.value(dc.residual_gf, tol::dual());

  // Reconstruction through the dual coefficients, both ways round.
  const Vector p = extras.next_gaussian_vector(space.dim, true);
  const Vector rep = qs.lift(qs.project(p));
  const Vector rec1 = synthesis(f, analysis(fd, p));
  const Vector rec2 = synthesis(fd, analysis(f, p));
  check.value((rec1 - rep).norm2() / mag_floor(rep.norm2()), tol::t1e8());
  check.value((rec2 - rep).norm2() / mag_floor(rep.norm2()), tol::t1e8());

  // A null-space perturbation of the canonical dual is still dual.
  if (f.size() > qs.dim()) {
    const Frame alt = alternative_dual(f, fd, extras);
    const DualCheck alt_dc = is_dual_pair(f, alt);
    check.truth(alt_dc.dual);
    check.value(alt_dc.residual_fg, tol::dual());
    check.value(alt_dc.residual_gf, tol::dual());
  }

  // A rescaled dual is not dual, and the residual is exactly the scaled
  // distance of the identity from itself times the family Gram.
  std::vector<Vector> scaled;
  scaled.reserve(fd.size());
  for (const Vector& v : fd.vectors()) scaled.push_back(Complex(1.5, 0.0) * v);
  const Frame fd_scaled(qs, scaled);
  const DualCheck bad = is_dual_pair(f, fd_scaled);
  check.truth(!bad.dual);
  const double expected = 0.5 * std::sqrt(static_cast<double>(qs.dim()));
  check.value(std::abs(bad.residual_fg - expected) / mag_floor(expected), tol::t1e8());
}

void t4_3_trial(const Instance& inst, KeyedRng& extras, TrialCheck& check) {
  const AmbientSpace& space = *inst.space_h;
  const QuotientSpace qs(space, ConditioningTuple(space, inst.fixing_h));
  const Frame f(qs, inst.frame_h);
  const Frame fd = canonical_dual(f);
  if (inst.degraded) {
    check.truth(false);
    return;
  }
  const FrameBounds bf = frame_bounds(f);
  const FrameBounds bd = frame_bounds(fd);

  // Canonical dual bounds are the reciprocals, exactly.
  check.value(std::abs(bd.lower - 1.0 / bf.upper) / mag_floor(1.0 / bf.upper), tol::t1e8());
  check.value(std::abs(bd.upper - 1.0 / bf.lower) / mag_floor(1.0 / bf.lower), tol::t1e8());

  // Any dual pair: each lower bound dominates the reciprocal of the other
  // family's upper bound.
  auto cross_check = [&](const FrameBounds& a, const FrameBounds& b) {
    const double slack = tol::t1e8() * mag_floor(1.0 / b.upper);
    check.truth(a.lower >= 1.0 / b.upper - slack);
  };
  cross_check(bf, bd);
  cross_check(bd, bf);
  if (f.size() > qs.dim()) {
    const Frame alt = alternative_dual(f, fd, extras);
    const FrameBounds ba = frame_bounds(alt);
    cross_check(bf, ba);
    cross_check(ba, bf);
    // The canonical dual has the smallest upper bound among all duals.
    check.truth(ba.upper >= bd.upper - tol::t1e8() * mag_floor(bd.upper));
  }
}

void t4_5_trial(const Instance& inst, TrialCheck& check) {
  const TensorTrialData data = build_tensor(inst);
  const Frame fd = canonical_dual(data.left);
  const Frame gd = canonical_dual(data.right);
  if (inst.degraded) {
    check.truth(false);
    return;
  }

  const TensorDualResult res = tensor_dual(data.left, fd, data.right, gd);
  check.truth(res.left.dual && res.right.dual && res.product.dual);
  check.value(res.product.residual_fg, tol::dual());
  check.value(res.product.residual_gf, tol::dual());

  // Pairing the product family with a tensor of a non-dual pair must be
  // flagged, at both the precondition and the residual level.
  std::vector<Vector> scaled;
  scaled.reserve(gd.size());
  for (const Vector& v : gd.vectors()) scaled.push_back(Complex(1.3, 0.0) * v);
  const Frame gd_bad(data.right.space(), scaled);
  bool rejected = false;
  try {
    (void)tensor_dual(data.left, fd, data.right, gd_bad);
  } catch (const InvalidInputError&) {
    rejected = true;
  }
  check.truth(rejected);

  const TensorFrame tf_dual = tensor_frame(fd, gd_bad);
  const double bad_residual =
      dual_residual(data.tf.synthesis_matrix(), tf_dual.synthesis_matrix(), data.tf.working_gram());
  check.truth(bad_residual > 100.0 * tol::dual());
}

void t4_6_trial(const Instance& inst, KeyedRng& extras, TrialCheck& check) {
  const TensorTrialData data = build_tensor(inst);
  const Frame fd = canonical_dual(data.left);
  const Frame gd = canonical_dual(data.right);
  if (inst.degraded) {
    check.truth(false);
    return;
  }
  const Matrix u = random_unitary(extras, data.left.space().dim(), true);
  const Matrix v = random_unitary(extras, data.right.space().dim(), true);

  const TensorDualResult res = unitary_transport_dual(data.left, fd, data.right, gd, u, v);
  check.truth(res.left.dual && res.right.dual && res.product.dual);
  check.value(res.left.residual_fg, tol::dual());
  check.value(res.left.residual_gf, tol::dual());
  check.value(res.right.residual_fg, tol::dual());
  check.value(res.right.residual_gf, tol::dual());
  check.value(res.product.residual_fg, tol::dual());
  check.value(res.product.residual_gf, tol::dual());

  // A visibly non-unitary transport must be refused.
  bool rejected = false;
  try {
    (void)unitary_transport_dual(data.left, fd, data.right, gd, Complex(1.2, 0.0) * u, v);
  } catch (const InvalidInputError&) {
    rejected = true;
  }
  check.truth(rejected);
}

TrialCheck run_trial(const SuiteConfig& cfg, std::size_t trial) {
  TrialCheck check;
  const Instance inst = gen_instance(cfg, trial);
  KeyedRng extras(cfg.seed, 2 * trial + 1);
  try {
    switch (cfg.theorem) {
      case TheoremId::Axioms: axioms_trial(inst, cfg, extras, check); break;
      case TheoremId::T2_4: t2_4_trial(inst, cfg, extras, check); break;
      case TheoremId::T3_3: t3_3_trial(inst, extras, check); break;
      case TheoremId::T3_5: t3_5_trial(inst, extras, check); break;
      case TheoremId::T3_9: t3_9_trial(inst, extras, check); break;
      case TheoremId::T3_10: t3_10_trial(inst, extras, check); break;
      case TheoremId::T3_12: t3_12_trial(inst, check); break;
      case TheoremId::T3_13: t3_13_trial(inst, check); break;
      case TheoremId::T3_14: t3_14_trial(inst, check); break;
      case TheoremId::T4_2: t4_2_trial(inst, extras, check); break;
      case TheoremId::T4_3: t4_3_trial(inst, extras, check); break;
      case TheoremId::T4_5: t4_5_trial(inst, check); break;
      case TheoremId::T4_6: t4_6_trial(inst, extras, check); break;
    }
  } catch (const InvalidInputError&) {
    // Degenerate ingredients are meant to be rejected; anything else
    // reaching this handler is a miss.
    check.ok = inst.degraded;
  } catch (const std::exception&) {
    check.ok = false;
  }
  return check;
}

}  // namespace

VerificationReport run_suite(const SuiteConfig& cfg) {
  validate_config(cfg);
  const auto start = std::chrono::steady_clock::now();
  VerificationReport rep;
  rep.config = cfg;
  rep.residuals.reserve(cfg.trials);
  for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
    const TrialCheck check = run_trial(cfg, trial);
    rep.residuals.push_back(check.residual);
    rep.max_residual = std::max(rep.max_residual, check.residual);
    if (!check.ok) ++rep.failures;
  }
  rep.verdict = rep.failures == 0 ? "pass" : "fail";
  rep.wall_time_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace nframe
