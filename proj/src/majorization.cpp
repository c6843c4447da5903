#include "stochord/majorization.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "stochord/errors.hpp"
#include "stochord/random.hpp"

namespace stochord {

std::string to_string(MajorizationKind kind) {
  switch (kind) {
    case MajorizationKind::plain:
      return "plain";
    case MajorizationKind::weak_sub:
      return "weak_sub";
    case MajorizationKind::weak_super:
      return "weak_super";
  }
  return "?";
}

bool majorize_check(std::span<const double> a, std::span<const double> b, MajorizationKind kind) {
  if (a.size() != b.size()) throw UsageError("majorize_check: vectors differ in length");
  if (a.empty()) throw UsageError("majorize_check: empty vectors");
  const std::size_t n = a.size();

  std::vector<double> sa(a.begin(), a.end());
  std::vector<double> sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());

  double scale = 0.0;
  for (std::size_t k = 0; k < n; ++k) scale = std::max({scale, std::abs(sa[k]), std::abs(sb[k])});
  const double tol = 1e-12 * static_cast<double>(n) * scale;

  switch (kind) {
    case MajorizationKind::plain:
    case MajorizationKind::weak_super: {
      // ascending partial sums of a dominate those of b
      double pa = 0.0;
      double pb = 0.0;
      const std::size_t last = kind == MajorizationKind::plain ? n - 1 : n;
      for (std::size_t k = 0; k < last; ++k) {
        pa += sa[k];
        pb += sb[k];
        if (pa < pb - tol) return false;
      }
      if (kind == MajorizationKind::plain) {
        const double ta = std::accumulate(sa.begin(), sa.end(), 0.0);
        const double tb = std::accumulate(sb.begin(), sb.end(), 0.0);
        return std::abs(ta - tb) <= tol;
      }
      return true;
    }
    case MajorizationKind::weak_sub: {
      double pa = 0.0;
      double pb = 0.0;
      for (std::size_t k = n; k-- > 0;) {
        pa += sa[k];
        pb += sb[k];
        if (pa > pb + tol) return false;
      }
      return true;
    }
  }
  return false;
}

ImplicationRecord implication_suite(std::span<const double> a, std::span<const double> b) {
  ImplicationRecord r{majorize_check(a, b, MajorizationKind::plain),
                      majorize_check(a, b, MajorizationKind::weak_sub),
                      majorize_check(a, b, MajorizationKind::weak_super)};
  if (r.plain && !(r.weak_sub && r.weak_super)) {
    throw std::logic_error("plain majorization without both weak forms");
  }
  return r;
}

// ---------------------------------------------------------------------------
// ParamMatrix / T-transforms

ParamMatrix::ParamMatrix(std::span<const double> top, std::span<const double> bottom) {
  if (top.size() != bottom.size()) throw UsageError("parameter matrix rows differ in length");
  values_.resize(2, static_cast<Eigen::Index>(top.size()));
  for (std::size_t c = 0; c < top.size(); ++c) {
    values_(0, c) = top[c];
    values_(1, c) = bottom[c];
  }
  validate();
}

ParamMatrix::ParamMatrix(Storage values) : values_(std::move(values)) { validate(); }

void ParamMatrix::validate() const {
  if (values_.cols() < 2) throw UsageError("parameter matrix needs at least two columns");
  for (Eigen::Index c = 0; c < values_.cols(); ++c) {
    for (Eigen::Index r = 0; r < 2; ++r) {
      if (!(values_(r, c) > 0.0) || !std::isfinite(values_(r, c))) {
        std::ostringstream os;
        os << "parameter matrix entry (" << r << ", " << c << ") must be finite and positive";
        throw UsageError(os.str());
      }
    }
  }
}

std::vector<double> ParamMatrix::row(std::size_t r) const {
  std::vector<double> out(cols());
  for (std::size_t c = 0; c < cols(); ++c) out[c] = values_(r, c);
  return out;
}

void TTransform::validate(std::size_t n) const {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw UsageError("T-transform lambda must be in [0, 1]");
  if (i == j) throw UsageError("T-transform needs two distinct indices");
  if (i >= n || j >= n) throw UsageError("T-transform index out of range");
}

Eigen::MatrixXd t_transform_matrix(std::size_t n, const TTransform& t) {
  t.validate(n);
  const auto size = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd swap = Eigen::MatrixXd::Identity(size, size);
  swap.row(static_cast<Eigen::Index>(t.i)).swap(swap.row(static_cast<Eigen::Index>(t.j)));
  return t.lambda * Eigen::MatrixXd::Identity(size, size) + (1.0 - t.lambda) * swap;
}

ParamMatrix apply_t_transform(const ParamMatrix& m, const TTransform& t) {
  t.validate(m.cols());
  ParamMatrix::Storage out = m.values();
  const auto i = static_cast<Eigen::Index>(t.i);
  const auto j = static_cast<Eigen::Index>(t.j);
  const double mu = 1.0 - t.lambda;
  for (Eigen::Index r = 0; r < 2; ++r) {
    out(r, i) = t.lambda * m.values()(r, i) + mu * m.values()(r, j);
    out(r, j) = t.lambda * m.values()(r, j) + mu * m.values()(r, i);
  }
  return ParamMatrix(std::move(out));
}

std::optional<double> chain_majorize_solve_2x2(const ParamMatrix& a, const ParamMatrix& b) {
  if (a.cols() != 2 || b.cols() != 2) throw UsageError("chain_majorize_solve_2x2 needs 2 x 2 input");
  constexpr double kRelTol = 1e-9;
  const auto close = [](double x, double y) {
    return std::abs(x - y) <= kRelTol * std::max({1.0, std::abs(x), std::abs(y)});
  };

  // Solve from the better-conditioned row; a row with equal entries pins
  // nothing and only has to be reproduced.
  const double d0 = a(0, 0) - a(0, 1);
  const double d1 = a(1, 0) - a(1, 1);
  const std::size_t r = std::abs(d0) >= std::abs(d1) ? 0 : 1;
  const double d = r == 0 ? d0 : d1;
  double lambda = 1.0;
  if (std::abs(d) > 0.0) lambda = (b(r, 0) - a(r, 1)) / d;

  if (lambda < -kRelTol || lambda > 1.0 + kRelTol) return std::nullopt;
  lambda = std::clamp(lambda, 0.0, 1.0);

  for (std::size_t row = 0; row < 2; ++row) {
    const double c0 = lambda * a(row, 0) + (1.0 - lambda) * a(row, 1);
    const double c1 = lambda * a(row, 1) + (1.0 - lambda) * a(row, 0);
    if (!close(c0, b(row, 0)) || !close(c1, b(row, 1))) return std::nullopt;
  }
  return lambda;
}

bool doubly_stochastic_check(const Eigen::MatrixXd& q) {
  if (q.rows() != q.cols() || q.rows() == 0) return false;
  if ((q.array() < -1e-12).any()) return false;
  const Eigen::VectorXd rows = q.rowwise().sum();
  const Eigen::VectorXd cols = q.colwise().sum().transpose();
  return ((rows.array() - 1.0).abs() <= 1e-10).all() && ((cols.array() - 1.0).abs() <= 1e-10).all();
}

bool pn_membership(const ParamMatrix& m) {
  const auto& v = m.values();
  for (Eigen::Index i = 0; i < v.cols(); ++i) {
    for (Eigen::Index j = i + 1; j < v.cols(); ++j) {
      if ((v(0, i) - v(0, j)) * (v(1, i) - v(1, j)) < 0.0) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Instance generation

namespace {

constexpr int kMaxAttempts = 100;

TTransform random_transform(std::mt19937_64& rng, std::size_t n) {
  TTransform t;
  t.i = uniform_index(rng, 0, n - 1);
  t.j = uniform_index(rng, 0, n - 2);
  if (t.j >= t.i) ++t.j;
  t.lambda = uniform01(rng);
  return t;
}

std::size_t chain_length(std::mt19937_64& rng, const GeneratorOptions& options) {
  return options.transforms != 0 ? options.transforms : uniform_index(rng, 1, 3);
}

std::vector<double> sample_vector(std::mt19937_64& rng, std::size_t n, const GeneratorOptions& o) {
  std::vector<double> v(n);
  for (auto& x : v) x = uniform(rng, o.lo, o.hi);
  return v;
}

void apply_to_vector(std::vector<double>& v, const TTransform& t) {
  const double vi = v[t.i];
  const double vj = v[t.j];
  v[t.i] = t.lambda * vi + (1.0 - t.lambda) * vj;
  v[t.j] = t.lambda * vj + (1.0 - t.lambda) * vi;
}

bool rows_majorized(const ParamMatrix& a, const ParamMatrix& b) {
  return majorize_check(a.row(0), b.row(0), MajorizationKind::plain) &&
         majorize_check(a.row(1), b.row(1), MajorizationKind::plain);
}

std::optional<HypothesisPair> try_chain(std::mt19937_64& rng, std::size_t n,
                                        const GeneratorOptions& options) {
  auto top = sample_vector(rng, n, options);
  auto bottom = sample_vector(rng, n, options);
  std::sort(top.begin(), top.end());
  std::sort(bottom.begin(), bottom.end());

  HypothesisPair out;
  out.kind = PairKind::chain_via_transforms;
  const ParamMatrix b(top, bottom);
  if (!pn_membership(b)) return std::nullopt;

  const std::size_t k = chain_length(rng, options);
  ParamMatrix current = b;
  for (std::size_t step = 0; step < k; ++step) {
    if (options.screen_intermediates && step > 0 && !pn_membership(current)) return std::nullopt;
    const TTransform t = random_transform(rng, n);
    current = apply_t_transform(current, t);
    out.transforms.push_back(t);
  }

  if (!rows_majorized(current, b)) return std::nullopt;
  if (n == 2 && k == 1 && !chain_majorize_solve_2x2(b, current)) return std::nullopt;

  out.a = current.row(0);
  out.b = b.row(0);
  out.matrix_a = current;
  out.matrix_b = b;
  return out;
}

std::optional<HypothesisPair> try_weak(std::mt19937_64& rng, std::size_t n, PairKind kind,
                                       const GeneratorOptions& options) {
  HypothesisPair out;
  out.kind = kind;
  out.b = sample_vector(rng, n, options);

  // c = b T_1 ... T_k is majorized by b; nonnegative noise then moves a off c.
  std::vector<double> c = out.b;
  const std::size_t k = chain_length(rng, options);
  for (std::size_t step = 0; step < k; ++step) {
    const TTransform t = random_transform(rng, n);
    apply_to_vector(c, t);
    out.transforms.push_back(t);
  }

  out.a.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double noise = 0.5 * uniform01(rng) * c[i];
    out.a[i] = kind == PairKind::weak_sub ? c[i] - noise : c[i] + noise;
  }

  if (std::any_of(out.a.begin(), out.a.end(), [](double x) { return !(x > 0.0); })) {
    return std::nullopt;
  }
  const auto check = kind == PairKind::weak_sub ? MajorizationKind::weak_sub : MajorizationKind::weak_super;
  if (!majorize_check(out.a, out.b, check)) return std::nullopt;
  return out;
}

}  // namespace

HypothesisPair generate_hypothesis_pair(std::size_t n, PairKind kind, std::uint64_t seed,
                                        const GeneratorOptions& options) {
  if (n < 2) throw UsageError("generate_hypothesis_pair needs n >= 2");
  if (!(options.lo > 0.0 && options.hi > options.lo)) {
    throw UsageError("generator range must satisfy 0 < lo < hi");
  }
  auto rng = make_engine(seed);
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    auto pair = kind == PairKind::chain_via_transforms ? try_chain(rng, n, options)
                                                       : try_weak(rng, n, kind, options);
    if (pair) return *std::move(pair);
  }
  throw GenerationError("hypothesis pair generation exceeded 100 attempts");
}

}  // namespace stochord
