#pragma once

// Vector majorization, T-transforms on 2 x n parameter matrices, chain
// majorization for the 2 x 2 case, doubly stochastic checks, and the set P_n
// of matrices whose two rows are similarly ordered.

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace stochord {

enum class MajorizationKind {
  plain,       // a ≺ b
  weak_sub,    // a ≺_w b: k largest of a sum to at most the k largest of b
  weak_super,  // a ≺^w b: k smallest of a sum to at least the k smallest of b
};

std::string to_string(MajorizationKind kind);

/// Partial sums compared with absolute tolerance 1e-12 * n * max|entry|.
/// Throws UsageError on length mismatch or empty input.
bool majorize_check(std::span<const double> a, std::span<const double> b, MajorizationKind kind);

struct ImplicationRecord {
  bool plain = false;
  bool weak_sub = false;
  bool weak_super = false;
};

/// All three relations at once. Plain majorization implies both weak forms;
/// a violation of that is a logic_error.
ImplicationRecord implication_suite(std::span<const double> a, std::span<const double> b);

/// 2 x n matrix with strictly positive entries. Row 0 and row 1 hold the two
/// parameter families, columns are components.
class ParamMatrix {
 public:
  using Storage = Eigen::Matrix<double, 2, Eigen::Dynamic>;

  ParamMatrix(std::span<const double> top, std::span<const double> bottom);
  explicit ParamMatrix(Storage values);

  std::size_t cols() const noexcept { return static_cast<std::size_t>(values_.cols()); }
  double operator()(std::size_t row, std::size_t col) const { return values_(row, col); }
  std::vector<double> row(std::size_t r) const;
  const Storage& values() const noexcept { return values_; }

  bool operator==(const ParamMatrix& other) const { return values_ == other.values_; }

 private:
  void validate() const;

  Storage values_;
};

/// T = lambda I + (1 - lambda) Pi_{i,j}, columns i != j (0-based).
struct TTransform {
  double lambda = 1.0;
  std::size_t i = 0;
  std::size_t j = 1;

  /// Throws UsageError unless 0 <= lambda <= 1, i != j, both < n.
  void validate(std::size_t n) const;
};

/// Dense n x n matrix of the transform.
Eigen::MatrixXd t_transform_matrix(std::size_t n, const TTransform& t);

/// m * T: columns i and j become their lambda-convex combinations in both
/// rows; every other column is untouched.
ParamMatrix apply_t_transform(const ParamMatrix& m, const TTransform& t);

/// lambda in [0, 1] with b = a * T^lambda_{0,1}, consistent across all four
/// entries to 1e-9 relative, or nullopt. The column-swapped image is the
/// solution 1 - lambda of the same equation, so it is found as well.
std::optional<double> chain_majorize_solve_2x2(const ParamMatrix& a, const ParamMatrix& b);

/// Non-negative (to -1e-12) with every row and column summing to 1 (to 1e-10).
bool doubly_stochastic_check(const Eigen::MatrixXd& q);

/// (m(0,i) - m(0,j)) * (m(1,i) - m(1,j)) >= 0 for every column pair.
bool pn_membership(const ParamMatrix& m);

enum class PairKind { chain_via_transforms, weak_sub, weak_super };

struct GeneratorOptions {
  double lo = 0.5;  // entry range of the sampled "b" side
  double hi = 5.0;
  /// Number of T-transforms in a chain; 0 draws uniformly from 1..3.
  std::size_t transforms = 0;
  /// Require b * T_1 ... T_i in P_n for every proper prefix of the chain.
  bool screen_intermediates = false;
};

/// An instance pair with its certificate.
/// chain_via_transforms: matrix_a = matrix_b * T_1 ... T_k with matrix_b in P_n.
/// weak_sub / weak_super: vectors with a ≺_w b or a ≺^w b.
struct HypothesisPair {
  PairKind kind = PairKind::weak_sub;
  std::vector<double> a;
  std::vector<double> b;
  std::optional<ParamMatrix> matrix_a;
  std::optional<ParamMatrix> matrix_b;
  std::vector<TTransform> transforms;
};

/// Deterministic in (n, kind, seed, options). Every pair is re-validated with
/// majorize_check / pn_membership before it is returned; GenerationError after
/// 100 rejected attempts.
HypothesisPair generate_hypothesis_pair(std::size_t n, PairKind kind, std::uint64_t seed,
                                        const GeneratorOptions& options = {});

}  // namespace stochord
