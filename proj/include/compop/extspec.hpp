#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "compop/operators.hpp"

namespace compop {

// ---------------------------------------------------------------------------
// Intertwining residuals

/// ||P (A X - lambda X A) P|| / (||A|| ||X||), P the projection onto the
/// leading N - margin basis vectors. Throws Error(DimensionMismatch) when the
/// operands differ in space/order or margin >= N.
double intertwining_residual(const OperatorMatrix& a, const OperatorMatrix& x, cplx lambda,
                             std::size_t margin);

/// Same quantity measured on the leading `block` x `block` corner. Used with
/// truncations built at a larger working order than the block of interest.
double intertwining_residual_block(const OperatorMatrix& a, const OperatorMatrix& x,
                                   cplx lambda, std::size_t block);

// ---------------------------------------------------------------------------
// Eigenvalue ratios

inline constexpr double kRatioDedupTol = 1e-9;

/// All ratios mu_i / mu_j (i, j over the list), deduplicated at relative tolerance.
std::vector<cplx> ratio_set_of(std::span<const cplx> eigenvalues, double dedup_tol = kRatioDedupTol);

/// Ratio set of the truncation's eigenvalues. Throws Error(SingularTruncation)
/// when the truncation is not injective: a zero diagonal entry for an exactly
/// triangular matrix, otherwise smallest singular value <= 1e-12 max(1, ||A||).
std::vector<cplx> ratio_set(const OperatorMatrix& a, double dedup_tol = kRatioDedupTol);

/// min over the list of |lambda - rho|; +inf for an empty list.
double ratio_distance(std::span<const cplx> ratios, cplx lambda);

/// Eigenpairs of the leading `order` block of `wide` whose zero-padded
/// eigenvector v satisfies ||wide v - mu v|| <= tol ||wide||. Eigenvalues of a
/// truncation that survive this test belong to the operator, not to the cut.
std::vector<cplx> certified_eigenvalues(const OperatorMatrix& wide, std::size_t order,
                                        double tol = 1e-8);

// ---------------------------------------------------------------------------
// Sylvester operator X -> A X - lambda X A

inline constexpr std::size_t kMaxSylvesterOrder = 128;

/// Smallest singular value of X -> A X - lambda X A normalized by
/// ||A|| (1 + |lambda|). The Schur form of A is computed once; each lambda then
/// costs a few triangular Sylvester solves (inverse iteration on L^* L).
class SylvesterProbe {
 public:
  /// Throws Error(TooLarge) above kMaxSylvesterOrder.
  explicit SylvesterProbe(const Matrix& a);

  double min_singular_value(cplx lambda) const;
  double normalized(cplx lambda) const;
  double norm_a() const noexcept { return norm_a_; }

 private:
  Matrix t_;
  double norm_a_;
  bool diagonal_ = false;  // normal A: the diagonal bound is the answer
};

double sylvester_min_sv(const OperatorMatrix& a, cplx lambda);

// ---------------------------------------------------------------------------
// Grids and scans

enum class GridShape { Circle, Annulus, Disk };
const char* to_string(GridShape shape) noexcept;

/// Circle: `points` equally spaced on |lambda| = rmax.
/// Annulus: log-spaced rings in [rmin, rmax] times equally spaced angles.
/// Disk: rings at radii rmax k / K, k = 1..K, with ~2 pi k points each; 0 is never a node.
struct GridSpec {
  GridShape shape = GridShape::Circle;
  int points = 360;
  double rmin = 0.5;
  double rmax = 1.0;
};

struct GridPoint {
  cplx lambda;
  double step;  // local spacing to the neighbouring nodes
};

/// Throws Error(EmptyGrid) when the description yields no nodes.
std::vector<GridPoint> make_grid(const GridSpec& spec);

struct ExtCandidate {
  cplx lambda;
  double step = 0.0;
  double ratio_distance = 0.0;
  std::optional<double> sylvester_min_sv;  // absent when not evaluated
  bool flagged = false;
};

/// Explicit witness evidence: a nonzero X with a small intertwining residual at lambda.
struct WitnessProbe {
  cplx lambda;
  std::string witness;
  double residual = 0.0;
  double threshold = 1e-6;
  bool flagged() const noexcept { return residual <= threshold; }
};

struct FlagCluster {
  cplx center;
  std::size_t size = 0;
};

/// Extended spectrum the theorems predict for a symbol/space pair.
struct PredictedExt {
  enum class Kind { DiscreteCyclic, UnitCircle, ClosedPuncturedDisk, AnnulusBounded };
  Kind kind = Kind::UnitCircle;
  cplx base{1.0, 0.0};  // DiscreteCyclic: {base^n : n in Z}
  double inner = 0.0;   // AnnulusBounded
  double outer = 0.0;
  std::string source;   // theorem the prediction comes from

  struct PointSpectrum {
    std::string description;
    double inner = 0.0;  // modulus bounds when the description is an annulus/disk
    double outer = 0.0;
  };
  std::optional<PointSpectrum> point_spectrum;

  /// Distance from lambda to the predicted set (+inf at lambda = 0 for the punctured disk).
  double distance(cplx lambda) const;
};

const char* to_string(PredictedExt::Kind kind) noexcept;

struct ExtScanOptions {
  GridSpec grid;
  double sylvester_threshold = 1e-6;
  std::size_t sylvester_candidates = 50;
  std::size_t full_sylvester_max_order = 48;
  /// Replaces the truncation's raw eigenvalues, e.g. by certified_eigenvalues().
  std::optional<std::vector<cplx>> spectrum;
  std::string spectrum_source = "truncation";
  std::vector<WitnessProbe> probes;
};

struct ExtScanReport {
  std::string label;
  GridSpec grid;
  std::vector<ExtCandidate> candidates;  // grid order
  std::vector<WitnessProbe> probes;
  std::vector<FlagCluster> clusters;
  std::vector<cplx> ratios;
  std::string spectrum_source;
  double conditioning = 0.0;  // sigma_min(A) / ||A||
  bool sylvester_evaluated = false;
  double sylvester_threshold = 1e-6;
  std::optional<PredictedExt> predicted;
  std::vector<std::string> notes;

  std::size_t flagged_count() const;
};

/// Ratio distances at every node; Sylvester minima at every node for
/// N <= full_sylvester_max_order, otherwise at the sylvester_candidates nodes
/// closest to the ratio set. A node is flagged when its ratio distance is at
/// most its step or its normalized Sylvester minimum is at most the threshold.
/// When sigma_min(A)/||A|| is already below the threshold the Sylvester
/// minimum is below it for every lambda, so it is skipped and noted.
ExtScanReport ext_scan(const OperatorMatrix& a, const ExtScanOptions& options);

/// Throws Error(SymbolNotAdmissible) when phi does not act on the space, and
/// Error(Unresolved) for PNA, HNA2 and every Hardy-space symbol.
PredictedExt predicted_ext(const LinearFractionalMap& phi, const SpaceSpec& space);

// ---------------------------------------------------------------------------
// Finite-matrix lemma checks

struct LemmaCheck {
  std::string name;
  bool pass = false;
  double measure = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct LemmaReport {
  std::vector<LemmaCheck> checks;
  bool all_pass() const;
};

/// Hausdorff distance between two finite sets, relative to max(1, |point|).
double set_distance(std::span<const cplx> a, std::span<const cplx> b);

/// Adjoint symmetry, scaling invariance by `scale`, Sylvester/ratio
/// equivalence on ratio points plus seeded off-set probes, exclusion of 0, and
/// direct-sum inclusion against `partner`.
LemmaReport lemma_suite(const OperatorMatrix& a, const OperatorMatrix& partner, cplx scale,
                        std::uint64_t seed);

/// V diag(mu) V^{-1} with seeded complex Gaussian V and |mu| in [0.5, 2].
Matrix random_diagonalizable(std::size_t n, std::uint64_t seed);

struct RichSpectrumReport {
  bool eigenvalues_in_annulus = false;
  std::size_t off_circle_flags = 0;            // flagged nodes farther than a step from |lambda| = 1
  std::size_t off_circle_sylvester_flags = 0;  // of those, flagged by the Sylvester minimum
  bool pass = false;
  std::string caveat;
};

/// Throws Error(BadAnnulus) unless 0 < inner <= outer.
RichSpectrumReport rich_spectrum_annulus_check(const ExtScanReport& scan,
                                               std::span<const cplx> eigenvalues, double inner,
                                               double outer, double tol = 1e-9);

}  // namespace compop
