#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "compop/extspec.hpp"

namespace compop {

/// Intertwiner candidates accepted by extcheck:
///   identity | shift:k | sigma-shift:c,k | qdiff:m | qmult-shifted:tau,m
///   mult:monomial,k | mult:sigma,c,k | mult:binomial,w | mult:cayley,w | mult:parabolic,t
struct WitnessSpec {
  enum class Kind { Identity, Shift, SigmaShift, Mult, QDiff, QMultShifted };
  enum class Family { None, Monomial, Sigma, Binomial, Cayley, Parabolic };

  Kind kind = Kind::Identity;
  Family family = Family::None;
  std::size_t k = 0;  // shift amount, power, or monomial/sigma degree
  cplx center{0.0, 0.0};
  cplx tau{0.0, 0.0};
  cplx param{0.0, 0.0};  // binomial/cayley exponent, parabolic t

  /// Multiplier symbol whose Taylor series does not terminate.
  bool transcendental() const noexcept;
  std::string text() const;
};

/// Throws Error(ParseError) for malformed text.
WitnessSpec parse_witness(const std::string& text);

/// Truncation of the witness at `order`. Throws WrongSpace (qdiff/qmult off
/// Fock), BadShift, CenterOutsideDisk, NegativeParameter.
OperatorMatrix build_witness(const WitnessSpec& w, const SpaceSpec& space, std::size_t order);

inline constexpr std::size_t kOversampleFactor = 8;

/// Whether residuals of (phi, witness) need truncations wider than N. A
/// non-affine phi, or a transcendental multiplier with phi(0) != 0, mixes
/// high monomials into the leading block, so the N x N product is not the
/// leading block of the operator product.
bool needs_oversampling(const LinearFractionalMap& phi, const WitnessSpec& w);

struct ExtCheckResult {
  WitnessSpec witness;
  cplx lambda;
  std::size_t order = 0;
  std::size_t margin = 0;
  std::size_t working_order = 0;  // == order unless oversampled
  double residual = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

/// Residual of C_phi X - lambda X C_phi on the leading (N - margin) block.
/// With oversampling both operators are built at kOversampleFactor * N and the
/// residual is normalized by the norms of those wider truncations.
ExtCheckResult ext_check(const LinearFractionalMap& phi, const SpaceSpec& space, std::size_t order,
                         cplx lambda, const WitnessSpec& witness, std::size_t margin,
                         double threshold, std::optional<bool> oversample = std::nullopt);

struct VerifyRow {
  std::string theorem;  // short tag for the statement being exercised
  std::string check;    // residual | series | scan
  std::string witness;
  cplx lambda;
  std::size_t margin = 0;
  std::size_t working_order = 0;
  double value = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

struct VerifyOptions {
  std::optional<GridSpec> grid;
  double sylvester_threshold = 1e-6;
  std::optional<bool> oversample;  // default: needs_oversampling()
};

struct VerifyReport {
  LftKind kind = LftKind::Identity;
  std::string family;  // witness family the suite dispatched to
  SpaceSpec space = SpaceSpec::bergman();
  std::size_t order = 0;
  std::vector<VerifyRow> rows;
  ExtScanReport scan;
  bool all_pass() const;
};

/// Explicit witnesses for the symbol's class, their residuals, and a scan
/// compared against predicted_ext. Throws Error(Unresolved) for classes (or
/// non-standard placements of fixed points) no witness family covers, and
/// for every Hardy-space symbol.
VerifyReport verify_theorem_suite(const LinearFractionalMap& phi, const SpaceSpec& space,
                                  std::size_t order, const VerifyOptions& options = {});

/// Scan grid used by verify for a class when none is given.
GridSpec default_grid(LftKind kind, const SpaceSpec& space, const LinearFractionalMap& phi);

}  // namespace compop
