#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "caratheo/momentgeo.hpp"

namespace caratheo {

struct FitConfig {
    double fitTolerance = 1e-9;  // relative to ||s||_inf
    int restarts = 64;
    int maxIterations = 300;
    std::uint64_t seed = 0;
};

struct FitResult {
    AtomicMeasure measure;
    double residual = 0;  // max-norm of momentMap(measure) - s
    bool converged = false;
    int restartsUsed = 0;
};

// Multi-start damped least squares on (C, X) minimizing
// ||S_{k,A}(C,X) - s||^2. Positive fits parameterize c_i = u_i^2; signed
// fits leave the weights free. Non-convergence after all restarts is
// evidence of (numeric) non-representability, never proof.
FitResult fitMeasure(const MomentSeq& s, int k, bool signedFit = false,
                     const FitConfig& cfg = {});

struct CaraEstimate {
    MomentSeq sequence;
    int kMin = 0;    // certified lower bound (1 for nonzero s, or lifted by a
                     // zero certificate)
    int kFound = 0;  // smallest k with a converged fit
    FitResult witness;
};

// Sweeps k upward from 0 until a fit converges; throws DataIntegrityError if
// even k = m fails (s is then numerically not a moment sequence).
// certifiedLowerBound lifts kMin when an independence certificate applies.
CaraEstimate estimateCara(const MomentSeq& s, bool signedFit = false,
                          const FitConfig& cfg = {},
                          int certifiedLowerBound = 0);

struct MaxMassResult {
    std::vector<double> point;
    double cLow = 0;
    double cHigh = 0;
    double cStar = 0;
    double upperBoundUsed = 0;  // e(x)^{-1} L_s(e)
};

// Largest point mass at x over representing measures of s:
// sup { c : s - c s_A(x) in the moment cone }, found by bisection on
// [0, e(x)^{-1} L_s(e)] with the membership test "a k = m positive fit
// converges". e must lie in the span of the basis and be positive at x.
MaxMassResult maxMass(const MomentSeq& s, const std::vector<double>& x,
                      const PolyQ& e, const FitConfig& cfg = {},
                      double massTolerance = 1e-6);

struct FlowConfig {
    enum class Normalization { Unit, FixedRate };
    Normalization normalization = Normalization::Unit;
    // FixedRate: scale the kernel vector so component rateCoordinate of the
    // (C, X) derivative equals rate
    double rate = -2.0;
    int rateCoordinate = 0;
};

struct FlowBreakdown : std::runtime_error {
    double t;
    FlowBreakdown(double t_, const std::string& what)
        : std::runtime_error(what), t(t_) {}
};

struct FlowState {
    double t = 0;
    AtomicMeasure measure;
    double momentDrift = 0;  // max-norm against the initial moments
};

// Integrates the one-parameter family of equal-moment measures: the state
// (C, X) moves along the kernel of DS_{k,A}, which must stay one-dimensional
// (singular-value gap test; FlowBreakdown otherwise). Classical RK4; the
// kernel vector's sign is fixed by continuity with the previous evaluation.
std::vector<FlowState> kernelFlow(const Basis& basis, const AtomicMeasure& mu0,
                                  double t0, double t1, int steps,
                                  const FlowConfig& fcfg = {});

struct WaringResult {
    AtomicMeasure measure;           // signed atoms (c_i, lambda_i)
    double reconstructionError = 0;  // max coefficient deviation of
                                     // sum c_i (lambda_i . x)^{2d} from f
    CaraEstimate estimate;
};

// Signed decomposition of an even-degree form into powers of linear forms,
// via the moment functional s_alpha = coeff(f, alpha) / gamma_alpha of the
// apolar pairing and a signed Caratheodory estimate.
WaringResult waringDecompose(const PolyQ& f, const FitConfig& cfg = {});

}  // namespace caratheo
