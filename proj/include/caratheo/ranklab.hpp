#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>

#include "caratheo/momentgeo.hpp"

namespace caratheo {

struct NAReport {
    int nA = 0;
    bool closedForm = false;
    int lowerBound = 0;
    std::optional<AtomicMeasureQ> witness;  // full-rank configuration, if probed
};

struct ProbeExhausted : std::runtime_error {
    int bestRank;
    int target;
    ProbeExhausted(int best, int tgt)
        : std::runtime_error("naProbe: no k up to max-k reached full rank"),
          bestRank(best), target(tgt) {}
};

// ceil(m/(n+1)); ceil(m/n) for a homogeneous basis.
int naLowerBound(const Basis& basis);

// Smallest k <= maxK with rank DS_{k,A} = m at some probed exact rational
// configuration. A single full-rank success certifies N_A <= k; for smaller
// k, `trials` random integer configurations all failing full rank is
// probabilistic evidence only. Weights are fixed at 1 (column scaling cannot
// change the rank). Homogeneous bases are probed on the affine chart with
// last coordinate 1; the last partial column is a combination of the others
// and is dropped.
NAReport naProbe(const Basis& basis, int maxK, int trials = 3,
                 std::uint64_t seed = 0);

// Alexander-Hirschowitz closed form: ceil(C(n+d,n)/(n+1)) with the five
// exceptional cases. With homogeneous=true the input is read as B_{n,d},
// which has the same value as A_{n-1,d}.
int naClosedForm(int n, int d, bool homogeneous = false);

// exact rank of DS_{k,A} at an exact configuration
int jacobianRank(const Basis& basis, const AtomicMeasureQ& mu);

}  // namespace caratheo
