#pragma once

#include <functional>

#include "fusion/rings.hpp"

namespace fusion {

// Z/n-valued grading compatible with fusion: Xi(gamma) = Xi(a) + Xi(b)
// whenever gamma appears in a (x) b, Xi(unit) = 0, Xi(conj a) = -Xi(a).
struct GradingMap {
    int modulus = 1;
    std::function<int(const Label&)> value; // returns a residue in [0, modulus)
};

// Checks the grading axioms on all label pairs up to max_level; throws
// ValidationError with a witness triple otherwise.
void validate_grading(const FusionRing& ring, const GradingMap& grading,
                      int max_level);

// The canonical grading of a ring, when it has one: box count mod n for
// SU(n) (or any divisor modulus), coordinate sum for Z, Z^d, Z/n, exponent
// sum for free groups. Validated before being returned.
GradingMap canonical_grading(const RingPtr& ring, int modulus,
                             int validate_level = 4);

// Xi : Irr -> Z/n for SU(n) with Xi(defining rep) = 1.
GradingMap grading_of_sun(const RingPtr& sun_ring);

// Full subring on the kernel {Xi = 0}. For SU(n) with its canonical grading
// this is the PSU_q(n) fusion ring.
RingPtr grading_kernel(RingPtr ring, const GradingMap& grading,
                       int closure_level = 4);

} // namespace fusion
