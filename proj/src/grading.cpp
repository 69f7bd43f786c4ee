#include "fusion/grading.hpp"

#include <numeric>

namespace fusion {

namespace {

int mod(long long v, int n) {
    int r = static_cast<int>(v % n);
    return r < 0 ? r + n : r;
}

} // namespace

void validate_grading(const FusionRing& ring, const GradingMap& grading,
                      int max_level) {
    if (grading.modulus < 1) throw ParamError("grading modulus must be >= 1");
    const int n = grading.modulus;
    if (grading.value(ring.unit()) % n != 0)
        throw ValidationError("grading: Xi(unit) != 0");
    auto labels = ring.labels_up_to_level(max_level);
    for (const auto& a : labels) {
        int xa = mod(grading.value(a), n);
        int xc = mod(grading.value(ring.conjugate(a)), n);
        if (mod(xa + xc, n) != 0)
            throw ValidationError("grading: Xi(conj) != -Xi at " +
                                  ring.label_to_string(a));
        for (const auto& b : labels) {
            int xb = mod(grading.value(b), n);
            for (const auto& [g, m] : ring.fuse(a, b).terms) {
                if (mod(grading.value(g), n) != mod(xa + xb, n))
                    throw ValidationError(
                        "grading inconsistent on fusion triple (" +
                        ring.label_to_string(a) + ", " +
                        ring.label_to_string(b) + ") -> " +
                        ring.label_to_string(g));
            }
        }
    }
}

GradingMap canonical_grading(const RingPtr& ring, int modulus,
                             int validate_level) {
    if (modulus < 1) throw ParamError("grading modulus must be >= 1");
    GradingMap g;
    g.modulus = modulus;
    const std::string name = ring->name();
    if (name.rfind("su(", 0) == 0) {
        // box count of the stripped partition
        g.value = [modulus](const Label& l) {
            long long s = 0;
            for (int v : l.code) s += v;
            return mod(s, modulus);
        };
    } else if (name.rfind("group(F", 0) == 0) {
        // exponent sum: each letter contributes +-1
        g.value = [modulus](const Label& l) {
            long long s = 0;
            for (int v : l.code) s += v > 0 ? 1 : (v < 0 ? -1 : 0);
            return mod(s, modulus);
        };
    } else if (name.rfind("group(Z", 0) == 0) {
        // Z, Z^d, Z/n: the code entries are the exponents themselves
        g.value = [modulus](const Label& l) {
            long long s = 0;
            for (int v : l.code) s += v;
            return mod(s, modulus);
        };
    } else {
        throw ParamError("no canonical grading for " + name);
    }
    validate_grading(*ring, g, validate_level);
    return g;
}

GradingMap grading_of_sun(const RingPtr& sun_ring) {
    return canonical_grading(sun_ring, sun_rank(*sun_ring));
}

RingPtr grading_kernel(RingPtr ring, const GradingMap& grading,
                       int closure_level) {
    validate_grading(*ring, grading, std::min(closure_level, 4));
    auto value = grading.value;
    const int n = grading.modulus;
    return make_subring(
        std::move(ring),
        [value, n](const Label& l) { return value(l) % n == 0; },
        "kernel(Xi mod " + std::to_string(n) + ")", closure_level);
}

} // namespace fusion
