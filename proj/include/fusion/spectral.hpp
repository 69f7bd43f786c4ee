#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "fusion/element.hpp"
#include "fusion/rings.hpp"

namespace fusion {

// Compression of the regular representation Theta_0 to the span of the
// first N basis labels (canonical level-then-code order).
struct TruncatedRegularRep {
    RingPtr ring;
    Label generator;
    std::vector<Label> basis;
    // Column-major sparse entries: cols[b] holds (row, mult(gamma_row,
    // alpha (x) beta_b)). Exact nonnegative integers.
    std::vector<std::vector<std::pair<int, int64_t>>> cols;

    bool symmetric() const;
    std::vector<std::vector<int64_t>> dense() const;
};

// Requires conj(alpha) = alpha so the compression is symmetric.
TruncatedRegularRep truncated_matrix(const RingPtr& ring, const Label& alpha,
                                     int N);

// Spectral lower bounds from compressions of Theta_0(x) at sizes
// N/4, N/2, N. Estimates are Rayleigh quotients from deterministic power
// iteration (all-ones start) and never exceed the true norm.
struct NormEstimate {
    std::vector<std::pair<int, double>> lower_bounds;
    double estimate = 0;
    double convergence_gap = 0;
    bool converged = false;
    // True when x was not self-adjoint and the estimate came from
    // sqrt(||Theta_0(x* x)||) on the compression.
    bool squared = false;
    int iterations = 0;
};

NormEstimate norm_estimate(const RingPtr& ring, const FusionElement& x, int N,
                           int max_iterations = 0 /* 10 N */,
                           double tol = 1e-12);

// Dense compression of Theta_0(x) to the first N basis labels.
std::vector<std::vector<std::complex<double>>> element_matrix_dense(
    const RingPtr& ring, const FusionElement& x, int N);

struct AmenabilityReport {
    enum class Verdict { AmenableWithinTol, GapDetected, Undetermined };
    double estimate = 0;       // lower bound for ||Theta_0(x)||
    double dimension = 0;      // eps(x) = sum x_a d(a)
    double relative_gap = 0;   // (dimension - norm) / dimension when known
    Verdict verdict = Verdict::Undetermined;
    std::optional<double> upper_bound; // exact/certified value when available
    bool exact_equality = false;       // symbolically certified ||.|| = d
    std::string method;

    std::string verdict_name() const;
};

// Kesten-type test ||Theta_0(x)|| = eps(x). GapDetected only when a
// certified upper bound below eps(x) exists (TLJ: the reduced norm as a
// polynomial sup; finite rings: full eigensolve plus, for finite TLJ with
// generator H_1, an exact Perron certificate in Q(2 cos(2 pi / m))).
AmenabilityReport amenability_report(const RingPtr& ring,
                                     const FusionElement& generator, int N,
                                     double tol);

// --- exact algebra for the finite-depth certificate -------------------------

// Cyclotomic polynomial Phi_m, exact integer coefficients (ascending).
std::vector<Rat> cyclotomic(int m);

// Minimal polynomial of 2 cos(2 pi / m) over Q (ascending coefficients).
std::vector<Rat> cos2pi_minimal_poly(int m);

// Verifies symbolically that the fusion matrix M of H_1 in tlj_finite(m)
// satisfies M v = d(H_1) v for the positive dimension vector v, computed in
// Q[u]/(minpoly of 2 cos(2 pi/m)); with M irreducible this pins
// ||Theta_0(H_1)|| = d(H_1) exactly (Perron-Frobenius).
bool tlj_finite_norm_certificate(int m);

} // namespace fusion
