#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "fusion/chebyshev.hpp"
#include "fusion/multiplier.hpp"
#include "fusion/rings.hpp"

namespace fusion {

// --- point multipliers and measures ---------------------------------------

// phi_t(H_n) = V_n(t) / V_n(lambda_inv). Admissibility of the point t is
// decided separately; t is unrestricted here.
Multiplier phi_point(const RingPtr& tlj, const Rat& t);
Multiplier phi_point_float(const RingPtr& tlj, double t);

struct MeasureAtom {
    Rat t;
    Rat w;
};

// phi(H_n) = sum_i w_i phi_{t_i}(H_n) for atoms t_i in [0, lambda_inv],
// w_i > 0 summing to 1. Always admissible.
Multiplier multiplier_from_measure(const RingPtr& tlj,
                                   const std::vector<MeasureAtom>& atoms);

// --- moment transform ------------------------------------------------------

// X^k = sum_n c_{k,n} H_n in the fusion algebra, X = H_0 + H_1. The
// coefficients are nonnegative integers, computed by iterated element
// multiplication in an A_infinity TLJ ring (they do not depend on the index).
std::vector<Rat> monomial_coefficients(int k);

struct MomentSequence {
    Rat lambda_inv;
    std::vector<double> values;            // m_0 .. m_N
    std::optional<std::vector<Rat>> exact; // set when fully rational
    std::string provenance;

    int count() const { return static_cast<int>(values.size()); }
};

// m_k = omega_phi(X^k) = sum_n c_{k,n} V_n(lambda_inv) phi(H_n),
// k = 0 .. count-1. Rejects multipliers with non-real moments.
MomentSequence moments(const Multiplier& phi, int count);

// --- truncated moment-problem certificates ---------------------------------

struct HankelTriple {
    // H0 = [m_{i+j}], H1 = [m_{i+j+1}], H2 = lambda_inv * H0 - H1,
    // all of size (level+1) x (level+1).
    int level;
    std::vector<std::vector<double>> h0, h1, h2;
    std::optional<std::vector<std::vector<Rat>>> h0x, h1x, h2x;
};

HankelTriple hankel_triple(const MomentSequence& m, int level);

struct RejectWitness {
    std::string matrix_id; // "H0", "H1" or "H2"
    int level;
    double min_eigenvalue;
    std::vector<double> eigenvector;
};

struct AdmissibilityVerdict {
    enum class Kind { Admissible, Rejected, Inconclusive };
    Kind kind;
    int level;
    bool exact_mode;
    std::optional<RejectWitness> witness;

    bool rejected() const { return kind == Kind::Rejected; }
    std::string kind_name() const;
};

// Checks the three PSD conditions at level N (principal submatrices are
// covered automatically). Rejected is conclusive; Admissible(N) is a
// bounded-level certificate. In exact mode the PSD decisions are made by
// rational LDL and Inconclusive cannot occur.
AdmissibilityVerdict admissibility(const MomentSequence& m, int N, double tol);

// Exact PSD test for a symmetric rational matrix (LDL with diagonal
// pivoting). Exposed for tests.
bool rational_psd(std::vector<std::vector<Rat>> a);

// --- L1 range of point evaluations (|V_n(t)| <= V_n(lambda_inv)) ----------

struct L1RangeResult {
    bool ok;
    int first_violation; // -1 when ok
    double lhs, rhs;     // |V_n(t)| and V_n(lambda_inv) at the violation
};

L1RangeResult l1_range_check(const Rat& lambda_inv, const Rat& t, int n_max);

// --- Plancherel measure -----------------------------------------------------

struct QuadratureParams {
    int points = 2048;
    double tol = 1e-8;
};

// int_0^4 V_n V_m dmu with mu the probability measure of density
// (1/(2pi)) sqrt((4-t)/t); evaluated through t = 2 - 2 cos u, which removes
// the endpoint singularity. Raises NumericError (with the achieved value)
// when two grid refinements disagree beyond tol.
double plancherel_pair(int n, int m, QuadratureParams params = {});

// --- polynomial picture and norms -------------------------------------------

// Coefficients of P_x(t) = sum_n x_n V_n(t) indexed by n.
std::vector<std::complex<double>> to_polynomial(const FusionElement& x);

// sup |P_x| over [0, lambda_inv] resp. [0, 4] (Chebyshev grid plus local
// derivative refinement; endpoints evaluated exactly).
double universal_norm(const FusionElement& x, double lambda_inv);
double reduced_norm(const FusionElement& x);

// sum_n |x_n| d(H_n): the trivial upper bound for both norms.
double l1_bound(const FusionElement& x);

} // namespace fusion
