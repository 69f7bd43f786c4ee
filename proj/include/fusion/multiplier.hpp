#pragma once

#include <complex>
#include <functional>
#include <map>
#include <memory>
#include <optional>

#include "fusion/element.hpp"
#include "fusion/grading.hpp"
#include "fusion/ring.hpp"

namespace fusion {

// A function phi : Irr -> C, the coefficient data of a candidate
// cp-multiplier. Evaluation is memoized and deterministic. Exact values are
// carried alongside floating point ones whenever the construction allows it
// (rational ring dimensions and exact inputs); operations preserve the
// exact channel.
class Multiplier {
  public:
    using FloatFn = std::function<std::complex<double>(const Label&)>;
    using ExactFn = std::function<CRat(const Label&)>;

    Multiplier() = default;

    static Multiplier from_float(RingPtr ring, FloatFn fn, bool claimed_cp,
                                 bool finitely_supported);
    static Multiplier from_exact(RingPtr ring, ExactFn fn, bool claimed_cp,
                                 bool finitely_supported);

    bool valid() const { return impl_ != nullptr; }
    const RingPtr& ring() const;
    bool has_exact() const;
    bool claimed_cp() const;
    bool finitely_supported() const;

    std::complex<double> eval(const Label& l) const;
    std::optional<CRat> eval_exact(const Label& l) const;

  private:
    struct Impl;
    std::shared_ptr<Impl> impl_;
};

// delta_eps: the coefficient of the regular representation.
Multiplier regular_multiplier(RingPtr ring);

// Constant 1: the coefficient of the trivial representation eps(a) = d(a).
Multiplier trivial_multiplier(RingPtr ring);

// Finitely supported table with a default value off support.
Multiplier table_multiplier(RingPtr ring, std::map<Label, CRat> values,
                            CRat default_value = CRat(0),
                            bool claimed_cp = false);

// omega_phi(x) = sum_a x_a d(a) phi(a).
std::complex<double> omega(const Multiplier& phi, const FusionElement& x);
std::optional<CRat> omega_exact(const Multiplier& phi, const FusionElement& x);

// phi_{x,y}, characterized by omega_{phi_{x,y}}(a) = omega_phi(y* a x):
//   phi_{x,y}(rho) = d(rho)^{-1} sum_{pi,eta,gamma} x_pi conj(y_eta)
//                    phi(gamma) d(gamma) mult(gamma, conj(eta) rho pi).
// When phi is claimed cp and x == y the result is claimed cp as well.
Multiplier convolve(const Multiplier& phi, const FusionElement& x,
                    const FusionElement& y);

Multiplier pointwise_product(const Multiplier& a, const Multiplier& b);

Multiplier scale_multiplier(const Multiplier& phi, const CRat& c);

// Extension by zero across a full subring (preserves cp), and restriction
// to it. `subring` must come from make_subring / grading_kernel over the
// multiplier's ring.
Multiplier extend_by_zero(const RingPtr& ring, const RingPtr& subring,
                          const Multiplier& phi_inner);
Multiplier restrict_multiplier(const RingPtr& subring, const Multiplier& phi);

// psi(a_1 ... a_d) = r^d prod_k phi_{factor(k)}(a_k) on a free product ring.
// Requires phi_i(unit) = 1 and r in (0, 1].
Multiplier free_product_multiplier(const RingPtr& fp_ring,
                                   const Multiplier& phi1,
                                   const Multiplier& phi2, const Rat& r);

// phi_{a,a} for the grade-averaging element a = |L|^{-1/2} sum_s
// d(alpha_s)^{-1} alpha_s, where reps[s] is a section of the grading.
// Requires reps[0] = unit and Xi(reps[s]) = s.
Multiplier grade_average(const RingPtr& ring, const GradingMap& grading,
                         const std::map<int, Label>& reps,
                         const Multiplier& phi);

} // namespace fusion
