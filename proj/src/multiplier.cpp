#include "fusion/multiplier.hpp"

#include <cmath>
#include <shared_mutex>
#include <sstream>
#include <unordered_map>

namespace fusion {

struct Multiplier::Impl {
    RingPtr ring;
    ExactFn exact_fn;  // may be null
    FloatFn float_fn;  // may be null when exact_fn covers it
    bool claimed_cp = false;
    bool finitely_supported = false;

    mutable std::unordered_map<Label, std::complex<double>, LabelHash> fcache;
    mutable std::unordered_map<Label, CRat, LabelHash> ecache;
    mutable std::shared_mutex mutex;
};

Multiplier Multiplier::from_float(RingPtr ring, FloatFn fn, bool claimed_cp,
                                  bool finitely_supported) {
    Multiplier m;
    m.impl_ = std::make_shared<Impl>();
    m.impl_->ring = std::move(ring);
    m.impl_->float_fn = std::move(fn);
    m.impl_->claimed_cp = claimed_cp;
    m.impl_->finitely_supported = finitely_supported;
    return m;
}

Multiplier Multiplier::from_exact(RingPtr ring, ExactFn fn, bool claimed_cp,
                                  bool finitely_supported) {
    Multiplier m;
    m.impl_ = std::make_shared<Impl>();
    m.impl_->ring = std::move(ring);
    m.impl_->exact_fn = std::move(fn);
    m.impl_->claimed_cp = claimed_cp;
    m.impl_->finitely_supported = finitely_supported;
    return m;
}

const RingPtr& Multiplier::ring() const { return impl_->ring; }
bool Multiplier::has_exact() const { return impl_ && impl_->exact_fn != nullptr; }
bool Multiplier::claimed_cp() const { return impl_->claimed_cp; }
bool Multiplier::finitely_supported() const {
    return impl_->finitely_supported;
}

std::complex<double> Multiplier::eval(const Label& l) const {
    impl_->ring->check_label(l);
    {
        std::shared_lock lock(impl_->mutex);
        auto it = impl_->fcache.find(l);
        if (it != impl_->fcache.end()) return it->second;
    }
    std::complex<double> v;
    if (impl_->float_fn)
        v = impl_->float_fn(l);
    else
        v = impl_->exact_fn(l).to_complex();
    std::unique_lock lock(impl_->mutex);
    return impl_->fcache.emplace(l, v).first->second;
}

std::optional<CRat> Multiplier::eval_exact(const Label& l) const {
    if (!impl_->exact_fn) return std::nullopt;
    impl_->ring->check_label(l);
    {
        std::shared_lock lock(impl_->mutex);
        auto it = impl_->ecache.find(l);
        if (it != impl_->ecache.end()) return it->second;
    }
    CRat v = impl_->exact_fn(l);
    std::unique_lock lock(impl_->mutex);
    return impl_->ecache.emplace(l, v).first->second;
}

Multiplier regular_multiplier(RingPtr ring) {
    Label eps = ring->unit();
    return Multiplier::from_exact(
        ring, [eps](const Label& l) { return l == eps ? CRat(1) : CRat(0); },
        /*claimed_cp=*/true, /*finitely_supported=*/true);
}

Multiplier trivial_multiplier(RingPtr ring) {
    return Multiplier::from_exact(
        std::move(ring), [](const Label&) { return CRat(1); },
        /*claimed_cp=*/true, /*finitely_supported=*/false);
}

Multiplier table_multiplier(RingPtr ring, std::map<Label, CRat> values,
                            CRat default_value, bool claimed_cp) {
    for (const auto& [l, v] : values) ring->check_label(l);
    auto table = std::make_shared<std::map<Label, CRat>>(std::move(values));
    bool fin = default_value.is_zero();
    return Multiplier::from_exact(
        std::move(ring),
        [table, default_value](const Label& l) {
            auto it = table->find(l);
            return it == table->end() ? default_value : it->second;
        },
        claimed_cp, fin);
}

std::complex<double> omega(const Multiplier& phi, const FusionElement& x) {
    if (phi.ring().get() != x.ring().get())
        throw RingMismatchError("omega: multiplier and element ring differ");
    std::complex<double> s = 0;
    for (const auto& [l, c] : x.coeffs())
        s += c.to_complex() * phi.ring()->dim(l) * phi.eval(l);
    return s;
}

std::optional<CRat> omega_exact(const Multiplier& phi, const FusionElement& x) {
    if (phi.ring().get() != x.ring().get())
        throw RingMismatchError("omega: multiplier and element ring differ");
    if (!phi.has_exact() || !phi.ring()->rational_dims()) return std::nullopt;
    CRat s(0);
    for (const auto& [l, c] : x.coeffs()) {
        auto d = phi.ring()->dim_rat(l);
        auto v = phi.eval_exact(l);
        if (!d || !v) return std::nullopt;
        s += c * CRat(*d) * *v;
    }
    return s;
}

namespace {

// sum over gamma of phi(gamma) d(gamma) mult(gamma, conj(eta) rho pi),
// with the word expanded through ring fusion.
FusionElement word_element(const RingPtr& ring, const Label& eta_bar,
                           const Label& rho, const Label& pi) {
    FusionElement e = FusionElement::basis(ring, eta_bar);
    e = e * FusionElement::basis(ring, rho);
    e = e * FusionElement::basis(ring, pi);
    return e;
}

} // namespace

Multiplier convolve(const Multiplier& phi, const FusionElement& x,
                    const FusionElement& y) {
    const RingPtr& ring = phi.ring();
    if (ring.get() != x.ring().get() || ring.get() != y.ring().get())
        throw RingMismatchError("convolve: mixed rings");

    // Freeze the support data.
    auto xs = std::make_shared<std::map<Label, CRat>>(x.coeffs());
    auto ys = std::make_shared<std::map<Label, CRat>>(y.coeffs());
    const bool cp = phi.claimed_cp() && x == y;
    const bool fin = phi.finitely_supported();

    if (phi.has_exact() && ring->rational_dims()) {
        auto fn = [ring, phi, xs, ys](const Label& rho) -> CRat {
            CRat total(0);
            for (const auto& [pi, xc] : *xs) {
                for (const auto& [eta, yc] : *ys) {
                    const Label eta_bar = ring->conjugate(eta);
                    FusionElement word = word_element(ring, eta_bar, rho, pi);
                    CRat inner(0);
                    for (const auto& [gamma, mult] : word.coeffs()) {
                        auto pg = phi.eval_exact(gamma);
                        if (!pg)
                            throw EvaluationError(
                                "convolve: no exact value of phi at " +
                                ring->label_to_string(gamma));
                        inner += *pg * CRat(*ring->dim_rat(gamma)) * mult;
                    }
                    total += xc * yc.conj() * inner;
                }
            }
            return total * CRat(Rat(1) / *ring->dim_rat(rho));
        };
        return Multiplier::from_exact(ring, fn, cp, fin);
    }

    auto fn = [ring, phi, xs, ys](const Label& rho) -> std::complex<double> {
        std::complex<double> total = 0;
        for (const auto& [pi, xc] : *xs) {
            for (const auto& [eta, yc] : *ys) {
                const Label eta_bar = ring->conjugate(eta);
                FusionElement word = word_element(ring, eta_bar, rho, pi);
                std::complex<double> inner = 0;
                for (const auto& [gamma, mult] : word.coeffs()) {
                    std::complex<double> pg;
                    try {
                        pg = phi.eval(gamma);
                    } catch (const FusionError& err) {
                        throw EvaluationError(
                            std::string("convolve: evaluating phi at ") +
                            ring->label_to_string(gamma) + ": " + err.what());
                    }
                    inner += pg * ring->dim(gamma) * mult.to_complex();
                }
                total += xc.to_complex() * std::conj(yc.to_complex()) * inner;
            }
        }
        return total / ring->dim(rho);
    };
    return Multiplier::from_float(ring, fn, cp, fin);
}

Multiplier pointwise_product(const Multiplier& a, const Multiplier& b) {
    if (a.ring().get() != b.ring().get())
        throw RingMismatchError("pointwise_product: mixed rings");
    const bool cp = a.claimed_cp() && b.claimed_cp();
    const bool fin = a.finitely_supported() || b.finitely_supported();
    if (a.has_exact() && b.has_exact()) {
        return Multiplier::from_exact(
            a.ring(),
            [a, b](const Label& l) { return *a.eval_exact(l) * *b.eval_exact(l); },
            cp, fin);
    }
    return Multiplier::from_float(
        a.ring(), [a, b](const Label& l) { return a.eval(l) * b.eval(l); }, cp,
        fin);
}

Multiplier scale_multiplier(const Multiplier& phi, const CRat& c) {
    // Positive scaling preserves positivity.
    const bool cp = phi.claimed_cp() && c.is_real() && c.re > 0;
    if (phi.has_exact()) {
        return Multiplier::from_exact(
            phi.ring(), [phi, c](const Label& l) { return c * *phi.eval_exact(l); },
            cp, phi.finitely_supported());
    }
    auto cf = c.to_complex();
    return Multiplier::from_float(
        phi.ring(), [phi, cf](const Label& l) { return cf * phi.eval(l); },
        cp, phi.finitely_supported());
}

namespace {

const SubringBase& as_subring_of(const RingPtr& ring, const RingPtr& subring) {
    auto* sub = dynamic_cast<const SubringBase*>(subring.get());
    if (!sub)
        throw ValidationError("expected a full subring view, got " +
                              subring->name());
    if (sub->parent().get() != ring.get())
        throw RingMismatchError("subring " + subring->name() +
                                " does not sit inside " + ring->name());
    return *sub;
}

} // namespace

Multiplier extend_by_zero(const RingPtr& ring, const RingPtr& subring,
                          const Multiplier& phi_inner) {
    as_subring_of(ring, subring);
    if (phi_inner.ring().get() != subring.get())
        throw RingMismatchError("extend_by_zero: inner multiplier not on subring");
    const bool cp = phi_inner.claimed_cp();
    // The cast was checked above; subring is captured to keep it alive.
    auto* sub = static_cast<const SubringBase*>(subring.get());
    if (phi_inner.has_exact()) {
        auto fn = [subring, sub, phi_inner](const Label& l) -> CRat {
            return sub->contains(l) ? *phi_inner.eval_exact(l) : CRat(0);
        };
        return Multiplier::from_exact(ring, fn, cp,
                                      phi_inner.finitely_supported());
    }
    auto fn = [subring, sub, phi_inner](const Label& l) -> std::complex<double> {
        return sub->contains(l) ? phi_inner.eval(l) : 0.0;
    };
    return Multiplier::from_float(ring, fn, cp, phi_inner.finitely_supported());
}

Multiplier restrict_multiplier(const RingPtr& subring, const Multiplier& phi) {
    as_subring_of(phi.ring(), subring);
    if (phi.has_exact()) {
        return Multiplier::from_exact(
            subring, [phi](const Label& l) { return *phi.eval_exact(l); },
            phi.claimed_cp(), phi.finitely_supported());
    }
    return Multiplier::from_float(
        subring, [phi](const Label& l) { return phi.eval(l); },
        phi.claimed_cp(), phi.finitely_supported());
}

Multiplier free_product_multiplier(const RingPtr& fp_ring,
                                   const Multiplier& phi1,
                                   const Multiplier& phi2, const Rat& r) {
    if (r <= 0 || r > 1) throw ParamError("free product multiplier: r in (0,1]");
    const RingPtr& f0 = free_product_factor(*fp_ring, 0);
    const RingPtr& f1 = free_product_factor(*fp_ring, 1);
    if (phi1.ring().get() != f0.get() || phi2.ring().get() != f1.get())
        throw RingMismatchError(
            "free product multiplier: parts must live on the factors");
    const Multiplier parts[2] = {phi1, phi2};
    for (int i = 0; i < 2; ++i) {
        auto at_unit = parts[i].eval(parts[i].ring()->unit());
        if (std::abs(at_unit - std::complex<double>(1, 0)) > 1e-12)
            throw ParamError("free product multiplier: phi_i(unit) must be 1");
    }
    const bool cp = phi1.claimed_cp() && phi2.claimed_cp();

    if (phi1.has_exact() && phi2.has_exact()) {
        auto fn = [fp_ring, phi1, phi2, r](const Label& w) -> CRat {
            auto letters = free_word_letters(*fp_ring, w);
            CRat v(1);
            Rat rpow = 1;
            for (const auto& [f, letter] : letters) {
                rpow *= r;
                v *= f == 0 ? *phi1.eval_exact(letter) : *phi2.eval_exact(letter);
            }
            return v * CRat(rpow);
        };
        return Multiplier::from_exact(fp_ring, fn, cp, false);
    }
    double rd = to_double(r);
    auto fn = [fp_ring, phi1, phi2, rd](const Label& w) -> std::complex<double> {
        auto letters = free_word_letters(*fp_ring, w);
        std::complex<double> v = 1;
        for (const auto& [f, letter] : letters)
            v *= rd * (f == 0 ? phi1.eval(letter) : phi2.eval(letter));
        return v;
    };
    return Multiplier::from_float(fp_ring, fn, cp, false);
}

Multiplier grade_average(const RingPtr& ring, const GradingMap& grading,
                         const std::map<int, Label>& reps,
                         const Multiplier& phi) {
    if (phi.ring().get() != ring.get())
        throw RingMismatchError("grade_average: multiplier not on ring");
    const int n = grading.modulus;
    if (static_cast<int>(reps.size()) != n)
        throw ValidationError("grade_average: section must have one label per grade");
    for (int s = 0; s < n; ++s) {
        auto it = reps.find(s);
        if (it == reps.end())
            throw ValidationError("grade_average: missing section at grade " +
                                  std::to_string(s));
        ring->check_label(it->second);
        if (grading.value(it->second) % n != s)
            throw ValidationError("grade_average: Xi(reps(" +
                                  std::to_string(s) + ")) != " +
                                  std::to_string(s));
    }
    if (reps.at(0) != ring->unit())
        throw ValidationError("grade_average: reps(0) must be the unit");

    // a' = sum_s d(alpha_s)^{-1} alpha_s. The paper's element is
    // |L|^{-1/2} a'; the |L|^{-1} lands as a final scaling so the exact
    // rational channel survives.
    FusionElement a_prime(ring);
    bool exact = ring->rational_dims() && phi.has_exact();
    if (exact) {
        for (const auto& [s, lab] : reps)
            a_prime.add(lab, CRat(Rat(1) / *ring->dim_rat(lab)));
        Multiplier conv = convolve(phi, a_prime, a_prime);
        return scale_multiplier(conv, CRat(Rat(1, n)));
    }

    // Floating path: unroll phi_{a,a} with double coefficients.
    auto reps_copy = std::make_shared<std::map<int, Label>>(reps);
    auto fn = [ring, phi, reps_copy, n](const Label& rho) {
        std::complex<double> total = 0;
        for (const auto& [s, as] : *reps_copy) {
            for (const auto& [t, at] : *reps_copy) {
                const Label at_bar = ring->conjugate(at);
                FusionElement word =
                    FusionElement::basis(ring, at_bar) *
                    FusionElement::basis(ring, rho) *
                    FusionElement::basis(ring, as);
                std::complex<double> inner = 0;
                for (const auto& [gamma, mult] : word.coeffs())
                    inner += phi.eval(gamma) * ring->dim(gamma) *
                             mult.to_complex();
                total += inner / (ring->dim(as) * ring->dim(at));
            }
        }
        return total / (double(n) * ring->dim(rho));
    };
    return Multiplier::from_float(ring, fn, phi.claimed_cp(), false);
}

} // namespace fusion
