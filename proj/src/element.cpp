#include "fusion/element.hpp"

#include <sstream>

namespace fusion {

void FusionElement::require_same_ring(const FusionElement& o) const {
    // Ring identity is pointer identity of the shared instance.
    if (ring_.get() != o.ring_.get())
        throw RingMismatchError("elements belong to different rings: " +
                                ring_->name() + " vs " + o.ring_->name());
}

FusionElement FusionElement::operator+(const FusionElement& o) const {
    require_same_ring(o);
    FusionElement r = *this;
    for (const auto& [l, c] : o.coeffs_) r.add(l, c);
    return r;
}

FusionElement FusionElement::operator-(const FusionElement& o) const {
    require_same_ring(o);
    FusionElement r = *this;
    for (const auto& [l, c] : o.coeffs_) r.add(l, CRat(0) - c);
    return r;
}

FusionElement FusionElement::operator*(const FusionElement& o) const {
    require_same_ring(o);
    FusionElement r(ring_);
    for (const auto& [a, ca] : coeffs_) {
        for (const auto& [b, cb] : o.coeffs_) {
            const CRat cab = ca * cb;
            for (const auto& [g, m] : ring_->fuse(a, b).terms)
                r.add(g, cab * CRat(Rat(m)));
        }
    }
    return r;
}

FusionElement FusionElement::scaled(const CRat& c) const {
    FusionElement r(ring_);
    if (c.is_zero()) return r;
    for (const auto& [l, x] : coeffs_) r.set(l, x * c);
    return r;
}

FusionElement FusionElement::star() const {
    FusionElement r(ring_);
    for (const auto& [l, c] : coeffs_) r.add(ring_->conjugate(l), c.conj());
    return r;
}

std::string FusionElement::to_string() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [l, c] : coeffs_) {
        if (!first) os << " + ";
        first = false;
        if (c.is_real()) {
            if (c.re != 1) os << rational_to_string(c.re) << "*";
        } else {
            os << "(" << rational_to_string(c.re) << "+"
               << rational_to_string(c.im) << "i)*";
        }
        os << ring_->label_to_string(l);
    }
    return os.str();
}

} // namespace fusion
