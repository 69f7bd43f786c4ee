#pragma once

#include <map>
#include <vector>

#include "fusion/ring.hpp"

namespace fusion {

// Finitely supported element of the fusion *-algebra C[Irr]. Coefficients
// are exact complex rationals; zero coefficients are pruned.
class FusionElement {
  public:
    explicit FusionElement(RingPtr ring) : ring_(std::move(ring)) {}

    static FusionElement basis(RingPtr ring, const Label& l,
                               const CRat& coeff = CRat(1)) {
        ring->check_label(l);
        FusionElement e(std::move(ring));
        e.set(l, coeff);
        return e;
    }
    static FusionElement unit_element(RingPtr ring) {
        Label e = ring->unit();
        return basis(std::move(ring), e);
    }

    const RingPtr& ring() const { return ring_; }
    const std::map<Label, CRat>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    size_t support_size() const { return coeffs_.size(); }

    CRat coeff(const Label& l) const {
        auto it = coeffs_.find(l);
        return it == coeffs_.end() ? CRat() : it->second;
    }
    void set(const Label& l, const CRat& c) {
        if (c.is_zero())
            coeffs_.erase(l);
        else
            coeffs_[l] = c;
    }
    void add(const Label& l, const CRat& c) { set(l, coeff(l) + c); }

    int max_level() const {
        int m = 0;
        for (const auto& [l, c] : coeffs_) m = std::max(m, ring_->level(l));
        return m;
    }

    FusionElement operator+(const FusionElement& o) const;
    FusionElement operator-(const FusionElement& o) const;
    FusionElement operator*(const FusionElement& o) const; // fusion product
    FusionElement scaled(const CRat& c) const;
    FusionElement star() const; // conjugate-linear anti-homomorphism

    friend bool operator==(const FusionElement& a, const FusionElement& b) {
        return a.coeffs_ == b.coeffs_;
    }

    std::string to_string() const;

  private:
    void require_same_ring(const FusionElement& o) const;

    RingPtr ring_;
    std::map<Label, CRat> coeffs_;
};

} // namespace fusion
