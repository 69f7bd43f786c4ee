#pragma once

#include <functional>
#include <optional>

#include "fusion/ring.hpp"

namespace fusion {

// --- Temperley-Lieb-Jones ---------------------------------------------

// A_infinity tower at index lambda_inv >= 4. Labels H_0, H_1, ... with
// fuse(H_m, H_n) = H_{|m-n|} + ... + H_{m+n} and dim H_n = V_n(lambda_inv).
RingPtr build_tlj_ainf(const Rat& lambda_inv);

// Finite depth tower with principal graph A_{m-1}, index 4 cos^2(pi/m).
// Labels H_0 .. H_p with p = floor((m-2)/2) and the level-(m-2) truncated
// fusion rule.
RingPtr build_tlj_finite(int m);

// Accessors for TLJ-specific data; return nullopt when the ring is not of
// the respective kind.
std::optional<Rat> tlj_lambda_inv(const FusionRing& ring);
std::optional<int> tlj_finite_order(const FusionRing& ring);
double tlj_index(const FusionRing& ring); // lambda_inv as double, either kind

// --- Group rings -------------------------------------------------------

RingPtr build_group_z();
RingPtr build_group_zn(int n);
RingPtr build_group_zd(int d);
RingPtr build_free_group(int generators);

// Finite group from a multiplication table: table[g][h] = g*h, with element
// names for printing. Generators drive the level filtration; empty means
// all non-unit elements.
RingPtr build_group_table(const std::vector<std::vector<int>>& table,
                          const std::vector<std::string>& names,
                          std::vector<int> generators = {});

// --- SU(n) / quantum deformations ---------------------------------------

// Fusion ring of SU(n) (Littlewood-Richardson with n-row truncation and
// column stripping). Dimensions are quantum Weyl dimensions at deformation
// q in (0,1]; q = 1 uses exact integer arithmetic.
RingPtr build_sun(int n, double q);
int sun_rank(const FusionRing& ring); // throws unless built by build_sun

// --- Composites ----------------------------------------------------------

RingPtr build_product(RingPtr a, RingPtr b);
RingPtr build_free_product(RingPtr a, RingPtr b);

// Decodes a free-product word into (factor index, letter) pairs; empty for
// the unit. Throws unless the ring came from build_free_product.
std::vector<std::pair<int, Label>> free_word_letters(const FusionRing& ring,
                                                     const Label& word);
const RingPtr& free_product_factor(const FusionRing& ring, int i);

// --- Full subrings -------------------------------------------------------

class SubringBase : public FusionRing {
  public:
    virtual const RingPtr& parent() const = 0;
    virtual bool contains(const Label& l) const = 0;
};

// Full subring on a membership predicate. Closure under conjugation and
// fusion is validated on all labels up to closure_level; a violation
// raises ValidationError with a witness.
RingPtr make_subring(RingPtr parent, std::function<bool(const Label&)> member,
                     const std::string& name, int closure_level = 4);

} // namespace fusion
