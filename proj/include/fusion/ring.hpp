#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "fusion/numeric.hpp"

namespace fusion {

// Canonical encoding of an irreducible label. The meaning of the integers is
// ring-specific (TLJ index, group element, partition, flattened word, ...);
// equality of codes is isomorphism of irreducibles.
struct Label {
    std::vector<int32_t> code;

    friend bool operator==(const Label& a, const Label& b) {
        return a.code == b.code;
    }
    friend bool operator!=(const Label& a, const Label& b) {
        return !(a == b);
    }
    friend bool operator<(const Label& a, const Label& b) {
        return a.code < b.code;
    }
};

struct LabelHash {
    size_t operator()(const Label& l) const {
        size_t h = 1469598103934665603ull;
        for (int32_t v : l.code) {
            h ^= static_cast<size_t>(static_cast<uint32_t>(v));
            h *= 1099511628211ull;
        }
        return h;
    }
};

// Decomposition of a tensor product into irreducibles with multiplicities.
// Labels are distinct and sorted canonically (level, then code).
struct FusionOutcome {
    std::vector<std::pair<Label, int64_t>> terms;

    int64_t mult_of(const Label& l) const {
        for (const auto& [lab, m] : terms)
            if (lab == l) return m;
        return 0;
    }
};

// A fusion ring (hypergroup): irreducible labels with unit, conjugation,
// fusion multiplicities and a dimension function. Instances are immutable
// after construction; fusion results are memoized internally.
class FusionRing {
  public:
    virtual ~FusionRing() = default;

    virtual std::string name() const = 0;
    virtual Label unit() const = 0;
    virtual Label conjugate(const Label& a) const = 0;
    virtual double dim(const Label& a) const = 0;

    // Exact dimension when the ring parameters are rational; nullopt
    // otherwise. Rings either support this for all labels or for none.
    virtual std::optional<Rat> dim_rat(const Label& a) const {
        (void)a;
        return std::nullopt;
    }
    bool rational_dims() const { return dim_rat(unit()).has_value(); }

    // Filtration by minimal word length in the ring's generators. Drives
    // deterministic truncations and the canonical label order.
    virtual int level(const Label& a) const = 0;

    // All labels of the given exact level, sorted by code. Empty when the
    // ring has no labels at that level.
    virtual std::vector<Label> labels_of_level(int k) const = 0;

    // Finite rings know their size; infinite rings return nullopt.
    virtual std::optional<size_t> label_count() const { return std::nullopt; }

    virtual void check_label(const Label& a) const = 0;

    virtual std::string label_to_string(const Label& a) const = 0;
    virtual Label label_from_string(const std::string& s) const = 0;

    FusionOutcome fuse(const Label& a, const Label& b) const;

    // Canonical order: by level, then lexicographic on the encoding.
    bool label_less(const Label& a, const Label& b) const {
        int la = level(a), lb = level(b);
        if (la != lb) return la < lb;
        return a.code < b.code;
    }

    // All labels of level <= k, canonically ordered.
    std::vector<Label> labels_up_to_level(int k) const;

    // First n labels in canonical order (fewer when the ring is smaller).
    std::vector<Label> basis_prefix(size_t n) const;

    // mult(gamma, w_1 (x) ... (x) w_d), independent of association order.
    int64_t mult_word(const Label& gamma, const std::vector<Label>& word) const;

  protected:
    virtual FusionOutcome fuse_impl(const Label& a, const Label& b) const = 0;

    void sort_outcome(FusionOutcome& out) const;

  private:
    struct PairHash {
        size_t operator()(const std::pair<Label, Label>& p) const {
            LabelHash h;
            return h(p.first) * 31 + h(p.second);
        }
    };
    mutable std::unordered_map<std::pair<Label, Label>, FusionOutcome, PairHash>
        fuse_cache_;
    mutable std::shared_mutex cache_mutex_;
};

using RingPtr = std::shared_ptr<const FusionRing>;

// Runs the structural invariant suite on all labels up to the given level:
// unit laws, involution, Frobenius reciprocity, dimension homomorphism,
// mult(eps, a(x)b) = [b == conj(a)], and sampled associativity.
// Throws ValidationError with a witness on the first failure.
void validate_ring(const FusionRing& ring, int max_level,
                   int associativity_samples = 64);

} // namespace fusion
