#include "fusion/ring.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace fusion {

FusionOutcome FusionRing::fuse(const Label& a, const Label& b) const {
    check_label(a);
    check_label(b);
    const auto key = std::make_pair(a, b);
    {
        std::shared_lock lock(cache_mutex_);
        auto it = fuse_cache_.find(key);
        if (it != fuse_cache_.end()) return it->second;
    }
    FusionOutcome out = fuse_impl(a, b);
    sort_outcome(out);
    std::unique_lock lock(cache_mutex_);
    return fuse_cache_.emplace(key, std::move(out)).first->second;
}

void FusionRing::sort_outcome(FusionOutcome& out) const {
    std::sort(out.terms.begin(), out.terms.end(),
              [this](const auto& x, const auto& y) {
                  return label_less(x.first, y.first);
              });
}

std::vector<Label> FusionRing::labels_up_to_level(int k) const {
    std::vector<Label> all;
    for (int l = 0; l <= k; ++l) {
        auto shell = labels_of_level(l);
        all.insert(all.end(), shell.begin(), shell.end());
    }
    return all;
}

std::vector<Label> FusionRing::basis_prefix(size_t n) const {
    std::vector<Label> all;
    int l = 0;
    int empty_streak = 0;
    while (all.size() < n) {
        auto shell = labels_of_level(l);
        if (shell.empty()) {
            // Finite rings run out of shells; stop after a safety margin.
            if (++empty_streak > 2 && label_count().has_value()) break;
            if (empty_streak > 64) break;
        } else {
            empty_streak = 0;
            for (auto& s : shell) {
                all.push_back(std::move(s));
                if (all.size() == n) break;
            }
        }
        ++l;
    }
    return all;
}

int64_t FusionRing::mult_word(const Label& gamma,
                              const std::vector<Label>& word) const {
    if (word.empty()) throw ParamError("mult_word: empty word");
    check_label(gamma);
    // Expand left to right, tracking coefficients of the partial product.
    std::map<Label, int64_t> coeffs;
    coeffs[word[0]] = 1;
    check_label(word[0]);
    for (size_t i = 1; i < word.size(); ++i) {
        std::map<Label, int64_t> next;
        for (const auto& [lab, c] : coeffs) {
            for (const auto& [g, m] : fuse(lab, word[i]).terms)
                next[g] += c * m;
        }
        coeffs.swap(next);
    }
    auto it = coeffs.find(gamma);
    return it == coeffs.end() ? 0 : it->second;
}

namespace {

std::string describe(const FusionRing& r, const Label& l) {
    return r.label_to_string(l);
}

void check_dim_hom(const FusionRing& ring, const Label& a, const Label& b) {
    const auto out = ring.fuse(a, b);
    if (ring.rational_dims()) {
        Rat sum = 0;
        for (const auto& [g, m] : out.terms) sum += Rat(m) * *ring.dim_rat(g);
        Rat prod = *ring.dim_rat(a) * *ring.dim_rat(b);
        if (sum != prod)
            throw ValidationError("dimension homomorphism failed exactly at (" +
                                  describe(ring, a) + ", " + describe(ring, b) +
                                  "): sum " + rational_to_string(sum) +
                                  " != " + rational_to_string(prod));
        return;
    }
    double sum = 0;
    for (const auto& [g, m] : out.terms) sum += double(m) * ring.dim(g);
    double prod = ring.dim(a) * ring.dim(b);
    if (std::abs(sum - prod) > 1e-9 * std::max(1.0, std::abs(prod)))
        throw ValidationError("dimension homomorphism failed at (" +
                              describe(ring, a) + ", " + describe(ring, b) +
                              "): sum " + std::to_string(sum) + " vs " +
                              std::to_string(prod));
}

std::map<Label, int64_t> expand_triple(const FusionRing& ring, const Label& a,
                                       const Label& b, const Label& c,
                                       bool left_first) {
    std::map<Label, int64_t> total;
    if (left_first) {
        for (const auto& [g, m] : ring.fuse(a, b).terms)
            for (const auto& [h, n] : ring.fuse(g, c).terms) total[h] += m * n;
    } else {
        for (const auto& [g, m] : ring.fuse(b, c).terms)
            for (const auto& [h, n] : ring.fuse(a, g).terms) total[h] += m * n;
    }
    return total;
}

} // namespace

void validate_ring(const FusionRing& ring, int max_level,
                   int associativity_samples) {
    const Label eps = ring.unit();
    if (ring.level(eps) != 0)
        throw ValidationError("unit must have level 0 in " + ring.name());
    {
        auto d = ring.dim_rat(eps);
        if (d && *d != 1)
            throw ValidationError("dim(unit) != 1 in " + ring.name());
        if (std::abs(ring.dim(eps) - 1.0) > 1e-12)
            throw ValidationError("dim(unit) != 1 in " + ring.name());
    }

    const auto labels = ring.labels_up_to_level(max_level);

    for (const auto& a : labels) {
        const Label abar = ring.conjugate(a);
        if (ring.conjugate(abar) != a)
            throw ValidationError("conjugation not involutive at " +
                                  describe(ring, a));
        if (std::abs(ring.dim(abar) - ring.dim(a)) >
            1e-9 * std::max(1.0, ring.dim(a)))
            throw ValidationError("dim(conj) != dim at " + describe(ring, a));
        if (ring.dim(a) < 1.0 - 1e-9)
            throw ValidationError("dim < 1 at " + describe(ring, a));

        // Unit laws.
        auto ua = ring.fuse(eps, a);
        auto au = ring.fuse(a, eps);
        if (ua.terms.size() != 1 || ua.terms[0].first != a ||
            ua.terms[0].second != 1 || au.terms.size() != 1 ||
            au.terms[0].first != a || au.terms[0].second != 1)
            throw ValidationError("unit law failed at " + describe(ring, a));
    }

    for (const auto& a : labels) {
        const Label abar = ring.conjugate(a);
        for (const auto& b : labels) {
            const auto out = ring.fuse(a, b);
            // mult(eps, a(x)b) = [b == conj(a)]
            int64_t unit_mult = out.mult_of(eps);
            int64_t expected = (b == abar) ? 1 : 0;
            if (unit_mult != expected)
                throw ValidationError(
                    "mult(eps, a(x)b) wrong at (" + describe(ring, a) + ", " +
                    describe(ring, b) + "): got " + std::to_string(unit_mult));

            check_dim_hom(ring, a, b);

            // Frobenius reciprocity on every constituent.
            const Label bbar = ring.conjugate(b);
            for (const auto& [g, m] : out.terms) {
                int64_t m1 = ring.fuse(g, bbar).mult_of(a);
                int64_t m2 = ring.fuse(abar, g).mult_of(b);
                if (m != m1 || m != m2)
                    throw ValidationError(
                        "Frobenius reciprocity failed at (" +
                        describe(ring, a) + ", " + describe(ring, b) + ") -> " +
                        describe(ring, g) + ": " + std::to_string(m) + "/" +
                        std::to_string(m1) + "/" + std::to_string(m2));
            }
        }
    }

    // Associativity on deterministic random triples.
    if (!labels.empty() && associativity_samples > 0) {
        std::mt19937 rng(20240917);
        std::uniform_int_distribution<size_t> pick(0, labels.size() - 1);
        for (int s = 0; s < associativity_samples; ++s) {
            const Label& a = labels[pick(rng)];
            const Label& b = labels[pick(rng)];
            const Label& c = labels[pick(rng)];
            if (expand_triple(ring, a, b, c, true) !=
                expand_triple(ring, a, b, c, false))
                throw ValidationError("associativity failed at (" +
                                      describe(ring, a) + ", " +
                                      describe(ring, b) + ", " +
                                      describe(ring, c) + ")");
        }
    }
}

} // namespace fusion
