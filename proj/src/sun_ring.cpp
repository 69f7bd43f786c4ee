#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "fusion/rings.hpp"

namespace fusion {

namespace {

using Partition = std::vector<int>; // weakly decreasing, >= 0

// Counts Littlewood-Richardson skew tableaux of shape nu/lam with content
// mu: semistandard filling whose reverse reading word is a lattice word.
// Cells are processed right-to-left within each row, top row first, which
// lets the lattice condition be checked incrementally.
class LRCounter {
  public:
    LRCounter(const Partition& lam, const Partition& mu, const Partition& nu)
        : lam_(lam), mu_(mu), nu_(nu) {
        for (size_t r = 0; r < nu_.size(); ++r) {
            int lo = r < lam_.size() ? lam_[r] : 0;
            for (int c = nu_[r] - 1; c >= lo; --c) cells_.emplace_back(r, c);
        }
        counts_.assign(mu_.size() + 1, 0);
        entry_.assign(nu_.size(), std::vector<int>());
        for (size_t r = 0; r < nu_.size(); ++r) entry_[r].assign(nu_[r], 0);
    }

    long long count() {
        total_ = 0;
        fill(0);
        return total_;
    }

  private:
    void fill(size_t idx) {
        if (idx == cells_.size()) {
            ++total_;
            return;
        }
        auto [r, c] = cells_[idx];
        int lo = 1, hi = static_cast<int>(mu_.size());
        // Row weakly increasing: entry(r,c) <= entry(r,c+1).
        if (c + 1 < nu_[r]) hi = std::min(hi, entry_[r][c + 1]);
        // Column strictly increasing within the skew shape.
        if (r > 0 &&
            c >= (static_cast<size_t>(r - 1) < lam_.size() ? lam_[r - 1] : 0))
            lo = std::max(lo, entry_[r - 1][c] + 1);
        for (int e = lo; e <= hi; ++e) {
            if (counts_[e] >= mu_[e - 1]) continue; // content bound
            if (e > 1 && counts_[e] + 1 > counts_[e - 1]) continue; // lattice
            ++counts_[e];
            entry_[r][c] = e;
            fill(idx + 1);
            --counts_[e];
        }
    }

    const Partition& lam_;
    const Partition& mu_;
    const Partition& nu_;
    std::vector<std::pair<int, int>> cells_;
    std::vector<int> counts_;
    std::vector<std::vector<int>> entry_;
    long long total_ = 0;
};

// Enumerates partitions nu containing lam with |nu| = |lam| + extra and at
// most max_rows rows.
void enumerate_supershapes(const Partition& lam, int extra, int max_rows,
                           std::vector<Partition>& out) {
    Partition nu(max_rows, 0);
    std::function<void(int, int)> rec = [&](int row, int remaining) {
        if (row == max_rows) {
            if (remaining == 0) {
                Partition trimmed = nu;
                while (!trimmed.empty() && trimmed.back() == 0)
                    trimmed.pop_back();
                out.push_back(trimmed);
            }
            return;
        }
        int base = row < static_cast<int>(lam.size()) ? lam[row] : 0;
        int cap = row == 0 ? base + remaining
                           : std::min(nu[row - 1], base + remaining);
        for (int v = base; v <= cap; ++v) {
            nu[row] = v;
            rec(row + 1, remaining - (v - base));
        }
        nu[row] = 0;
    };
    rec(0, extra);
}

long long lr_coefficient(const Partition& lam, const Partition& mu,
                         const Partition& nu) {
    long long lam_sz = std::accumulate(lam.begin(), lam.end(), 0LL);
    long long mu_sz = std::accumulate(mu.begin(), mu.end(), 0LL);
    long long nu_sz = std::accumulate(nu.begin(), nu.end(), 0LL);
    if (nu_sz != lam_sz + mu_sz) return 0;
    for (size_t r = 0; r < lam.size(); ++r)
        if (r >= nu.size() || nu[r] < lam[r]) return 0;
    LRCounter counter(lam, mu, nu);
    return counter.count();
}

class SunRing final : public FusionRing {
  public:
    // LR enumeration is kept at desk scale: fusing labels heavier than
    // max_weight raises ParamError.
    static constexpr int kMaxFusionWeight = 24;

    SunRing(int n, double q) : n_(n), q_(q), exact_(q == 1.0) {}

    std::string name() const override {
        std::ostringstream os;
        os << "su(" << n_ << ",q=" << q_ << ")";
        return os.str();
    }
    Label unit() const override {
        return Label{std::vector<int32_t>(n_ - 1, 0)};
    }
    Label conjugate(const Label& a) const override {
        check_label(a);
        // Complement in the (n x lam_1) box, read backwards:
        // conj_i = lam_1 - lam_{n+1-i}.
        const int32_t top = a.code.empty() ? 0 : a.code[0];
        Label r;
        r.code.resize(n_ - 1);
        for (int i = 0; i < n_ - 1; ++i) r.code[i] = top - row(a, n_ - i);
        return r;
    }
    double dim(const Label& a) const override {
        check_label(a);
        if (exact_) return to_double(weyl_dim_exact(a));
        return weyl_dim_q(a);
    }
    std::optional<Rat> dim_rat(const Label& a) const override {
        check_label(a);
        if (!exact_) return std::nullopt;
        return weyl_dim_exact(a);
    }
    int level(const Label& a) const override {
        check_label(a);
        int s = 0;
        for (int v : a.code) s += v;
        return s;
    }
    std::vector<Label> labels_of_level(int k) const override {
        if (k < 0) return {};
        std::vector<Label> out;
        std::vector<int32_t> cur(n_ - 1, 0);
        std::function<void(int, int)> rec = [&](int row, int remaining) {
            if (row == n_ - 1) {
                if (remaining == 0) out.push_back(Label{cur});
                return;
            }
            int cap = row == 0 ? remaining
                               : std::min(remaining, (int)cur[row - 1]);
            for (int v = 0; v <= cap; ++v) {
                cur[row] = v;
                rec(row + 1, remaining - v);
            }
            cur[row] = 0;
        };
        rec(0, k);
        std::sort(out.begin(), out.end());
        return out;
    }
    void check_label(const Label& a) const override {
        if (static_cast<int>(a.code.size()) != n_ - 1)
            throw LabelError("SU(n) label must have n-1 rows");
        for (size_t i = 0; i < a.code.size(); ++i) {
            if (a.code[i] < 0) throw LabelError("negative partition row");
            if (i + 1 < a.code.size() && a.code[i] < a.code[i + 1])
                throw LabelError("partition rows must be weakly decreasing");
        }
    }
    std::string label_to_string(const Label& a) const override {
        check_label(a);
        std::ostringstream os;
        os << "[";
        bool first = true;
        for (int v : a.code) {
            if (v == 0) break;
            if (!first) os << ",";
            os << v;
            first = false;
        }
        os << "]";
        return os.str();
    }
    Label label_from_string(const std::string& s) const override {
        std::string t = s;
        std::erase(t, '[');
        std::erase(t, ']');
        std::erase(t, ' ');
        std::vector<int32_t> rows;
        if (!t.empty()) {
            std::stringstream ss(t);
            std::string item;
            while (std::getline(ss, item, ','))
                try {
                    rows.push_back(std::stoi(item));
                } catch (const std::exception&) {
                    throw LabelError("cannot parse partition '" + s + "'");
                }
        }
        if (static_cast<int>(rows.size()) > n_ - 1)
            throw LabelError("partition has too many rows for SU(" +
                             std::to_string(n_) + ")");
        rows.resize(n_ - 1, 0);
        Label l{std::move(rows)};
        check_label(l);
        return l;
    }

    int rank() const { return n_; }
    double q() const { return q_; }

  protected:
    FusionOutcome fuse_impl(const Label& a, const Label& b) const override {
        if (level(a) > kMaxFusionWeight || level(b) > kMaxFusionWeight)
            throw ParamError("SU(n) fusion weight bound " +
                             std::to_string(kMaxFusionWeight) + " exceeded");
        Partition lam(a.code.begin(), a.code.end());
        Partition mu(b.code.begin(), b.code.end());
        while (!lam.empty() && lam.back() == 0) lam.pop_back();
        while (!mu.empty() && mu.back() == 0) mu.pop_back();
        // c^nu_{lam,mu} is symmetric; fill with the smaller content.
        if (std::accumulate(mu.begin(), mu.end(), 0) >
            std::accumulate(lam.begin(), lam.end(), 0))
            std::swap(lam, mu);

        int extra = std::accumulate(mu.begin(), mu.end(), 0);
        std::vector<Partition> shapes;
        enumerate_supershapes(lam, extra, n_, shapes);

        std::map<Label, int64_t> terms;
        for (const auto& nu : shapes) {
            long long c = lr_coefficient(lam, mu, nu);
            if (c == 0) continue;
            terms[strip_columns(nu)] += c;
        }
        FusionOutcome out;
        for (auto& [l, m] : terms) out.terms.emplace_back(l, m);
        return out;
    }

  private:
    static int32_t row(const Label& a, int i) { // 1-based, padded with 0
        return i <= static_cast<int>(a.code.size()) ? a.code[i - 1] : 0;
    }

    Label strip_columns(const Partition& nu) const {
        int full = static_cast<int>(nu.size()) == n_ ? nu[n_ - 1] : 0;
        std::vector<int32_t> rows(n_ - 1, 0);
        for (int i = 0; i < n_ - 1; ++i)
            rows[i] = (i < static_cast<int>(nu.size()) ? nu[i] : 0) - full;
        return Label{std::move(rows)};
    }

    // Quantum Weyl dimension: prod_{i<j} [lam_i - lam_j + j - i]_q / [j - i]_q.
    Rat weyl_dim_exact(const Label& a) const {
        Rat num = 1, den = 1;
        for (int i = 1; i <= n_; ++i)
            for (int j = i + 1; j <= n_; ++j) {
                num *= row(a, i) - row(a, j) + j - i;
                den *= j - i;
            }
        return num / den;
    }
    double weyl_dim_q(const Label& a) const {
        auto qint = [this](int k) {
            return (std::pow(q_, k) - std::pow(q_, -k)) / (q_ - 1.0 / q_);
        };
        double num = 1, den = 1;
        for (int i = 1; i <= n_; ++i)
            for (int j = i + 1; j <= n_; ++j) {
                num *= qint(row(a, i) - row(a, j) + j - i);
                den *= qint(j - i);
            }
        return num / den;
    }

    int n_;
    double q_;
    bool exact_;
};

} // namespace

RingPtr build_sun(int n, double q) {
    if (n < 2) throw ParamError("SU(n) requires n >= 2");
    if (!(q > 0.0) || q > 1.0) throw ParamError("SU(n) requires q in (0,1]");
    return std::make_shared<SunRing>(n, q);
}

int sun_rank(const FusionRing& ring) {
    if (auto* r = dynamic_cast<const SunRing*>(&ring)) return r->rank();
    throw ParamError("not an SU(n) ring: " + ring.name());
}

} // namespace fusion
