#include <cmath>
#include <mutex>

#include "fusion/chebyshev.hpp"
#include "fusion/rings.hpp"

namespace fusion {

namespace {

Label tlj_label(int n) { return Label{{n}}; }

int tlj_index_of(const Label& l) { return l.code[0]; }

std::string tlj_to_string(const Label& l) {
    return "H" + std::to_string(tlj_index_of(l));
}

Label tlj_from_string(const std::string& s) {
    size_t pos = 0;
    if (!s.empty() && (s[0] == 'H' || s[0] == 'h')) pos = 1;
    try {
        int n = std::stoi(s.substr(pos));
        if (n < 0) throw LabelError("negative TLJ index in '" + s + "'");
        return tlj_label(n);
    } catch (const std::exception&) {
        throw LabelError("cannot parse TLJ label '" + s + "'");
    }
}

class TljAInfRing final : public FusionRing {
  public:
    explicit TljAInfRing(Rat lambda_inv)
        : lambda_inv_(std::move(lambda_inv)),
          lambda_inv_d_(to_double(lambda_inv_)) {}

    std::string name() const override {
        return "tlj_ainf(lambda_inv=" + rational_to_string(lambda_inv_) + ")";
    }
    Label unit() const override { return tlj_label(0); }
    Label conjugate(const Label& a) const override {
        check_label(a);
        return a; // all TLJ objects are self-conjugate
    }
    double dim(const Label& a) const override {
        check_label(a);
        return to_double(dim_exact(tlj_index_of(a)));
    }
    std::optional<Rat> dim_rat(const Label& a) const override {
        check_label(a);
        return dim_exact(tlj_index_of(a));
    }
    int level(const Label& a) const override {
        check_label(a);
        return tlj_index_of(a);
    }
    std::vector<Label> labels_of_level(int k) const override {
        if (k < 0) return {};
        return {tlj_label(k)};
    }
    void check_label(const Label& a) const override {
        if (a.code.size() != 1 || a.code[0] < 0)
            throw LabelError("not a TLJ label");
    }
    std::string label_to_string(const Label& a) const override {
        check_label(a);
        return tlj_to_string(a);
    }
    Label label_from_string(const std::string& s) const override {
        Label l = tlj_from_string(s);
        check_label(l);
        return l;
    }

    const Rat& lambda_inv() const { return lambda_inv_; }
    double lambda_inv_double() const { return lambda_inv_d_; }

  protected:
    FusionOutcome fuse_impl(const Label& a, const Label& b) const override {
        const int m = tlj_index_of(a), n = tlj_index_of(b);
        FusionOutcome out;
        for (int k = std::abs(m - n); k <= m + n; ++k)
            out.terms.emplace_back(tlj_label(k), 1);
        return out;
    }

  private:
    Rat dim_exact(int n) const {
        std::lock_guard lock(dim_mutex_);
        while (static_cast<int>(dims_.size()) <= n) {
            if (dims_.empty()) {
                dims_.push_back(1);
            } else if (dims_.size() == 1) {
                dims_.push_back(lambda_inv_ - 1);
            } else {
                size_t k = dims_.size();
                dims_.push_back((lambda_inv_ - 2) * dims_[k - 1] -
                                dims_[k - 2]);
            }
        }
        return dims_[n];
    }

    Rat lambda_inv_;
    double lambda_inv_d_;
    mutable std::vector<Rat> dims_;
    mutable std::mutex dim_mutex_;
};

class TljFiniteRing final : public FusionRing {
  public:
    explicit TljFiniteRing(int m) : m_(m), depth_(m - 2), pmax_((m - 2) / 2) {
        const double s = std::sin(M_PI / m_);
        for (int j = 0; j <= pmax_; ++j)
            dims_.push_back(std::sin((2 * j + 1) * M_PI / m_) / s);
    }

    std::string name() const override {
        return "tlj_finite(m=" + std::to_string(m_) + ")";
    }
    Label unit() const override { return tlj_label(0); }
    Label conjugate(const Label& a) const override {
        check_label(a);
        return a;
    }
    double dim(const Label& a) const override {
        check_label(a);
        return dims_[tlj_index_of(a)];
    }
    std::optional<Rat> dim_rat(const Label& a) const override {
        check_label(a);
        // Rational exactly when the index is rational: m = 3, 4, 6.
        if (m_ == 3 || m_ == 4) return Rat(1);
        if (m_ == 6) return tlj_index_of(a) == 1 ? Rat(2) : Rat(1);
        return std::nullopt;
    }
    int level(const Label& a) const override {
        check_label(a);
        return tlj_index_of(a);
    }
    std::vector<Label> labels_of_level(int k) const override {
        if (k < 0 || k > pmax_) return {};
        return {tlj_label(k)};
    }
    std::optional<size_t> label_count() const override { return pmax_ + 1; }
    void check_label(const Label& a) const override {
        if (a.code.size() != 1 || a.code[0] < 0 || a.code[0] > pmax_)
            throw LabelError("not a label of " + name());
    }
    std::string label_to_string(const Label& a) const override {
        check_label(a);
        return tlj_to_string(a);
    }
    Label label_from_string(const std::string& s) const override {
        Label l = tlj_from_string(s);
        check_label(l);
        return l;
    }

    int order() const { return m_; }
    double lambda_inv_double() const {
        const double c = std::cos(M_PI / m_);
        return 4 * c * c;
    }

  protected:
    FusionOutcome fuse_impl(const Label& a, const Label& b) const override {
        const int x = tlj_index_of(a), y = tlj_index_of(b);
        FusionOutcome out;
        const int hi = std::min(x + y, depth_ - x - y);
        for (int k = std::abs(x - y); k <= hi; ++k)
            out.terms.emplace_back(tlj_label(k), 1);
        return out;
    }

  private:
    int m_;
    int depth_;
    int pmax_;
    std::vector<double> dims_;
};

} // namespace

RingPtr build_tlj_ainf(const Rat& lambda_inv) {
    if (lambda_inv < 4)
        throw ParamError(
            "tlj_ainf requires lambda_inv >= 4; for index 4 cos^2(pi/m) < 4 "
            "use tlj_finite(m)");
    return std::make_shared<TljAInfRing>(lambda_inv);
}

RingPtr build_tlj_finite(int m) {
    if (m < 3) throw ParamError("tlj_finite requires m >= 3");
    return std::make_shared<TljFiniteRing>(m);
}

std::optional<Rat> tlj_lambda_inv(const FusionRing& ring) {
    if (auto* r = dynamic_cast<const TljAInfRing*>(&ring))
        return r->lambda_inv();
    return std::nullopt;
}

std::optional<int> tlj_finite_order(const FusionRing& ring) {
    if (auto* r = dynamic_cast<const TljFiniteRing*>(&ring))
        return r->order();
    return std::nullopt;
}

double tlj_index(const FusionRing& ring) {
    if (auto* r = dynamic_cast<const TljAInfRing*>(&ring))
        return r->lambda_inv_double();
    if (auto* r = dynamic_cast<const TljFiniteRing*>(&ring))
        return r->lambda_inv_double();
    throw ParamError("not a TLJ ring: " + ring.name());
}

} // namespace fusion
