#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#include "fusion/rings.hpp"

namespace fusion {

namespace {

// --- product ring --------------------------------------------------------
// Code layout: [len(code1), code1..., code2...]

class ProductRing final : public FusionRing {
  public:
    ProductRing(RingPtr a, RingPtr b) : a_(std::move(a)), b_(std::move(b)) {}

    std::string name() const override {
        return "product(" + a_->name() + ", " + b_->name() + ")";
    }
    Label unit() const override { return encode(a_->unit(), b_->unit()); }
    Label conjugate(const Label& l) const override {
        auto [x, y] = decode(l);
        return encode(a_->conjugate(x), b_->conjugate(y));
    }
    double dim(const Label& l) const override {
        auto [x, y] = decode(l);
        return a_->dim(x) * b_->dim(y);
    }
    std::optional<Rat> dim_rat(const Label& l) const override {
        auto [x, y] = decode(l);
        auto da = a_->dim_rat(x);
        auto db = b_->dim_rat(y);
        if (!da || !db) return std::nullopt;
        return *da * *db;
    }
    int level(const Label& l) const override {
        auto [x, y] = decode(l);
        return a_->level(x) + b_->level(y);
    }
    std::vector<Label> labels_of_level(int k) const override {
        std::vector<Label> out;
        for (int i = 0; i <= k; ++i) {
            auto sa = a_->labels_of_level(i);
            if (sa.empty()) continue;
            auto sb = b_->labels_of_level(k - i);
            for (const auto& x : sa)
                for (const auto& y : sb) out.push_back(encode(x, y));
        }
        std::sort(out.begin(), out.end());
        return out;
    }
    std::optional<size_t> label_count() const override {
        auto ca = a_->label_count();
        auto cb = b_->label_count();
        if (!ca || !cb) return std::nullopt;
        return *ca * *cb;
    }
    void check_label(const Label& l) const override { decode(l); }
    std::string label_to_string(const Label& l) const override {
        auto [x, y] = decode(l);
        return "(" + a_->label_to_string(x) + "|" + b_->label_to_string(y) +
               ")";
    }
    Label label_from_string(const std::string& s) const override {
        std::string t = s;
        if (t.size() >= 2 && t.front() == '(' && t.back() == ')')
            t = t.substr(1, t.size() - 2);
        auto bar = t.find('|');
        if (bar == std::string::npos)
            throw LabelError("product label needs '(x|y)' form: '" + s + "'");
        return encode(a_->label_from_string(t.substr(0, bar)),
                      b_->label_from_string(t.substr(bar + 1)));
    }

    const RingPtr& first() const { return a_; }
    const RingPtr& second() const { return b_; }

    Label encode(const Label& x, const Label& y) const {
        Label l;
        l.code.reserve(1 + x.code.size() + y.code.size());
        l.code.push_back(static_cast<int32_t>(x.code.size()));
        l.code.insert(l.code.end(), x.code.begin(), x.code.end());
        l.code.insert(l.code.end(), y.code.begin(), y.code.end());
        return l;
    }
    std::pair<Label, Label> decode(const Label& l) const {
        if (l.code.empty()) throw LabelError("malformed product label");
        int n1 = l.code[0];
        if (n1 < 0 || 1 + n1 > static_cast<int>(l.code.size()))
            throw LabelError("malformed product label");
        Label x{std::vector<int32_t>(l.code.begin() + 1,
                                     l.code.begin() + 1 + n1)};
        Label y{std::vector<int32_t>(l.code.begin() + 1 + n1, l.code.end())};
        a_->check_label(x);
        b_->check_label(y);
        return {x, y};
    }

  protected:
    FusionOutcome fuse_impl(const Label& l, const Label& r) const override {
        auto [x1, y1] = decode(l);
        auto [x2, y2] = decode(r);
        FusionOutcome out;
        for (const auto& [gx, mx] : a_->fuse(x1, x2).terms)
            for (const auto& [gy, my] : b_->fuse(y1, y2).terms)
                out.terms.emplace_back(encode(gx, gy), mx * my);
        return out;
    }

  private:
    RingPtr a_;
    RingPtr b_;
};

// --- free product ring ----------------------------------------------------
// A label is an alternating word of non-unit letters from the two factors.
// Code layout: [d, (factor, len, letter-code...) x d]

class FreeProductRing final : public FusionRing {
  public:
    FreeProductRing(RingPtr a, RingPtr b) {
        factors_[0] = std::move(a);
        factors_[1] = std::move(b);
        for (int f = 0; f < 2; ++f) {
            auto shell0 = factors_[f]->labels_of_level(0);
            if (shell0.size() != 1 || shell0[0] != factors_[f]->unit())
                throw ParamError(
                    "free product factors must have only the unit at level 0");
        }
    }

    std::string name() const override {
        return "free_product(" + factors_[0]->name() + ", " +
               factors_[1]->name() + ")";
    }
    Label unit() const override { return Label{{0}}; }
    Label conjugate(const Label& l) const override {
        auto w = decode(l);
        std::vector<Letter> r;
        for (auto it = w.rbegin(); it != w.rend(); ++it)
            r.push_back({it->factor,
                         factors_[it->factor]->conjugate(it->label)});
        return encode(r);
    }
    double dim(const Label& l) const override {
        double d = 1;
        for (const auto& let : decode(l))
            d *= factors_[let.factor]->dim(let.label);
        return d;
    }
    std::optional<Rat> dim_rat(const Label& l) const override {
        Rat d = 1;
        for (const auto& let : decode(l)) {
            auto dl = factors_[let.factor]->dim_rat(let.label);
            if (!dl) return std::nullopt;
            d *= *dl;
        }
        return d;
    }
    int level(const Label& l) const override {
        int s = 0;
        for (const auto& let : decode(l))
            s += factors_[let.factor]->level(let.label);
        return s;
    }
    std::vector<Label> labels_of_level(int k) const override {
        if (k < 0) return {};
        if (k == 0) return {unit()};
        std::vector<Label> out;
        std::vector<Letter> word;
        for (int first = 0; first < 2; ++first)
            extend(first, k, word, out);
        std::sort(out.begin(), out.end());
        return out;
    }
    void check_label(const Label& l) const override { decode(l); }
    std::string label_to_string(const Label& l) const override {
        auto w = decode(l);
        if (w.empty()) return "e";
        std::string s;
        for (const auto& let : w)
            s += "[" + std::to_string(let.factor + 1) + ":" +
                 factors_[let.factor]->label_to_string(let.label) + "]";
        return s;
    }
    Label label_from_string(const std::string& s) const override {
        if (s == "e" || s.empty()) return unit();
        std::vector<Letter> w;
        size_t pos = 0;
        while (pos < s.size()) {
            if (s[pos] != '[')
                throw LabelError("free-product word: expected '[' in '" + s +
                                 "'");
            size_t close = s.find(']', pos);
            size_t colon = s.find(':', pos);
            if (close == std::string::npos || colon == std::string::npos ||
                colon > close)
                throw LabelError("free-product word: malformed '" + s + "'");
            int f = std::stoi(s.substr(pos + 1, colon - pos - 1)) - 1;
            if (f != 0 && f != 1)
                throw LabelError("free-product factor must be 1 or 2");
            Label letter = factors_[f]->label_from_string(
                s.substr(colon + 1, close - colon - 1));
            if (letter == factors_[f]->unit())
                throw LabelError("unit letter in free-product word");
            if (!w.empty() && w.back().factor == f)
                throw LabelError("adjacent letters from the same factor");
            w.push_back({f, letter});
            pos = close + 1;
        }
        return encode(w);
    }

    struct Letter {
        int factor;
        Label label;
    };

    std::vector<Letter> decode(const Label& l) const {
        if (l.code.empty()) throw LabelError("malformed free-product label");
        int d = l.code[0];
        std::vector<Letter> w;
        size_t pos = 1;
        int prev = -1;
        for (int i = 0; i < d; ++i) {
            if (pos + 2 > l.code.size())
                throw LabelError("malformed free-product label");
            int f = l.code[pos];
            int len = l.code[pos + 1];
            if ((f != 0 && f != 1) || len < 0 ||
                pos + 2 + len > l.code.size())
                throw LabelError("malformed free-product label");
            Label letter{std::vector<int32_t>(l.code.begin() + pos + 2,
                                              l.code.begin() + pos + 2 + len)};
            factors_[f]->check_label(letter);
            if (letter == factors_[f]->unit())
                throw LabelError("unit letter in free-product word");
            if (f == prev)
                throw LabelError("adjacent letters from the same factor");
            w.push_back({f, letter});
            prev = f;
            pos += 2 + len;
        }
        if (pos != l.code.size())
            throw LabelError("malformed free-product label");
        return w;
    }

    Label encode(const std::vector<Letter>& w) const {
        Label l;
        l.code.push_back(static_cast<int32_t>(w.size()));
        for (const auto& let : w) {
            l.code.push_back(let.factor);
            l.code.push_back(static_cast<int32_t>(let.label.code.size()));
            l.code.insert(l.code.end(), let.label.code.begin(),
                          let.label.code.end());
        }
        return l;
    }

    const RingPtr& factor(int i) const { return factors_[i]; }

  protected:
    FusionOutcome fuse_impl(const Label& a, const Label& b) const override {
        std::map<Label, int64_t> terms;
        fuse_words(decode(a), decode(b), 1, terms);
        FusionOutcome out;
        for (auto& [l, m] : terms) out.terms.emplace_back(l, m);
        return out;
    }

  private:
    // Concatenate with boundary reduction: fuse the join letters when they
    // lie in the same factor, distribute, and recurse on unit components.
    void fuse_words(const std::vector<Letter>& w, const std::vector<Letter>& v,
                    int64_t mult, std::map<Label, int64_t>& out) const {
        if (w.empty() || v.empty()) {
            const auto& full = w.empty() ? v : w;
            out[encode(full)] += mult;
            return;
        }
        const Letter& x = w.back();
        const Letter& y = v.front();
        if (x.factor != y.factor) {
            std::vector<Letter> joined = w;
            joined.insert(joined.end(), v.begin(), v.end());
            out[encode(joined)] += mult;
            return;
        }
        const auto& ring = factors_[x.factor];
        const Label eps = ring->unit();
        std::vector<Letter> w_head(w.begin(), w.end() - 1);
        std::vector<Letter> v_tail(v.begin() + 1, v.end());
        for (const auto& [g, m] : ring->fuse(x.label, y.label).terms) {
            if (g == eps) {
                fuse_words(w_head, v_tail, mult * m, out);
            } else {
                std::vector<Letter> joined = w_head;
                joined.push_back({x.factor, g});
                joined.insert(joined.end(), v_tail.begin(), v_tail.end());
                out[encode(joined)] += mult * m;
            }
        }
    }

    void extend(int next_factor, int remaining, std::vector<Letter>& word,
                std::vector<Label>& out) const {
        for (int lv = 1; lv <= remaining; ++lv) {
            for (const auto& letter : factors_[next_factor]->labels_of_level(lv)) {
                word.push_back({next_factor, letter});
                if (lv == remaining)
                    out.push_back(encode(word));
                else
                    extend(1 - next_factor, remaining - lv, word, out);
                word.pop_back();
            }
        }
    }

    RingPtr factors_[2];
};

// --- full subring view -----------------------------------------------------

class SubringView final : public SubringBase {
  public:
    SubringView(RingPtr parent, std::function<bool(const Label&)> member,
                std::string name)
        : parent_(std::move(parent)),
          member_(std::move(member)),
          name_(std::move(name)) {}

    const RingPtr& parent() const override { return parent_; }
    bool contains(const Label& l) const override {
        try {
            parent_->check_label(l);
        } catch (const LabelError&) {
            return false;
        }
        return member_(l);
    }

    std::string name() const override {
        return name_ + " < " + parent_->name();
    }
    Label unit() const override { return parent_->unit(); }
    Label conjugate(const Label& a) const override {
        check_label(a);
        return parent_->conjugate(a);
    }
    double dim(const Label& a) const override {
        check_label(a);
        return parent_->dim(a);
    }
    std::optional<Rat> dim_rat(const Label& a) const override {
        check_label(a);
        return parent_->dim_rat(a);
    }
    int level(const Label& a) const override {
        check_label(a);
        return parent_->level(a);
    }
    std::vector<Label> labels_of_level(int k) const override {
        std::vector<Label> out;
        for (const auto& l : parent_->labels_of_level(k))
            if (member_(l)) out.push_back(l);
        return out;
    }
    std::optional<size_t> label_count() const override {
        auto c = parent_->label_count();
        if (!c) return std::nullopt;
        size_t cnt = 0, seen = 0;
        for (int lv = 0; seen < *c && lv < 1 << 20; ++lv) {
            auto shell = parent_->labels_of_level(lv);
            seen += shell.size();
            for (const auto& l : shell)
                if (member_(l)) ++cnt;
        }
        return cnt;
    }
    void check_label(const Label& a) const override {
        parent_->check_label(a);
        if (!member_(a))
            throw LabelError("label " + parent_->label_to_string(a) +
                             " is outside subring " + name_);
    }
    std::string label_to_string(const Label& a) const override {
        return parent_->label_to_string(a);
    }
    Label label_from_string(const std::string& s) const override {
        Label l = parent_->label_from_string(s);
        check_label(l);
        return l;
    }

  protected:
    FusionOutcome fuse_impl(const Label& a, const Label& b) const override {
        return parent_->fuse(a, b);
    }

  private:
    RingPtr parent_;
    std::function<bool(const Label&)> member_;
    std::string name_;
};

} // namespace

RingPtr build_product(RingPtr a, RingPtr b) {
    return std::make_shared<ProductRing>(std::move(a), std::move(b));
}

RingPtr build_free_product(RingPtr a, RingPtr b) {
    return std::make_shared<FreeProductRing>(std::move(a), std::move(b));
}

std::vector<std::pair<int, Label>> free_word_letters(const FusionRing& ring,
                                                     const Label& word) {
    auto* fp = dynamic_cast<const FreeProductRing*>(&ring);
    if (!fp) throw ParamError("not a free product ring: " + ring.name());
    std::vector<std::pair<int, Label>> out;
    for (const auto& let : fp->decode(word))
        out.emplace_back(let.factor, let.label);
    return out;
}

const RingPtr& free_product_factor(const FusionRing& ring, int i) {
    auto* fp = dynamic_cast<const FreeProductRing*>(&ring);
    if (!fp) throw ParamError("not a free product ring: " + ring.name());
    if (i != 0 && i != 1) throw ParamError("factor index must be 0 or 1");
    return fp->factor(i);
}

RingPtr make_subring(RingPtr parent, std::function<bool(const Label&)> member,
                     const std::string& name, int closure_level) {
    auto view =
        std::make_shared<SubringView>(parent, member, name);
    // Fullness: closed under conjugation and under taking constituents of
    // fusion products.
    auto labels = view->labels_up_to_level(closure_level);
    for (const auto& a : labels) {
        Label abar = parent->conjugate(a);
        if (!member(abar))
            throw ValidationError(
                "subring " + name + " not closed under conjugation: " +
                parent->label_to_string(a) + " -> " +
                parent->label_to_string(abar));
        for (const auto& b : labels)
            for (const auto& [g, m] : parent->fuse(a, b).terms)
                if (!member(g))
                    throw ValidationError(
                        "subring " + name + " not full: " +
                        parent->label_to_string(g) + " in " +
                        parent->label_to_string(a) + " (x) " +
                        parent->label_to_string(b));
    }
    return view;
}

} // namespace fusion
