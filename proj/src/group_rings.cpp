#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <numeric>
#include <sstream>

#include "fusion/rings.hpp"

namespace fusion {

namespace {

// Common base: every group ring has d == 1 and singleton fusion.
class GroupRingBase : public FusionRing {
  public:
    double dim(const Label& a) const override {
        check_label(a);
        return 1.0;
    }
    std::optional<Rat> dim_rat(const Label& a) const override {
        check_label(a);
        return Rat(1);
    }
};

class ZRing final : public GroupRingBase {
  public:
    std::string name() const override { return "group(Z)"; }
    Label unit() const override { return Label{{0}}; }
    Label conjugate(const Label& a) const override {
        check_label(a);
        return Label{{-a.code[0]}};
    }
    int level(const Label& a) const override {
        check_label(a);
        return std::abs(a.code[0]);
    }
    std::vector<Label> labels_of_level(int k) const override {
        if (k < 0) return {};
        if (k == 0) return {unit()};
        return {Label{{-k}}, Label{{k}}};
    }
    void check_label(const Label& a) const override {
        if (a.code.size() != 1) throw LabelError("not a Z label");
    }
    std::string label_to_string(const Label& a) const override {
        check_label(a);
        return std::to_string(a.code[0]);
    }
    Label label_from_string(const std::string& s) const override {
        try {
            return Label{{std::stoi(s)}};
        } catch (const std::exception&) {
            throw LabelError("cannot parse Z label '" + s + "'");
        }
    }

  protected:
    FusionOutcome fuse_impl(const Label& a, const Label& b) const override {
        return FusionOutcome{{{Label{{a.code[0] + b.code[0]}}, 1}}};
    }
};

class ZnRing final : public GroupRingBase {
  public:
    explicit ZnRing(int n) : n_(n) {}
    std::string name() const override {
        return "group(Z/" + std::to_string(n_) + ")";
    }
    Label unit() const override { return Label{{0}}; }
    Label conjugate(const Label& a) const override {
        check_label(a);
        return Label{{(n_ - a.code[0]) % n_}};
    }
    int level(const Label& a) const override {
        check_label(a);
        return std::min(a.code[0], n_ - a.code[0]);
    }
    std::vector<Label> labels_of_level(int k) const override {
        if (k < 0 || k > n_ / 2) return {};
        if (k == 0) return {unit()};
        std::vector<Label> out{Label{{k}}};
        if (n_ - k != k) out.push_back(Label{{n_ - k}});
        std::sort(out.begin(), out.end());
        return out;
    }
    std::optional<size_t> label_count() const override { return n_; }
    void check_label(const Label& a) const override {
        if (a.code.size() != 1 || a.code[0] < 0 || a.code[0] >= n_)
            throw LabelError("not a Z/" + std::to_string(n_) + " label");
    }
    std::string label_to_string(const Label& a) const override {
        check_label(a);
        return std::to_string(a.code[0]);
    }
    Label label_from_string(const std::string& s) const override {
        try {
            int v = std::stoi(s);
            v %= n_;
            if (v < 0) v += n_;
            return Label{{v}};
        } catch (const std::exception&) {
            throw LabelError("cannot parse Z/n label '" + s + "'");
        }
    }
    int modulus() const { return n_; }

  protected:
    FusionOutcome fuse_impl(const Label& a, const Label& b) const override {
        return FusionOutcome{{{Label{{(a.code[0] + b.code[0]) % n_}}, 1}}};
    }

  private:
    int n_;
};

class ZdRing final : public GroupRingBase {
  public:
    explicit ZdRing(int d) : d_(d) {}
    std::string name() const override {
        return "group(Z^" + std::to_string(d_) + ")";
    }
    Label unit() const override {
        return Label{std::vector<int32_t>(d_, 0)};
    }
    Label conjugate(const Label& a) const override {
        check_label(a);
        Label r = a;
        for (auto& v : r.code) v = -v;
        return r;
    }
    int level(const Label& a) const override {
        check_label(a);
        int s = 0;
        for (int v : a.code) s += std::abs(v);
        return s;
    }
    std::vector<Label> labels_of_level(int k) const override {
        if (k < 0) return {};
        std::vector<Label> out;
        std::vector<int32_t> cur(d_, 0);
        enumerate(k, 0, cur, out);
        std::sort(out.begin(), out.end());
        return out;
    }
    void check_label(const Label& a) const override {
        if (static_cast<int>(a.code.size()) != d_)
            throw LabelError("not a Z^" + std::to_string(d_) + " label");
    }
    std::string label_to_string(const Label& a) const override {
        check_label(a);
        std::ostringstream os;
        os << "(";
        for (int i = 0; i < d_; ++i) os << (i ? "," : "") << a.code[i];
        os << ")";
        return os.str();
    }
    Label label_from_string(const std::string& s) const override {
        std::string t = s;
        std::erase(t, '(');
        std::erase(t, ')');
        std::vector<int32_t> v;
        std::stringstream ss(t);
        std::string item;
        while (std::getline(ss, item, ','))
            try {
                v.push_back(std::stoi(item));
            } catch (const std::exception&) {
                throw LabelError("cannot parse Z^d label '" + s + "'");
            }
        Label l{std::move(v)};
        check_label(l);
        return l;
    }

  protected:
    FusionOutcome fuse_impl(const Label& a, const Label& b) const override {
        Label r = a;
        for (int i = 0; i < d_; ++i) r.code[i] += b.code[i];
        return FusionOutcome{{{r, 1}}};
    }

  private:
    void enumerate(int budget, int pos, std::vector<int32_t>& cur,
                   std::vector<Label>& out) const {
        if (pos == d_) {
            if (budget == 0) out.push_back(Label{cur});
            return;
        }
        for (int v = -budget; v <= budget; ++v) {
            cur[pos] = v;
            enumerate(budget - std::abs(v), pos + 1, cur, out);
        }
        cur[pos] = 0;
    }

    int d_;
};

// Free group F_k: labels are reduced words over generators 1..k and their
// inverses encoded as negatives.
class FreeGroupRing final : public GroupRingBase {
  public:
    explicit FreeGroupRing(int k) : k_(k) {}
    std::string name() const override {
        return "group(F" + std::to_string(k_) + ")";
    }
    Label unit() const override { return Label{{}}; }
    Label conjugate(const Label& a) const override {
        check_label(a);
        Label r;
        r.code.reserve(a.code.size());
        for (auto it = a.code.rbegin(); it != a.code.rend(); ++it)
            r.code.push_back(-*it);
        return r;
    }
    int level(const Label& a) const override {
        check_label(a);
        return static_cast<int>(a.code.size());
    }
    std::vector<Label> labels_of_level(int k) const override {
        if (k < 0) return {};
        if (k == 0) return {unit()};
        std::vector<Label> out;
        std::vector<int32_t> cur;
        enumerate(k, cur, out);
        std::sort(out.begin(), out.end());
        return out;
    }
    void check_label(const Label& a) const override {
        for (size_t i = 0; i < a.code.size(); ++i) {
            int g = a.code[i];
            if (g == 0 || std::abs(g) > k_)
                throw LabelError("letter out of range in free group word");
            if (i + 1 < a.code.size() && a.code[i + 1] == -g)
                throw LabelError("word not reduced");
        }
    }
    std::string label_to_string(const Label& a) const override {
        check_label(a);
        if (a.code.empty()) return "e";
        std::string s;
        for (int g : a.code)
            s += g > 0 ? static_cast<char>('a' + g - 1)
                       : static_cast<char>('A' - g - 1);
        return s;
    }
    Label label_from_string(const std::string& s) const override {
        if (s == "e" || s == "1" || s.empty()) return unit();
        std::vector<int32_t> w;
        for (char c : s) {
            int g;
            if (c >= 'a' && c < 'a' + k_)
                g = c - 'a' + 1;
            else if (c >= 'A' && c < 'A' + k_)
                g = -(c - 'A' + 1);
            else
                throw LabelError("cannot parse free group word '" + s + "'");
            if (!w.empty() && w.back() == -g)
                w.pop_back();
            else
                w.push_back(g);
        }
        return Label{std::move(w)};
    }

  protected:
    FusionOutcome fuse_impl(const Label& a, const Label& b) const override {
        std::vector<int32_t> w = a.code;
        for (int g : b.code) {
            if (!w.empty() && w.back() == -g)
                w.pop_back();
            else
                w.push_back(g);
        }
        return FusionOutcome{{{Label{std::move(w)}, 1}}};
    }

  private:
    void enumerate(int remaining, std::vector<int32_t>& cur,
                   std::vector<Label>& out) const {
        if (remaining == 0) {
            out.push_back(Label{cur});
            return;
        }
        for (int g = -k_; g <= k_; ++g) {
            if (g == 0) continue;
            if (!cur.empty() && cur.back() == -g) continue;
            cur.push_back(g);
            enumerate(remaining - 1, cur, out);
            cur.pop_back();
        }
    }

    int k_;
};

class TableGroupRing final : public GroupRingBase {
  public:
    TableGroupRing(std::vector<std::vector<int>> table,
                   std::vector<std::string> names, std::vector<int> generators)
        : table_(std::move(table)), names_(std::move(names)) {
        const int n = static_cast<int>(table_.size());
        if (n == 0) throw ParamError("empty multiplication table");
        for (const auto& row : table_) {
            if (static_cast<int>(row.size()) != n)
                throw ParamError("multiplication table is not square");
            for (int v : row)
                if (v < 0 || v >= n)
                    throw ParamError("table entry out of range");
        }
        if (names_.empty())
            for (int i = 0; i < n; ++i) names_.push_back("g" + std::to_string(i));
        if (static_cast<int>(names_.size()) != n)
            throw ParamError("names/table size mismatch");

        // Locate the unit and inverses; this also checks group structure
        // enough for our purposes (associativity is spot checked).
        unit_ = -1;
        for (int e = 0; e < n; ++e) {
            bool ok = true;
            for (int g = 0; g < n && ok; ++g)
                ok = table_[e][g] == g && table_[g][e] == g;
            if (ok) {
                unit_ = e;
                break;
            }
        }
        if (unit_ < 0) throw ParamError("table has no unit element");
        inverse_.assign(n, -1);
        for (int g = 0; g < n; ++g) {
            for (int h = 0; h < n; ++h)
                if (table_[g][h] == unit_ && table_[h][g] == unit_) {
                    inverse_[g] = h;
                    break;
                }
            if (inverse_[g] < 0)
                throw ParamError("element without inverse in table");
        }
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < std::min(n, 8); ++c)
                    if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
                        throw ParamError("multiplication table not associative");

        if (generators.empty()) {
            for (int g = 0; g < n; ++g)
                if (g != unit_) generators.push_back(g);
        }
        // BFS levels from the generating set.
        level_.assign(n, -1);
        level_[unit_] = 0;
        std::deque<int> queue{unit_};
        while (!queue.empty()) {
            int g = queue.front();
            queue.pop_front();
            for (int s : generators) {
                for (int h : {table_[g][s], table_[g][inverse_[s]]}) {
                    if (level_[h] < 0) {
                        level_[h] = level_[g] + 1;
                        queue.push_back(h);
                    }
                }
            }
        }
        for (int g = 0; g < n; ++g)
            if (level_[g] < 0)
                throw ParamError("generators do not generate the group");
    }

    std::string name() const override {
        return "group(table," + std::to_string(table_.size()) + " elements)";
    }
    Label unit() const override { return Label{{unit_}}; }
    Label conjugate(const Label& a) const override {
        check_label(a);
        return Label{{inverse_[a.code[0]]}};
    }
    int level(const Label& a) const override {
        check_label(a);
        return level_[a.code[0]];
    }
    std::vector<Label> labels_of_level(int k) const override {
        std::vector<Label> out;
        for (size_t g = 0; g < table_.size(); ++g)
            if (level_[g] == k) out.push_back(Label{{static_cast<int32_t>(g)}});
        std::sort(out.begin(), out.end());
        return out;
    }
    std::optional<size_t> label_count() const override {
        return table_.size();
    }
    void check_label(const Label& a) const override {
        if (a.code.size() != 1 || a.code[0] < 0 ||
            a.code[0] >= static_cast<int32_t>(table_.size()))
            throw LabelError("not an element of " + name());
    }
    std::string label_to_string(const Label& a) const override {
        check_label(a);
        return names_[a.code[0]];
    }
    Label label_from_string(const std::string& s) const override {
        for (size_t i = 0; i < names_.size(); ++i)
            if (names_[i] == s) return Label{{static_cast<int32_t>(i)}};
        throw LabelError("unknown group element '" + s + "'");
    }

  protected:
    FusionOutcome fuse_impl(const Label& a, const Label& b) const override {
        return FusionOutcome{{{Label{{table_[a.code[0]][b.code[0]]}}, 1}}};
    }

  private:
    std::vector<std::vector<int>> table_;
    std::vector<std::string> names_;
    std::vector<int> inverse_;
    std::vector<int> level_;
    int unit_;
};

} // namespace

RingPtr build_group_z() { return std::make_shared<ZRing>(); }

RingPtr build_group_zn(int n) {
    if (n < 1) throw ParamError("Z/n requires n >= 1");
    return std::make_shared<ZnRing>(n);
}

RingPtr build_group_zd(int d) {
    if (d < 1) throw ParamError("Z^d requires d >= 1");
    return std::make_shared<ZdRing>(d);
}

RingPtr build_free_group(int generators) {
    if (generators < 1) throw ParamError("free group requires >= 1 generator");
    return std::make_shared<FreeGroupRing>(generators);
}

RingPtr build_group_table(const std::vector<std::vector<int>>& table,
                          const std::vector<std::string>& names,
                          std::vector<int> generators) {
    return std::make_shared<TableGroupRing>(table, names, std::move(generators));
}

} // namespace fusion
