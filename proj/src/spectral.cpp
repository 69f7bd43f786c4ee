#include "fusion/spectral.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <deque>

#include "fusion/tlj_analysis.hpp"

namespace fusion {

bool TruncatedRegularRep::symmetric() const {
    auto d = dense();
    for (size_t i = 0; i < d.size(); ++i)
        for (size_t j = 0; j < i; ++j)
            if (d[i][j] != d[j][i]) return false;
    return true;
}

std::vector<std::vector<int64_t>> TruncatedRegularRep::dense() const {
    const size_t n = basis.size();
    std::vector<std::vector<int64_t>> d(n, std::vector<int64_t>(n, 0));
    for (size_t b = 0; b < n; ++b)
        for (const auto& [r, m] : cols[b]) d[r][b] = m;
    return d;
}

TruncatedRegularRep truncated_matrix(const RingPtr& ring, const Label& alpha,
                                     int N) {
    if (N < 1) throw ParamError("truncated_matrix: N >= 1");
    ring->check_label(alpha);
    if (ring->conjugate(alpha) != alpha)
        throw ParamError(
            "truncated_matrix needs a self-conjugate label; use "
            "norm_estimate for general elements");
    TruncatedRegularRep rep;
    rep.ring = ring;
    rep.generator = alpha;
    rep.basis = ring->basis_prefix(N);
    std::unordered_map<Label, int, LabelHash> index;
    for (size_t i = 0; i < rep.basis.size(); ++i)
        index[rep.basis[i]] = static_cast<int>(i);
    rep.cols.resize(rep.basis.size());
    for (size_t b = 0; b < rep.basis.size(); ++b) {
        for (const auto& [g, m] : ring->fuse(alpha, rep.basis[b]).terms) {
            auto it = index.find(g);
            if (it != index.end()) rep.cols[b].emplace_back(it->second, m);
        }
    }
    return rep;
}

namespace {

using CVec = std::vector<std::complex<double>>;

struct SparseHermitian {
    int n = 0;
    std::vector<std::vector<std::pair<int, std::complex<double>>>> cols;

    CVec apply(const CVec& v) const {
        CVec w(n, 0.0);
        for (int b = 0; b < n; ++b)
            for (const auto& [r, a] : cols[b]) w[r] += a * v[b];
        return w;
    }
};

SparseHermitian element_matrix(const RingPtr& ring, const FusionElement& x,
                               int N) {
    SparseHermitian m;
    auto basis = ring->basis_prefix(N);
    m.n = static_cast<int>(basis.size());
    std::unordered_map<Label, int, LabelHash> index;
    for (size_t i = 0; i < basis.size(); ++i)
        index[basis[i]] = static_cast<int>(i);
    m.cols.resize(m.n);
    for (int b = 0; b < m.n; ++b) {
        std::unordered_map<int, std::complex<double>> col;
        for (const auto& [a, c] : x.coeffs()) {
            for (const auto& [g, mult] : ring->fuse(a, basis[b]).terms) {
                auto it = index.find(g);
                if (it != index.end())
                    col[it->second] += c.to_complex() * double(mult);
            }
        }
        for (const auto& [r, v] : col) m.cols[b].emplace_back(r, v);
        std::sort(m.cols[b].begin(), m.cols[b].end(),
                  [](const auto& p, const auto& q) { return p.first < q.first; });
    }
    return m;
}

struct PowerResult {
    double estimate;
    int iterations;
    bool converged;
    double gap;
};

// Deterministic power iteration, all-ones start. For a Hermitian A the
// Rayleigh magnitudes |<v, Av>| never exceed ||A||, so every reported value
// is a valid lower bound.
PowerResult power_iteration(const SparseHermitian& a, int max_iter,
                            double tol) {
    PowerResult res{0, 0, false, 0};
    if (a.n == 0) return res;
    CVec v(a.n, 1.0 / std::sqrt(double(a.n)));
    double prev = 0;
    for (int it = 1; it <= max_iter; ++it) {
        CVec w = a.apply(v);
        std::complex<double> ray = 0;
        for (int i = 0; i < a.n; ++i) ray += std::conj(v[i]) * w[i];
        const double est = std::abs(ray);
        double norm = 0;
        for (const auto& c : w) norm += std::norm(c);
        norm = std::sqrt(norm);
        res.iterations = it;
        res.gap = std::abs(est - prev);
        res.estimate = std::max(res.estimate, est);
        if (it > 1 && res.gap <= tol * std::max(1.0, est)) {
            res.converged = true;
            break;
        }
        prev = est;
        if (norm == 0) break; // x acts as zero on the truncation
        for (auto& c : v) c = {0, 0};
        for (int i = 0; i < a.n; ++i) v[i] = w[i] / norm;
    }
    return res;
}

} // namespace

std::vector<std::vector<std::complex<double>>> element_matrix_dense(
    const RingPtr& ring, const FusionElement& x, int N) {
    SparseHermitian m = element_matrix(ring, x, N);
    std::vector<std::vector<std::complex<double>>> d(
        m.n, std::vector<std::complex<double>>(m.n, 0.0));
    for (int b = 0; b < m.n; ++b)
        for (const auto& [r, v] : m.cols[b]) d[r][b] = v;
    return d;
}

NormEstimate norm_estimate(const RingPtr& ring, const FusionElement& x, int N,
                           int max_iterations, double tol) {
    if (N < 2) throw ParamError("norm_estimate: N >= 2");
    if (x.ring().get() != ring.get())
        throw RingMismatchError("norm_estimate: element not on ring");
    if (max_iterations <= 0) max_iterations = 10 * N;

    NormEstimate out;
    FusionElement y = x;
    if (!(x.star() == x)) {
        out.squared = true;
        y = x.star() * x;
    }

    std::vector<int> sizes;
    for (int s : {N / 4, N / 2, N})
        if (s >= 1 && (sizes.empty() || s > sizes.back())) sizes.push_back(s);
    for (int s : sizes) {
        SparseHermitian m = element_matrix(ring, y, s);
        PowerResult pr = power_iteration(m, max_iterations, tol);
        double est = out.squared ? std::sqrt(pr.estimate) : pr.estimate;
        out.lower_bounds.emplace_back(m.n, est);
        if (s == sizes.back()) {
            out.estimate = est;
            out.converged = pr.converged;
            out.convergence_gap = pr.gap;
            out.iterations = pr.iterations;
        }
    }
    return out;
}

std::string AmenabilityReport::verdict_name() const {
    switch (verdict) {
        case Verdict::AmenableWithinTol: return "AmenableWithinTol";
        case Verdict::GapDetected: return "GapDetected";
        default: return "Undetermined";
    }
}

AmenabilityReport amenability_report(const RingPtr& ring,
                                     const FusionElement& generator, int N,
                                     double tol) {
    AmenabilityReport rep;
    if (!(generator.star() == generator))
        throw ParamError("amenability_report: generator must be self-adjoint");

    double dim = 0;
    for (const auto& [l, c] : generator.coeffs())
        dim += c.to_complex().real() * ring->dim(l);
    rep.dimension = dim;
    if (dim <= 0) throw ParamError("amenability_report: eps(generator) <= 0");

    NormEstimate est = norm_estimate(ring, generator, N, 0, tol * 1e-3);
    rep.estimate = est.estimate;

    // Certified upper bounds where available.
    if (tlj_lambda_inv(*ring)) {
        rep.upper_bound = reduced_norm(generator);
        rep.method = "power_iteration+tlj_reduced_norm";
    } else if (auto m = tlj_finite_order(*ring)) {
        // Full ring is finite; take the exact top eigenvalue.
        auto count = ring->label_count();
        SparseHermitian full =
            element_matrix(ring, generator, static_cast<int>(*count));
        Eigen::MatrixXd dm = Eigen::MatrixXd::Zero(full.n, full.n);
        for (int b = 0; b < full.n; ++b)
            for (const auto& [r, v] : full.cols[b]) dm(r, b) = v.real();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dm);
        double top = std::max(std::abs(es.eigenvalues()(0)),
                              std::abs(es.eigenvalues()(full.n - 1)));
        rep.upper_bound = top;
        rep.method = "finite_eigensolve";
        // Generator H_1 admits a symbolic Perron certificate.
        if (*count >= 2) {
            FusionElement h1 = FusionElement::basis(ring, Label{{1}});
            if (generator == h1 && tlj_finite_norm_certificate(*m)) {
                rep.exact_equality = true;
                rep.method = "finite_eigensolve+perron_certificate";
            }
        }
    } else if (auto count = ring->label_count(); count && *count <= 4096) {
        SparseHermitian full =
            element_matrix(ring, generator, static_cast<int>(*count));
        Eigen::MatrixXd dm = Eigen::MatrixXd::Zero(full.n, full.n);
        for (int b = 0; b < full.n; ++b)
            for (const auto& [r, v] : full.cols[b]) dm(r, b) = v.real();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dm);
        rep.upper_bound = std::max(std::abs(es.eigenvalues()(0)),
                                   std::abs(es.eigenvalues()(full.n - 1)));
        rep.method = "finite_eigensolve";
    } else {
        rep.method = "power_iteration";
    }

    if (rep.exact_equality) {
        rep.relative_gap = 0;
        rep.verdict = AmenabilityReport::Verdict::AmenableWithinTol;
        return rep;
    }
    if (rep.upper_bound) {
        rep.relative_gap = (dim - *rep.upper_bound) / dim;
        if (rep.relative_gap > tol)
            rep.verdict = AmenabilityReport::Verdict::GapDetected;
        else if (std::abs(rep.relative_gap) <= tol)
            rep.verdict = AmenabilityReport::Verdict::AmenableWithinTol;
        else
            rep.verdict = AmenabilityReport::Verdict::Undetermined;
        return rep;
    }
    rep.relative_gap = (dim - rep.estimate) / dim;
    rep.verdict = rep.relative_gap <= tol
                      ? AmenabilityReport::Verdict::AmenableWithinTol
                      : AmenabilityReport::Verdict::Undetermined;
    return rep;
}

// --- exact certificate -------------------------------------------------------

namespace {

using Poly = std::vector<Rat>; // ascending coefficients

void trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly c(a.size() + b.size() - 1, Rat(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
}

// Exact division; throws if the remainder is nonzero.
Poly divide(Poly num, const Poly& den) {
    Poly q(num.size() >= den.size() ? num.size() - den.size() + 1 : 0, Rat(0));
    while (num.size() >= den.size() && !num.empty()) {
        trim(num);
        if (num.size() < den.size()) break;
        Rat f = num.back() / den.back();
        size_t shift = num.size() - den.size();
        q[shift] = f;
        for (size_t i = 0; i < den.size(); ++i)
            num[shift + i] -= f * den[i];
    }
    trim(num);
    if (!num.empty()) throw FusionError("polynomial division not exact");
    return q;
}

Poly mod(Poly a, const Poly& m) {
    trim(a);
    while (a.size() >= m.size()) {
        Rat f = a.back() / m.back();
        size_t shift = a.size() - m.size();
        for (size_t i = 0; i < m.size(); ++i) a[shift + i] -= f * m[i];
        trim(a);
    }
    return a;
}

} // namespace

std::vector<Rat> cyclotomic(int m) {
    if (m < 1) throw ParamError("cyclotomic: m >= 1");
    // Phi_m = (x^m - 1) / prod_{d | m, d < m} Phi_d
    Poly num(m + 1, Rat(0));
    num[0] = -1;
    num[m] = 1;
    for (int d = 1; d < m; ++d)
        if (m % d == 0) num = divide(std::move(num), cyclotomic(d));
    return num;
}

std::vector<Rat> cos2pi_minimal_poly(int m) {
    if (m == 1) return {Rat(-2), Rat(1)}; // u - 2
    if (m == 2) return {Rat(2), Rat(1)};  // u + 2
    Poly phi = cyclotomic(m);
    const size_t half = (phi.size() - 1) / 2;
    // Phi_m(z)/z^half = a_half + sum_k a_{half+k} (z^k + z^-k) and
    // z^k + z^-k = C_k(u) with C_0 = 2, C_1 = u, C_{k+1} = u C_k - C_{k-1}.
    Poly psi = {phi[half]};
    Poly c_prev = {Rat(2)};
    Poly c_cur = {Rat(0), Rat(1)};
    for (size_t k = 1; k <= half; ++k) {
        Poly scaled = c_cur;
        for (auto& v : scaled) v *= phi[half + k];
        psi.resize(std::max(psi.size(), scaled.size()), Rat(0));
        for (size_t i = 0; i < scaled.size(); ++i) psi[i] += scaled[i];
        Poly next = mul({Rat(0), Rat(1)}, c_cur);
        next.resize(std::max(next.size(), c_prev.size()), Rat(0));
        for (size_t i = 0; i < c_prev.size(); ++i) next[i] -= c_prev[i];
        c_prev = c_cur;
        c_cur = next;
    }
    trim(psi);
    return psi;
}

bool tlj_finite_norm_certificate(int m) {
    if (m < 4) throw ParamError("certificate needs m >= 4 (m = 3 has no H_1)");
    RingPtr ring = build_tlj_finite(m);
    const int p = static_cast<int>(*ring->label_count()) - 1;

    Poly psi = cos2pi_minimal_poly(m);
    // In Q[u]/psi: lambda_inv = u + 2, d(H_1) = u + 1, dims v_j = V_j(u+2)
    // via the recurrence V_{j+1} = u V_j - V_{j-1}.
    std::vector<Poly> v(p + 1);
    v[0] = {Rat(1)};
    if (p >= 1) v[1] = mod({Rat(1), Rat(1)}, psi);
    for (int j = 2; j <= p; ++j) {
        Poly t = mul({Rat(0), Rat(1)}, v[j - 1]);
        t.resize(std::max(t.size(), v[j - 2].size()), Rat(0));
        for (size_t i = 0; i < v[j - 2].size(); ++i) t[i] -= v[j - 2][i];
        v[j] = mod(std::move(t), psi);
    }

    // Fusion matrix of H_1 on H_0..H_p.
    std::vector<std::vector<int64_t>> fm(p + 1, std::vector<int64_t>(p + 1, 0));
    for (int b = 0; b <= p; ++b)
        for (const auto& [g, mult] : ring->fuse(Label{{1}}, Label{{b}}).terms)
            fm[g.code[0]][b] = mult;

    // Positivity of the eigenvector (numeric evaluation at 2 cos(2 pi/m)).
    const double u0 = 2.0 * std::cos(2.0 * M_PI / m);
    for (int j = 0; j <= p; ++j) {
        double val = 0, pw = 1;
        for (const auto& c : v[j]) {
            val += to_double(c) * pw;
            pw *= u0;
        }
        if (val < 0.5) return false; // dims are >= 1
    }

    // Irreducibility: the fusion graph of H_1 must be connected.
    {
        std::vector<bool> seen(p + 1, false);
        std::deque<int> queue{0};
        seen[0] = true;
        while (!queue.empty()) {
            int g = queue.front();
            queue.pop_front();
            for (int h = 0; h <= p; ++h)
                if (!seen[h] && (fm[g][h] || fm[h][g])) {
                    seen[h] = true;
                    queue.push_back(h);
                }
        }
        for (bool s : seen)
            if (!s) return false;
    }

    // The eigen identity M v = (u + 1) v in Q[u]/psi.
    const Poly d = mod({Rat(1), Rat(1)}, psi);
    for (int g = 0; g <= p; ++g) {
        Poly lhs;
        for (int b = 0; b <= p; ++b) {
            if (!fm[g][b]) continue;
            Poly t = v[b];
            for (auto& c : t) c *= fm[g][b];
            lhs.resize(std::max(lhs.size(), t.size()), Rat(0));
            for (size_t i = 0; i < t.size(); ++i) lhs[i] += t[i];
        }
        Poly rhs = mod(mul(d, v[g]), psi);
        lhs = mod(std::move(lhs), psi);
        trim(lhs);
        trim(rhs);
        if (lhs != rhs) return false;
    }
    return true;
}

} // namespace fusion
