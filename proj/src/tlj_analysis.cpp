#include "fusion/tlj_analysis.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <mutex>

namespace fusion {

namespace {

Rat require_tlj(const RingPtr& ring) {
    auto li = tlj_lambda_inv(*ring);
    if (!li)
        throw ParamError("operation requires a tlj_ainf ring, got " +
                         ring->name());
    return *li;
}

int tlj_n(const Label& l) { return l.code[0]; }

} // namespace

Multiplier phi_point(const RingPtr& tlj, const Rat& t) {
    Rat lambda_inv = require_tlj(tlj);
    return Multiplier::from_exact(
        tlj,
        [t, lambda_inv](const Label& l) {
            int n = tlj_n(l);
            Rat den = chebyshev_V(n, lambda_inv);
            return CRat(chebyshev_V(n, t) / den);
        },
        /*claimed_cp=*/t >= 0 && t <= lambda_inv,
        /*finitely_supported=*/false);
}

Multiplier phi_point_float(const RingPtr& tlj, double t) {
    double lambda_inv = to_double(require_tlj(tlj));
    return Multiplier::from_float(
        tlj,
        [t, lambda_inv](const Label& l) -> std::complex<double> {
            int n = tlj_n(l);
            return chebyshev_V(n, t) / chebyshev_V(n, lambda_inv);
        },
        t >= 0 && t <= lambda_inv, false);
}

Multiplier multiplier_from_measure(const RingPtr& tlj,
                                   const std::vector<MeasureAtom>& atoms) {
    Rat lambda_inv = require_tlj(tlj);
    Rat total = 0;
    for (const auto& a : atoms) {
        if (a.t < 0 || a.t > lambda_inv)
            throw ParamError("measure atom t = " + rational_to_string(a.t) +
                             " outside [0, " + rational_to_string(lambda_inv) +
                             "]");
        if (a.w <= 0) throw ParamError("measure atom weights must be > 0");
        total += a.w;
    }
    if (total != 1) throw ParamError("measure atom weights must sum to 1");
    auto atoms_copy = std::make_shared<std::vector<MeasureAtom>>(atoms);
    return Multiplier::from_exact(
        tlj,
        [atoms_copy, lambda_inv](const Label& l) {
            int n = tlj_n(l);
            Rat den = chebyshev_V(n, lambda_inv);
            Rat v = 0;
            for (const auto& a : *atoms_copy)
                v += a.w * chebyshev_V(n, a.t);
            return CRat(v / den);
        },
        /*claimed_cp=*/true, /*finitely_supported=*/false);
}

std::vector<Rat> monomial_coefficients(int k) {
    if (k < 0) throw ParamError("monomial_coefficients: k >= 0");
    static std::vector<std::vector<Rat>> rows;
    static RingPtr ring;
    static std::mutex mutex;
    std::lock_guard lock(mutex);
    if (!ring) {
        ring = build_tlj_ainf(Rat(4)); // any index: coefficients agree
        rows.push_back({Rat(1)});      // X^0 = H_0
    }
    while (static_cast<int>(rows.size()) <= k) {
        // X^{j+1} = X * X^j with X = H_0 + H_1
        FusionElement x(ring);
        x.add(Label{{0}}, CRat(1));
        x.add(Label{{1}}, CRat(1));
        FusionElement prev(ring);
        const auto& prow = rows.back();
        for (size_t n = 0; n < prow.size(); ++n)
            prev.add(Label{{static_cast<int32_t>(n)}}, CRat(prow[n]));
        FusionElement next = x * prev;
        std::vector<Rat> row(rows.size() + 1, Rat(0));
        for (const auto& [l, c] : next.coeffs()) row[tlj_n(l)] = c.re;
        rows.push_back(std::move(row));
    }
    return rows[k];
}

MomentSequence moments(const Multiplier& phi, int count) {
    if (count < 1) throw ParamError("moments: count >= 1");
    Rat lambda_inv = require_tlj(phi.ring());
    MomentSequence out;
    out.lambda_inv = lambda_inv;
    out.provenance = "omega_phi(X^k)";

    const int nmax = count - 1;
    const bool exact = phi.has_exact();
    std::vector<Rat> vrow_exact;
    std::vector<double> vrow;
    if (exact)
        vrow_exact = chebyshev_V_row(nmax, lambda_inv);
    else
        vrow = chebyshev_V_row(nmax, to_double(lambda_inv));

    std::vector<CRat> phis_exact;
    std::vector<std::complex<double>> phis;
    for (int n = 0; n <= nmax; ++n) {
        Label l{{n}};
        if (exact)
            phis_exact.push_back(*phi.eval_exact(l));
        else
            phis.push_back(phi.eval(l));
    }

    if (exact) out.exact = std::vector<Rat>();
    for (int k = 0; k <= nmax; ++k) {
        auto coeffs = monomial_coefficients(k);
        if (exact) {
            CRat m(0);
            for (size_t n = 0; n < coeffs.size(); ++n)
                m += CRat(coeffs[n] * vrow_exact[n]) * phis_exact[n];
            if (!m.is_real())
                throw ParamError("moments: multiplier has non-real moments");
            out.exact->push_back(m.re);
            out.values.push_back(to_double(m.re));
        } else {
            std::complex<double> m = 0;
            for (size_t n = 0; n < coeffs.size(); ++n)
                m += to_double(coeffs[n]) * vrow[n] * phis[n];
            if (std::abs(m.imag()) > 1e-10 * std::max(1.0, std::abs(m.real())))
                throw ParamError("moments: multiplier has non-real moments");
            out.values.push_back(m.real());
        }
    }
    return out;
}

HankelTriple hankel_triple(const MomentSequence& m, int level) {
    if (level < 0) throw ParamError("hankel level must be >= 0");
    const int need = 2 * level + 2;
    if (m.count() < need)
        throw ParamError("hankel level " + std::to_string(level) + " needs " +
                         std::to_string(need) + " moments, have " +
                         std::to_string(m.count()));
    HankelTriple h;
    h.level = level;
    const int n = level + 1;
    const double li = to_double(m.lambda_inv);
    h.h0.assign(n, std::vector<double>(n));
    h.h1.assign(n, std::vector<double>(n));
    h.h2.assign(n, std::vector<double>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            h.h0[i][j] = m.values[i + j];
            h.h1[i][j] = m.values[i + j + 1];
            h.h2[i][j] = li * m.values[i + j] - m.values[i + j + 1];
        }
    if (m.exact) {
        h.h0x.emplace(n, std::vector<Rat>(n));
        h.h1x.emplace(n, std::vector<Rat>(n));
        h.h2x.emplace(n, std::vector<Rat>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                (*h.h0x)[i][j] = (*m.exact)[i + j];
                (*h.h1x)[i][j] = (*m.exact)[i + j + 1];
                (*h.h2x)[i][j] = m.lambda_inv * (*m.exact)[i + j] -
                                 (*m.exact)[i + j + 1];
            }
    }
    return h;
}

bool rational_psd(std::vector<std::vector<Rat>> a) {
    const size_t n = a.size();
    std::vector<size_t> idx(n);
    for (size_t i = 0; i < n; ++i) idx[i] = i;

    for (size_t k = 0; k < n; ++k) {
        // Largest remaining diagonal entry as pivot.
        size_t best = k;
        for (size_t j = k; j < n; ++j)
            if (a[idx[j]][idx[j]] > a[idx[best]][idx[best]]) best = j;
        const Rat piv = a[idx[best]][idx[best]];
        if (piv < 0) return false;
        if (piv == 0) {
            // PSD forces the whole remaining block to vanish.
            for (size_t i = k; i < n; ++i)
                for (size_t j = k; j < n; ++j)
                    if (a[idx[i]][idx[j]] != 0) return false;
            return true;
        }
        std::swap(idx[k], idx[best]);
        const size_t p = idx[k];
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j)
                a[idx[i]][idx[j]] -= a[idx[i]][p] * a[p][idx[j]] / piv;
    }
    return true;
}

std::string AdmissibilityVerdict::kind_name() const {
    switch (kind) {
        case Kind::Admissible: return "Admissible";
        case Kind::Rejected: return "Rejected";
        default: return "Inconclusive";
    }
}

namespace {

struct PsdCheck {
    bool pass;          // min eigenvalue >= -tol_abs (or exact PSD)
    bool comfortable;   // well inside the PSD cone
    double min_eig;
    std::vector<double> eigvec;
};

PsdCheck float_psd(const std::vector<std::vector<double>>& m, double tol) {
    const int n = static_cast<int>(m.size());
    Eigen::MatrixXd a(n, n);
    double trace = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) a(i, j) = m[i][j];
        trace += m[i][i];
    }
    const double tol_abs = tol * std::max(1.0, trace / n);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
    double min_eig = es.eigenvalues()(0);
    std::vector<double> vec(n);
    for (int i = 0; i < n; ++i) vec[i] = es.eigenvectors()(i, 0);
    return {min_eig >= -tol_abs, min_eig >= -0.1 * tol_abs, min_eig, vec};
}

// Checks the triple at one level; fills the witness on the first failure.
bool triple_ok(const MomentSequence& m, int level, double tol, bool exact,
               bool* comfortable, RejectWitness* witness) {
    HankelTriple h = hankel_triple(m, level);
    const char* names[3] = {"H0", "H1", "H2"};
    const std::vector<std::vector<double>>* floats[3] = {&h.h0, &h.h1, &h.h2};
    const std::optional<std::vector<std::vector<Rat>>>* exacts[3] = {
        &h.h0x, &h.h1x, &h.h2x};
    if (comfortable) *comfortable = true;
    for (int w = 0; w < 3; ++w) {
        bool ok;
        PsdCheck chk = float_psd(*floats[w], tol);
        if (exact) {
            ok = rational_psd(**exacts[w]);
        } else {
            ok = chk.pass;
            if (comfortable && !chk.comfortable) *comfortable = false;
        }
        if (!ok) {
            if (witness)
                *witness = RejectWitness{names[w], level, chk.min_eig,
                                         chk.eigvec};
            return false;
        }
    }
    return true;
}

} // namespace

AdmissibilityVerdict admissibility(const MomentSequence& m, int N,
                                   double tol) {
    if (N < 0) throw ParamError("admissibility: N >= 0");
    for (double v : m.values)
        if (!std::isfinite(v)) throw ParamError("admissibility: non-finite moments");
    if (m.values.empty() || m.values[0] <= 0)
        throw ParamError("admissibility: m_0 must be > 0");

    // Normalize to m_0 = 1.
    MomentSequence nm = m;
    const double m0 = m.values[0];
    for (double& v : nm.values) v /= m0;
    if (nm.exact) {
        const Rat m0x = (*nm.exact)[0];
        for (Rat& v : *nm.exact) v /= m0x;
    }

    const bool exact = nm.exact.has_value();
    // PSD at level N implies PSD at all lower levels (principal
    // submatrices), so the positive certificate needs level N only.
    bool comfortable = true;
    if (triple_ok(nm, N, tol, exact, &comfortable, nullptr)) {
        if (exact || comfortable)
            return {AdmissibilityVerdict::Kind::Admissible, N, exact,
                    std::nullopt};
        return {AdmissibilityVerdict::Kind::Inconclusive, N, exact,
                std::nullopt};
    }
    // Find the minimal failing level for the witness.
    for (int l = 0; l <= N; ++l) {
        RejectWitness w;
        if (!triple_ok(nm, l, tol, exact, nullptr, &w))
            return {AdmissibilityVerdict::Kind::Rejected, l, exact, w};
    }
    // Float roundoff straddling the threshold across levels.
    return {AdmissibilityVerdict::Kind::Inconclusive, N, exact, std::nullopt};
}

L1RangeResult l1_range_check(const Rat& lambda_inv, const Rat& t, int n_max) {
    if (n_max < 1) throw ParamError("l1_range_check: n_max >= 1");
    // Running recurrences for V_n(t) and V_n(lambda_inv), exact.
    Rat vt_prev = 1, vt = t - 1;
    Rat vl_prev = 1, vl = lambda_inv - 1;
    for (int n = 0; n <= n_max; ++n) {
        const Rat& cur_t = n == 0 ? vt_prev : vt;
        const Rat& cur_l = n == 0 ? vl_prev : vl;
        if (abs(cur_t) > cur_l)
            return {false, n, std::abs(to_double(cur_t)), to_double(cur_l)};
        if (n >= 1) {
            Rat nt = (t - 2) * vt - vt_prev;
            vt_prev = vt;
            vt = nt;
            Rat nl = (lambda_inv - 2) * vl - vl_prev;
            vl_prev = vl;
            vl = nl;
        }
    }
    return {true, -1, 0, 0};
}

double plancherel_pair(int n, int m, QuadratureParams params) {
    if (n < 0 || m < 0) throw ParamError("plancherel_pair: n, m >= 0");
    // t = 2 - 2 cos u maps [0, pi] onto [0, 4]; the density becomes
    // (1/pi) (1 + cos u) du, a smooth (trig polynomial) integrand, so the
    // trapezoid rule converges spectrally.
    auto integrate = [&](int points) {
        const double h = M_PI / points;
        double sum = 0;
        for (int i = 0; i <= points; ++i) {
            const double u = i * h;
            const double t = 2.0 - 2.0 * std::cos(u);
            const double f = chebyshev_V(n, t) * chebyshev_V(m, t) *
                             (1.0 + std::cos(u)) / M_PI;
            sum += (i == 0 || i == points) ? 0.5 * f : f;
        }
        return sum * h;
    };
    const double coarse = integrate(params.points);
    const double fine = integrate(2 * params.points);
    if (std::abs(fine - coarse) > params.tol)
        throw NumericError("plancherel quadrature did not converge to " +
                               std::to_string(params.tol),
                           fine);
    return fine;
}

std::vector<std::complex<double>> to_polynomial(const FusionElement& x) {
    require_tlj(x.ring());
    int top = -1;
    for (const auto& [l, c] : x.coeffs()) top = std::max(top, tlj_n(l));
    std::vector<std::complex<double>> coeffs(top + 1, 0.0);
    for (const auto& [l, c] : x.coeffs()) coeffs[tlj_n(l)] = c.to_complex();
    return coeffs;
}

namespace {

std::complex<double> eval_series(const std::vector<std::complex<double>>& c,
                                 double t) {
    std::complex<double> acc = 0;
    double vp = 1, v = t - 1;
    for (size_t n = 0; n < c.size(); ++n) {
        const double vn = n == 0 ? vp : v;
        acc += c[n] * vn;
        if (n >= 1) {
            double nx = (t - 2) * v - vp;
            vp = v;
            v = nx;
        }
    }
    return acc;
}

// d/dt of |P|^2 via the derivative recurrence V'_{n+1} = V_n + (t-2) V'_n - V'_{n-1}.
double abs2_derivative(const std::vector<std::complex<double>>& c, double t) {
    std::complex<double> p = 0, dp = 0;
    double vp = 1, v = t - 1;
    double dvp = 0, dv = 1;
    for (size_t n = 0; n < c.size(); ++n) {
        const double vn = n == 0 ? vp : v;
        const double dvn = n == 0 ? dvp : dv;
        p += c[n] * vn;
        dp += c[n] * dvn;
        if (n >= 1) {
            double nx = (t - 2) * v - vp;
            double dnx = v + (t - 2) * dv - dvp;
            vp = v;
            v = nx;
            dvp = dv;
            dv = dnx;
        }
    }
    return 2.0 * std::real(std::conj(p) * dp);
}

double sup_abs_series(const std::vector<std::complex<double>>& c, double lo,
                      double hi) {
    if (c.empty()) return 0;
    constexpr int kGrid = 2048;
    std::vector<double> nodes(kGrid + 1);
    for (int i = 0; i <= kGrid; ++i) {
        // Chebyshev nodes plus both endpoints.
        const double x = std::cos(M_PI * i / kGrid);
        nodes[kGrid - i] = 0.5 * (lo + hi) + 0.5 * (hi - lo) * x;
    }
    double best = 0;
    std::vector<double> vals(kGrid + 1);
    for (int i = 0; i <= kGrid; ++i) {
        vals[i] = std::abs(eval_series(c, nodes[i]));
        best = std::max(best, vals[i]);
    }
    // Refine every interior local maximum with bisection on (|P|^2)'.
    for (int i = 1; i < kGrid; ++i) {
        if (vals[i] < vals[i - 1] || vals[i] < vals[i + 1]) continue;
        double a = nodes[i - 1], b = nodes[i + 1];
        double ga = abs2_derivative(c, a), gb = abs2_derivative(c, b);
        if (ga <= 0 || gb >= 0) {
            best = std::max(best, vals[i]);
            continue;
        }
        for (int it = 0; it < 90; ++it) {
            double mid = 0.5 * (a + b);
            double gm = abs2_derivative(c, mid);
            if (gm > 0)
                a = mid;
            else
                b = mid;
        }
        best = std::max(best, std::abs(eval_series(c, 0.5 * (a + b))));
    }
    return best;
}

} // namespace

double universal_norm(const FusionElement& x, double lambda_inv) {
    if (lambda_inv < 4)
        throw ParamError("universal_norm: lambda_inv >= 4");
    auto c = to_polynomial(x);
    return sup_abs_series(c, 0.0, lambda_inv);
}

double reduced_norm(const FusionElement& x) {
    auto c = to_polynomial(x);
    return sup_abs_series(c, 0.0, 4.0);
}

double l1_bound(const FusionElement& x) {
    double s = 0;
    for (const auto& [l, c] : x.coeffs())
        s += std::abs(c.to_complex()) * x.ring()->dim(l);
    return s;
}

} // namespace fusion
