// Acceptance suite: every criterion prints one PASS/FAIL line with its
// runtime; the process exits nonzero when any criterion fails.

#include <Eigen/Dense>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <vector>

#include "fusion/grading.hpp"
#include "fusion/io.hpp"
#include "fusion/spectral.hpp"
#include "fusion/tlj_analysis.hpp"

using namespace fusion;

namespace {

int failures = 0;

struct Criterion {
    const char* name;
    double time_budget_s; // 0 = unbudgeted
};

void report(const Criterion& c, bool ok, double seconds,
            const std::string& detail = "") {
    const bool in_budget = c.time_budget_s == 0 || seconds < c.time_budget_s;
    const bool pass = ok && in_budget;
    if (!pass) ++failures;
    std::printf("%s criterion %s (%.2fs%s)%s%s\n", pass ? "PASS" : "FAIL",
                c.name, seconds,
                c.time_budget_s > 0 && !in_budget ? ", over budget" : "",
                detail.empty() ? "" : ": ", detail.c_str());
}

template <class F>
void run(const Criterion& c, F&& body) {
    auto start = std::chrono::steady_clock::now();
    bool ok = false;
    std::string detail;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    report(c, ok, seconds, detail);
}

double closed_form_V(int n, double t) {
    const double eps = 1e-12;
    if (std::abs(t) < eps) return n % 2 == 0 ? 1.0 : -1.0;
    if (std::abs(t - 4.0) < eps) return 2.0 * n + 1.0;
    if (t > 4.0) {
        double a = std::acosh(t / 2.0 - 1.0);
        return (std::sinh((n + 1) * a) + std::sinh(n * a)) / std::sinh(a);
    }
    if (t > 0.0) {
        double a = std::acos(t / 2.0 - 1.0);
        return (std::sin((n + 1) * a) + std::sin(n * a)) / std::sin(a);
    }
    double a = std::acosh(1.0 - t / 2.0);
    double v = (std::sinh((n + 1) * a) - std::sinh(n * a)) / std::sinh(a);
    return n % 2 == 0 ? v : -v;
}

// Independent exact scan used to confirm first violation indices.
int oracle_first_violation(const Rat& lam, const Rat& t, int n_max) {
    Rat vt_p = 1, vt = t - 1, vl_p = 1, vl = lam - 1;
    for (int n = 0; n <= n_max; ++n) {
        const Rat& ct = n == 0 ? vt_p : vt;
        const Rat& cl = n == 0 ? vl_p : vl;
        if (abs(ct) > cl) return n;
        if (n >= 1) {
            Rat nt = (t - 2) * vt - vt_p;
            vt_p = vt;
            vt = nt;
            Rat nl = (lam - 2) * vl - vl_p;
            vl_p = vl;
            vl = nl;
        }
    }
    return -1;
}

FusionElement tlj_X(const RingPtr& ring) {
    FusionElement x(ring);
    x.add(Label{{0}}, CRat(1));
    x.add(Label{{1}}, CRat(1));
    return x;
}

FusionElement rand_element(const RingPtr& ring, int max_level,
                           std::mt19937& rng) {
    auto labels = ring->labels_up_to_level(max_level);
    std::uniform_int_distribution<size_t> pick(0, labels.size() - 1);
    std::uniform_int_distribution<int> small(-2, 2);
    FusionElement e(ring);
    int terms = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < terms; ++i)
        e.add(labels[pick(rng)], CRat(Rat(small(rng)), Rat(small(rng))));
    return e;
}

// --- criteria ---------------------------------------------------------------

bool criterion_chebyshev(std::string& detail) {
    for (int n = 0; n <= 30; ++n) {
        for (int i = 0; i <= 100; ++i) {
            const double t = -2.0 + 0.1 * i;
            const double rec = chebyshev_V(n, t);
            const double cf = closed_form_V(n, t);
            if (std::abs(rec - cf) > 1e-10 * std::max(1.0, std::abs(cf))) {
                detail = "mismatch at n=" + std::to_string(n) +
                         ", t=" + std::to_string(t);
                return false;
            }
        }
    }
    detail = "31 degrees x 101 grid points, rel 1e-10";
    return true;
}

bool criterion_classification(std::string& detail) {
    int certified = 0, rejected = 0;
    for (const Rat& lam : {Rat(4), Rat(9, 2), Rat(5), Rat(6)}) {
        auto ring = build_tlj_ainf(lam);
        for (int i = 0; i <= 20; ++i) {
            Rat t = lam * Rat(i, 20);
            auto v = admissibility(moments(phi_point(ring, t), 26), 12, 1e-9);
            if (v.rejected()) {
                detail = "rejected interior point t = " + rational_to_string(t);
                return false;
            }
            if (v.kind != AdmissibilityVerdict::Kind::Admissible) {
                detail = "inconclusive at t = " + rational_to_string(t);
                return false;
            }
            ++certified;
        }
        for (const Rat& t :
             {Rat(lam + Rat(1, 5)), Rat(lam + 1), Rat(-1, 5), Rat(-1)}) {
            auto v = admissibility(moments(phi_point(ring, t), 26), 12, 1e-9);
            if (!v.rejected() || v.level > 2) {
                detail = "missed rejection at t = " + rational_to_string(t);
                return false;
            }
            ++rejected;
        }
    }
    detail = std::to_string(certified) + " admissible + " +
             std::to_string(rejected) + " rejected, exact PSD";
    return true;
}

bool criterion_plancherel(std::string& detail) {
    for (int n = 1; n <= 10; ++n)
        if (std::abs(plancherel_pair(n, 0)) > 1e-8) {
            detail = "int V_n dmu != 0 at n = " + std::to_string(n);
            return false;
        }
    for (int n = 0; n <= 6; ++n)
        for (int m = 0; m <= 6; ++m) {
            double g = plancherel_pair(n, m);
            double expect = n == m ? 1.0 : 0.0;
            if (std::abs(g - expect) > 1e-7) {
                detail = "Gram defect at (" + std::to_string(n) + "," +
                         std::to_string(m) + ")";
                return false;
            }
        }
    auto tlj = build_tlj_ainf(Rat(5));
    auto ms = moments(regular_multiplier(tlj), 11);
    if (!ms.exact) {
        detail = "regular moments lost exactness";
        return false;
    }
    for (int k = 0; k <= 10; ++k)
        if ((*ms.exact)[k] != Rat(catalan(k))) {
            detail = "m_k != Catalan at k = " + std::to_string(k);
            return false;
        }
    detail = "orthonormal Gram 7x7, Catalan moments exact to k = 10";
    return true;
}

bool criterion_regular_amenability(std::string& detail) {
    auto tlj5 = build_tlj_ainf(Rat(5));
    auto est = norm_estimate(tlj5, tlj_X(tlj5), 500);
    if (!(est.estimate >= 3.99 && est.estimate <= 4.0)) {
        detail = "norm estimate at N=500: " + std::to_string(est.estimate);
        return false;
    }
    if (reduced_norm(tlj_X(tlj5)) != 4.0) {
        detail = "reduced norm of X is not exactly 4";
        return false;
    }
    auto rep5 = amenability_report(tlj5, tlj_X(tlj5), 500, 1e-3);
    if (rep5.verdict != AmenabilityReport::Verdict::GapDetected) {
        detail = "lambda_inv=5 not GapDetected";
        return false;
    }
    auto tlj4 = build_tlj_ainf(Rat(4));
    auto rep4 = amenability_report(tlj4, tlj_X(tlj4), 500, 1e-3);
    if (rep4.verdict != AmenabilityReport::Verdict::AmenableWithinTol) {
        detail = "lambda_inv=4 not AmenableWithinTol";
        return false;
    }
    for (int m = 4; m <= 12; ++m) {
        auto fin = build_tlj_finite(m);
        FusionElement h1 = FusionElement::basis(fin, Label{{1}});
        auto rep = amenability_report(fin, h1, 64, 1e-3);
        if (rep.verdict != AmenabilityReport::Verdict::AmenableWithinTol ||
            !rep.exact_equality) {
            detail = "finite m = " + std::to_string(m) +
                     " missing exact Kesten equality";
            return false;
        }
    }
    detail = "N=500 estimate " + std::to_string(est.estimate) +
             ", reduced norm 4 exact, finite certificates m <= 12";
    return true;
}

bool criterion_l1_range(std::string& detail) {
    Rat lam(5);
    for (const Rat& t : {Rat(-1), Rat(0), Rat(3), Rat(5)}) {
        auto r = l1_range_check(lam, t, 200);
        if (!r.ok) {
            detail = "false violation at t = " + rational_to_string(t);
            return false;
        }
    }
    for (const Rat& t : {Rat(-6, 5), Rat(51, 10)}) {
        auto r = l1_range_check(lam, t, 200);
        int oracle = oracle_first_violation(lam, t, 200);
        if (r.ok || r.first_violation != oracle) {
            detail = "violation index mismatch at t = " + rational_to_string(t);
            return false;
        }
    }
    if (l1_range_check(lam, Rat(-6, 5), 200).first_violation != 10) {
        detail = "t = -1.2 should first violate at n = 10";
        return false;
    }
    detail = "boundary points clean, first indices 10 (t=-1.2) and 1 (t=5.1)";
    return true;
}

bool criterion_multiplier_calculus(std::string& detail) {
    std::mt19937 rng(424242);
    auto tlj = build_tlj_ainf(Rat(5));
    auto z = build_group_z();
    std::uniform_int_distribution<int> small(-2, 2);
    int trials = 0;
    for (const auto& ring : {tlj, z}) {
        for (int i = 0; i < 100; ++i) {
            std::map<Label, CRat> tbl;
            for (const auto& l : ring->labels_up_to_level(3))
                tbl[l] = CRat(Rat(small(rng)), Rat(small(rng)));
            auto phi = table_multiplier(ring, std::move(tbl));
            FusionElement x = rand_element(ring, 3, rng);
            FusionElement y = rand_element(ring, 3, rng);
            FusionElement a = rand_element(ring, 3, rng);
            auto lhs = omega_exact(convolve(phi, x, y), a);
            auto rhs = omega_exact(phi, y.star() * a * x);
            if (!lhs || !rhs || !(*lhs == *rhs)) {
                detail = "pairing identity failed on " + ring->name();
                return false;
            }
            ++trials;
        }
    }
    // phi_{x,x} = |eps_t(x)|^2 phi_t
    for (const Rat& t : {Rat(2), Rat(7, 2), Rat(5)}) {
        auto phi = phi_point(tlj, t);
        for (int i = 0; i < 10; ++i) {
            FusionElement x = rand_element(tlj, 2, rng);
            std::complex<double> eval = 0;
            for (const auto& [l, c] : x.coeffs())
                eval += c.to_complex() * chebyshev_V(l.code[0], to_double(t));
            const double scale = std::norm(eval);
            auto conv = convolve(phi, x, x);
            for (int n = 0; n <= 8; ++n) {
                std::complex<double> got = conv.eval(Label{{n}});
                std::complex<double> want =
                    scale * phi.eval(Label{{n}});
                if (std::abs(got - want) >
                    1e-12 * std::max(1.0, std::abs(want))) {
                    detail = "phi_{x,x} identity failed at t = " +
                             rational_to_string(t);
                    return false;
                }
            }
        }
    }
    detail = std::to_string(trials) +
             " exact pairing triples + point-multiplier identity at 1e-12";
    return true;
}

bool criterion_grade_average(std::string& detail) {
    auto su3 = build_sun(3, 1.0);
    GradingMap xi = grading_of_sun(su3);
    auto kernel = grading_kernel(su3, xi);
    auto indicator = extend_by_zero(su3, kernel, trivial_multiplier(kernel));
    std::map<int, Label> reps = {{0, su3->unit()},
                                 {1, su3->label_from_string("[1]")},
                                 {2, su3->label_from_string("[1,1]")}};
    auto averaged = grade_average(su3, xi, reps, indicator);
    int checked = 0;
    for (const auto& l : su3->labels_up_to_level(6)) {
        auto v = averaged.eval_exact(l);
        if (!v || !(*v == CRat(1))) {
            detail = "grade average != 1 at " + su3->label_to_string(l);
            return false;
        }
        ++checked;
    }
    detail = "exactly 1 on all " + std::to_string(checked) +
             " labels with |partition| <= 6";
    return true;
}

bool criterion_builders(std::string& detail) {
    struct Item {
        const char* name;
        RingPtr ring;
    };
    std::vector<Item> rings;
    rings.push_back({"tlj(5)", build_tlj_ainf(Rat(5))});
    rings.push_back({"tlj_finite(6)", build_tlj_finite(6)});
    rings.push_back({"Z", build_group_z()});
    rings.push_back({"F2", build_free_group(2)});
    rings.push_back({"su(3,q=1)", build_sun(3, 1.0)});
    rings.push_back({"su(3,q=0.9)", build_sun(3, 0.9)});
    rings.push_back(
        {"tlj(5) x Z/2", build_product(build_tlj_ainf(Rat(5)),
                                       build_group_zn(2))});
    rings.push_back({"fuss-catalan",
                     build_free_product(build_tlj_ainf(Rat(5)),
                                        build_tlj_ainf(Rat(4)))});
    for (const auto& item : rings) {
        try {
            validate_ring(*item.ring, 5, 128);
        } catch (const std::exception& e) {
            detail = std::string(item.name) + ": " + e.what();
            return false;
        }
    }
    detail = "8 rings, all labels to level 5, Frobenius/assoc/dim-hom";
    return true;
}

bool criterion_subgroup_extension(std::string& detail) {
    auto z = build_group_z();
    auto even = grading_kernel(z, canonical_grading(z, 2));
    auto psi = extend_by_zero(z, even, trivial_multiplier(even));
    for (int size = 1; size <= 8; ++size) {
        Eigen::MatrixXd t(size, size);
        for (int i = 0; i < size; ++i)
            for (int j = 0; j < size; ++j) {
                Label diff{{j - i}};
                t(i, j) = psi.eval(diff).real();
            }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
        if (es.eigenvalues()(0) < -1e-12) {
            detail = "Toeplitz size " + std::to_string(size) +
                     " has eigenvalue " + std::to_string(es.eigenvalues()(0));
            return false;
        }
    }
    detail = "Toeplitz [psi(j-i)] PSD for sizes 1..8 (eigs >= -1e-12)";
    return true;
}

} // namespace

int main() {
    run({"1 (Chebyshev coherence)", 1.0}, criterion_chebyshev);
    run({"2 (TLJ classification)", 5.0}, criterion_classification);
    run({"3 (Plancherel)", 0}, criterion_plancherel);
    run({"4 (regular/amenability)", 10.0}, criterion_regular_amenability);
    run({"5 (L1 range)", 0}, criterion_l1_range);
    run({"6 (multiplier calculus)", 0}, criterion_multiplier_calculus);
    run({"7 (grading average)", 0}, criterion_grade_average);
    run({"8 (builders)", 30.0}, criterion_builders);
    run({"9 (subgroup extension)", 0}, criterion_subgroup_extension);

    if (failures == 0) {
        std::printf("all acceptance criteria passed\n");
        return 0;
    }
    std::printf("%d criteria failed\n", failures);
    return 1;
}
