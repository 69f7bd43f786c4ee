#include <doctest.h>

#include <cmath>

#include "fusion/chebyshev.hpp"

using namespace fusion;

namespace {

// Closed forms for V_n on the three parameter ranges:
//   t = 2(1+cos a):  (sin((n+1)a) + sin(na)) / sin(a)
//   t = 2(1+cosh a): (sinh((n+1)a) + sinh(na)) / sinh(a)
//   t = 2(1-cosh a): (-1)^n (sinh((n+1)a) - sinh(na)) / sinh(a)
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

} // namespace

TEST_CASE("V_0 and the small values") {
    CHECK(chebyshev_V(0, 3.7) == 1.0);
    CHECK(chebyshev_V(1, 5.0) == 4.0);
    CHECK(chebyshev_V(2, 5.0) == 11.0);
    CHECK(chebyshev_V(3, 5.0) == 29.0); // 3*11 - 4
    CHECK(chebyshev_V(4, 5.0) == 76.0); // 3*29 - 11
}

TEST_CASE("V_n(0) = (-1)^n") {
    for (int n = 0; n <= 10; ++n)
        CHECK(chebyshev_V(n, 0.0) == (n % 2 == 0 ? 1.0 : -1.0));
}

TEST_CASE("V_n(4) = 2n + 1") {
    for (int n = 0; n <= 12; ++n) CHECK(chebyshev_V(n, 4.0) == 2.0 * n + 1.0);
}

TEST_CASE("recurrence matches the closed forms on [-2, 8]") {
    for (int n = 0; n <= 30; ++n) {
        for (int i = 0; i <= 100; ++i) {
            const double t = -2.0 + 0.1 * i;
            const double rec = chebyshev_V(n, t);
            const double cf = closed_form_V(n, t);
            CHECK(std::abs(rec - cf) <= 1e-10 * std::max(1.0, std::abs(cf)));
        }
    }
}

TEST_CASE("exact values agree with doubles") {
    Rat t(9, 2);
    auto row = chebyshev_V_row(20, t);
    for (int n = 0; n <= 20; ++n) {
        CHECK(chebyshev_V(n, t) == row[n]);
        CHECK(to_double(row[n]) ==
              doctest::Approx(chebyshev_V(n, 4.5)).epsilon(1e-12));
    }
}

TEST_CASE("negative degree is rejected") {
    CHECK_THROWS_AS(chebyshev_V(-1, 2.0), ParamError);
}
