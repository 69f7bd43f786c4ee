#pragma once

#include <vector>

#include "fusion/numeric.hpp"

namespace fusion {

// V_n(t) = U_{2n}(sqrt(t)/2) via the three-term recurrence
//   V_0 = 1,  V_1 = t - 1,  V_{n+1} = (t-2) V_n - V_{n-1}.
// These are the dimension polynomials of the TLJ tower: the n-th
// irreducible has dimension V_n(lambda^{-1}).
double chebyshev_V(int n, double t);
Rat chebyshev_V(int n, const Rat& t);

// V_0(t) .. V_n(t) in one sweep.
std::vector<double> chebyshev_V_row(int n, double t);
std::vector<Rat> chebyshev_V_row(int n, const Rat& t);

} // namespace fusion
