#include "fusion/chebyshev.hpp"

namespace fusion {

namespace {

template <class T>
T cheb_recurrence(int n, const T& t) {
    if (n == 0) return T(1);
    T prev = T(1);
    T cur = t - T(1);
    for (int k = 1; k < n; ++k) {
        T next = (t - T(2)) * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

template <class T>
std::vector<T> cheb_row(int n, const T& t) {
    std::vector<T> row;
    row.reserve(n + 1);
    row.push_back(T(1));
    if (n == 0) return row;
    row.push_back(t - T(1));
    for (int k = 1; k < n; ++k)
        row.push_back((t - T(2)) * row[k] - row[k - 1]);
    return row;
}

} // namespace

double chebyshev_V(int n, double t) {
    if (n < 0) throw ParamError("chebyshev_V: n must be >= 0");
    return cheb_recurrence<double>(n, t);
}

Rat chebyshev_V(int n, const Rat& t) {
    if (n < 0) throw ParamError("chebyshev_V: n must be >= 0");
    return cheb_recurrence<Rat>(n, t);
}

std::vector<double> chebyshev_V_row(int n, double t) {
    if (n < 0) throw ParamError("chebyshev_V_row: n must be >= 0");
    return cheb_row<double>(n, t);
}

std::vector<Rat> chebyshev_V_row(int n, const Rat& t) {
    if (n < 0) throw ParamError("chebyshev_V_row: n must be >= 0");
    return cheb_row<Rat>(n, t);
}

} // namespace fusion
