#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <cstdint>
#include <optional>
#include <string>

#include "fusion/errors.hpp"

namespace fusion {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline double to_double(const Rat& r) { return r.template convert_to<double>(); }

// Complex number with exact rational real and imaginary parts. The scalar
// field of the fusion *-algebra in exact mode.
struct CRat {
    Rat re;
    Rat im;

    CRat() = default;
    CRat(Rat r) : re(std::move(r)) {}
    CRat(long r) : re(r) {}
    CRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }
    CRat conj() const { return {re, -im}; }

    std::complex<double> to_complex() const {
        return {to_double(re), to_double(im)};
    }

    friend CRat operator+(const CRat& a, const CRat& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend CRat operator-(const CRat& a, const CRat& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend CRat operator*(const CRat& a, const CRat& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    CRat& operator+=(const CRat& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    CRat& operator*=(const CRat& o) { return *this = *this * o; }
    friend bool operator==(const CRat& a, const CRat& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const CRat& a, const CRat& b) { return !(a == b); }
};

// Exact rational from a decimal or fraction string: "5", "-4.5", "9/2".
// Used for CLI parameters so that e.g. --lambda-inv 4.5 lands in the exact
// arithmetic path.
Rat parse_rational(const std::string& text);

std::string rational_to_string(const Rat& r);

// Catalan number C_k, exact.
BigInt catalan(unsigned k);

} // namespace fusion
