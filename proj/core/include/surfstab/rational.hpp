#pragma once
#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <iosfwd>

namespace surfstab {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Complex number with exact rational real and imaginary parts. All central
// charges, phases and wall predicates are computed in this type; the library
// contains no floating point on any decision path.
struct QC {
    Rat re{0};
    Rat im{0};

    QC() = default;
    QC(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}
    explicit QC(long r) : re(r), im(0) {}

    bool isZero() const { return re == 0 && im == 0; }

    QC operator+(const QC& o) const { return {re + o.re, im + o.im}; }
    QC operator-(const QC& o) const { return {re - o.re, im - o.im}; }
    QC operator-() const { return {-re, -im}; }
    QC operator*(const QC& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    QC& operator+=(const QC& o) { re += o.re; im += o.im; return *this; }
    QC& operator-=(const QC& o) { re -= o.re; im -= o.im; return *this; }
    bool operator==(const QC& o) const { return re == o.re && im == o.im; }
    bool operator!=(const QC& o) const { return !(*this == o); }

    Rat normSq() const { return re * re + im * im; }
};

QC scale(const Rat& s, const QC& z);

// cross(a,b) = Im(conj(a) * b); sign tells whether b is ccw (+) of a.
Rat cross(const QC& a, const QC& b);
// dot(a,b) = Re(conj(a) * b).
Rat dot(const QC& a, const QC& b);

// True if a and b span the same real line through 0 (both nonzero).
bool parallel(const QC& a, const QC& b);

std::string ratToString(const Rat& r);
std::string qcToString(const QC& z);

// Parses "p/q" or "p"; throws std::invalid_argument on malformed input.
Rat parseRat(const std::string& s);
// Parses "a", "a+bi", "a-bi", "bi" with rational a, b (no spaces required).
QC parseQC(const std::string& s);

} // namespace surfstab
