#include "surfstab/rational.hpp"
#include <sstream>
#include <stdexcept>

namespace surfstab {

QC scale(const Rat& s, const QC& z) { return {s * z.re, s * z.im}; }

Rat cross(const QC& a, const QC& b) { return a.re * b.im - a.im * b.re; }
Rat dot(const QC& a, const QC& b) { return a.re * b.re + a.im * b.im; }

bool parallel(const QC& a, const QC& b) {
    return !a.isZero() && !b.isZero() && cross(a, b) == 0;
}

std::string ratToString(const Rat& r) {
    std::ostringstream os;
    os << numerator(r);
    if (denominator(r) != 1) os << "/" << denominator(r);
    return os.str();
}

std::string qcToString(const QC& z) {
    if (z.im == 0) return ratToString(z.re);
    std::string s;
    if (z.re != 0) s += ratToString(z.re);
    if (z.im > 0 && z.re != 0) s += "+";
    if (z.im == -1) s += "-";
    else if (z.im != 1) s += ratToString(z.im);
    s += "i";
    return s;
}

Rat parseRat(const std::string& s) {
    auto bad = [&]() { throw std::invalid_argument("bad rational: '" + s + "'"); };
    if (s.empty()) bad();
    size_t slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) bad();
        return Rat(num, den);
    } catch (const std::runtime_error&) {
        bad();
    }
    return Rat(0); // unreachable
}

QC parseQC(const std::string& raw) {
    std::string s;
    for (char c : raw)
        if (!isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw std::invalid_argument("empty complex literal");

    // Split into at most two signed terms.
    std::vector<std::string> terms;
    size_t start = 0;
    for (size_t i = 1; i < s.size(); ++i) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != '/' && s[i - 1] != '+' &&
            s[i - 1] != '-') {
            terms.push_back(s.substr(start, i - start));
            start = i;
        }
    }
    terms.push_back(s.substr(start));
    QC z;
    for (auto& t : terms) {
        if (t.empty()) throw std::invalid_argument("bad complex: '" + raw + "'");
        if (t.back() == 'i') {
            std::string body = t.substr(0, t.size() - 1);
            if (body.empty() || body == "+") z.im += 1;
            else if (body == "-") z.im -= 1;
            else z.im += parseRat(body);
        } else {
            z.re += parseRat(t);
        }
    }
    return z;
}

} // namespace surfstab
