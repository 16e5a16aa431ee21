#pragma once

// Exact rational arithmetic. Every scalar in this library is a Rational in
// canonical form: denominator > 0 and gcd(|numerator|, denominator) = 1.
// Arithmetic is exact; nothing in this header rounds. Decimal rendering
// (round half to even) is output-only and never feeds back into computation.

#include <gmpxx.h>

#include <cstdlib>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace qzeta {

class Rational {
public:
    Rational() : v_(0) {}
    Rational(int n) : v_(static_cast<long>(n)) {}
    Rational(long n) : v_(n) {}

    Rational(long num, long den) : Rational(mpz_class(num), mpz_class(den)) {}

    Rational(const mpz_class& num, const mpz_class& den) {
        if (den == 0) throw std::invalid_argument("Rational: zero denominator");
        v_ = mpq_class(num, den);
        v_.canonicalize();
    }

    explicit Rational(const mpz_class& n) : v_(n) {}

    explicit Rational(mpq_class v) : v_(std::move(v)) {
        if (v_.get_den() == 0) throw std::invalid_argument("Rational: zero denominator");
        v_.canonicalize();
    }

    // Accepts "a/b", an integer, or an exact decimal / scientific literal
    // ("0.25", "1e-30", "2.5e-3"). Anything non-terminating is a parse error.
    static Rational parse(std::string_view text);

    int sign() const { return sgn(v_); }
    bool is_zero() const { return sign() == 0; }
    bool is_integer() const { return v_.get_den() == 1; }

    mpz_class numerator() const { return v_.get_num(); }
    mpz_class denominator() const { return v_.get_den(); }
    const mpq_class& raw() const { return v_; }

    Rational abs() const { return v_ < 0 ? Rational(mpq_class(-v_), raw_tag{}) : *this; }

    Rational inverse() const {
        if (is_zero()) throw std::domain_error("Rational: inverse of zero");
        mpq_class r;
        mpq_inv(r.get_mpq_t(), v_.get_mpq_t());
        return Rational(std::move(r), raw_tag{});
    }

    // Integer power; negative exponents require a nonzero base.
    Rational pow(long e) const {
        if (e == 0) return Rational(1);
        if (is_zero()) {
            if (e < 0) throw std::domain_error("Rational: zero to a negative power");
            return Rational();
        }
        mpz_class n = v_.get_num(), d = v_.get_den();
        if (e < 0) {
            std::swap(n, d);
            if (d < 0) { d = -d; n = -n; }
        }
        const auto a = static_cast<unsigned long>(e < 0 ? -e : e);
        mpz_pow_ui(n.get_mpz_t(), n.get_mpz_t(), a);
        mpz_pow_ui(d.get_mpz_t(), d.get_mpz_t(), a);
        mpq_class r;
        r.get_num() = std::move(n);
        r.get_den() = std::move(d);
        return Rational(std::move(r), raw_tag{});  // coprime stays coprime under powers
    }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::domain_error("Rational: division by zero");
        v_ /= o.v_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { a += b; return a; }
    friend Rational operator-(Rational a, const Rational& b) { a -= b; return a; }
    friend Rational operator*(Rational a, const Rational& b) { a *= b; return a; }
    friend Rational operator/(Rational a, const Rational& b) { a /= b; return a; }
    friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.v_), raw_tag{}); }

    friend bool operator==(const Rational& a, const Rational& b) { return mpq_equal(a.v_.get_mpq_t(), b.v_.get_mpq_t()) != 0; }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) < 0; }
    friend bool operator<=(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) <= 0; }
    friend bool operator>(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) > 0; }
    friend bool operator>=(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) >= 0; }

    // "num/den" with the denominator always spelled out ("3/1", "-1/2").
    std::string fraction_string() const {
        return v_.get_num().get_str() + "/" + v_.get_den().get_str();
    }

    // Fixed-point decimal with `digits` fractional digits, round half to even.
    std::string decimal_string(unsigned digits) const {
        mpz_class a = ::abs(v_.get_num());
        const mpz_class& den = v_.get_den();
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
        mpz_class t = a * scale, q, r;
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), t.get_mpz_t(), den.get_mpz_t());
        mpz_class twice = 2 * r;
        const int c = cmp(twice, den);
        if (c > 0 || (c == 0 && mpz_odd_p(q.get_mpz_t()))) q += 1;
        mpz_class ip = q / scale, fp = q % scale;
        std::string out;
        if (sign() < 0 && q != 0) out += '-';
        out += ip.get_str();
        if (digits > 0) {
            std::string f = fp.get_str();
            out += '.';
            out.append(digits - f.size(), '0');
            out += f;
        }
        return out;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
        return os << r.v_.get_num().get_str()
                  << (r.v_.get_den() == 1 ? "" : "/" + r.v_.get_den().get_str());
    }

private:
    struct raw_tag {};
    Rational(mpq_class v, raw_tag) : v_(std::move(v)) {}

    mpq_class v_;
};

namespace detail {

inline bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (c < '0' || c > '9') return false;
    return true;
}

inline std::string_view strip_sign(std::string_view s, bool& neg) {
    neg = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        neg = s.front() == '-';
        s.remove_prefix(1);
    }
    return s;
}

}  // namespace detail

inline Rational Rational::parse(std::string_view text) {
    const auto fail = [&] {
        return std::invalid_argument("Rational::parse: cannot parse '" + std::string(text) + "'");
    };
    std::string_view s = text;
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    if (s.empty()) throw fail();

    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        bool nneg = false, dneg = false;
        std::string_view ns = detail::strip_sign(s.substr(0, slash), nneg);
        std::string_view ds = detail::strip_sign(s.substr(slash + 1), dneg);
        if (!detail::all_digits(ns) || !detail::all_digits(ds)) throw fail();
        mpz_class num(std::string(ns), 10), den(std::string(ds), 10);
        if (nneg) num = -num;
        if (dneg) den = -den;
        if (den == 0) throw fail();
        return Rational(num, den);
    }

    // integer | decimal | scientific
    bool neg = false;
    std::string_view body = detail::strip_sign(s, neg);
    std::string digits;
    long frac_len = 0;
    long exp = 0;
    std::size_t i = 0;
    while (i < body.size() && body[i] >= '0' && body[i] <= '9') digits += body[i++];
    if (i < body.size() && body[i] == '.') {
        ++i;
        while (i < body.size() && body[i] >= '0' && body[i] <= '9') {
            digits += body[i++];
            ++frac_len;
        }
    }
    if (digits.empty()) throw fail();
    if (i < body.size() && (body[i] == 'e' || body[i] == 'E')) {
        ++i;
        bool eneg = false;
        std::string_view es = detail::strip_sign(body.substr(i), eneg);
        if (!detail::all_digits(es) || es.size() > 9) throw fail();
        exp = std::strtol(std::string(es).c_str(), nullptr, 10);
        if (eneg) exp = -exp;
        i = body.size();
    }
    if (i != body.size()) throw fail();

    mpz_class num(digits, 10);
    if (neg) num = -num;
    const long net = exp - frac_len;
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(net < 0 ? -net : net));
    if (net >= 0) return Rational(num * p, mpz_class(1));
    return Rational(num, p);
}

// A rational evaluation point with 0 < q < 1 strictly, so [k]_q > 0 for
// k >= 1 and every series in this library converges.
class QPoint {
public:
    explicit QPoint(Rational q) : q_(std::move(q)) {
        if (!(q_.sign() > 0 && q_ < Rational(1)))
            throw std::domain_error("QPoint: q must satisfy 0 < q < 1, got " + q_.fraction_string());
    }

    const Rational& value() const { return q_; }

private:
    Rational q_;
};

}  // namespace qzeta
