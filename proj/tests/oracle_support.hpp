#pragma once

// Brute-force oracles for the test suite. Everything here is computed from
// the raw definitions with plain loops and explicit tuple enumeration over
// the Rational scalar only, independent of the library's DP evaluators and
// of the kernel caches. Slow on purpose.

#include "qzeta/rational.hpp"

#include <functional>
#include <vector>

namespace oracle {

using qzeta::Rational;

inline Rational qpow(const Rational& q, long e) {
    Rational r(1);
    const Rational base = e < 0 ? Rational(1) / q : q;
    for (long i = 0, n = e < 0 ? -e : e; i < n; ++i) r *= base;
    return r;
}

inline Rational qint(const Rational& q, int n) {
    Rational s(0);
    for (int k = 0; k < n; ++k) s += qpow(q, k);
    return s;
}

inline Rational poch(const Rational& a, const Rational& q, int n) {
    Rational p(1);
    for (int k = 0; k < n; ++k) p *= Rational(1) - a * qpow(q, k);
    return p;
}

inline Rational gbin(const Rational& q, int n, int m) {
    if (m < 0 || n < 0 || m > n) return Rational(0);
    return poch(q, q, n) / (poch(q, q, m) * poch(q, q, n - m));
}

inline Rational bweight(const Rational& q, int n, int k) {
    return gbin(q, n, k) / gbin(q, n + k, k);
}

// enumerates k_1 (>= or >) k_2 ... (>= or >) k_m >= 1 with k_1 <= n
inline void chains(int n, int m, bool strict,
                   const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> tuple;
    const std::function<void(int)> go = [&](int upper) {
        if (static_cast<int>(tuple.size()) == m) {
            fn(tuple);
            return;
        }
        for (int k = upper; k >= 1; --k) {
            tuple.push_back(k);
            go(strict ? k - 1 : k);
            tuple.pop_back();
        }
    };
    go(n);
}

inline Rational h_star(const Rational& q, int n, const std::vector<int>& s) {
    if (s.empty()) return Rational(1);
    Rational sum(0);
    chains(n, static_cast<int>(s.size()), false, [&](const std::vector<int>& k) {
        Rational term(1);
        for (std::size_t j = 0; j < s.size(); ++j)
            term *= qpow(q, k[j]) * qint(q, k[j]).pow(-s[j]);
        sum += term;
    });
    return sum;
}

inline Rational script_h(const Rational& q, int n, const std::vector<int>& s,
                         const std::vector<int>& t) {
    if (s.empty()) return Rational(1);
    Rational sum(0);
    chains(n, static_cast<int>(s.size()), true, [&](const std::vector<int>& k) {
        Rational term(1);
        for (std::size_t j = 0; j < s.size(); ++j)
            term *= qpow(q, static_cast<long>(t[j] - 1) * k[j]) *
                    (Rational(1) + qpow(q, k[j])) * qint(q, k[j]).pow(-s[j]);
        sum += term;
    });
    return sum;
}

inline Rational hat_h(const Rational& q, int n, const std::vector<int>& s,
                      const std::vector<int>& t) {
    if (s.empty()) return Rational(1);
    const std::vector<int> s_tail(s.begin() + 1, s.end());
    const std::vector<int> t_tail(t.begin() + 1, t.end());
    Rational sum(0);
    for (int k = 1; k <= n; ++k)
        sum += bweight(q, n, k) *
               qpow(q, static_cast<long>(k) * k + static_cast<long>(t[0] - 1) * k) *
               (Rational(1) + qpow(q, k)) * qint(q, k).pow(-s[0]) *
               script_h(q, k - 1, s_tail, t_tail);
    return sum;
}

inline Rational bar_h(const Rational& q, int n, const std::vector<int>& s,
                      const std::vector<int>& t) {
    if (s.empty()) return Rational(1);
    const int m = static_cast<int>(s.size());
    Rational sum(0);
    chains(n, m, true, [&](const std::vector<int>& k) {
        const int k1 = k.front(), km = k.back();
        Rational term = bweight(q, n, k1) *
                        qpow(q, static_cast<long>(k1) * k1 -
                                    static_cast<long>(km) * (km - 1) / 2);
        if (km % 2 == 1) term = -term;  // (-1)^{k_m}
        for (int j = 0; j < m; ++j)
            term *= (Rational(1) + qpow(q, k[j])) *
                    qpow(q, static_cast<long>(t[j] - 1) * k[j]) * qint(q, k[j]).pow(-s[j]);
        sum += term;
    });
    return sum;
}

inline Rational binom(int n, int k) {
    if (k < 0 || k > n) return Rational(0);
    Rational r(1);
    for (int i = 1; i <= k; ++i) r *= Rational(n - k + i, i);
    return r;
}

inline Rational classical_hstar(int n, const std::vector<int>& p) {
    if (p.empty()) return Rational(1);
    Rational sum(0);
    chains(n, static_cast<int>(p.size()), false, [&](const std::vector<int>& k) {
        Rational term(1);
        for (std::size_t j = 0; j < p.size(); ++j) term *= Rational(k[j]).pow(-p[j]);
        sum += term;
    });
    return sum;
}

inline Rational classical_hat(int n, const std::vector<int>& p) {
    if (p.empty()) return Rational(1);
    Rational sum(0);
    chains(n, static_cast<int>(p.size()), true, [&](const std::vector<int>& k) {
        Rational term = binom(n, k.front()) / binom(n + k.front(), n);
        for (std::size_t j = 0; j < p.size(); ++j) term *= Rational(k[j]).pow(-p[j]);
        sum += term;
    });
    return sum;
}

inline Rational classical_bar(int n, const std::vector<int>& p) {
    if (p.empty()) return Rational(1);
    Rational sum(0);
    chains(n, static_cast<int>(p.size()), true, [&](const std::vector<int>& k) {
        Rational term = binom(n, k.front()) / binom(n + k.front(), n);
        if (k.back() % 2 == 0) term = -term;  // (-1)^{k_r - 1}
        for (std::size_t j = 0; j < p.size(); ++j) term *= Rational(k[j]).pow(-p[j]);
        sum += term;
    });
    return sum;
}

// the h_star summand with q set to 1: weights q^{k_j} -> 1, [k]_1 = k
inline Rational h_star_at_one(int n, const std::vector<int>& s) {
    if (s.empty()) return Rational(1);
    Rational sum(0);
    chains(n, static_cast<int>(s.size()), false, [&](const std::vector<int>& k) {
        Rational term(1);
        for (std::size_t j = 0; j < s.size(); ++j) term *= Rational(k[j]).pow(-s[j]);
        sum += term;
    });
    return sum;
}

}  // namespace oracle
