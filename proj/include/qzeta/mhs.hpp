#pragma once

// Finite nested sum families over exact rationals.
//
//   h_star(n, s)      = sum_{n >= k_1 >= ... >= k_m >= 1} prod_j q^{k_j} / [k_j]^{s_j}
//   script_h(n, s, t) = sum_{n >= k_1 >  ... >  k_m >= 1} prod_j q^{(t_j-1)k_j}(1+q^{k_j}) / [k_j]^{s_j}
//   hat_h(n, s, t)    = sum_{k=1}^n B(n,k) q^{k^2+(t_1-1)k}(1+q^k)/[k]^{s_1} * script_h(k-1, tail)
//   bar_h(n, s, t)    = sum_{n >= k_1 > ... > k_m >= 1} (-1)^{k_m} B(n,k_1)
//                         q^{k_1^2 - k_m(k_m-1)/2} prod_j (1+q^{k_j}) q^{(t_j-1)k_j}/[k_j]^{s_j}
//
// plus the classical (q = 1) counterparts used by the limit identities, the
// auxiliary quantities A_{n,k} and V_k(2s), and a recurrence evaluator for
// h_star on two-one strings that peels off the indices equal to n group by
// group. Conventions everywhere: value 0 when n < m, value 1 when m = 0.
//
// All sums are evaluated by prefix-sum dynamic programming, O(n * m)
// exact-rational operations per call, with per-call tables (the per-suffix
// memoization); nothing here rounds.

#include "qzeta/qkernel.hpp"
#include "qzeta/rational.hpp"
#include "qzeta/strings.hpp"

#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace qzeta {

namespace detail {

// prefix[c] = script_h(c, s[j0..], t[j0..]) for c = 0..n
inline std::vector<Rational> script_h_prefix(unsigned n, const std::vector<int>& s,
                                             const std::vector<int>& t, std::size_t j0,
                                             QKernel& kr) {
    std::vector<Rational> prev(n + 1, Rational(1));
    if (j0 >= s.size()) return prev;
    for (std::size_t j = s.size(); j-- > j0;) {
        std::vector<Rational> cur(n + 1);
        cur[0] = Rational(0);
        for (unsigned k = 1; k <= n; ++k) {
            Rational w = (Rational(1) + kr.q_pow(k)) * kr.q_pow(static_cast<long>(t[j] - 1) * k) *
                         kr.q_int_pow(k, -s[j]);
            cur[k] = cur[k - 1] + w * prev[k - 1];
        }
        prev = std::move(cur);
    }
    return prev;
}

inline void require_same_length(const std::vector<int>& s, const std::vector<int>& t,
                                const char* who) {
    if (s.size() != t.size())
        throw std::invalid_argument(std::string(who) + ": s and t must have equal length");
}

}  // namespace detail

inline Rational h_star(unsigned n, const std::vector<int>& s, QKernel& kr) {
    for (int e : s)
        if (e < 1) throw std::invalid_argument("h_star: exponents must be >= 1");
    if (s.empty()) return Rational(1);
    if (n == 0) return Rational(0);
    // non-strict chains: prefix includes the current index
    std::vector<Rational> prev(n + 1, Rational(1));
    for (std::size_t j = s.size(); j-- > 0;) {
        std::vector<Rational> cur(n + 1);
        cur[0] = Rational(0);
        for (unsigned k = 1; k <= n; ++k)
            cur[k] = cur[k - 1] + kr.q_pow(k) * kr.q_int_pow(k, -s[j]) * prev[k];
        prev = std::move(cur);
    }
    return prev[n];
}

inline Rational script_h(unsigned n, const std::vector<int>& s, const std::vector<int>& t,
                         QKernel& kr) {
    detail::require_same_length(s, t, "script_h");
    return detail::script_h_prefix(n, s, t, 0, kr)[n];
}

inline Rational hat_h(unsigned n, const std::vector<int>& s, const std::vector<int>& t,
                      QKernel& kr) {
    detail::require_same_length(s, t, "hat_h");
    if (s.empty()) return Rational(1);
    const auto inner = detail::script_h_prefix(n, s, t, 1, kr);
    Rational sum(0);
    for (unsigned k = 1; k <= n; ++k) {
        Rational term = kr.binomial_weight(n, k) *
                        kr.q_pow(static_cast<long>(k) * k + static_cast<long>(t[0] - 1) * k) *
                        (Rational(1) + kr.q_pow(k)) * kr.q_int_pow(k, -s[0]) * inner[k - 1];
        sum += term;
    }
    return sum;
}

inline Rational bar_h(unsigned n, const std::vector<int>& s, const std::vector<int>& t,
                      QKernel& kr) {
    detail::require_same_length(s, t, "bar_h");
    const std::size_t m = s.size();
    if (m == 0) return Rational(1);

    const auto w_at = [&](std::size_t j, unsigned k) {
        return (Rational(1) + kr.q_pow(k)) * kr.q_pow(static_cast<long>(t[j] - 1) * k) *
               kr.q_int_pow(k, -s[j]);
    };
    // suffix chains carrying the (-1)^{k_m} q^{-k_m(k_m-1)/2} factor of the
    // innermost index
    std::vector<Rational> prev(n + 1);
    if (m >= 2) {
        prev[0] = Rational(0);
        for (unsigned k = 1; k <= n; ++k) {
            const long sgn = (k % 2 == 0) ? 1 : -1;
            prev[k] = prev[k - 1] + Rational(sgn) * w_at(m - 1, k) *
                                        kr.q_pow(-static_cast<long>(k) * (static_cast<long>(k) - 1) / 2);
        }
        for (std::size_t j = m - 1; j-- > 1;) {
            std::vector<Rational> cur(n + 1);
            cur[0] = Rational(0);
            for (unsigned k = 1; k <= n; ++k)
                cur[k] = cur[k - 1] + w_at(j, k) * prev[k - 1];
            prev = std::move(cur);
        }
    }

    Rational sum(0);
    for (unsigned k = 1; k <= n; ++k) {
        Rational outer = kr.binomial_weight(n, k) * kr.q_pow(static_cast<long>(k) * k) * w_at(0, k);
        if (m == 1) {
            const long sgn = (k % 2 == 0) ? 1 : -1;
            sum += Rational(sgn) * outer *
                   kr.q_pow(-static_cast<long>(k) * (static_cast<long>(k) - 1) / 2);
        } else {
            sum += outer * prev[k - 1];
        }
    }
    return sum;
}

// --- classical (q = 1) families ---------------------------------------------

enum class ClassicalFamily { HStar, HatH, BarH };

namespace detail {

inline Rational classical_weight(unsigned long n, unsigned long k) {
    mpz_class a, b;
    mpz_bin_uiui(a.get_mpz_t(), n, k);
    mpz_bin_uiui(b.get_mpz_t(), n + k, k);
    return Rational(a, b);
}

inline Rational inv_power(unsigned long k, int p) {
    mpz_class kp;
    mpz_ui_pow_ui(kp.get_mpz_t(), k, static_cast<unsigned long>(p));
    return Rational(mpz_class(1), kp);
}

}  // namespace detail

inline Rational classical_sum(ClassicalFamily family, unsigned n, const std::vector<int>& p) {
    for (int e : p)
        if (e < 1) throw std::invalid_argument("classical_sum: exponents must be >= 1");
    const std::size_t r = p.size();
    if (r == 0) return Rational(1);

    if (family == ClassicalFamily::HStar) {
        if (n == 0) return Rational(0);
        std::vector<Rational> prev(n + 1, Rational(1));
        for (std::size_t j = r; j-- > 0;) {
            std::vector<Rational> cur(n + 1);
            cur[0] = Rational(0);
            for (unsigned k = 1; k <= n; ++k)
                cur[k] = cur[k - 1] + detail::inv_power(k, p[j]) * prev[k];
            prev = std::move(cur);
        }
        return prev[n];
    }

    // strict families with the binomial-ratio weight on k_1
    std::vector<Rational> prev(n + 1, Rational(1));
    if (family == ClassicalFamily::BarH) {
        prev[0] = Rational(0);
        for (unsigned k = 1; k <= n; ++k) {
            const long sgn = (k % 2 == 1) ? 1 : -1;  // (-1)^{k_r - 1}
            prev[k] = prev[k - 1] + Rational(sgn) * detail::inv_power(k, p[r - 1]);
        }
    } else {
        prev[0] = Rational(0);
        for (unsigned k = 1; k <= n; ++k)
            prev[k] = prev[k - 1] + detail::inv_power(k, p[r - 1]);
    }

    for (std::size_t j = r - 1; j-- > 1;) {
        std::vector<Rational> cur(n + 1);
        cur[0] = Rational(0);
        for (unsigned k = 1; k <= n; ++k)
            cur[k] = cur[k - 1] + detail::inv_power(k, p[j]) * prev[k - 1];
        prev = std::move(cur);
    }

    Rational sum(0);
    if (r == 1) {
        for (unsigned k = 1; k <= n; ++k) {
            Rational term = detail::classical_weight(n, k) * detail::inv_power(k, p[0]);
            if (family == ClassicalFamily::BarH && k % 2 == 0) term = -term;
            sum += term;
        }
        return sum;
    }
    for (unsigned k = 1; k <= n; ++k)
        sum += detail::classical_weight(n, k) * detail::inv_power(k, p[0]) * prev[k - 1];
    return sum;
}

// --- auxiliaries -------------------------------------------------------------

// A_{n,k} = (1 + q^k) B(n,k) q^{k(k-1)/2}, 1 <= k <= n
inline Rational aux_A(unsigned n, unsigned k, QKernel& kr) {
    if (k < 1 || k > n) throw std::domain_error("aux_A: requires 1 <= k <= n");
    return (Rational(1) + kr.q_pow(k)) * kr.binomial_weight(n, k) *
           kr.q_pow(static_cast<long>(k) * (static_cast<long>(k) - 1) / 2);
}

// V_k(2s) = sum_{j=1}^k (-1)^j (1 + q^j) q^{sj - j(j+1)/2} / [j]^{2s}; V_0 = 0
inline Rational aux_V(unsigned k, int s, QKernel& kr) {
    Rational sum(0);
    for (unsigned j = 1; j <= k; ++j) {
        const long sgn = (j % 2 == 0) ? 1 : -1;
        sum += Rational(sgn) * (Rational(1) + kr.q_pow(j)) *
               kr.q_pow(static_cast<long>(s) * j - static_cast<long>(j) * (j + 1) / 2) *
               kr.q_int_pow(j, -2L * s);
    }
    return sum;
}

// --- two-one recurrence evaluator --------------------------------------------

// Evaluates h_star on a two-one string by the expansion that peels off the
// leading indices equal to n:
//
//   H*_n[{2}^{s_1},1,rest] = sum_{l=0}^{s_1} q^{n(s_1-l)}/[n]^{2(s_1-l)} H*_{n-1}[{2}^l,1,rest]
//                          + q^{(s_1+1)n}/[n]^{2s_1+1} H*_n[rest]
//
// with the analogous all-the-way peel for a trailing pure block of 2s.
// Memoized on (n, group index, reduced leading exponent).
inline Rational h_star_recurrence(unsigned n, const IndexString& s, QKernel& kr) {
    const std::size_t m = s.ones_count();
    const bool has_tail = s.ending() == Ending::Two;
    const auto& exps = s.exponents();

    int max_exp = 0;
    for (int e : exps) max_exp = e > max_exp ? e : max_exp;
    const std::uint64_t groups = exps.size() + 1;
    const std::uint64_t lspan = static_cast<std::uint64_t>(max_exp) + 1;

    std::unordered_map<std::uint64_t, Rational> memo;
    const auto key = [&](unsigned nn, std::size_t j, int l) {
        return (static_cast<std::uint64_t>(nn) * groups + j) * lspan + static_cast<std::uint64_t>(l);
    };

    // pure trailing block {2}^l
    const auto rec_pure = [&](auto&& self, unsigned nn, int l) -> Rational {
        if (l == 0) return Rational(1);
        if (nn == 0) return Rational(0);
        const auto k = key(nn, m, l);
        if (auto it = memo.find(k); it != memo.end()) return it->second;
        Rational sum(0);
        for (int lp = 0; lp <= l; ++lp)
            sum += kr.q_pow(static_cast<long>(nn) * (l - lp)) *
                   kr.q_int_pow(nn, -2L * (l - lp)) * self(self, nn - 1, lp);
        memo.emplace(k, sum);
        return sum;
    };

    // group j carries {2}^l followed by a 1, then groups j+1.. of the string
    const auto rec = [&](auto&& self, unsigned nn, std::size_t j, int l) -> Rational {
        if (j == m) {
            if (!has_tail) return Rational(1);
            return rec_pure(rec_pure, nn, l);
        }
        if (nn == 0) return Rational(0);
        const auto k = key(nn, j, l);
        if (auto it = memo.find(k); it != memo.end()) return it->second;
        Rational sum(0);
        for (int lp = 0; lp <= l; ++lp)
            sum += kr.q_pow(static_cast<long>(nn) * (l - lp)) *
                   kr.q_int_pow(nn, -2L * (l - lp)) * self(self, nn - 1, j, lp);
        const int next_exp = (j + 1 < exps.size()) ? exps[j + 1] : 0;
        sum += kr.q_pow(static_cast<long>(l + 1) * nn) * kr.q_int_pow(nn, -(2L * l + 1)) *
               self(self, nn, j + 1, next_exp);
        memo.emplace(k, sum);
        return sum;
    };

    if (m == 0) return rec_pure(rec_pure, n, exps[0]);
    return rec(rec, n, 0, exps[0]);
}

// --- sum family selector ------------------------------------------------------

enum class SumFamily { HStar, ScriptH, HatH, BarH, HStarClassical, HatHClassical, BarHClassical };

struct SumSpec {
    SumFamily family;
    unsigned n = 0;
    std::vector<int> s;
    std::vector<int> t;  // empty for HStar and the classical families
};

inline Rational evaluate(const SumSpec& spec, QKernel& kr) {
    switch (spec.family) {
        case SumFamily::HStar:
            if (!spec.t.empty()) throw std::invalid_argument("SumSpec: HStar takes no t list");
            return h_star(spec.n, spec.s, kr);
        case SumFamily::ScriptH:
            return script_h(spec.n, spec.s, spec.t, kr);
        case SumFamily::HatH:
            return hat_h(spec.n, spec.s, spec.t, kr);
        case SumFamily::BarH:
            return bar_h(spec.n, spec.s, spec.t, kr);
        case SumFamily::HStarClassical:
        case SumFamily::HatHClassical:
        case SumFamily::BarHClassical:
            if (!spec.t.empty()) throw std::invalid_argument("SumSpec: classical families take no t list");
            return classical_sum(spec.family == SumFamily::HStarClassical ? ClassicalFamily::HStar
                                 : spec.family == SumFamily::HatHClassical ? ClassicalFamily::HatH
                                                                           : ClassicalFamily::BarH,
                                 spec.n, spec.s);
    }
    throw std::logic_error("SumSpec: unknown family");
}

inline Rational evaluate(const SumSpec& spec, const QPoint& q) {
    QKernel kr(q);
    return evaluate(spec, kr);
}

}  // namespace qzeta
