#pragma once

// Convergent q-series with proven truncation bounds.
//
//   zeta_star(s)  = sum_{k_1 >= ... >= k_m >= 1} prod_j q^{k_j} / [k_j]^{s_j}
//   zhat(p; p~)   = sum_{k>=1} q^{k^2+(p~_1-1)k}(1+q^k)/[k]^{p_1} * script_h(k-1, tail)
//   zbar(p; p~)   = sum_{k_1 > ... > k_m >= 1} (-1)^{k_m-1} q^{k_1^2-k_m(k_m-1)/2}
//                     prod_j (1+q^{k_j}) q^{(p~_j-1)k_j} / [k_j]^{p_j}
//
// Every evaluator returns a BoundedValue whose tail_bound is a majorant-sum
// upper bound on the absolute omitted remainder, never a heuristic. The
// truncation index is the smallest K whose bound meets eps; there is no
// "term got small" stopping. Derivations:
//
// zeta_star. Group the tail by k_1 = k > K. The inner tuples k >= k_2 >= ...
// >= k_m number C(k+m-2, m-1) <= k^{m-1}, and each term is at most q^k
// (q^{k_j} <= 1 and 1/[k_j]^{s_j} <= 1 for s_j >= 1). With
// b_k = k^{m-1} q^k and rho(K) = ((K+2)/(K+1))^{m-1} q we have
// b_{k+1}/b_k <= rho(K) for k > K, so once rho(K) < 1,
//   tail(K) <= (K+1)^{m-1} q^{K+1} / (1 - rho(K)).
//
// zhat. |term_k| <= 2 q^{k^2} * 2^{r-1} C(k-1, r-1) <= 2^r k^{r-1} q^{k^2}
// (each inner factor is at most 2 since p~_j >= 1, p_j >= 1, [k]_q >= 1, and
// the strict inner tuples number C(k-1, r-1)). Consecutive bounds shrink by
// rho(K) = ((K+2)/(K+1))^{r-1} q^{2K+3} for k > K, so
//   tail(K) <= 2^r (K+1)^{r-1} q^{(K+1)^2} / (1 - rho(K)).
//
// zbar. Group by k_1 = k. Since k_m <= k, the exponent satisfies
// k^2 - k_m(k_m-1)/2 >= k(k+1)/2, and q^{(p~_j-1)k_j} <= q^{-dk} with
// d = sum_j max(1 - p~_j, 0); entries p_j < 0 contribute at most
// [k]^{-p_j} < (1-q)^{p_j} each, collected in the constant N. Hence
// |terms at k| <= 2^m k^{m-1} N q^{k(k+1)/2 - dk}, the bounds shrink by
// rho(K) = ((K+2)/(K+1))^{m-1} q^{K+2-d} for k > K once that is < 1, and
//   tail(K) <= 2^m N (K+1)^{m-1} q^{(K+1)(K+2)/2 - d(K+1)} / (1 - rho(K)).
//
// Classical zeta targets (for the q -> 1 probe) use the integral test both
// ways: with P_K the K-term partial sum, zeta(w) - P_K lies between
// I(K+1) and I(K) for I(x) = x^{1-w}/(w-1), so the estimate P_K + I(K+1) is
// exact up to I(K) - I(K+1) <= K^{-w}. P_K itself is accumulated as
// floor(D/k^w)/D with D = 10^36, undercounting by less than K/D. Total
// certified error: K^{-w} + K/D.

#include "qzeta/mhs.hpp"
#include "qzeta/qkernel.hpp"
#include "qzeta/rational.hpp"
#include "qzeta/strings.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qzeta {

struct BoundedValue {
    Rational partial_sum;
    Rational tail_bound;  // proven bound on |true value - partial_sum|
    long terms_used = 0;
};

class TermCapError : public std::runtime_error {
public:
    explicit TermCapError(const std::string& what) : std::runtime_error(what) {}
};

struct SeriesOptions {
    long term_cap = 10000;
    long term_override = 0;  // > 0: use exactly this K and report its true bound
};

namespace detail {

inline void require_positive_eps(const Rational& eps) {
    if (!(eps.sign() > 0)) throw std::invalid_argument("series: eps must be > 0");
}

// smallest K (starting at K = 1) with tail(K) <= eps, where the caller
// supplies tail(K) via `bound` (returning an empty optional while the
// geometric ratio is still >= 1)
template <typename BoundFn, typename StepFn>
long choose_terms(const Rational& eps, const SeriesOptions& opt, BoundFn bound, StepFn step,
                  Rational& tail_out) {
    if (opt.term_override > 0) {
        for (long k = 1; k < opt.term_override; ++k) step(k);
        auto b = bound(opt.term_override);
        if (!b.first)
            throw std::invalid_argument("series: term_override too small for a valid tail bound");
        tail_out = b.second;
        return opt.term_override;
    }
    for (long k = 1;; ++k) {
        if (k > opt.term_cap)
            throw TermCapError("series: term cap " + std::to_string(opt.term_cap) +
                               " reached before tail bound " + eps.fraction_string());
        auto b = bound(k);
        if (b.first && b.second <= eps) {
            tail_out = b.second;
            return k;
        }
        step(k);
    }
}

inline Rational int_pow(long base, long e) { return Rational(base).pow(e); }

}  // namespace detail

// --- zeta_star ----------------------------------------------------------------

inline BoundedValue zeta_star_q_direct(const std::vector<int>& s, const QPoint& q,
                                       const Rational& eps, const SeriesOptions& opt = {}) {
    for (int e : s)
        if (e < 1) throw std::invalid_argument("zeta_star_q_direct: exponents must be >= 1");
    if (opt.term_override <= 0) detail::require_positive_eps(eps);
    if (s.empty()) return {Rational(1), Rational(0), 0};

    const Rational& qq = q.value();
    const long m = static_cast<long>(s.size());
    Rational q_pow_k1 = qq * qq;  // q^{K+1} at K = 1
    const auto bound = [&](long K) -> std::pair<bool, Rational> {
        const Rational rho = detail::int_pow(K + 2, m - 1) / detail::int_pow(K + 1, m - 1) * qq;
        if (!(rho < Rational(1))) return {false, Rational(0)};
        return {true, detail::int_pow(K + 1, m - 1) * q_pow_k1 / (Rational(1) - rho)};
    };
    const auto step = [&](long) { q_pow_k1 *= qq; };

    Rational tail;
    const long K = detail::choose_terms(eps, opt, bound, step, tail);
    QKernel kr(q);
    return {h_star(static_cast<unsigned>(K), s, kr), tail, K};
}

// --- zhat ----------------------------------------------------------------------

inline BoundedValue zhat_q(const std::vector<int>& p, const std::vector<int>& p_tilde,
                           const QPoint& q, const Rational& eps, const SeriesOptions& opt = {}) {
    if (p.size() != p_tilde.size())
        throw std::invalid_argument("zhat_q: p and p~ must have equal length");
    for (int e : p)
        if (e < 1) throw std::invalid_argument("zhat_q: p entries must be >= 1");
    for (int e : p_tilde)
        if (e < 1) throw std::invalid_argument("zhat_q: p~ entries must be >= 1");
    if (opt.term_override <= 0) detail::require_positive_eps(eps);
    if (p.empty()) return {Rational(1), Rational(0), 0};

    const Rational& qq = q.value();
    const long r = static_cast<long>(p.size());
    const Rational two_r = Rational(2).pow(r);
    Rational q_sq = qq.pow(4);  // q^{(K+1)^2} at K = 1
    const auto bound = [&](long K) -> std::pair<bool, Rational> {
        const Rational rho = detail::int_pow(K + 2, r - 1) / detail::int_pow(K + 1, r - 1) *
                             qq.pow(2 * K + 3);
        if (!(rho < Rational(1))) return {false, Rational(0)};
        return {true, two_r * detail::int_pow(K + 1, r - 1) * q_sq / (Rational(1) - rho)};
    };
    const auto step = [&](long K) { q_sq *= qq.pow(2 * K + 3); };

    Rational tail;
    const long K = detail::choose_terms(eps, opt, bound, step, tail);

    QKernel kr(q);
    const auto inner = detail::script_h_prefix(static_cast<unsigned>(K), p, p_tilde, 1, kr);
    const Rational qt = qq.pow(p_tilde[0] - 1);
    Rational sum(0), qk(1), qk2(1), qodd = qq.inverse(), qtk(1);
    for (long k = 1; k <= K; ++k) {
        qk *= qq;            // q^k
        qodd *= qq * qq;     // q^{2k-1}
        qk2 *= qodd;         // q^{k^2}
        qtk *= qt;           // q^{(p~_1-1)k}
        sum += qk2 * qtk * (Rational(1) + qk) * kr.q_int_pow(static_cast<unsigned long>(k), -p[0]) *
               inner[static_cast<std::size_t>(k - 1)];
    }
    return {sum, tail, K};
}

// --- zbar ----------------------------------------------------------------------

inline BoundedValue zbar_q(const std::vector<int>& p, const std::vector<int>& p_tilde,
                           const QPoint& q, const Rational& eps, const SeriesOptions& opt = {}) {
    if (p.size() != p_tilde.size())
        throw std::invalid_argument("zbar_q: p and p~ must have equal length");
    if (opt.term_override <= 0) detail::require_positive_eps(eps);
    if (p.empty()) return {Rational(1), Rational(0), 0};

    const Rational& qq = q.value();
    const long m = static_cast<long>(p.size());
    long d = 0;
    Rational neg_factor(1);
    for (std::size_t j = 0; j < p.size(); ++j) {
        d += std::max(1L - p_tilde[j], 0L);
        if (p[j] < 0) neg_factor *= (Rational(1) - qq).pow(p[j]);  // (1-q)^{p_j} > [k]^{-p_j}
    }
    const Rational two_m = Rational(2).pow(m);
    Rational q_tri = qq.pow(3);  // q^{(K+1)(K+2)/2} at K = 1
    const auto bound = [&](long K) -> std::pair<bool, Rational> {
        if (K + 2 - d < 1) return {false, Rational(0)};
        const Rational rho = detail::int_pow(K + 2, m - 1) / detail::int_pow(K + 1, m - 1) *
                             qq.pow(K + 2 - d);
        if (!(rho < Rational(1))) return {false, Rational(0)};
        return {true, two_m * neg_factor * detail::int_pow(K + 1, m - 1) * q_tri *
                          qq.pow(-d * (K + 1)) / (Rational(1) - rho)};
    };
    const auto step = [&](long K) { q_tri *= qq.pow(K + 2); };

    Rational tail;
    const long K = detail::choose_terms(eps, opt, bound, step, tail);
    const auto uK = static_cast<unsigned>(K);

    QKernel kr(q);
    const auto w_at = [&](std::size_t j, unsigned k) {
        return (Rational(1) + kr.q_pow(k)) * kr.q_pow(static_cast<long>(p_tilde[j] - 1) * k) *
               kr.q_int_pow(k, -p[j]);
    };
    // innermost index carries (-1)^{k_m - 1} q^{-k_m(k_m-1)/2}
    std::vector<Rational> prev(uK + 1);
    if (m >= 2) {
        prev[0] = Rational(0);
        for (unsigned k = 1; k <= uK; ++k) {
            const long sgn = (k % 2 == 1) ? 1 : -1;
            prev[k] = prev[k - 1] + Rational(sgn) * w_at(p.size() - 1, k) *
                                        kr.q_pow(-static_cast<long>(k) * (static_cast<long>(k) - 1) / 2);
        }
        for (std::size_t j = p.size() - 1; j-- > 1;) {
            std::vector<Rational> cur(uK + 1);
            cur[0] = Rational(0);
            for (unsigned k = 1; k <= uK; ++k)
                cur[k] = cur[k - 1] + w_at(j, k) * prev[k - 1];
            prev = std::move(cur);
        }
    }

    Rational sum(0), qk2(1), qodd = qq.inverse();
    for (unsigned k = 1; k <= uK; ++k) {
        qodd *= qq * qq;
        qk2 *= qodd;  // q^{k^2}
        const Rational outer = qk2 * w_at(0, k);
        if (m == 1) {
            const long sgn = (k % 2 == 1) ? 1 : -1;
            sum += Rational(sgn) * outer *
                   kr.q_pow(-static_cast<long>(k) * (static_cast<long>(k) - 1) / 2);
        } else {
            sum += outer * prev[k - 1];
        }
    }
    return {sum, tail, K};
}

// --- two-one evaluation ---------------------------------------------------------

// Sums zhat (ends with 1) or zbar (ends with 2) over all composition strings,
// giving each composition the budget eps / 2^{B-1}; tail bounds add.
inline BoundedValue two_one_eval(const IndexString& s, const QPoint& q, const Rational& eps,
                                 const SeriesOptions& opt = {}) {
    if (opt.term_override <= 0) detail::require_positive_eps(eps);
    const auto comps = enumerate_compositions(s);
    const Rational budget = eps / Rational(static_cast<long>(comps.size()));
    BoundedValue total{Rational(0), Rational(0), 0};
    for (const auto& c : comps) {
        const BoundedValue bv = s.ending() == Ending::One
                                    ? zhat_q(c.p, c.p_tilde, q, budget, opt)
                                    : zbar_q(c.p, c.p_tilde, q, budget, opt);
        total.partial_sum += bv.partial_sum;
        total.tail_bound += bv.tail_bound;
        total.terms_used = std::max(total.terms_used, bv.terms_used);
    }
    return total;
}

// --- classical zeta targets ------------------------------------------------------

struct ZetaEstimate {
    Rational value;
    Rational error_bound;
    long terms = 0;
};

inline ZetaEstimate classical_zeta(unsigned w, const Rational& eps) {
    if (w < 2) throw std::invalid_argument("classical_zeta: requires weight >= 2");
    detail::require_positive_eps(eps);

    // K^{-w} <= eps/2  =>  K = ceil((2/eps)^{1/w})
    const Rational two_over_eps = Rational(2) / eps;
    mpz_class need;
    mpz_cdiv_q(need.get_mpz_t(), two_over_eps.numerator().get_mpz_t(),
               two_over_eps.denominator().get_mpz_t());
    mpz_class root;
    mpz_root(root.get_mpz_t(), need.get_mpz_t(), w);
    mpz_class check;
    mpz_pow_ui(check.get_mpz_t(), root.get_mpz_t(), w);
    if (check < need) root += 1;
    if (root < 1) root = 1;
    if (root > 400000000)
        throw TermCapError("classical_zeta: accuracy " + eps.fraction_string() +
                           " needs too many terms at weight " + std::to_string(w));
    const auto K = static_cast<unsigned long>(root.get_ui());

    unsigned __int128 D = 1;
    for (int i = 0; i < 36; ++i) D *= 10;
    unsigned __int128 acc = 0;
    for (unsigned long k = 1; k <= K; ++k) {
        unsigned __int128 kw;
        if (w == 2) {
            kw = static_cast<unsigned __int128>(k) * k;
        } else if (w == 3) {
            kw = static_cast<unsigned __int128>(k) * k * k;
        } else if (w == 4) {
            kw = static_cast<unsigned __int128>(k) * k;
            kw *= kw;
        } else {
            kw = 1;
            bool over = false;
            for (unsigned i = 0; i < w; ++i) {
                if (kw > D / k) { over = true; break; }
                kw *= k;
            }
            if (over) break;  // every remaining floor is 0
        }
        acc += D / kw;
    }

    const auto u128_to_mpz = [](unsigned __int128 v) {
        mpz_class z(static_cast<unsigned long>(v >> 64));
        z <<= 64;
        z += static_cast<unsigned long>(v & ~0ULL);
        return z;
    };
    const mpz_class D_z = u128_to_mpz(D);
    const Rational partial(u128_to_mpz(acc), D_z);
    const Rational integral_low =
        Rational(1) / (Rational(static_cast<long>(w) - 1) *
                       Rational(static_cast<long>(K) + 1).pow(static_cast<long>(w) - 1));
    const Rational err = Rational(mpz_class(K), D_z) +
                         Rational(1) / Rational(static_cast<long>(K)).pow(static_cast<long>(w));
    return {partial + integral_low, err, static_cast<long>(K)};
}

// --- q -> 1 limit probe -----------------------------------------------------------

struct LimitPoint {
    Rational q;
    BoundedValue value;
    Rational target;              // classical limit of the series
    Rational target_error_bound;  // certified error of the target computation
    Rational distance;            // |value.partial_sum - target|
};

// Supported strings: {2}^s,1 with s >= 1 (limit 2 zeta(2s+1)) and {2}^s with
// s >= 1 (limit 2 (1 - 2^{1-2s}) zeta(2s)). The probe reports distances only;
// no convergence rate in q is asserted.
inline std::vector<LimitPoint> limit_probe(const IndexString& s, const std::vector<QPoint>& qs,
                                           const Rational& eps,
                                           const Rational& target_eps = Rational(1, 1000000000000000L),
                                           const SeriesOptions& opt = {}) {
    Rational coeff;
    unsigned w = 0;
    if (s.ending() == Ending::One && s.ones_count() == 1 && s.exponents()[0] >= 1) {
        coeff = Rational(2);
        w = static_cast<unsigned>(2 * s.exponents()[0] + 1);
    } else if (s.ending() == Ending::Two && s.ones_count() == 0 && s.exponents()[0] >= 1) {
        const int e = s.exponents()[0];
        coeff = Rational(2) * (Rational(1) - Rational(2).pow(1 - 2L * e));
        w = static_cast<unsigned>(2 * e);
    } else {
        throw std::invalid_argument("limit_probe: no classical single-zeta target for string " +
                                    s.display());
    }

    const ZetaEstimate z = classical_zeta(w, target_eps / coeff);
    const Rational target = coeff * z.value;
    const Rational target_err = coeff * z.error_bound;

    std::vector<LimitPoint> out;
    out.reserve(qs.size());
    for (const auto& q : qs) {
        BoundedValue bv = two_one_eval(s, q, eps, opt);
        Rational dist = (bv.partial_sum - target).abs();
        out.push_back({q.value(), std::move(bv), target, target_err, std::move(dist)});
    }
    return out;
}

}  // namespace qzeta
