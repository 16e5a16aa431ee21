#pragma once

// q-combinatorial primitives over exact rationals:
//
//   [n]_q            = (1 - q^n)/(1 - q) = 1 + q + ... + q^{n-1}
//   (a; q)_n         = prod_{k=0}^{n-1} (1 - a q^k),  (a; q)_0 = 1
//   gbin(n, m)       = (q)_n / ((q)_m (q)_{n-m}) for 0 <= m <= n, else 0
//   B(n, k)          = gbin(n, k) / gbin(n+k, k)
//
// QKernel memoizes per q point. Caching is transparent: a cached value is
// bit-identical to the value recomputed from scratch, and correctness never
// depends on a cache hit. Kernels are not synchronized; use one per task.

#include "qzeta/rational.hpp"

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace qzeta {

class QKernel {
public:
    explicit QKernel(QPoint q, bool enable_cache = true)
        : q_(q.value()), one_minus_q_(Rational(1) - q_), cache_(enable_cache) {}

    const Rational& q() const { return q_; }

    // q^e for any integer e (q > 0, so negative exponents are fine).
    Rational q_pow(long e) {
        if (e == 0) return Rational(1);
        if (!cache_) return q_.pow(e);
        const bool neg = e < 0;
        const auto a = static_cast<std::size_t>(neg ? -e : e);
        if (a >= kPowCacheLimit) return q_.pow(e);
        auto& cache = neg ? qpow_neg_ : qpow_pos_;
        if (cache.empty()) cache.push_back(Rational(1));
        while (cache.size() <= a)
            cache.push_back(cache.back() * (neg ? q_.inverse() : q_));
        return cache[a];
    }

    // [n]_q
    Rational q_int(unsigned long n) {
        if (!cache_) return (Rational(1) - q_.pow(static_cast<long>(n))) / one_minus_q_;
        if (qint_.empty()) qint_.push_back(Rational(0));
        while (qint_.size() <= n) {
            const auto k = qint_.size();
            qint_.push_back(qint_.back() + q_pow(static_cast<long>(k) - 1));
        }
        return qint_[n];
    }

    // [n]_q^e; for e < 0 requires n >= 1 (so the base is nonzero)
    Rational q_int_pow(unsigned long n, long e) { return q_int(n).pow(e); }

    // (q; q)_n, cached
    Rational qq_pochhammer(unsigned long n) {
        if (!cache_) {
            Rational p(1);
            for (unsigned long k = 1; k <= n; ++k) p *= Rational(1) - q_.pow(static_cast<long>(k));
            return p;
        }
        if (qq_poch_.empty()) qq_poch_.push_back(Rational(1));
        while (qq_poch_.size() <= n) {
            const auto k = qq_poch_.size();
            qq_poch_.push_back(qq_poch_.back() * (Rational(1) - q_pow(static_cast<long>(k))));
        }
        return qq_poch_[n];
    }

    // (a; q)_n for arbitrary rational a
    Rational q_pochhammer(const Rational& a, unsigned long n) {
        if (a == q_) return qq_pochhammer(n);
        Rational p(1);
        for (unsigned long k = 0; k < n; ++k) p *= Rational(1) - a * q_pow(static_cast<long>(k));
        return p;
    }

    // Gaussian binomial coefficient; total on integers (0 outside 0 <= m <= n).
    Rational gauss_binomial(long n, long m) {
        if (m < 0 || n < 0 || m > n) return Rational(0);
        if (!cache_) {
            const auto un = static_cast<unsigned long>(n), um = static_cast<unsigned long>(m);
            return qq_pochhammer(un) / (qq_pochhammer(um) * qq_pochhammer(un - um));
        }
        ensure_rows(static_cast<std::size_t>(n));
        return gauss_[static_cast<std::size_t>(n)][static_cast<std::size_t>(m)];
    }

    // B(n, k) = gbin(n, k)/gbin(n+k, k); the weight of the hatted/barred sums.
    Rational binomial_weight(unsigned long n, unsigned long k) {
        if (k > n) throw std::domain_error("binomial_weight: k > n");
        return gauss_binomial(static_cast<long>(n), static_cast<long>(k)) /
               gauss_binomial(static_cast<long>(n + k), static_cast<long>(k));
    }

private:
    static constexpr std::size_t kPowCacheLimit = 4096;

    // Pascal fill: gbin(n, m) = gbin(n-1, m-1) + q^m gbin(n-1, m)
    void ensure_rows(std::size_t n) {
        if (gauss_.empty()) gauss_.push_back({Rational(1)});
        while (gauss_.size() <= n) {
            const std::size_t r = gauss_.size();
            const auto& prev = gauss_[r - 1];
            std::vector<Rational> row(r + 1);
            row[0] = Rational(1);
            row[r] = Rational(1);
            for (std::size_t m = 1; m < r; ++m)
                row[m] = prev[m - 1] + q_pow(static_cast<long>(m)) * prev[m];
            gauss_.push_back(std::move(row));
        }
    }

    Rational q_;
    Rational one_minus_q_;
    bool cache_;
    std::vector<Rational> qpow_pos_, qpow_neg_;
    std::vector<Rational> qint_;
    std::vector<Rational> qq_poch_;
    std::vector<std::vector<Rational>> gauss_;
};

inline Rational q_int(unsigned long n, const QPoint& q) {
    return QKernel(q, false).q_int(n);
}

inline Rational q_pochhammer(const Rational& a, unsigned long n, const QPoint& q) {
    return QKernel(q, false).q_pochhammer(a, n);
}

inline Rational gauss_binomial(long n, long m, const QPoint& q) {
    return QKernel(q, false).gauss_binomial(n, m);
}

inline Rational binomial_weight(unsigned long n, unsigned long k, const QPoint& q) {
    return QKernel(q, false).binomial_weight(n, k);
}

}  // namespace qzeta
