#pragma once

// Exact verification of the library's identity catalog over parameter grids.
//
// Each identity id maps to one LHS/RHS evaluator pair; a point passes only
// when both sides are equal as canonical rationals. There is no tolerance
// anywhere in this module. LHS and RHS never share summation code (the
// h_star / script_h / hat_h / bar_h evaluators on one side, catalog-local
// loops on the other), so a pass is evidence rather than tautology.
//
// Catalog (B(n,k) = gbin(n,k)/gbin(n+k,k), A_{n,k} = (1+q^k)B(n,k)q^{k(k-1)/2},
// V_k(2s) = sum_{j=1}^k (-1)^j (1+q^j) q^{sj-j(j+1)/2}/[j]^{2s}):
//
//  eq11    sum_{k=l+1}^n (1+q^k) B(n,k) (-1)^k q^{k(k-1)/2}
//            = ([l]-[n])/[n] * B(n,l) (-1)^l q^{l(l-1)/2}              (n>=1, 0<=l<=n)
//  eq12    sum_{k=l+1}^n (1+q^k) [k] B(n,k) q^{k(k-1)} = ([n]-[l]) B(n,l) q^{l^2}
//  eq13    sum_{k=1}^n (1+q^k)/[k] B(n,k) q^{k^2} = sum_{m=1}^n q^m/[m]
//  eq14    sum_{k=l}^n q^k/[k]^2 B(k,l) = q^l/[l]^2 B(n,l)             (l>=1)
//  cert15  (1-q^n) F(n,k) = G(n,k+1) - G(n,k),
//            F = (1+q^k) B(n,k) (-1)^{k-1} q^{k(k-1)/2}, G = (q^{n+k}-1)/(q^k+1) F
//  cert16  F(n,k) = G(n,k) - G(n,k+1),
//            F = B(n,k)(1-q^{2k}) q^{k(k-1)}, G = B(n,k)(1-q^{n+k}) q^{k(k-1)}
//  cert17  F(m,k) - F(m+1,k) = G(m,k+1) - G(m,k),
//            F = B(m,k)(1+q^k)/(1-q^k) q^{k^2},
//            G = q^{m-k+1+k^2} (q)_m^2 / ((q)_{m+k} (q)_{m-k+1}),
//            with 1/(q)_j := 0 for j < 0 (removes the 0/0 at k = m+1)
//  cert19  (1-q^l)^2 F(l,k) = G(l,k+1) - G(l,k),
//            F = q^{k-l} B(k,l)/[k]^2, G = (1-q^{k-l})(1-q^{k+l}) B(k,l)/[k]^2
//  eq20    h_star(n, {2}^a) = sum_k (1+q^k)/[k]^{2a} B(n,k) (-1)^{k-1} q^{k(k-1)/2+ak}
//  eq21    h_star(n, {2}^a,1) = sum_k (1+q^k)/[k]^{2a+1} B(n,k) q^{k^2+ak}
//  eq22    h_star(n, {2}^a,1,{2}^b)
//            = - sum_k (1+q^k)/[k]^{2(a+b)+1} B(n,k) (-1)^k q^{k(k+1)/2+(a+b)k}
//              - sum_k (1+q^k)/[k]^{2a+1} B(n,k) q^{k^2+ak} V_{k-1}(2b)    (b>=1)
//  eq23    A_{n-1,k} sum_{l=0}^a ([n]/[k])^{2l} q^{(k-n)l}
//            = A_{n,k} (([n]/[k])^{2a} q^{(k-n)a} - ([k]/[n])^2 q^{n-k})
//  eq26    h_star(n, ends-with-1 string) = sum over compositions of hat_h(n, p; p~)
//  eq32    h_star(n, ends-with-2 string) = - sum over compositions of bar_h(n, p; p~)
//  eq33    classical H*(n, string) = sum over compositions 2^{len(p)} hat-variant(n, p)
//  eq34    same for ends-with-2 strings with the bar variant
//
// validate_reconstructions re-derives eq11/eq12/eq14/eq20/eq22/eq23 (the
// forms whose printed ratios required normalization to B(n,k)) with evaluator
// pairs that share nothing with the kernel: local geometric-sum q-integers,
// local Pochhammer products, local nested loops. It runs before the main
// suite and any failure is a hard error.

#include "qzeta/mhs.hpp"
#include "qzeta/qkernel.hpp"
#include "qzeta/rational.hpp"
#include "qzeta/strings.hpp"

#include <json.hpp>

#include <chrono>
#include <functional>
#include <future>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qzeta {

enum class IdentityId {
    EQ11, EQ12, EQ13, EQ14,
    CERT15, CERT16, CERT17, CERT19,
    EQ20, EQ21, EQ22, EQ23,
    EQ26, EQ32, EQ33, EQ34,
};

inline const std::vector<std::pair<IdentityId, std::string>>& identity_names() {
    static const std::vector<std::pair<IdentityId, std::string>> names = {
        {IdentityId::EQ11, "eq11"},     {IdentityId::EQ12, "eq12"},
        {IdentityId::EQ13, "eq13"},     {IdentityId::EQ14, "eq14"},
        {IdentityId::CERT15, "cert15"}, {IdentityId::CERT16, "cert16"},
        {IdentityId::CERT17, "cert17"}, {IdentityId::CERT19, "cert19"},
        {IdentityId::EQ20, "eq20"},     {IdentityId::EQ21, "eq21"},
        {IdentityId::EQ22, "eq22"},     {IdentityId::EQ23, "eq23"},
        {IdentityId::EQ26, "eq26"},     {IdentityId::EQ32, "eq32"},
        {IdentityId::EQ33, "eq33"},     {IdentityId::EQ34, "eq34"},
    };
    return names;
}

inline std::string to_string(IdentityId id) {
    for (const auto& [i, n] : identity_names())
        if (i == id) return n;
    throw std::logic_error("unknown identity id");
}

inline IdentityId identity_from_string(std::string name) {
    for (auto& c : name) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    for (const auto& [i, n] : identity_names())
        if (n == name) return i;
    throw std::invalid_argument("unknown identity '" + name + "'");
}

class GridError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ReconstructionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct GridBounds {
    int n_max = 12;      // n ranges (eq11-eq14, eq20-eq23, eq26-eq34)
    int a_max = 4;       // {2}^a prefixes (eq20-eq23)
    int b_max = 3;       // trailing {2}^b runs (eq22), b >= 1
    int k_max = 15;      // certificate grids (both indices)
    int m_max = 2;       // number of 1s in string grids (eq26/32/33/34)
    int s_sum_max = 4;   // total of the string exponents
};

struct CheckRecord {
    std::vector<std::pair<std::string, long>> int_params;
    std::vector<std::pair<std::string, std::string>> str_params;
    Rational q;  // 1/1 for the classical identities
    bool pass = false;
    Rational lhs, rhs;
};

struct VerificationReport {
    std::string identity;
    std::vector<CheckRecord> checks;
    double elapsed_seconds = 0.0;

    std::size_t failure_count() const {
        std::size_t n = 0;
        for (const auto& c : checks) n += c.pass ? 0 : 1;
        return n;
    }
    bool all_passed() const { return failure_count() == 0; }
};

inline constexpr unsigned kReportDecimalDigits = 40;

inline std::string to_json_line(const std::string& identity, const CheckRecord& rec) {
    nlohmann::ordered_json j;
    j["identity"] = identity;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    for (const auto& [k, v] : rec.int_params) params[k] = v;
    for (const auto& [k, v] : rec.str_params) params[k] = v;
    j["params"] = params;
    j["q"] = rec.q.fraction_string();
    j["pass"] = rec.pass;
    nlohmann::ordered_json lhs, rhs;
    lhs["exact"] = rec.lhs.fraction_string();
    lhs["decimal"] = rec.lhs.decimal_string(kReportDecimalDigits);
    rhs["exact"] = rec.rhs.fraction_string();
    rhs["decimal"] = rec.rhs.decimal_string(kReportDecimalDigits);
    j["lhs"] = lhs;
    j["rhs"] = rhs;
    return j.dump();
}

// --- string grids ---------------------------------------------------------------

namespace detail {

inline void gen_exponent_vectors(int len, int budget, std::vector<int>& cur,
                                 std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == len) {
        out.push_back(cur);
        return;
    }
    for (int v = 0; v <= budget; ++v) {
        cur.push_back(v);
        gen_exponent_vectors(len, budget - v, cur, out);
        cur.pop_back();
    }
}

}  // namespace detail

inline std::vector<IndexString> ends_with_one_grid(int m_max, int s_sum_max) {
    std::vector<IndexString> out;
    for (int m = 1; m <= m_max; ++m) {
        std::vector<std::vector<int>> vecs;
        std::vector<int> cur;
        detail::gen_exponent_vectors(m, s_sum_max, cur, vecs);
        for (auto& v : vecs) out.push_back(IndexString::ends_with_one(std::move(v)));
    }
    return out;
}

inline std::vector<IndexString> ends_with_two_grid(int m_max, int s_sum_max) {
    std::vector<IndexString> out;
    for (int ones = 0; ones <= m_max; ++ones) {
        std::vector<std::vector<int>> vecs;
        std::vector<int> cur;
        detail::gen_exponent_vectors(ones + 1, s_sum_max, cur, vecs);
        for (auto& v : vecs)
            if (v.back() >= 1) out.push_back(IndexString::ends_with_two(std::move(v)));
    }
    return out;
}

// --- catalog evaluators ------------------------------------------------------------

namespace detail {

// B(n,k) extended by 0 for k > n (gbin(n,k) vanishes there)
inline Rational bw_total(QKernel& kr, long n, long k) {
    return kr.gauss_binomial(n, k) / kr.gauss_binomial(n + k, k);
}

inline Rational eq11_lhs(QKernel& kr, int n, int l) {
    Rational sum(0);
    for (int k = l + 1; k <= n; ++k) {
        const long sgn = (k % 2 == 0) ? 1 : -1;
        sum += Rational(sgn) * (Rational(1) + kr.q_pow(k)) * kr.binomial_weight(n, k) *
               kr.q_pow(static_cast<long>(k) * (k - 1) / 2);
    }
    return sum;
}

inline Rational eq11_rhs(QKernel& kr, int n, int l) {
    const long sgn = (l % 2 == 0) ? 1 : -1;
    return (kr.q_int(l) - kr.q_int(n)) / kr.q_int(n) * kr.binomial_weight(n, l) * Rational(sgn) *
           kr.q_pow(static_cast<long>(l) * (l - 1) / 2);
}

inline Rational eq12_lhs(QKernel& kr, int n, int l) {
    Rational sum(0);
    for (int k = l + 1; k <= n; ++k)
        sum += (Rational(1) + kr.q_pow(k)) * kr.q_int(k) * kr.binomial_weight(n, k) *
               kr.q_pow(static_cast<long>(k) * (k - 1));
    return sum;
}

inline Rational eq12_rhs(QKernel& kr, int n, int l) {
    return (kr.q_int(n) - kr.q_int(l)) * kr.binomial_weight(n, l) *
           kr.q_pow(static_cast<long>(l) * l);
}

inline Rational eq13_lhs(QKernel& kr, int n) {
    Rational sum(0);
    for (int k = 1; k <= n; ++k)
        sum += (Rational(1) + kr.q_pow(k)) * kr.q_int_pow(k, -1) * kr.binomial_weight(n, k) *
               kr.q_pow(static_cast<long>(k) * k);
    return sum;
}

inline Rational eq14_lhs(QKernel& kr, int n, int l) {
    Rational sum(0);
    for (int k = l; k <= n; ++k)
        sum += kr.q_pow(k) * kr.q_int_pow(k, -2) * kr.binomial_weight(k, l);
    return sum;
}

inline Rational eq14_rhs(QKernel& kr, int n, int l) {
    return kr.q_pow(l) * kr.q_int_pow(l, -2) * kr.binomial_weight(n, l);
}

inline Rational cert15_f(QKernel& kr, int n, int k) {
    const long sgn = (k % 2 == 1) ? 1 : -1;
    return (Rational(1) + kr.q_pow(k)) * bw_total(kr, n, k) * Rational(sgn) *
           kr.q_pow(static_cast<long>(k) * (k - 1) / 2);
}

inline Rational cert15_g(QKernel& kr, int n, int k) {
    return (kr.q_pow(n + k) - Rational(1)) / (kr.q_pow(k) + Rational(1)) * cert15_f(kr, n, k);
}

inline Rational cert16_f(QKernel& kr, int n, int k) {
    return bw_total(kr, n, k) * (Rational(1) - kr.q_pow(2 * k)) *
           kr.q_pow(static_cast<long>(k) * (k - 1));
}

inline Rational cert16_g(QKernel& kr, int n, int k) {
    return bw_total(kr, n, k) * (Rational(1) - kr.q_pow(n + k)) *
           kr.q_pow(static_cast<long>(k) * (k - 1));
}

inline Rational cert17_f(QKernel& kr, int m, int k) {
    return bw_total(kr, m, k) * (Rational(1) + kr.q_pow(k)) /
           (Rational(1) - kr.q_pow(k)) * kr.q_pow(static_cast<long>(k) * k);
}

inline Rational cert17_g(QKernel& kr, int m, int k) {
    if (m - k + 1 < 0) return Rational(0);  // 1/(q)_{j<0} := 0
    return kr.q_pow(m - k + 1 + static_cast<long>(k) * k) * kr.qq_pochhammer(m) *
           kr.qq_pochhammer(m) / (kr.qq_pochhammer(m + k) * kr.qq_pochhammer(m - k + 1));
}

inline Rational cert19_f(QKernel& kr, int l, int k) {
    return kr.q_pow(k - l) * kr.q_int_pow(k, -2) * bw_total(kr, k, l);
}

inline Rational cert19_g(QKernel& kr, int l, int k) {
    return (Rational(1) - kr.q_pow(k - l)) * (Rational(1) - kr.q_pow(k + l)) *
           kr.q_int_pow(k, -2) * bw_total(kr, k, l);
}

inline Rational eq20_rhs(QKernel& kr, int n, int a) {
    Rational sum(0);
    for (int k = 1; k <= n; ++k) {
        const long sgn = (k % 2 == 1) ? 1 : -1;
        sum += (Rational(1) + kr.q_pow(k)) * kr.q_int_pow(k, -2L * a) * kr.binomial_weight(n, k) *
               Rational(sgn) * kr.q_pow(static_cast<long>(k) * (k - 1) / 2 + static_cast<long>(a) * k);
    }
    return sum;
}

inline Rational eq21_rhs(QKernel& kr, int n, int a) {
    Rational sum(0);
    for (int k = 1; k <= n; ++k)
        sum += (Rational(1) + kr.q_pow(k)) * kr.q_int_pow(k, -(2L * a + 1)) *
               kr.binomial_weight(n, k) *
               kr.q_pow(static_cast<long>(k) * k + static_cast<long>(a) * k);
    return sum;
}

inline Rational eq22_rhs(QKernel& kr, int n, int a, int b) {
    Rational sum(0);
    for (int k = 1; k <= n; ++k) {
        const long sgn = (k % 2 == 0) ? 1 : -1;
        sum -= Rational(sgn) * (Rational(1) + kr.q_pow(k)) *
               kr.q_int_pow(k, -(2L * (a + b) + 1)) * kr.binomial_weight(n, k) *
               kr.q_pow(static_cast<long>(k) * (k + 1) / 2 + static_cast<long>(a + b) * k);
        sum -= (Rational(1) + kr.q_pow(k)) * kr.q_int_pow(k, -(2L * a + 1)) *
               kr.binomial_weight(n, k) *
               kr.q_pow(static_cast<long>(k) * k + static_cast<long>(a) * k) *
               aux_V(static_cast<unsigned>(k - 1), b, kr);
    }
    return sum;
}

inline Rational eq23_lhs(QKernel& kr, int n, int k, int a) {
    const Rational A = k <= n - 1 ? aux_A(static_cast<unsigned>(n - 1), static_cast<unsigned>(k), kr)
                                  : Rational(0);  // B(n-1,k) vanishes at k = n
    Rational inner(0);
    const Rational ratio = kr.q_int(n) / kr.q_int(k);
    for (int l = 0; l <= a; ++l)
        inner += ratio.pow(2L * l) * kr.q_pow(static_cast<long>(k - n) * l);
    return A * inner;
}

inline Rational eq23_rhs(QKernel& kr, int n, int k, int a) {
    const Rational A = aux_A(static_cast<unsigned>(n), static_cast<unsigned>(k), kr);
    const Rational ratio = kr.q_int(n) / kr.q_int(k);
    return A * (ratio.pow(2L * a) * kr.q_pow(static_cast<long>(k - n) * a) -
                ratio.pow(-2) * kr.q_pow(n - k));
}

}  // namespace detail

// --- telescoping certificate pairs ----------------------------------------------------

// One (F, G) pair per certificate, exposed as closures so the difference
// relations can be probed pointwise.
struct CertificatePair {
    IdentityId id;
    std::function<Rational(QKernel&, int, int)> f, g;
    // the relation the pair certifies, as lhs(F) == rhs(G) at one point
    std::function<Rational(QKernel&, int, int)> relation_lhs, relation_rhs;
};

inline const std::vector<CertificatePair>& certificate_pairs() {
    static const std::vector<CertificatePair> pairs = {
        {IdentityId::CERT15, detail::cert15_f, detail::cert15_g,
         [](QKernel& kr, int n, int k) {
             return (Rational(1) - kr.q_pow(n)) * detail::cert15_f(kr, n, k);
         },
         [](QKernel& kr, int n, int k) {
             return detail::cert15_g(kr, n, k + 1) - detail::cert15_g(kr, n, k);
         }},
        {IdentityId::CERT16, detail::cert16_f, detail::cert16_g,
         [](QKernel& kr, int n, int k) { return detail::cert16_f(kr, n, k); },
         [](QKernel& kr, int n, int k) {
             return detail::cert16_g(kr, n, k) - detail::cert16_g(kr, n, k + 1);
         }},
        {IdentityId::CERT17, detail::cert17_f, detail::cert17_g,
         [](QKernel& kr, int m, int k) {
             return detail::cert17_f(kr, m, k) - detail::cert17_f(kr, m + 1, k);
         },
         [](QKernel& kr, int m, int k) {
             return detail::cert17_g(kr, m, k + 1) - detail::cert17_g(kr, m, k);
         }},
        {IdentityId::CERT19, detail::cert19_f, detail::cert19_g,
         [](QKernel& kr, int l, int k) {
             return (Rational(1) - kr.q_pow(l)).pow(2) * detail::cert19_f(kr, l, k);
         },
         [](QKernel& kr, int l, int k) {
             return detail::cert19_g(kr, l, k + 1) - detail::cert19_g(kr, l, k);
         }},
    };
    return pairs;
}

inline const CertificatePair& certificate_pair(IdentityId id) {
    for (const auto& p : certificate_pairs())
        if (p.id == id) return p;
    throw std::invalid_argument("certificate_pair: not a certificate id");
}

// --- per-point checks ----------------------------------------------------------------

// eq26 / eq32: h_star on the string, by both the direct definition and the
// group-peel recurrence, against the composition sum of hat_h resp. -bar_h.
inline CheckRecord check_two_one_point(const IndexString& s, unsigned n, QKernel& kr) {
    const Rational direct = h_star(n, s.expanded(), kr);
    const Rational recur = h_star_recurrence(n, s, kr);
    Rational rhs(0);
    for (const auto& c : enumerate_compositions(s))
        rhs += s.ending() == Ending::One ? hat_h(n, c.p, c.p_tilde, kr)
                                         : bar_h(n, c.p, c.p_tilde, kr);
    if (s.ending() == Ending::Two) rhs = -rhs;

    CheckRecord rec;
    rec.int_params.emplace_back("n", n);
    rec.str_params.emplace_back("string", s.display());
    rec.q = kr.q();
    rec.pass = direct == rhs && recur == rhs;
    rec.lhs = (direct == rhs && recur != rhs) ? recur : direct;  // witness the failing route
    rec.rhs = rhs;
    return rec;
}

// eq33 / eq34: the q = 1 avatars with weight 2^{len(p)} per composition.
inline CheckRecord check_classical_point(const IndexString& s, unsigned n) {
    const Rational lhs = classical_sum(ClassicalFamily::HStar, n, s.expanded());
    Rational rhs(0);
    for (const auto& c : enumerate_compositions(s))
        rhs += Rational(2).pow(static_cast<long>(c.p.size())) *
               classical_sum(s.ending() == Ending::One ? ClassicalFamily::HatH
                                                       : ClassicalFamily::BarH,
                             n, c.p);
    CheckRecord rec;
    rec.int_params.emplace_back("n", n);
    rec.str_params.emplace_back("string", s.display());
    rec.q = Rational(1);
    rec.pass = lhs == rhs;
    rec.lhs = lhs;
    rec.rhs = rhs;
    return rec;
}

// --- grid runners ---------------------------------------------------------------------

namespace detail {

inline CheckRecord make_record(QKernel& kr, std::vector<std::pair<std::string, long>> params,
                               Rational lhs, Rational rhs) {
    CheckRecord rec;
    rec.int_params = std::move(params);
    rec.q = kr.q();
    rec.pass = lhs == rhs;
    rec.lhs = std::move(lhs);
    rec.rhs = std::move(rhs);
    return rec;
}

inline void run_identity_for_q(IdentityId id, const GridBounds& b, QKernel& kr,
                               std::vector<CheckRecord>& out) {
    switch (id) {
        case IdentityId::EQ11:
            for (int n = 1; n <= b.n_max; ++n)
                for (int l = 0; l <= n; ++l)
                    out.push_back(make_record(kr, {{"n", n}, {"l", l}}, eq11_lhs(kr, n, l),
                                              eq11_rhs(kr, n, l)));
            break;
        case IdentityId::EQ12:
            for (int n = 1; n <= b.n_max; ++n)
                for (int l = 0; l <= n; ++l)
                    out.push_back(make_record(kr, {{"n", n}, {"l", l}}, eq12_lhs(kr, n, l),
                                              eq12_rhs(kr, n, l)));
            break;
        case IdentityId::EQ13:
            for (int n = 1; n <= b.n_max; ++n)
                out.push_back(make_record(kr, {{"n", n}}, eq13_lhs(kr, n),
                                          h_star(static_cast<unsigned>(n), {1}, kr)));
            break;
        case IdentityId::EQ14:
            for (int n = 1; n <= b.n_max; ++n)
                for (int l = 1; l <= n; ++l)
                    out.push_back(make_record(kr, {{"n", n}, {"l", l}}, eq14_lhs(kr, n, l),
                                              eq14_rhs(kr, n, l)));
            break;
        case IdentityId::CERT15:
        case IdentityId::CERT16:
        case IdentityId::CERT17:
        case IdentityId::CERT19: {
            const auto& cp = certificate_pair(id);
            const char* first = id == IdentityId::CERT17 ? "m" : id == IdentityId::CERT19 ? "l" : "n";
            const int lo = id == IdentityId::CERT17 ? 0 : 1;
            for (int i = lo; i <= b.k_max; ++i)
                for (int k = 1; k <= b.k_max; ++k)
                    out.push_back(make_record(kr, {{first, i}, {"k", k}},
                                              cp.relation_lhs(kr, i, k),
                                              cp.relation_rhs(kr, i, k)));
            break;
        }
        case IdentityId::EQ20:
            for (int a = 0; a <= b.a_max; ++a)
                for (int n = 1; n <= b.n_max; ++n)
                    out.push_back(make_record(
                        kr, {{"a", a}, {"n", n}},
                        h_star(static_cast<unsigned>(n), std::vector<int>(a, 2), kr),
                        eq20_rhs(kr, n, a)));
            break;
        case IdentityId::EQ21:
            for (int a = 0; a <= b.a_max; ++a)
                for (int n = 1; n <= b.n_max; ++n) {
                    std::vector<int> s(a, 2);
                    s.push_back(1);
                    out.push_back(make_record(kr, {{"a", a}, {"n", n}},
                                              h_star(static_cast<unsigned>(n), s, kr),
                                              eq21_rhs(kr, n, a)));
                }
            break;
        case IdentityId::EQ22:
            for (int a = 0; a <= b.a_max; ++a)
                for (int bb = 1; bb <= b.b_max; ++bb)
                    for (int n = 1; n <= b.n_max; ++n) {
                        std::vector<int> s(a, 2);
                        s.push_back(1);
                        s.insert(s.end(), bb, 2);
                        out.push_back(make_record(kr, {{"a", a}, {"b", bb}, {"n", n}},
                                                  h_star(static_cast<unsigned>(n), s, kr),
                                                  eq22_rhs(kr, n, a, bb)));
                    }
            break;
        case IdentityId::EQ23:
            for (int a = 0; a <= b.a_max; ++a)
                for (int n = 1; n <= b.n_max; ++n)
                    for (int k = 1; k <= n; ++k)
                        out.push_back(make_record(kr, {{"a", a}, {"n", n}, {"k", k}},
                                                  eq23_lhs(kr, n, k, a), eq23_rhs(kr, n, k, a)));
            break;
        case IdentityId::EQ26:
            for (const auto& s : ends_with_one_grid(b.m_max, b.s_sum_max))
                for (int n = 1; n <= b.n_max; ++n)
                    out.push_back(check_two_one_point(s, static_cast<unsigned>(n), kr));
            break;
        case IdentityId::EQ32:
            for (const auto& s : ends_with_two_grid(b.m_max, b.s_sum_max))
                for (int n = 1; n <= b.n_max; ++n)
                    out.push_back(check_two_one_point(s, static_cast<unsigned>(n), kr));
            break;
        default:
            throw std::logic_error("run_identity_for_q: classical identity routed here");
    }
}

inline void run_classical(IdentityId id, const GridBounds& b, std::vector<CheckRecord>& out) {
    const auto strings = id == IdentityId::EQ33 ? ends_with_one_grid(b.m_max, b.s_sum_max)
                                                : ends_with_two_grid(b.m_max, b.s_sum_max);
    for (const auto& s : strings)
        for (int n = 1; n <= b.n_max; ++n)
            out.push_back(check_classical_point(s, static_cast<unsigned>(n)));
}

inline void validate_grid(IdentityId id, const GridBounds& b) {
    if (b.n_max < 1) throw GridError("verify: n_max must be >= 1");
    if (b.k_max < 1) throw GridError("verify: k_max must be >= 1");
    if (b.a_max < 0) throw GridError("verify: a_max must be >= 0");
    if (id == IdentityId::EQ22 && b.b_max < 1)
        throw GridError("verify: eq22 requires b >= 1");
    if (id == IdentityId::EQ26 || id == IdentityId::EQ33) {
        if (b.m_max < 1) throw GridError("verify: ends-with-1 string grids need m_max >= 1");
    }
    if (id == IdentityId::EQ32 || id == IdentityId::EQ34) {
        if (b.m_max < 0) throw GridError("verify: m_max must be >= 0");
        if (b.s_sum_max < 1)
            throw GridError("verify: ends-with-2 string grids need s_sum_max >= 1");
    }
}

}  // namespace detail

// --- public verification entry points ---------------------------------------------------

inline VerificationReport verify(IdentityId id, const GridBounds& bounds,
                                 const std::vector<QPoint>& q_points, unsigned threads = 1) {
    detail::validate_grid(id, bounds);
    const auto t0 = std::chrono::steady_clock::now();
    VerificationReport rep{to_string(id), {}, 0.0};

    if (id == IdentityId::EQ33 || id == IdentityId::EQ34) {
        detail::run_classical(id, bounds, rep.checks);
    } else {
        if (q_points.empty()) throw GridError("verify: at least one q point is required");
        if (threads > 1 && q_points.size() > 1) {
            std::vector<std::future<std::vector<CheckRecord>>> futures;
            futures.reserve(q_points.size());
            for (const auto& q : q_points)
                futures.push_back(std::async(std::launch::async, [id, &bounds, q] {
                    QKernel kr(q);
                    std::vector<CheckRecord> out;
                    detail::run_identity_for_q(id, bounds, kr, out);
                    return out;
                }));
            for (auto& f : futures) {
                auto part = f.get();
                rep.checks.insert(rep.checks.end(), std::make_move_iterator(part.begin()),
                                  std::make_move_iterator(part.end()));
            }
        } else {
            for (const auto& q : q_points) {
                QKernel kr(q);
                detail::run_identity_for_q(id, bounds, kr, rep.checks);
            }
        }
    }

    rep.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

inline VerificationReport verify_certificates(IdentityId id, const GridBounds& bounds,
                                              const std::vector<QPoint>& q_points,
                                              unsigned threads = 1) {
    if (id != IdentityId::CERT15 && id != IdentityId::CERT16 && id != IdentityId::CERT17 &&
        id != IdentityId::CERT19)
        throw std::invalid_argument("verify_certificates: not a certificate id");
    return verify(id, bounds, q_points, threads);
}

inline VerificationReport verify_two_one_finite(const IndexString& s, int n_max,
                                                const std::vector<QPoint>& q_points) {
    if (n_max < 1) throw GridError("verify_two_one_finite: n_max must be >= 1");
    const auto t0 = std::chrono::steady_clock::now();
    VerificationReport rep{s.ending() == Ending::One ? "eq26" : "eq32", {}, 0.0};
    for (const auto& q : q_points) {
        QKernel kr(q);
        for (int n = 1; n <= n_max; ++n)
            rep.checks.push_back(check_two_one_point(s, static_cast<unsigned>(n), kr));
    }
    rep.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

inline VerificationReport verify_classical(IdentityId id, const IndexString& s, int n_max) {
    if (id != IdentityId::EQ33 && id != IdentityId::EQ34)
        throw std::invalid_argument("verify_classical: id must be eq33 or eq34");
    if ((id == IdentityId::EQ33) != (s.ending() == Ending::One))
        throw std::invalid_argument("verify_classical: string ending does not match the identity");
    const auto t0 = std::chrono::steady_clock::now();
    VerificationReport rep{to_string(id), {}, 0.0};
    for (int n = 1; n <= n_max; ++n)
        rep.checks.push_back(check_classical_point(s, static_cast<unsigned>(n)));
    rep.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

// --- reconstruction gate ------------------------------------------------------------------

// Evaluator pairs that share nothing with QKernel or the mhs module: local
// geometric-sum q-integers, local Pochhammer products, local nested loops.
// Both sides of every normalized form are recomputed from raw definitions.
namespace recon {

inline Rational qpow(const Rational& q, long e) {
    Rational r(1);
    const Rational base = e < 0 ? q.inverse() : q;
    for (long i = 0, n = e < 0 ? -e : e; i < n; ++i) r *= base;
    return r;
}

inline Rational qint(const Rational& q, long n) {
    Rational sum(0);
    for (long k = 0; k < n; ++k) sum += qpow(q, k);  // geometric sum, not the closed form
    return sum;
}

inline Rational qqpoch(const Rational& q, long n) {
    Rational p(1);
    for (long k = 1; k <= n; ++k) p *= Rational(1) - qpow(q, k);
    return p;
}

inline Rational gbin(const Rational& q, long n, long m) {
    if (m < 0 || n < 0 || m > n) return Rational(0);
    return qqpoch(q, n) / (qqpoch(q, m) * qqpoch(q, n - m));
}

inline Rational bw(const Rational& q, long n, long k) {
    return gbin(q, n, k) / gbin(q, n + k, k);
}

inline Rational hstar_brute(const Rational& q, int n, const std::vector<int>& exps) {
    // depth-first over non-increasing index tuples
    const auto go = [&](auto&& self, int max_k, std::size_t idx) -> Rational {
        if (idx == exps.size()) return Rational(1);
        Rational sum(0);
        for (int k = 1; k <= max_k; ++k)
            sum += qpow(q, k) * qint(q, k).pow(-exps[idx]) * self(self, k, idx + 1);
        return sum;
    };
    return go(go, n, 0);
}

inline Rational v_brute(const Rational& q, int k, int s) {
    Rational sum(0);
    for (int j = 1; j <= k; ++j) {
        const long sgn = (j % 2 == 0) ? 1 : -1;
        sum += Rational(sgn) * (Rational(1) + qpow(q, j)) *
               qpow(q, static_cast<long>(s) * j - static_cast<long>(j) * (j + 1) / 2) *
               qint(q, j).pow(-2L * s);
    }
    return sum;
}

inline Rational a_brute(const Rational& q, int n, int k) {
    return (Rational(1) + qpow(q, k)) * bw(q, n, k) * qpow(q, static_cast<long>(k) * (k - 1) / 2);
}

}  // namespace recon

inline VerificationReport validate_reconstructions(const std::vector<QPoint>& q_points,
                                                   int n_max = 12) {
    if (q_points.empty())
        throw std::invalid_argument("validate_reconstructions: at least one q point is required");
    const auto t0 = std::chrono::steady_clock::now();
    VerificationReport rep{"reconstruction", {}, 0.0};

    std::string first_failure;
    const auto record = [&](const char* form, std::vector<std::pair<std::string, long>> params,
                            const Rational& q, const Rational& lhs, const Rational& rhs,
                            bool extra_ok = true) {
        CheckRecord rec;
        rec.int_params = std::move(params);
        rec.str_params.emplace_back("form", form);
        rec.q = q;
        rec.pass = lhs == rhs && extra_ok;
        rec.lhs = lhs;
        rec.rhs = rhs;
        if (!rec.pass && first_failure.empty())
            first_failure = std::string(form) + " at q=" + q.fraction_string() +
                            " lhs=" + lhs.fraction_string() + " rhs=" + rhs.fraction_string();
        rep.checks.push_back(std::move(rec));
    };

    for (const auto& qp : q_points) {
        const Rational& q = qp.value();

        // eq11, with the closed form cross-checked against its telescoped
        // variant (1-q^{n-l})/(1-q^n) B(n,l) (-1)^{l+1} q^{l(l+1)/2}
        for (int n = 1; n <= n_max; ++n)
            for (int l = 0; l <= n; ++l) {
                Rational lhs(0);
                for (int k = l + 1; k <= n; ++k) {
                    const long sgn = (k % 2 == 0) ? 1 : -1;
                    lhs += Rational(sgn) * (Rational(1) + recon::qpow(q, k)) * recon::bw(q, n, k) *
                           recon::qpow(q, static_cast<long>(k) * (k - 1) / 2);
                }
                const long sgn_l = (l % 2 == 0) ? 1 : -1;
                const Rational rhs = (recon::qint(q, l) - recon::qint(q, n)) / recon::qint(q, n) *
                                     recon::bw(q, n, l) * Rational(sgn_l) *
                                     recon::qpow(q, static_cast<long>(l) * (l - 1) / 2);
                const Rational telescoped = (Rational(1) - recon::qpow(q, n - l)) /
                                            (Rational(1) - recon::qpow(q, n)) * recon::bw(q, n, l) *
                                            Rational(-sgn_l) *
                                            recon::qpow(q, static_cast<long>(l) * (l + 1) / 2);
                record("eq11", {{"n", n}, {"l", l}}, q, lhs, rhs, rhs == telescoped);
            }

        // eq12
        for (int n = 1; n <= n_max; ++n)
            for (int l = 0; l <= n; ++l) {
                Rational lhs(0);
                for (int k = l + 1; k <= n; ++k)
                    lhs += (Rational(1) + recon::qpow(q, k)) * recon::qint(q, k) *
                           recon::bw(q, n, k) * recon::qpow(q, static_cast<long>(k) * (k - 1));
                const Rational rhs = (recon::qint(q, n) - recon::qint(q, l)) *
                                     recon::bw(q, n, l) *
                                     recon::qpow(q, static_cast<long>(l) * l);
                record("eq12", {{"n", n}, {"l", l}}, q, lhs, rhs);
            }

        // eq14
        for (int n = 1; n <= n_max; ++n)
            for (int l = 1; l <= n; ++l) {
                Rational lhs(0);
                for (int k = l; k <= n; ++k)
                    lhs += recon::qpow(q, k) * recon::qint(q, k).pow(-2) * recon::bw(q, k, l);
                const Rational rhs =
                    recon::qpow(q, l) * recon::qint(q, l).pow(-2) * recon::bw(q, n, l);
                record("eq14", {{"n", n}, {"l", l}}, q, lhs, rhs);
            }

        // eq20
        for (int a = 0; a <= 4; ++a)
            for (int n = 1; n <= n_max; ++n) {
                const Rational lhs = recon::hstar_brute(q, n, std::vector<int>(a, 2));
                Rational rhs(0);
                for (int k = 1; k <= n; ++k) {
                    const long sgn = (k % 2 == 1) ? 1 : -1;
                    rhs += (Rational(1) + recon::qpow(q, k)) * recon::qint(q, k).pow(-2L * a) *
                           recon::bw(q, n, k) * Rational(sgn) *
                           recon::qpow(q, static_cast<long>(k) * (k - 1) / 2 +
                                              static_cast<long>(a) * k);
                }
                record("eq20", {{"a", a}, {"n", n}}, q, lhs, rhs);
            }

        // eq22 (brute-force n is capped; the nested tuple count grows fast)
        const int n22 = n_max < 8 ? n_max : 8;
        for (int a = 0; a <= 2; ++a)
            for (int bb = 1; bb <= 2; ++bb)
                for (int n = 1; n <= n22; ++n) {
                    std::vector<int> s(a, 2);
                    s.push_back(1);
                    s.insert(s.end(), bb, 2);
                    const Rational lhs = recon::hstar_brute(q, n, s);
                    Rational rhs(0);
                    for (int k = 1; k <= n; ++k) {
                        const long sgn = (k % 2 == 0) ? 1 : -1;
                        rhs -= Rational(sgn) * (Rational(1) + recon::qpow(q, k)) *
                               recon::qint(q, k).pow(-(2L * (a + bb) + 1)) * recon::bw(q, n, k) *
                               recon::qpow(q, static_cast<long>(k) * (k + 1) / 2 +
                                                  static_cast<long>(a + bb) * k);
                        rhs -= (Rational(1) + recon::qpow(q, k)) *
                               recon::qint(q, k).pow(-(2L * a + 1)) * recon::bw(q, n, k) *
                               recon::qpow(q, static_cast<long>(k) * k + static_cast<long>(a) * k) *
                               recon::v_brute(q, k - 1, bb);
                    }
                    record("eq22", {{"a", a}, {"b", bb}, {"n", n}}, q, lhs, rhs);
                }

        // eq23, which pins the A_{n,k} normalization
        for (int a = 0; a <= 3; ++a)
            for (int n = 1; n <= n_max; ++n)
                for (int k = 1; k <= n; ++k) {
                    const Rational ratio = recon::qint(q, n) / recon::qint(q, k);
                    Rational inner(0);
                    for (int l = 0; l <= a; ++l)
                        inner += ratio.pow(2L * l) * recon::qpow(q, static_cast<long>(k - n) * l);
                    const Rational lhs = recon::a_brute(q, n - 1, k) * inner;
                    const Rational rhs =
                        recon::a_brute(q, n, k) *
                        (ratio.pow(2L * a) * recon::qpow(q, static_cast<long>(k - n) * a) -
                         ratio.pow(-2) * recon::qpow(q, n - k));
                    record("eq23", {{"a", a}, {"n", n}, {"k", k}}, q, lhs, rhs);
                }
    }

    rep.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!first_failure.empty())
        throw ReconstructionError("reconstruction gate failed: " + first_failure);
    return rep;
}

}  // namespace qzeta
