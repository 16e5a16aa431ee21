// Acceptance suite. Runs every release criterion at its stated tolerance and
// prints one pass/fail line per criterion; the exit code is the number of
// failed criteria. Identity checks are bit-exact rational equalities; series
// checks compare against proven tail bounds; each criterion also carries a
// wall-clock budget that is enforced here.

#include "qzeta/qzeta.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <memory>
#include <string>
#include <vector>

using namespace qzeta;

namespace {

const std::vector<QPoint> default_qs() {
    return {QPoint(Rational(1, 2)), QPoint(Rational(1, 3)), QPoint(Rational(2, 3)),
            QPoint(Rational(7, 10))};
}

const std::vector<QPoint> series_qs() { return {QPoint(Rational(1, 2)), QPoint(Rational(2, 3))}; }

// all two-one strings with (sum of exponents) + (number of 1s) <= budget
std::vector<IndexString> weight_budget_grid(int budget) {
    std::vector<IndexString> out;
    // ends with 1: m ones, exponent sum <= budget - m
    for (int m = 1; m <= budget; ++m) {
        std::vector<std::vector<int>> vecs{{}};
        for (int i = 0; i < m; ++i) {
            std::vector<std::vector<int>> next;
            for (const auto& v : vecs) {
                int used = 0;
                for (int x : v) used += x;
                for (int s = 0; s + used <= budget - m; ++s) {
                    auto w = v;
                    w.push_back(s);
                    next.push_back(std::move(w));
                }
            }
            vecs = std::move(next);
        }
        for (const auto& v : vecs) out.push_back(IndexString::ends_with_one(v));
    }
    // ends with 2: m ones plus a final block >= 1, total sum + m <= budget
    for (int m = 0; m + 1 <= budget; ++m) {
        std::vector<std::vector<int>> vecs{{}};
        for (int i = 0; i < m + 1; ++i) {
            std::vector<std::vector<int>> next;
            for (const auto& v : vecs) {
                int used = 0;
                for (int x : v) used += x;
                for (int s = 0; s + used + m <= budget; ++s) {
                    auto w = v;
                    w.push_back(s);
                    next.push_back(std::move(w));
                }
            }
            vecs = std::move(next);
        }
        for (const auto& v : vecs)
            if (v.back() >= 1) out.push_back(IndexString::ends_with_two(v));
    }
    return out;
}

struct Criterion {
    int number;
    std::string description;
    double budget_seconds;
    std::function<bool(std::string&)> body;
};

int run_all(const std::vector<Criterion>& criteria) {
    int failures = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        std::string note;
        bool ok = false;
        try {
            ok = c.body(note);
        } catch (const std::exception& e) {
            note = std::string("exception: ") + e.what();
            ok = false;
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_budget = elapsed < c.budget_seconds;
        const bool pass = ok && in_budget;
        if (!pass) ++failures;
        std::printf("criterion %2d %s (%.2f s, budget %.0f s) %s%s%s\n", c.number,
                    pass ? "PASS" : "FAIL", elapsed, c.budget_seconds, c.description.c_str(),
                    note.empty() ? "" : " -- ", note.c_str());
        std::fflush(stdout);
    }
    return failures;
}

bool all_passed(const VerificationReport& rep, std::string& note) {
    if (rep.all_passed()) return true;
    note += rep.identity + ": " + std::to_string(rep.failure_count()) + " failures; ";
    return false;
}

}  // namespace

int main() {
    std::vector<Criterion> criteria;

    criteria.push_back({1,
                        "reconstruction gate: normalized eq11/eq12/eq14/eq20/eq22/eq23 forms, "
                        "independent evaluators, bit-exact",
                        10.0,
                        [](std::string& note) {
                            const auto rep = validate_reconstructions(default_qs(), 12);
                            note = std::to_string(rep.checks.size()) + " checks";
                            return rep.all_passed();
                        }});

    criteria.push_back({2, "eq11-eq14 for 1 <= n <= 20, all admissible l, four q points", 60.0,
                        [](std::string& note) {
                            GridBounds b;
                            b.n_max = 20;
                            bool ok = true;
                            for (const auto id : {IdentityId::EQ11, IdentityId::EQ12,
                                                  IdentityId::EQ13, IdentityId::EQ14})
                                ok = all_passed(verify(id, b, default_qs(), 2), note) && ok;
                            return ok;
                        }});

    criteria.push_back({3,
                        "certificates cert15/cert16/cert17/cert19 on 1 <= k,n <= 15 plus eq23 "
                        "for k <= n <= 12, a <= 3",
                        60.0,
                        [](std::string& note) {
                            GridBounds b;
                            b.k_max = 15;
                            bool ok = true;
                            for (const auto id : {IdentityId::CERT15, IdentityId::CERT16,
                                                  IdentityId::CERT17, IdentityId::CERT19})
                                ok = all_passed(verify_certificates(id, b, default_qs(), 2), note) && ok;
                            GridBounds e;
                            e.n_max = 12;
                            e.a_max = 3;
                            ok = all_passed(verify(IdentityId::EQ23, e, default_qs(), 2), note) && ok;
                            return ok;
                        }});

    criteria.push_back({4, "eq20/eq21 for a <= 4, n <= 15 and eq22 for a <= 3, b <= 3, n <= 12",
                        300.0, [](std::string& note) {
                            GridBounds b;
                            b.n_max = 15;
                            b.a_max = 4;
                            bool ok = all_passed(verify(IdentityId::EQ20, b, default_qs(), 2), note);
                            ok = all_passed(verify(IdentityId::EQ21, b, default_qs(), 2), note) && ok;
                            GridBounds c;
                            c.n_max = 12;
                            c.a_max = 3;
                            c.b_max = 3;
                            ok = all_passed(verify(IdentityId::EQ22, c, default_qs(), 2), note) && ok;
                            return ok;
                        }});

    criteria.push_back({5,
                        "eq26 (m <= 3, sum s <= 4) and eq32 (m <= 2, sum s <= 4) for n <= 12, "
                        "h_star by both routes",
                        600.0, [](std::string& note) {
                            GridBounds b;
                            b.n_max = 12;
                            b.m_max = 3;
                            b.s_sum_max = 4;
                            bool ok = all_passed(verify(IdentityId::EQ26, b, default_qs(), 2), note);
                            GridBounds c;
                            c.n_max = 12;
                            c.m_max = 2;
                            c.s_sum_max = 4;
                            ok = all_passed(verify(IdentityId::EQ32, c, default_qs(), 2), note) && ok;
                            return ok;
                        }});

    criteria.push_back({6, "classical limits eq33/eq34 on the same string grids, n <= 12", 300.0,
                        [](std::string& note) {
                            GridBounds b;
                            b.n_max = 12;
                            b.m_max = 3;
                            b.s_sum_max = 4;
                            bool ok = all_passed(verify(IdentityId::EQ33, b, default_qs(), 2), note);
                            GridBounds c;
                            c.n_max = 12;
                            c.m_max = 2;
                            c.s_sum_max = 4;
                            ok = all_passed(verify(IdentityId::EQ34, c, default_qs(), 2), note) && ok;
                            return ok;
                        }});

    // shared state between criteria 7 and 10
    struct SeriesRun {
        IndexString s;
        QPoint q;
        BoundedValue direct, via;
    };
    auto runs = std::make_shared<std::vector<SeriesRun>>();

    criteria.push_back(
        {7,
         "series cross-check: |two_one_eval - zeta_star_q_direct| within summed tail bounds, "
         "eps = 1e-30, all strings with sum s + m <= 4, q in {1/2, 2/3}",
         300.0, [runs](std::string& note) {
             const Rational eps = Rational::parse("1e-30");
             bool ok = true;
             std::size_t count = 0;
             for (const auto& q : series_qs())
                 for (const auto& s : weight_budget_grid(4)) {
                     const auto direct = zeta_star_q_direct(s.expanded(), q, eps);
                     const auto via = two_one_eval(s, q, eps);
                     const bool within = (via.partial_sum - direct.partial_sum).abs() <=
                                         via.tail_bound + direct.tail_bound;
                     if (!within) {
                         ok = false;
                         note += "mismatch at " + s.display() + " q=" + q.value().fraction_string() + "; ";
                     }
                     runs->push_back({s, q, direct, via});
                     ++count;
                 }
             note += std::to_string(count) + " string/q pairs";
             return ok;
         }});

    criteria.push_back(
        {8,
         "zbar[0;0] partial sums equal 1 + (-1)^{K-1} q^{K(K+1)/2} for K <= 50 and reach 1 "
         "within tail 1e-30",
         60.0, [](std::string& note) {
             bool ok = true;
             for (const auto& q : series_qs()) {
                 for (long K = 1; K <= 50; ++K) {
                     SeriesOptions o;
                     o.term_override = K;
                     const auto bv = zbar_q({0}, {0}, q, Rational(0), o);
                     const Rational sign = (K % 2 == 1) ? Rational(1) : Rational(-1);
                     if (bv.partial_sum != Rational(1) + sign * q.value().pow(K * (K + 1) / 2)) {
                         ok = false;
                         note += "closed form broke at K=" + std::to_string(K) + "; ";
                     }
                 }
                 const auto bv = zbar_q({0}, {0}, q, Rational::parse("1e-30"));
                 if (!(bv.tail_bound <= Rational::parse("1e-30")) ||
                     !((bv.partial_sum - Rational(1)).abs() <= bv.tail_bound)) {
                     ok = false;
                     note += "limit check failed at q=" + q.value().fraction_string() + "; ";
                 }
             }
             return ok;
         }});

    criteria.push_back(
        {9,
         "limit probe for 2,1: distances to 2 zeta(3) strictly decrease along q = 9/10, "
         "99/100, 999/1000 (tails <= 1e-12, target <= 1e-15)",
         60.0, [](std::string& note) {
             const std::vector<QPoint> qs = {QPoint(Rational(9, 10)), QPoint(Rational(99, 100)),
                                             QPoint(Rational(999, 1000))};
             const auto pts = limit_probe(IndexString::ends_with_one({1}), qs,
                                          Rational::parse("1e-12"), Rational::parse("1e-15"));
             bool ok = pts.size() == 3;
             for (const auto& p : pts) {
                 if (!(p.value.tail_bound <= Rational::parse("1e-12"))) ok = false;
                 if (!(p.target_error_bound <= Rational::parse("1e-15"))) ok = false;
             }
             for (std::size_t i = 1; i < pts.size(); ++i)
                 if (!(pts[i].distance < pts[i - 1].distance)) {
                     ok = false;
                     note += "distance did not decrease at step " + std::to_string(i) + "; ";
                 }
             if (ok)
                 note = "distances " + pts[0].distance.decimal_string(8) + " > " +
                        pts[1].distance.decimal_string(8) + " > " + pts[2].distance.decimal_string(8);
             return ok;
         }});

    criteria.push_back(
        {10,
         "tail soundness: doubling terms_used moves every criterion-7 partial sum by less "
         "than its reported tail bound",
         600.0, [runs](std::string& note) {
             bool ok = !runs->empty();
             if (runs->empty()) note = "criterion 7 produced no runs";
             for (const auto& r : *runs) {
                 SeriesOptions d1, d2;
                 d1.term_override = 2 * r.direct.terms_used;
                 d2.term_override = 2 * r.via.terms_used;
                 const auto direct2 =
                     zeta_star_q_direct(r.s.expanded(), r.q, Rational(0), d1);
                 const auto via2 = two_one_eval(r.s, r.q, Rational(0), d2);
                 if (!((direct2.partial_sum - r.direct.partial_sum).abs() < r.direct.tail_bound) ||
                     !((via2.partial_sum - r.via.partial_sum).abs() < r.via.tail_bound)) {
                     ok = false;
                     note += "unsound at " + r.s.display() + " q=" + r.q.value().fraction_string() + "; ";
                 }
             }
             return ok;
         }});

    const int failures = run_all(criteria);
    if (failures == 0)
        std::printf("acceptance: all %zu criteria passed\n", criteria.size());
    else
        std::printf("acceptance: %d of %zu criteria FAILED\n", failures, criteria.size());
    return failures;
}
