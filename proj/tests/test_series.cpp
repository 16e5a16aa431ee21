#include "qzeta/series.hpp"

#include <doctest.h>

#include "oracle_support.hpp"

#include <stdexcept>
#include <vector>

using namespace qzeta;

namespace {
const std::vector<Rational> kQs = {Rational(1, 2), Rational(2, 3)};
const Rational kEps = Rational::parse("1e-20");
}  // namespace

TEST_CASE("zeta_star basics and validation") {
    const QPoint q{Rational(1, 2)};
    const auto empty = zeta_star_q_direct({}, q, kEps);
    CHECK(empty.partial_sum == Rational(1));
    CHECK(empty.tail_bound == Rational(0));
    CHECK(empty.terms_used == 0);
    CHECK_THROWS_AS(zeta_star_q_direct({0, 1}, q, kEps), std::invalid_argument);
    CHECK_THROWS_AS(zeta_star_q_direct({2}, q, Rational(0)), std::invalid_argument);
    CHECK_THROWS_AS(zeta_star_q_direct({2}, q, Rational(-1, 7)), std::invalid_argument);

    SeriesOptions tiny;
    tiny.term_cap = 5;
    CHECK_THROWS_AS(zeta_star_q_direct({2}, QPoint(Rational(2, 3)), Rational::parse("1e-30"), tiny),
                    TermCapError);
}

TEST_CASE("zeta_star partial sums grow monotonically with more terms") {
    const QPoint q{Rational(1, 2)};
    const auto base = zeta_star_q_direct({2, 1}, q, kEps);
    SeriesOptions more;
    more.term_override = 2 * base.terms_used;
    const auto doubled = zeta_star_q_direct({2, 1}, q, kEps, more);
    CHECK(doubled.partial_sum >= base.partial_sum);
    CHECK(doubled.partial_sum - base.partial_sum < base.tail_bound);
}

TEST_CASE("zhat first terms and the single-block series") {
    for (const auto& qr : kQs) {
        const QPoint q{qr};
        SeriesOptions one;
        one.term_override = 1;
        const auto first = zhat_q({3}, {2}, q, Rational(0), one);
        CHECK(first.partial_sum == qr * qr * (Rational(1) + qr));  // k = 1 term

        SeriesOptions ten;
        ten.term_override = 10;
        const auto bv = zhat_q({3}, {2}, q, Rational(0), ten);
        Rational manual(0);
        for (int k = 1; k <= 10; ++k)
            manual += (Rational(1) + oracle::qpow(qr, k)) *
                      oracle::qpow(qr, static_cast<long>(k) * (k + 1)) *
                      oracle::qint(qr, k).pow(-3);
        CHECK(bv.partial_sum == manual);
    }
    const QPoint q{Rational(1, 2)};
    const auto empty = zhat_q({}, {}, q, kEps);
    CHECK(empty.partial_sum == Rational(1));
    CHECK(empty.tail_bound == Rational(0));
    CHECK_THROWS_AS(zhat_q({3}, {0}, q, kEps), std::invalid_argument);
    CHECK_THROWS_AS(zhat_q({0}, {1}, q, kEps), std::invalid_argument);
    CHECK_THROWS_AS(zhat_q({3, 3}, {2}, q, kEps), std::invalid_argument);
}

TEST_CASE("zbar telescoping closed form at [0; 0]") {
    for (const auto& qr : kQs) {
        const QPoint q{qr};
        for (long K = 1; K <= 50; ++K) {
            SeriesOptions o;
            o.term_override = K;
            const auto bv = zbar_q({0}, {0}, q, Rational(0), o);
            const Rational sign = (K % 2 == 1) ? Rational(1) : Rational(-1);
            CHECK(bv.partial_sum == Rational(1) + sign * qr.pow(K * (K + 1) / 2));
        }
        const auto bv = zbar_q({0}, {0}, q, Rational::parse("1e-30"));
        CHECK(bv.tail_bound <= Rational::parse("1e-30"));
        CHECK((bv.partial_sum - Rational(1)).abs() <= bv.tail_bound);
    }
}

TEST_CASE("zbar against a brute-force prefix") {
    for (const auto& qr : kQs) {
        const QPoint q{qr};
        SeriesOptions o;
        o.term_override = 8;
        const auto bv = zbar_q({3, 2}, {2, 1}, q, Rational(0), o);
        // same truncation, enumerated directly: k_1 > k_2 >= 1, k_1 <= 8
        Rational manual(0);
        oracle::chains(8, 2, true, [&](const std::vector<int>& k) {
            Rational term = oracle::qpow(qr, static_cast<long>(k[0]) * k[0] -
                                                 static_cast<long>(k[1]) * (k[1] - 1) / 2);
            if (k[1] % 2 == 0) term = -term;  // (-1)^{k_m - 1}
            term *= (Rational(1) + oracle::qpow(qr, k[0])) * oracle::qpow(qr, k[0]) *
                    oracle::qint(qr, k[0]).pow(-3);
            term *= (Rational(1) + oracle::qpow(qr, k[1])) * oracle::qpow(qr, 0) *
                    oracle::qint(qr, k[1]).pow(-2);
            manual += term;
        });
        CHECK(bv.partial_sum == manual);
    }
}

TEST_CASE("two-one evaluation agrees with the direct series within combined bounds") {
    const Rational eps = Rational::parse("1e-25");
    for (const auto& qr : kQs) {
        const QPoint q{qr};
        const std::vector<IndexString> strings = {
            IndexString::ends_with_one({1}),     // 2,1
            IndexString::ends_with_one({1, 0}),  // 2,1,1
            IndexString::ends_with_two({2}),     // 2,2
            IndexString::ends_with_two({0, 1}),  // 1,2
        };
        for (const auto& s : strings) {
            const auto via_comps = two_one_eval(s, q, eps);
            const auto direct = zeta_star_q_direct(s.expanded(), q, eps);
            CHECK((via_comps.partial_sum - direct.partial_sum).abs() <=
                  via_comps.tail_bound + direct.tail_bound);
        }
    }
}

TEST_CASE("two-one budgets compose additively across compositions") {
    const QPoint q{Rational(1, 2)};
    const Rational eps = Rational::parse("1e-15");
    const auto s = IndexString::ends_with_one({1, 1});
    const auto total = two_one_eval(s, q, eps);
    const auto comps = enumerate_compositions(s);
    REQUIRE(comps.size() == 2);
    Rational tails(0), partials(0);
    for (const auto& c : comps) {
        const auto bv = zhat_q(c.p, c.p_tilde, q, eps / Rational(2));
        tails += bv.tail_bound;
        partials += bv.partial_sum;
    }
    CHECK(total.tail_bound == tails);
    CHECK(total.tail_bound <= eps);
    CHECK(total.partial_sum == partials);
}

TEST_CASE("tail bounds are sound under term doubling") {
    const Rational eps = Rational::parse("1e-15");
    for (const auto& qr : kQs) {
        const QPoint q{qr};
        const std::vector<IndexString> strings = {IndexString::ends_with_one({1}),
                                                  IndexString::ends_with_two({1})};
        for (const auto& s : strings) {
            const auto direct = zeta_star_q_direct(s.expanded(), q, eps);
            const auto via = two_one_eval(s, q, eps);
            SeriesOptions d1, d2;
            d1.term_override = 2 * direct.terms_used;
            d2.term_override = 2 * via.terms_used;
            const auto direct2 = zeta_star_q_direct(s.expanded(), q, eps, d1);
            const auto via2 = two_one_eval(s, q, eps, d2);
            CHECK((direct2.partial_sum - direct.partial_sum).abs() < direct.tail_bound);
            CHECK((via2.partial_sum - via.partial_sum).abs() < via.tail_bound);
        }
    }
}

TEST_CASE("classical zeta values carry certified error bounds") {
    const auto z3 = classical_zeta(3, Rational::parse("1e-12"));
    CHECK(z3.error_bound <= Rational::parse("1e-12"));
    const Rational apery = Rational::parse("1.20205690315959428539973816151");
    CHECK((z3.value - apery).abs() <= z3.error_bound + Rational::parse("1e-25"));

    const auto z2 = classical_zeta(2, Rational::parse("1e-10"));
    CHECK(z2.error_bound <= Rational::parse("1e-10"));
    const Rational basel = Rational::parse("1.64493406684822643647241516665");
    CHECK((z2.value - basel).abs() <= z2.error_bound + Rational::parse("1e-25"));

    CHECK_THROWS_AS(classical_zeta(1, Rational(1, 100)), std::invalid_argument);
    CHECK_THROWS_AS(classical_zeta(2, Rational::parse("1e-30")), TermCapError);
}

TEST_CASE("limit probe targets and scope") {
    const std::vector<QPoint> qs = {QPoint(Rational(9, 10))};
    const auto pts = limit_probe(IndexString::ends_with_one({1}), qs, Rational::parse("1e-8"),
                                 Rational::parse("1e-12"));
    REQUIRE(pts.size() == 1);
    const Rational two_zeta3 = Rational::parse("2.40411380631918857079947632302");
    CHECK((pts[0].target - two_zeta3).abs() <= pts[0].target_error_bound + Rational::parse("1e-25"));
    CHECK(pts[0].distance == (pts[0].value.partial_sum - pts[0].target).abs());
    CHECK(pts[0].value.tail_bound <= Rational::parse("1e-8"));

    // {2}^1: target 2(1 - 2^{-1}) zeta(2) = zeta(2)
    const auto pts2 = limit_probe(IndexString::ends_with_two({1}), qs, Rational::parse("1e-8"),
                                  Rational::parse("1e-10"));
    const Rational basel = Rational::parse("1.64493406684822643647241516665");
    CHECK((pts2[0].target - basel).abs() <= pts2[0].target_error_bound + Rational::parse("1e-25"));

    CHECK_THROWS_AS(limit_probe(IndexString::ends_with_one({1, 1}), qs, Rational(1, 100)),
                    std::invalid_argument);
    CHECK_THROWS_AS(limit_probe(IndexString::ends_with_one({0}), qs, Rational(1, 100)),
                    std::invalid_argument);
    CHECK_THROWS_AS(limit_probe(IndexString::ends_with_two({1, 1}), qs, Rational(1, 100)),
                    std::invalid_argument);
}
