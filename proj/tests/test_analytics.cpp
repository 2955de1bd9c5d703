#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pcnet/analytics.hpp"

#include <sstream>

using namespace pcnet;

TEST_CASE("ndt_new corner values") {
    CHECK(ndt_new(5, 3, Rat(2, 3), Rat(1, 5)) == Rat(4, 5));
    CHECK(ndt_new(10, 5, Rat(1, 5), Rat(1, 5)) == Rat(2));
    CHECK(ndt_new(7, 3, Rat(1, 3), Rat(1)) == Rat(0));
    CHECK_THROWS_AS(ndt_new(10, 6, Rat(1, 3), Rat(1, 3)), std::invalid_argument);
    CHECK_THROWS_AS(ndt_new(6, 4, Rat(1, 3), Rat(1, 2)), std::invalid_argument);
}

TEST_CASE("ndt_xtz corner formulas") {
    CHECK(ndt_xtz_corner(10, 5, Rat(1, 5), 1) == Rat(26, 25));
    CHECK(ndt_xtz_corner(5, 3, Rat(2, 3), 1) == Rat(2, 3));
    CHECK(ndt_xtz_corner(5, 3, Rat(2, 3), 0) == Rat(3, 2));
    CHECK_THROWS_AS(ndt_xtz_corner(5, 3, Rat(1, 2), 0), std::invalid_argument);
}

TEST_CASE("memory sharing reproduces the worked example's baseline") {
    CHECK(ndt_xtz(5, 3, Rat(2, 3), Rat(1, 5)) == Rat(1));
    CHECK(ndt_xtz(10, 6, Rat(1, 3), Rat(2, 5)) == Rat(21, 25));  // 0.84
    CHECK(ndt_xtz(5, 3, Rat(2, 3), Rat(1)) == Rat(0));
}

TEST_CASE("XTZ subpacketization branches") {
    CHECK(subpack_xtz(10, 5, Rat(1, 5), Rat(1, 5)) == BigInt(25));
    CHECK(subpack_xtz(10, 6, Rat(1, 3), Rat(1, 3)) == BigInt(180));
    CHECK(subpack_xtz(100, 50, Rat(1, 5), Rat(1, 5)) ==
          binomial(50, 10) * binomial(39, 9) * 40);
    CHECK(!subpack_xtz(10, 5, Rat(1, 7), Rat(1, 5)).has_value());
}

TEST_CASE("new-scheme subpacketizations at Table IV row 1") {
    SchemeSubpacks s = subpack_new(10, 5, Rat(1, 5), Rat(1, 5));
    CHECK(s.s1 == BigInt(50));
    CHECK(!s.s2.has_value());
    CHECK(s.s3 == BigInt(25));
    CHECK(s.s4 == BigInt(100));
}

TEST_CASE("regime classification") {
    CHECK(classify_regime(10, 6, Rat(1, 2), Rat(1, 2)) == Regime::EqualOptimal);
    CHECK(classify_regime(10, 6, Rat(1, 3), Rat(2, 5)) == Regime::NewSmaller);
    CHECK(classify_regime(10, 5, Rat(1, 5), Rat(1, 5)) == Regime::XtzSmaller);
    CHECK(classify_regime(12, 6, Rat(1, 3), Rat(1, 6)) == Regime::Equal);
    CHECK(classify_regime(5, 1, Rat(1), Rat(0)) == Regime::Unclassified);
}

TEST_CASE("DoF bound") {
    CHECK(dof_upper_bound(5, 3, Rat(2, 3), Rat(1, 5)) == Rat(5));
    CHECK(dof_upper_bound(5, 3, Rat(2, 3), Rat(1)) == Rat(5));
    CHECK(dof_upper_bound(10, 5, Rat(1, 5), Rat(1, 5)) == Rat(4));
}

TEST_CASE("mu + mt >= 1 corner points are optimal for both schemes") {
    for (long L = 2; L <= 6; ++L)
        for (long K = L; K <= 12; ++K)
            for (long p = 1; p <= L; ++p)
                for (long zq = 0; zq <= K; ++zq) {
                    Rat mt(p, L), mu(zq, K);
                    if (mu + mt < Rat(1)) continue;
                    CHECK(ndt_new(K, L, mt, mu) == Rat(1) - mu);
                    CHECK(ndt_xtz(K, L, mt, mu) == Rat(1) - mu);
                }
}

TEST_CASE("ndt_new is non-increasing in mu") {
    for (long z = 0; z < 10; ++z)
        CHECK(ndt_new(10, 5, Rat(2, 5), Rat(z, 10)) >= ndt_new(10, 5, Rat(2, 5), Rat(z + 1, 10)));
}

TEST_CASE("sweep covers the figure grid with consistent regimes") {
    std::vector<Rat> mus;
    for (long z = 0; z <= 10; ++z) mus.emplace_back(z, 10);
    auto recs = sweep(10, 6, {Rat(1, 2)}, mus);
    REQUIRE(recs.size() == 11);
    for (const auto& r : recs) {
        if (r.mu <= Rat(1, 2)) CHECK(r.tau_new <= r.tau_xtz);
        if (r.mu >= Rat(1, 2)) {
            CHECK(r.tau_new == r.tau_xtz);
            CHECK(r.tau_new == Rat(1) - r.mu);
        }
        switch (r.regime) {
            case Regime::NewSmaller: CHECK(r.tau_new < r.tau_xtz); break;
            case Regime::XtzSmaller: CHECK(r.tau_xtz < r.tau_new); break;
            case Regime::Equal:
            case Regime::EqualOptimal: CHECK(r.tau_new == r.tau_xtz); break;
            default: break;
        }
    }
}

TEST_CASE("CSV emission is RFC-4180 shaped") {
    auto recs = sweep(10, 5, {Rat(1, 5)}, {Rat(0), Rat(1, 5)});
    std::string csv = records_to_csv(recs);
    CHECK(csv.rfind("K,L,mt,mu,tau_new,tau_xtz,", 0) == 0);
    size_t lines = 0, pos = 0;
    while ((pos = csv.find("\r\n", pos)) != std::string::npos) {
        ++lines;
        pos += 2;
    }
    CHECK(lines == 3);  // header + 2 records
    CHECK(csv.find("xtz-smaller") != std::string::npos);
}

TEST_CASE("JSON keeps exact big integers as strings") {
    ComparisonRecord rec = compare_point(100, 50, Rat(1, 5), Rat(1, 5));
    std::string j = record_to_json(rec);
    CHECK(j.find((binomial(50, 10) * binomial(39, 9) * 40).str()) != std::string::npos);
    CHECK(j.find("\"tau_new\": \"2\"") != std::string::npos);
}

TEST_CASE("regime prediction matches exact ordering on a broad corner sweep") {
    for (long K = 2; K <= 14; ++K)
        for (long L = 2; L <= K; ++L)
            for (long p = 1; p <= L; ++p)
                for (long q = 0; q <= L; ++q) {
                    if ((K * q) % L != 0) continue;  // tau_new needs K*mu integral
                    Rat mt(p, L), mu(q, L);
                    Rat tn = ndt_new(K, L, mt, mu);
                    Rat tx = ndt_xtz(K, L, mt, mu);
                    switch (classify_regime(K, L, mt, mu)) {
                        case Regime::EqualOptimal:
                        case Regime::Equal: CHECK(tn == tx); break;
                        case Regime::NewSmaller:
                            if (mu < Rat(1)) CHECK(tn < tx);
                            break;
                        case Regime::XtzSmaller:
                            // ties occur, e.g. K=3, L=2, mt=1/2, mu=0
                            if (mu < Rat(1)) CHECK(tx <= tn);
                            break;
                        default: CHECK(false); break;
                    }
                }
}
