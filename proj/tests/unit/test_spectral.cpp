#include "bratteli/error.hpp"
#include "bratteli/spectral.hpp"

#include <doctest.h>

using namespace bratteli;

namespace {

Sequence seq(const char* s) { return parse_sequence_shorthand(s); }

const Truncation rows100{2, 101};

}  // namespace

TEST_CASE("AK eigenvector entries") {
    auto p = eigenvector_ak(4, 2);
    CHECK(p.lambda == 4);
    CHECK(p.at(1) == 1);
    CHECK(p.at(2) == Rational(1, 2));
    CHECK(p.at(3) == Rational(1, 4));
    auto one = eigenvector_ak(3, 1);
    CHECK(one.lambda == 3);
    for (std::size_t i = 1; i <= 10; ++i) CHECK(one.at(i) == 1);
    CHECK_THROWS_AS(eigenvector_ak(3, 3), ConfigError);
}

TEST_CASE("AK eigenpairs verify on rows 1..100") {
    for (auto [a, k] : {std::pair{4L, 2L}, {3L, 1L}, {7L, 3L}, {10L, 8L}, {6L, 1L}}) {
        auto spec = DiagramSpec::stationary_ak(a, k);
        auto rep = verify_eigenpair(spec, eigenvector_ak(a, k), rows100);
        CHECK(rep.rows_checked >= 100);
        CHECK(rep.verified());
    }
}

TEST_CASE("row 2 of A xi for AK") {
    auto spec = DiagramSpec::stationary_ak(4, 2);
    auto p = eigenvector_ak(4, 2);
    auto rep = verify_eigenpair(spec, p, rows100);
    // xi_1 + (a-k) xi_2 = a xi_2
    CHECK(p.at(1) + 2 * p.at(2) == 4 * p.at(2));
    CHECK(rep.residuals[1] == 0);
}

TEST_CASE("the all-ones vector fails on AK(4,2)") {
    auto spec = DiagramSpec::stationary_ak(4, 2);
    EigenPair ones{4, GeometricXi{1}, 1};
    auto rep = verify_eigenpair(spec, ones, rows100);
    CHECK_FALSE(rep.verified());
    CHECK(rep.residuals[1] == -1);
    CHECK_THROWS_AS(eigen_measure(spec, ones), CertificationError);
}

TEST_CASE("decreasing eigenvectors") {
    auto p = eigenvector_decreasing(seq("table:5,3|constant:2"), 1);
    CHECK(p.lambda == 5);
    CHECK(p.at(2) == Rational(1, 2));
    CHECK(p.at(3) == Rational(1, 6));
    CHECK(p.at(4) == Rational(1, 18));
    auto s = eigenvector_decreasing(seq("table:6,4,3|constant:2"), 2);
    CHECK(s.lambda == 4);
    CHECK(s.at(1) == 0);
    CHECK(s.at(2) == 1);
    CHECK(s.at(3) == 1);
    CHECK(s.at(4) == Rational(1, 2));
    CHECK(s.at(5) == Rational(1, 4));
    CHECK_THROWS_AS(eigenvector_decreasing(seq("table:5,4|constant:4"), 2), ConfigError);
    for (const char* t : {"table:5,3|constant:2", "table:6,4,3|constant:2", "table:9,5,4,3|constant:2",
                          "table:4|constant:2", "table:8,7,6,5|constant:3"}) {
        auto spec = DiagramSpec::stationary_decreasing(seq(t));
        CHECK(verify_eigenpair(spec, eigenvector_decreasing(seq(t), 1), rows100).verified());
    }
    auto spec = DiagramSpec::stationary_decreasing(seq("table:6,4,3|constant:2"));
    CHECK(verify_eigenpair(spec, s, rows100).verified());
}

TEST_CASE("eigen measure cylinders") {
    auto spec = DiagramSpec::stationary_ak(4, 2);
    auto mu = eigen_measure(spec, eigenvector_ak(4, 2));
    CHECK(cylinder_measure(mu, EndVertex{0, 2}).exact_value == Rational(1, 2));
    CHECK(cylinder_measure(mu, EndVertex{0, 1}).exact_value == Rational(1));
    for (std::size_t m = 0; m < 6; ++m)
        CHECK(cylinder_measure(mu, EndVertex{m, 1}).exact_value == Rational(BigInt(1), ipow(BigInt(4), m)));
}

TEST_CASE("eigen measures are tail invariant and scale linearly") {
    auto spec = DiagramSpec::stationary_ak(5, 3, {6, 10});
    auto mu = eigen_measure(spec, eigenvector_ak(5, 3));
    CHECK(check_tail_invariance(spec, eigen_vectors(mu, 6, 10), spec.window()).passed());
    auto scaled = eigen_measure(spec, eigenvector_ak(5, 3).scaled(Rational(3, 7)));
    for (std::size_t m = 0; m < 4; ++m)
        for (std::size_t j = 1; j < 5; ++j)
            CHECK(*cylinder_measure(scaled, EndVertex{m, j}).exact_value ==
                  Rational(3, 7) * *cylinder_measure(mu, EndVertex{m, j}).exact_value);
    auto dec = DiagramSpec::stationary_decreasing(seq("table:6,4,3|constant:2"), {6, 10});
    auto md = eigen_measure(dec, eigenvector_decreasing(seq("table:6,4,3|constant:2"), 2));
    CHECK(check_tail_invariance(dec, eigen_vectors(md, 6, 10), dec.window()).passed());
}

TEST_CASE("eigen measure equals the AK extension") {
    auto spec = DiagramSpec::stationary_ak(4, 2);
    std::vector<EndVertex> grid;
    for (std::size_t m = 0; m <= 5; ++m)
        for (std::size_t j = 1; j <= 5; ++j) grid.push_back({m, j});
    auto rep = compare_eigen_vs_extension(spec, 1, eigenvector_ak(4, 2), grid);
    CHECK(rep.all_equal());
    for (const auto& r : rep.rows)
        CHECK(r.eigen_value == Rational(BigInt(1), BigInt(ipow(BigInt(2), r.cylinder.index - 1) *
                                                          ipow(BigInt(4), r.cylinder.length))));
}

TEST_CASE("eigen measure equals the decreasing extension") {
    auto a = seq("table:5,3|constant:2");
    auto spec = DiagramSpec::stationary_decreasing(a);
    std::vector<EndVertex> cyl;
    for (std::size_t m = 0; m <= 4; ++m) cyl.push_back({m, 2});
    auto rep = compare_eigen_vs_extension(spec, 1, eigenvector_decreasing(a, 1), cyl);
    CHECK(rep.all_equal());
    for (const auto& r : rep.rows)
        CHECK(r.eigen_value == Rational(BigInt(1), BigInt(2 * ipow(BigInt(5), r.cylinder.length))));
}

TEST_CASE("k = 1: finite cylinder values with infinite total mass") {
    auto spec = DiagramSpec::stationary_ak(3, 1);
    std::vector<EndVertex> cyl;
    for (std::size_t m = 0; m <= 3; ++m)
        for (std::size_t j = 1; j <= 3; ++j) cyl.push_back({m, j});
    auto rep = compare_eigen_vs_extension(spec, 1, eigenvector_ak(3, 1), cyl);
    CHECK(rep.all_equal());
    CHECK(dio_extension_mass(spec, 1).infinite());
}

TEST_CASE("a wrong eigen value is reported as not equal") {
    auto spec = DiagramSpec::stationary_ak(4, 2);
    EigenPair half{4, GeometricXi{Rational(1, 2)}, Rational(1, 2)};
    auto rep = compare_eigen_vs_extension(spec, 1, half, {{0, 1}, {1, 2}});
    CHECK(rep.count(Agreement::NotEqual) == 2);
}
