#include "bratteli/error.hpp"
#include "bratteli/vershik.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

using namespace bratteli;
using namespace bratteli::vershik;

namespace {

OrderSpec all(OrderTag t) {
    TagRule r;
    r.fallback = t;
    return QuasiStationary{r};
}

std::vector<std::pair<bool, std::size_t>> key(const TruncatedPath& p) {
    std::vector<std::pair<bool, std::size_t>> k{{false, p.start}};
    for (const auto& s : p.steps) k.push_back({s.diagonal, s.diagonal ? 0 : s.copy});
    return k;
}

TruncatedPath random_path(std::mt19937& rng, const DiagramSpec& spec, std::size_t L, std::size_t end) {
    std::vector<Step> rev;
    std::size_t v = end;
    for (std::size_t n = L; n-- > 0;) {
        std::size_t a = spec.diag(n, v).get_ui();
        std::size_t c = rng() % (a + 1);
        if (c == 0) {
            rev.push_back({true, 1});
            ++v;
        } else {
            rev.push_back({false, c});
        }
    }
    return {v, {rev.rbegin(), rev.rend()}};
}

}  // namespace

TEST_CASE("canonical orders and tags") {
    auto l = VertexOrder::canonical(OrderTag::Left), r = VertexOrder::canonical(OrderTag::Right),
         m = VertexOrder::canonical(OrderTag::Middle);
    CHECK(l.position(EdgeRef{0}, 3) == 0);
    CHECK(r.position(EdgeRef{0}, 3) == 3);
    CHECK(m.position(EdgeRef{0}, 3) == 1);
    CHECK(m.at_position(0, 3) == EdgeRef{1});
    auto p = VertexOrder::permutation({2, 0, 1});
    CHECK(p.tag() == OrderTag::Middle);
    CHECK(VertexOrder::permutation({0, 2, 1}).tag() == OrderTag::Left);
    CHECK(VertexOrder::permutation({1, 2, 0}).tag() == OrderTag::Right);
    CHECK_THROWS_AS(VertexOrder::permutation({0, 0, 1}), ConfigError);
}

TEST_CASE("odometer classification from tags") {
    auto spec = DiagramSpec::stationary_ak(4, 2);
    auto m = classify_odometer(spec, all(OrderTag::Middle), 3);
    CHECK(m.finite_right == Tristate::Yes);
    CHECK(m.finite_left == Tristate::Yes);
    auto r = classify_odometer(spec, all(OrderTag::Right), 2);
    CHECK(r.finite_right == Tristate::No);
    CHECK(r.finite_left == Tristate::Yes);
    auto l = classify_odometer(spec, all(OrderTag::Left), 2);
    CHECK(l.finite_right == Tristate::Yes);
    CHECK(l.finite_left == Tristate::No);
    ExplicitOrder ex;
    ex.orders.emplace(VertexId{1, 1}, VertexOrder::canonical(OrderTag::Left));
    auto u = classify_odometer(spec.with_window({10, 10}), ex, 1);
    CHECK(u.finite_right == Tristate::Unknown);
    CHECK(u.finite_left == Tristate::Unknown);
    CHECK_FALSE(u.caveat.empty());
}

TEST_CASE("extension verdicts for fixed tag patterns") {
    auto spec = DiagramSpec::stationary_ak(4, 2);
    auto l = extension_verdict(spec, all(OrderTag::Left), 6);
    CHECK(l.fr.aleph0);
    CHECK(l.fl.empty());
    CHECK_FALSE(l.borel);
    CHECK(l.homeomorphism == Homeomorphism::No);
    TagRule alt;
    alt.pattern = {OrderTag::Left, OrderTag::Right};
    auto a = extension_verdict(spec, QuasiStationary{alt}, 6);
    CHECK(a.fr.aleph0);
    CHECK(a.fl.aleph0);
    CHECK(a.borel);
    CHECK(a.homeomorphism == Homeomorphism::NoQuasiStationary);
    CHECK(a.fr_witness == std::vector<std::size_t>{1, 3, 5});
    auto m = extension_verdict(spec, all(OrderTag::Middle), 4);
    CHECK(m.borel);
    CHECK(m.homeomorphism == Homeomorphism::NoQuasiStationary);
    CHECK_THROWS_AS(extension_verdict(spec, ExplicitOrder{}, 4), ConfigError);
}

TEST_CASE("finite tag tables give finite cardinals") {
    auto spec = DiagramSpec::stationary_ak(4, 2);
    TagRule r;
    r.fallback = OrderTag::Middle;
    r.table = {{1, OrderTag::Left}, {2, OrderTag::Left}};
    auto v = extension_verdict(spec, QuasiStationary{r}, 5);
    CHECK(v.fr.aleph0);
    CHECK(v.fl.aleph0);
    CHECK(v.fl_witness == std::vector<std::size_t>{3, 4, 5});
}

TEST_CASE("exception tables do not change the verdict") {
    auto spec = DiagramSpec::stationary_ak(4, 2);
    TagRule alt;
    alt.pattern = {OrderTag::Left, OrderTag::Right};
    EventuallyQuasiStationary e;
    e.tags = alt;
    e.exceptions.emplace(VertexId{1, 1}, VertexOrder::canonical(OrderTag::Middle));
    e.exceptions.emplace(VertexId{2, 2}, VertexOrder::permutation({0, 1, 2}));
    auto a = extension_verdict(spec, QuasiStationary{alt}, 6);
    auto b = extension_verdict(spec, e, 6);
    CHECK(a.fr == b.fr);
    CHECK(a.fl == b.fl);
    CHECK(a.borel == b.borel);
    CHECK(a.homeomorphism == b.homeomorphism);
}

TEST_CASE("successor advances only x_0 when it is not maximal") {
    auto spec = DiagramSpec::stationary_ak(3, 2, {4, 8});
    auto order = all(OrderTag::Right);
    TruncatedPath p{1, {{false, 1}, {false, 2}, {false, 3}}};
    auto s = successor(spec, order, p);
    REQUIRE(std::holds_alternative<TruncatedPath>(s));
    auto q = std::get<TruncatedPath>(s);
    CHECK(q.steps[0] == Step{false, 2});
    CHECK(q.steps[1] == p.steps[1]);
    CHECK(q.steps[2] == p.steps[2]);
}

TEST_CASE("successor moves into the diagonal edge and resets the prefix") {
    auto spec = DiagramSpec::stationary_ak(3, 2, {4, 8});
    auto order = all(OrderTag::Right);
    // x_0 is e_3, the maximal vertical edge at (1,1); f sits above it
    TruncatedPath p{1, {{false, 3}, {false, 1}, {false, 1}}};
    auto q = std::get<TruncatedPath>(successor(spec, order, p));
    CHECK(q.steps[0].diagonal);
    CHECK(q.start == 2);
    CHECK(q.steps[1] == p.steps[1]);
    // all-maximal: f at every level
    TruncatedPath top{4, {{true, 1}, {true, 1}, {true, 1}}};
    CHECK(std::holds_alternative<AllMaximalPrefix>(successor(spec, order, top)));
}

TEST_CASE("successor is injective and resets to minimal prefixes") {
    std::mt19937 rng(17);
    auto spec = DiagramSpec::stationary_ak(5, 2, {5, 12});
    for (auto order : {all(OrderTag::Right), all(OrderTag::Left), all(OrderTag::Middle)}) {
        std::set<std::vector<std::pair<bool, std::size_t>>> inputs, outputs;
        for (int t = 0; t < 300; ++t) {
            auto p = random_path(rng, spec, 5, 1 + rng() % 3);
            if (!inputs.insert(key(p)).second) continue;
            auto s = successor(spec, order, p);
            if (!std::holds_alternative<TruncatedPath>(s)) continue;
            auto q = std::get<TruncatedPath>(s);
            validate_path(spec, q);
            CHECK(outputs.insert(key(q)).second);
            // the advanced edge is the last one that changed
            std::size_t m = p.steps.size();
            while (m-- > 0 && p.steps[m] == q.steps[m]) {
            }
            for (std::size_t n = 0; n < m; ++n) CHECK(edge_position(spec, order, q, n) == 0);
        }
    }
}

TEST_CASE("minimal paths are minimal at every level") {
    auto spec = DiagramSpec::stationary_ak(4, 2, {8, 12});
    for (auto order : {all(OrderTag::Right), all(OrderTag::Left)}) {
        auto p = minimal_path(spec, order, 6, 2);
        CHECK(p.vertex(6) == 2);
        for (std::size_t n = 0; n < 6; ++n) CHECK(edge_position(spec, order, p, n) == 0);
    }
}

TEST_CASE("orbit frequencies") {
    auto spec = DiagramSpec::stationary_ak(4, 2, {12, 16});
    auto order = all(OrderTag::Right);
    auto start = minimal_path(spec, order, 10, 1);
    auto zero = orbit_frequencies(spec, order, start, 0, {EndVertex{1, 1}});
    CHECK(zero.rows[0].empirical == 0);
    auto rep = orbit_frequencies(spec, order, start, 20000, {EndVertex{1, 1}, EndVertex{1, 12}}, 5);
    CHECK(rep.visited == 20000);
    CHECK(rep.trace.size() == 5);
    CHECK(rep.rows[0].multiplicity == 5);  // four vertical edges and f
    CHECK(std::abs(rep.rows[0].empirical - 0.125) < 0.03);
    CHECK(rep.rows[1].visits == 0);
}
