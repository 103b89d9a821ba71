#include "bratteli/cli.hpp"
#include "bratteli/serialization.hpp"

#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

using bratteli::cli::run;
using bratteli::io::json;

namespace {

std::vector<std::string> words(const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> out;
    for (std::string w; is >> w;) out.push_back(w);
    return out;
}

std::vector<std::string> lines(const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> out;
    for (std::string l; std::getline(is, l);) out.push_back(l);
    return out;
}

std::size_t columns(const std::string& line) { return 1 + std::count(line.begin(), line.end(), ','); }

std::string temp_file(const std::string& name, const std::string& content) {
    std::string path = "/tmp/bratteli_test_" + name;
    std::ofstream(path) << content;
    return path;
}

}  // namespace

TEST_CASE("measure classify reports one finite measure of mass 2") {
    auto r = run(words("measure classify --family ak --a 4 --k 2 --imax 5 --format json"));
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["finiteCount"] == 1);
    CHECK(j["entries"][0]["mass"]["value"] == "2/1");
    auto human = run(words("measure classify --family ak --a 4 --k 2 --imax 5"));
    CHECK(human.out.find("1 finite extension") != std::string::npos);
}

TEST_CASE("classify csv has fixed columns") {
    auto r = run(words("measure classify --family ak --a 5 --k 3 --imax 4 --format csv"));
    REQUIRE(r.exit_code == 0);
    auto ls = lines(r.out);
    REQUIRE(ls.size() == 5);
    CHECK(ls[0] == "i,status,partial_sum,tail_bound,terms_used,normalized_mass");
    for (const auto& l : ls) CHECK(columns(l) == 6);
}

TEST_CASE("diagram heights for the uniform family") {
    auto r = run(words("diagram heights --family nonstat-uniform --an constant:2 --level 3 --format json"));
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    REQUIRE(j["heights"].size() > 0);
    for (const auto& h : j["heights"]) CHECK(h == "27");
}

TEST_CASE("vershik classify with all-middle tags") {
    auto r = run(words("vershik classify --family ak --a 4 --k 2 --tags all-middle --format json"));
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["verdict"]["borelExtension"] == true);
    CHECK(j["verdict"]["homeomorphism"] == "no-quasi-stationary");
    auto order = temp_file("order.json", R"({"kind": "quasiStationary", "tags": {"default": "left"}})");
    auto l = run(words("vershik classify --family ak --a 4 --k 2 --format json --order " + order));
    CHECK(json::parse(l.out)["verdict"]["borelExtension"] == false);
}

TEST_CASE("extension, cylinder and eigen commands") {
    auto e = run(words("measure extend --family decreasing --seq table:5,3|constant:2 --format json"));
    REQUIRE(e.exit_code == 0);
    CHECK(json::parse(e.out)["mass"]["value"] == "7/4");
    auto c = run(words("measure cylinder --family ak --a 4 --k 2 --cyl (3,2) --format json"));
    REQUIRE(c.exit_code == 0);
    CHECK(json::parse(c.out)["cylinders"][0]["result"]["value"] == "1/128");
    auto v = run(words("eigen verify --family ak --a 4 --k 2"));
    CHECK(v.exit_code == 0);
    auto bad = run(words("eigen verify --family ak --a 4 --k 2 --lambda 4 --xi-ratio 1"));
    CHECK(bad.exit_code == 3);
    auto req = temp_file("req.json", R"({"cylinders": [[0, 2], [2, 1]]})");
    auto m = run(words("eigen measure --family ak --a 4 --k 2 --format json --request " + req));
    REQUIRE(m.exit_code == 0);
    json mj = json::parse(m.out);
    CHECK(mj["cylinders"][0]["result"]["value"] == "1/2");
    CHECK(mj["cylinders"][1]["result"]["value"] == "1/16");
    auto cmp = run(words("eigen compare --family ak --a 4 --k 2 --mmax 3 --jmax 3 --format json"));
    REQUIRE(cmp.exit_code == 0);
    CHECK(json::parse(cmp.out)["allEqual"] == true);
}

TEST_CASE("trace csv") {
    auto r = run(words("measure extend --family ak --a 4 --k 2 --max-terms 10 --format csv"));
    REQUIRE(r.exit_code == 0);
    auto ls = lines(r.out);
    CHECK(ls[0] == "n,term,partial_sum");
    CHECK(ls.size() == 11);
}

TEST_CASE("finite classify") {
    auto r = run({"finite", "classify", "--matrix", "[[2,0],[1,3]]", "--format", "json"});
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["measures"].size() == 1);
}

TEST_CASE("vershik orbit trace") {
    auto r = run(words("vershik orbit --family ak --a 4 --k 2 --tags all-right --steps 50 --orbit-levels 6 "
                       "--cyl (1,1) --format csv"));
    REQUIRE(r.exit_code == 0);
    auto ls = lines(r.out);
    CHECK(ls[0] == "step,v1,v2,v3,v4,v5,v6");
    CHECK(ls.size() == 51);
    for (const auto& l : ls) CHECK(columns(l) == 7);
}

TEST_CASE("telescope and diagram show") {
    auto t = run(words("telescope --family ak --a 3 --k 2 --breaks 0,2,4 --max-level 6 --max-vertex 8 --format json"));
    REQUIRE(t.exit_code == 0);
    CHECK(json::parse(t.out)["family"] == "explicit-levels");
    auto s = run(words("diagram show --family increasing --level 5 --max-vertex 4 --format csv"));
    REQUIRE(s.exit_code == 0);
    CHECK(lines(s.out)[0] == "row,col,multiplicity");
}

TEST_CASE("check-invariance") {
    for (const char* m : {"odometer", "extension", "eigen"}) {
        auto r = run(words(std::string("measure check-invariance --family ak --a 4 --k 2 --format json --measure ") + m));
        REQUIRE(r.exit_code == 0);
        CHECK(json::parse(r.out)["passed"] == true);
    }
}

TEST_CASE("run configs") {
    auto cfg = temp_file("config.json", R"({"command": "measure classify",
        "diagram": {"family": "ak", "params": {"a": 4, "k": 3}},
        "options": {"imax": 2, "format": "json"}})");
    auto r = run({"--config", cfg});
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j["entries"].size() == 2);
    CHECK(j["entries"][0]["mass"]["value"] == "3/2");
    auto over = run({"--config", cfg, "--imax", "3"});
    CHECK(json::parse(over.out)["entries"].size() == 3);
    auto unknown = temp_file("bad_config.json", R"({"command": "measure classify", "options": {"colour": 1}})");
    CHECK(run({"--config", unknown}).exit_code == 2);
}

TEST_CASE("exit codes") {
    CHECK(run(words("measure classify --family ak --a 1 --k 2")).exit_code == 2);
    CHECK(run(words("measure classify --family warp")).exit_code == 2);
    CHECK(run(words("measure classify")).exit_code == 2);
    CHECK(run(words("measure explode --family ak --a 4 --k 2")).exit_code == 2);
    CHECK(run(words("vershik classify --family ak --a 4 --k 2 --tags {\"kind\":\"explicit\",\"orders\":[]}")).exit_code == 3);
    CHECK(run(words("measure classify --family nonstat-uniform --an table:2,3 --imax 2")).exit_code == 3);
    auto h = run({"--help"});
    CHECK(h.exit_code == 0);
    CHECK(h.out.find("Usage") != std::string::npos);
}

TEST_CASE("json output is deterministic") {
    auto a = run(words("measure classify --family ak --a 6 --k 3 --imax 4 --format json --parallel"));
    auto b = run(words("measure classify --family ak --a 6 --k 3 --imax 4 --format json"));
    CHECK(a.out == b.out);
}
