#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "sk/cli.hpp"
#include "sk/io.hpp"
#include "support.hpp"

using namespace sk;

namespace {

std::filesystem::path data_dir() {
    // tests run from the build tree; the fixtures live next to the sources
    return std::filesystem::path(SK_DATA_DIR);
}

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("rational wire format") {
    CHECK(rational_from_json(rational_to_json(Rational(-22, 7))) == Rational(-22, 7));
    CHECK(rational_to_json(Rational(5)).get<std::string>() == "5");
    CHECK(rational_from_json(Json("3/4")) == Rational(3, 4));
    CHECK_THROWS_AS(rational_from_json(Json("x")), DomainError);
}

TEST_CASE("polynomial and profile round trips") {
    MPoly p = sk::testing::xv(1, 1).pow(3) + (2 * (sk::testing::xv(2, 1) * sk::testing::xv(1, 1))) -
              MPoly::constant(Rational(1, 3));
    CHECK(mpoly_from_json(mpoly_to_json(p)) == p);
    UniRational u(VarId{2, 1}, UniPoly({1, 0, Rational(-3, 2)}), {{LinFactor{1, 2}, 2}});
    CHECK(unirational_from_json(unirational_to_json(u)) == u);
}

TEST_CASE("structure and geometry round trips") {
    auto fs = FactorizationStructure::two_point(Partition{{1, 1, 2}}, 1, 1);
    auto back = structure_from_json(structure_to_json(fs));
    CHECK(back == fs);
    auto shorthand = structure_from_json(Json{{"kind", "veronese"}, {"m", 3}});
    CHECK(shorthand.is_veronese());
    CHECK(shorthand.m() == 3);

    std::ifstream in(data_dir() / "veronese2_ambitoric.json");
    REQUIRE(in.good());
    Json j;
    in >> j;
    GeometrySpec g = geometry_from_json(j);
    Json again = geometry_to_json(g);
    CHECK(geometry_from_json(again).profiles == g.profiles);
}

TEST_CASE("every example file in the repository validates") {
    int seen = 0;
    for (const auto& entry : std::filesystem::directory_iterator(data_dir())) {
        if (entry.path().extension() != ".json") continue;
        ++seen;
        auto r = cli({"validate", entry.path().string()});
        CAPTURE(entry.path().string());
        CHECK(r.code == 0);
        CHECK(Json::parse(r.out).at("valid").get<bool>());
    }
    CHECK(seen >= 4);
}

TEST_CASE("validate reports the structure dimension") {
    auto r = cli({"validate", (data_dir() / "product_sv_3.json").string()});
    REQUIRE(r.code == 0);
    Json j = Json::parse(r.out);
    CHECK(j.at("valid") == true);
    CHECK(j.at("dimension") == 4);
}

TEST_CASE("extremal verdict on the shipped instances") {
    for (const char* name : {"veronese2_ambitoric.json", "two_point_4.json", "segre2_twisted.json"}) {
        auto r = cli({"extremal", (data_dir() / name).string()});
        CAPTURE(name);
        REQUIRE(r.code == 0);
        Json j = Json::parse(r.out);
        CHECK(j.at("extremal") == true);
        CHECK(j.contains("alpha"));
    }
}

TEST_CASE("curvature verb reports both the curvature and the verdict") {
    auto r = cli({"curvature", (data_dir() / "veronese2_ambitoric.json").string()});
    REQUIRE(r.code == 0);
    Json j = Json::parse(r.out);
    CHECK(j.contains("scal"));
    CHECK(j.at("extremal") == true);
}

TEST_CASE("solve emits serialized families") {
    auto r = cli({"solve", (data_dir() / "product_sv_3.json").string()});
    REQUIRE(r.code == 0);
    Json j = Json::parse(r.out);
    REQUIRE(j.at("families").size() == 1);
    CHECK(j.at("families").at(0).at("case") == "product_sv.1");
}

TEST_CASE("identities subcommand with a small grid") {
    auto r = cli({"identities", "--grid", "m<=2"});
    CHECK(r.code == 0);
    Json j = Json::parse(r.out);
    CHECK(j.at("failures").empty());
    CHECK(j.at("total") == j.at("passed"));
}

TEST_CASE("oracle subcommand summarizes the comparison") {
    auto r = cli({"oracle", (data_dir() / "segre2_twisted.json").string(), "--points", "4", "--seed", "3"});
    REQUIRE(r.code == 0);
    Json j = Json::parse(r.out);
    CHECK(j.at("points") == 4);
    CHECK(j.at("maxRelErr").get<double>() < 1e-3);
}

TEST_CASE("transform round trips byte-identically") {
    namespace fs = std::filesystem;
    auto tmp1 = fs::temp_directory_path() / "sk_fwd.json";
    auto tmp2 = fs::temp_directory_path() / "sk_back.json";
    auto r1 = cli({"transform", (data_dir() / "veronese2_ambitoric.json").string(), "--matrices",
                   "[[[\"1\",\"1\"],[\"1\",\"2\"]]]", "--out", tmp1.string()});
    REQUIRE(r1.code == 0);
    // inverse of [[1,1],[1,2]] is [[2,-1],[-1,1]]
    auto r2 = cli({"transform", tmp1.string(), "--matrices", "[[[\"2\",\"-1\"],[\"-1\",\"1\"]]]", "--out",
                   tmp2.string()});
    REQUIRE(r2.code == 0);
    auto canon = [](const fs::path& p) {
        std::ifstream in(p);
        Json j;
        in >> j;
        return j.dump();
    };
    std::ifstream orig_in(data_dir() / "veronese2_ambitoric.json");
    Json orig;
    orig_in >> orig;
    CHECK(canon(tmp2) == orig.dump());
    fs::remove(tmp1);
    fs::remove(tmp2);
}

TEST_CASE("exit codes distinguish parse and domain failures") {
    auto missing = cli({"validate", "/nonexistent/file.json"});
    CHECK(missing.code == 2);
    // invalid structure: three generic line tensors
    namespace fs = std::filesystem;
    auto tmp = fs::temp_directory_path() / "sk_invalid.json";
    Json bad{{"partition", {1, 1, 1}},
             {"gammas",
              Json::array({Json{{"excluded", 1},
                                {"coeffs", Json::array({Json{{"degrees", {0, 0}}, {"c", "1"}},
                                                        Json{{"degrees", {1, 1}}, {"c", "1"}}})}},
                           Json{{"excluded", 2},
                                {"coeffs", Json::array({Json{{"degrees", {0, 0}}, {"c", "1"}},
                                                        Json{{"degrees", {1, 0}}, {"c", "2"}}})}},
                           Json{{"excluded", 3},
                                {"coeffs", Json::array({Json{{"degrees", {0, 1}}, {"c", "1"}},
                                                        Json{{"degrees", {1, 1}}, {"c", "3"}}})}}})}};
    std::ofstream(tmp) << bad.dump();
    auto r = cli({"validate", tmp.string()});
    CHECK(r.code == 1);
    Json j = Json::parse(r.out);
    CHECK(j.at("valid") == false);
    CHECK(j.at("rank").get<int>() > 4);
    fs::remove(tmp);
}
