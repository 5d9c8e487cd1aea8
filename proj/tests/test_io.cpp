#include <doctest.h>

#include "mukai/error.hpp"
#include "mukai/io.hpp"
#include "support.hpp"

using namespace mukai;

namespace {

std::string message_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.what();
    }
    FAIL("expected an error");
    return {};
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("fixtures load") {
    for (const std::string name : testing::kAllFixtures) {
        CAPTURE(name);
        const auto ctx = testing::fixture(name);
        CHECK(in_positive_cone(ctx, ctx.ample_ref));
        const auto again = parse_surface(surface_to_json(ctx).dump(2));
        CHECK(again.lattice.gram() == ctx.lattice.gram());
        CHECK(again.ample_ref == ctx.ample_ref);
        CHECK(again.lattice.labels() == ctx.lattice.labels());
    }
    const auto exe = testing::fixture("exe");
    CHECK(exe.lattice.labels() == std::vector<std::string>{"E1", "E2", "D"});
}

TEST_CASE("fixture errors are located") {
    const std::string syntax = message_of([] { (void)load_surface(testing::fixture_path("syntax_error")); });
    CHECK(syntax.find("syntax_error.json:4:") != std::string::npos);
    CHECK(message_of([] { (void)parse_surface(R"({"rank": 1, "gram": [[2]]})"); }).find("ample") !=
          std::string::npos);
    CHECK(message_of([] { (void)parse_surface(R"({"rank": 1, "gram": [[2.5]], "ample": [1]})"); })
              .find("gram[0][0]") != std::string::npos);
    CHECK(message_of([] { (void)parse_surface(R"({"rank": 2, "gram": [[2]], "ample": [1]})"); }).find("rank") !=
          std::string::npos);
    CHECK(message_of([] {
              (void)parse_surface(R"({"schema_version": 7, "rank": 1, "gram": [[2]], "ample": [1]})");
          }).find("schema_version") != std::string::npos);
    CHECK(message_of([] {
              (void)parse_surface(R"({"rank": 1, "gram": [[2]], "ample": [1], "cone_model": "cube"})");
          }).find("cone_model") != std::string::npos);
    CHECK_THROWS_AS(load_surface(testing::fixture_path("malformed_gram")), Error);
    CHECK_THROWS_AS(load_surface("/nonexistent/surface.json"), Error);
    const auto round = parse_surface(R"({"rank": 1, "gram": [[2]], "ample": [1], "cone_model": "round-cone"})");
    CHECK(round.cone_model == ConeModel::RoundCone);
}

TEST_CASE("mukai vector strings") {
    CHECK(parse_mukai("6; -5,18,7; 0", 3) == MukaiVector{6, {-5, 18, 7}, 0});
    CHECK(parse_mukai(" 2 ;1; 0 ", 1) == MukaiVector{2, {1}, 0});
    CHECK(format_mukai({6, {-5, 18, 7}, 0}) == "6; -5,18,7; 0");
    CHECK(parse_divisor("(2, 5, 0)", 3) == DivisorClass{2, 5, 0});
    CHECK(format_divisor(DivisorClass{2, 5, 0}) == "2,5,0");
    CHECK(parse_integer_list("2,2,0") == std::vector<Integer>{2, 2, 0});
    CHECK_THROWS_AS(parse_mukai("6; -5,18; 0", 3), Error);
    CHECK_THROWS_AS(parse_mukai("6; -5,18,7", 3), Error);
    CHECK(message_of([] { (void)parse_mukai("6; -5,x,7; 0", 3); }).find("column") != std::string::npos);
    CHECK(message_of([] { (void)parse_integer_list("1,,2"); }).find("column") != std::string::npos);

    for (int i = 0; i < 500; ++i) {
        const std::size_t rank = static_cast<std::size_t>(testing::uniform(1, 4));
        MukaiVector v = testing::random_mukai(rank, 1000);
        if (i % 5 == 0) v.a *= Integer("123456789012345678901234567890");
        CHECK(parse_mukai(format_mukai(v), rank) == v);
    }
}

TEST_CASE("json integers") {
    CHECK(to_json(Integer(42)) == nlohmann::json(42));
    CHECK(to_json(Integer(-7)) == nlohmann::json(-7));
    const Integer big("-340282366920938463463374607431768211456");
    CHECK(to_json(big) == nlohmann::json("-340282366920938463463374607431768211456"));
    CHECK(to_json(CohomologyProfile{1, 1, 0}) == nlohmann::json::array({1, 1, 0}));
}

}  // TEST_SUITE
