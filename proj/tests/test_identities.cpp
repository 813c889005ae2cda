#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sk/identities.hpp"

using namespace sk;

TEST_CASE("named evaluations from the summation table") {
    CHECK(verify_identity("vandermonde", {{"m", 3}, {"r", 2}, {"s", 2}}).holds);
    CHECK(verify_identity("vandermonde", {{"m", 2}, {"r", 1}, {"s", 2}}).holds);
    CHECK(verify_identity("linear_sigma", {{"m", 3}, {"r", 2}, {"s", 2}, {"l", 1}}).holds);
    CHECK(verify_identity("extended_vandermonde", {{"m", 4}, {"p", 2}}).holds);
    CHECK(verify_identity("higher_vandermonde", {{"m", 3}, {"r", 2}, {"k", 2}}).holds);
    CHECK(verify_identity("negative_vandermonde", {{"m", 3}, {"s", 1}}).holds);
    CHECK(verify_identity("negative_vandermonde_sq", {{"m", 3}}).holds);
    CHECK(verify_identity("shifted_inverse", {{"m", 3}}).holds);
    CHECK(verify_identity("shifted_inverse_sq", {{"m", 3}}).holds);
    CHECK(verify_identity("shifted_power", {{"m", 4}, {"s", 2}}).holds);
    CHECK(verify_identity("shifted_power_top", {{"m", 3}}).holds);
    CHECK(verify_identity("sigma_shift", {{"m", 3}, {"r", 1}, {"s", 2}, {"shift", 3}}).holds);
    CHECK(verify_identity("funny_product", {{"d", 4}}).holds);
    CHECK(verify_identity("delta_log", {{"d", 4}}).holds);
    CHECK(verify_identity("pre_vandermonde", {{"m", 3}}).holds);
    CHECK(verify_identity("block_sum", {{"m", 3}, {"d", 2}}).holds);
    CHECK(verify_identity("block_sum_top", {{"d", 2}}).holds);
}

TEST_CASE("unknown names are rejected") {
    CHECK_THROWS_AS(verify_identity("nope", {}), DomainError);
    CHECK_THROWS_AS(verify_identity("vandermonde", {{"m", 3}}), DomainError);  // missing r, s
}

TEST_CASE("small grid is all green") {
    auto results = run_identity_grid(3);
    int failed = 0;
    for (const auto& r : results) {
        if (!r.holds) {
            ++failed;
            MESSAGE(r.name);
        }
    }
    CHECK(failed == 0);
    CHECK(results.size() > 100);
}
