#include <catch_amalgamated.hpp>

#include <regex>

#include "support.hpp"

using namespace gpoisson;
using testing::x;

TEST_CASE("sampler engine matches the standard reference value", "[numeric]") {
    // The standard requires the 10000th output of a default-seeded mt19937_64.
    Rng rng(5489u);
    std::uint64_t v = 0;
    for (int i = 0; i < 10000; ++i)
        v = rng.next();
    CHECK(v == 9981545732273789042ull);
}

TEST_CASE("uniform draws stay in range and cover it", "[numeric]") {
    Rng rng(1);
    std::vector<int> counts(7, 0);
    for (int i = 0; i < 7000; ++i) {
        const auto v = rng.uniform(-3, 3);
        REQUIRE(v >= -3);
        REQUIRE(v <= 3);
        ++counts[static_cast<std::size_t>(v + 3)];
    }
    for (int c : counts)
        CHECK((c > 800 && c < 1200));
    CHECK(rng.uniform(4, 4) == 4);
    CHECK_THROWS_AS(rng.uniform(2, 1), input_error);
}

TEST_CASE("equal seeds give equal streams", "[numeric]") {
    auto ctx = make_context(4);
    Rng a(42), b(42), c(43);
    const auto pa = random_polynomial(ctx, a, 3, 4);
    CHECK(pa == random_polynomial(ctx, b, 3, 4));
    CHECK(pa.total_degree() <= 3);
    CHECK(pa.size() <= 4);
    bool differs = false;
    Rng a2(42);
    for (int i = 0; i < 5; ++i)
        differs = differs || random_polynomial(ctx, a2, 3, 4) != random_polynomial(ctx, c, 3, 4);
    CHECK(differs);
}

TEST_CASE("sampled screen on zero and nonzero residuals", "[numeric]") {
    auto ctx = make_context(3);
    const SampleConfig cfg{4, 7, 1000};
    const auto zero = sample_identity_check(Polynomial::zero(ctx), cfg, "z");
    CHECK(zero.passed);
    CHECK_FALSE(zero.required);

    const auto r = sample_identity_check(x(ctx, 1) - x(ctx, 2) + Polynomial::one(ctx), cfg, "nz");
    REQUIRE_FALSE(r.passed);
    CHECK_FALSE(r.required);
    CHECK(std::regex_match(r.witness->location, std::regex(R"(trial 0 at \(-?\d+, -?\d+, -?\d+\))")));
    CHECK(std::regex_match(r.witness->value, std::regex(R"(value = -?\d+)")));

    auto mv = MultiVector<Polynomial>::basis(ctx, {1, 2}, x(ctx, 3) * x(ctx, 3) + Polynomial::one(ctx));
    const auto w = sample_identity_check(mv, cfg);
    REQUIRE_FALSE(w.passed);
    CHECK(w.name == "numeric");
    CHECK(w.witness->value.rfind("e2 e3 = ", 0) == 0);

    CHECK_THROWS_AS(sample_identity_check(mv, SampleConfig{0, 0, 10}), input_error);
    CHECK_THROWS_AS(sample_identity_check(mv, SampleConfig{1, 0, 0}), input_error);
}

TEST_CASE("nonzero low-degree residuals are caught", "[numeric]") {
    // Over 2001^n points a degree-d polynomial vanishes with probability at
    // most d/2001, so four trials miss only with negligible probability.
    auto ctx = make_context(4);
    testing::TestRng rng(3);
    for (std::uint64_t i = 0; i < 50; ++i) {
        const auto p = testing::rand_poly(ctx, rng, 4, 4);
        if (p.is_zero())
            continue;
        CHECK_FALSE(sample_identity_check(p, SampleConfig{4, i, 1000}).passed);
    }
}

TEST_CASE("points at poles are redrawn and counted", "[numeric]") {
    auto ctx = make_context(1);
    const RationalFunction r(Polynomial::one(ctx), x(ctx, 1));
    bool saw_redraw = false;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const auto c = sample_identity_check(r, SampleConfig{1, seed, 1});
        REQUIRE_FALSE(c.passed);
        CHECK(c.witness->location.find("(0)") == std::string::npos);
        if (!c.note.empty()) {
            saw_redraw = true;
            CHECK(std::regex_match(c.note, std::regex(R"(\d+ point\(s\) redrawn at poles)")));
        }
    }
    CHECK(saw_redraw);
}

TEST_CASE("screens on rescaled tensors", "[numeric]") {
    auto ctx = make_context(3);
    const auto h = x(ctx, 1) * x(ctx, 1) + Polynomial::one(ctx);
    const auto inv = RationalFunction(Polynomial::one(ctx), h);
    auto j = MultiVector<RationalFunction>::basis(ctx, {0, 1}, inv);
    // d/dx1 of 1/(x1^2+1) is nonzero away from x1 = 0.
    const auto lie = lie_derivative(VectorField<RationalFunction>::basis(ctx, 0), j);
    CHECK_FALSE(sample_identity_check(lie, SampleConfig{3, 1, 1000}).passed);
    const auto flat = lie_derivative(VectorField<RationalFunction>::basis(ctx, 2), j);
    CHECK(sample_identity_check(flat, SampleConfig{3, 1, 1000}).passed);
}
