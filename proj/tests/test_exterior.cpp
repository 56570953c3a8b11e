#include <catch_amalgamated.hpp>

#include "support.hpp"

using namespace gpoisson;
using testing::d;
using testing::x;

namespace {

using MV = MultiVector<Polynomial>;

MV from_super(const ContextPtr& ctx, const testing::Super& s, std::size_t degree) {
    MV out(ctx, degree);
    for (const auto& [idx, c] : s)
        out.add_term(mask::from_indices(idx), c);
    return out;
}

}  // namespace

TEST_CASE("canonical form sorts with sign and drops repeats", "[exterior]") {
    auto ctx = make_context(4);
    const auto one = Polynomial::one(ctx);
    const auto n = canonicalize<Polynomial>(ctx, {{{2, 0}, one}, {{0, 2}, Scalar(3) * one}, {{1, 1}, one}});
    CHECK(n.size() == 1);
    CHECK(n.coefficient(mask::from_indices({0, 2})) == Scalar(2) * one);
    CHECK(n.to_string() == "[2] e1 e3");

    const auto cancel = canonicalize<Polynomial>(ctx, {{{3, 1}, one}, {{1, 3}, one}});
    CHECK(cancel.is_zero());
    CHECK(cancel.to_string() == "0");
    CHECK_THROWS_AS(canonicalize<Polynomial>(ctx, {{{0}, one}, {{0, 1}, one}}), input_error);
    CHECK_THROWS_AS(MV::basis(ctx, {4}), input_error);
}

TEST_CASE("terms print in lexicographic tuple order", "[exterior]") {
    auto ctx = make_context(5);
    MV n(ctx, 2);
    n.add_raw({3, 4}, x(ctx, 1));
    n.add_raw({0, 4}, Polynomial::one(ctx));
    n.add_raw({0, 1}, -x(ctx, 2));
    CHECK(n.to_string() == "[-x2] e1 e2 + [1] e1 e5 + [x1] e4 e5");
}

TEST_CASE("wedge of coordinate fields", "[exterior]") {
    auto ctx = make_context(3);
    const auto a = d(ctx, 1).to_multivector();
    const auto b = d(ctx, 2).to_multivector();
    CHECK(wedge(a, b) == MV::basis(ctx, {0, 1}));
    CHECK(wedge(b, a) == -MV::basis(ctx, {0, 1}));
    CHECK(wedge(a, a).is_zero());
    CHECK(wedge_all(ctx, std::vector{d(ctx, 3), d(ctx, 1), d(ctx, 2)}) == MV::basis(ctx, {0, 1, 2}));
    // Degree above the dimension is the zero multivector of that degree.
    const auto top = wedge(MV::basis(ctx, {0, 1}), MV::basis(ctx, {1, 2}));
    CHECK(top.is_zero());
    CHECK(top.degree() == 4);
}

TEST_CASE("wedge agrees with the odd-variable product", "[exterior]") {
    auto ctx = make_context(5);
    testing::TestRng rng(21);
    for (int i = 0; i < 40; ++i) {
        const std::size_t p = rng.index(3);
        const std::size_t q = 1 + rng.index(3);
        const auto a = testing::rand_multivector(ctx, rng, p);
        const auto b = testing::rand_multivector(ctx, rng, q);
        const auto expect = from_super(ctx, testing::super_mul(testing::to_super(a), testing::to_super(b)), p + q);
        CHECK(wedge(a, b) == expect);
        // Graded commutativity
        const auto ba = wedge(b, a);
        CHECK(((p * q) % 2 == 0 ? ba : -ba) == wedge(a, b));
    }
}

TEST_CASE("wedge is associative", "[exterior]") {
    auto ctx = make_context(6);
    testing::TestRng rng(3);
    for (int i = 0; i < 20; ++i) {
        const auto a = testing::rand_multivector(ctx, rng, 1 + rng.index(2));
        const auto b = testing::rand_multivector(ctx, rng, 1 + rng.index(2));
        const auto c = testing::rand_multivector(ctx, rng, 1 + rng.index(2));
        CHECK(wedge(wedge(a, b), c) == wedge(a, wedge(b, c)));
    }
}

TEST_CASE("interior product contracts the first slot", "[exterior]") {
    auto ctx = make_context(3);
    const auto n = MV::basis(ctx, {0, 1, 2});
    CHECK(interior_product(OneForm<Polynomial>::coordinate(ctx, 0), n) == MV::basis(ctx, {1, 2}));
    CHECK(interior_product(OneForm<Polynomial>::coordinate(ctx, 1), n) == -MV::basis(ctx, {0, 2}));
    CHECK(interior_product(OneForm<Polynomial>::coordinate(ctx, 2), n) == MV::basis(ctx, {0, 1}));
    CHECK(contract_coordinate(1, n) == -MV::basis(ctx, {0, 2}));
    CHECK_THROWS_AS(interior_product(OneForm<Polynomial>::coordinate(ctx, 0), MV(ctx, 0)), degree_error);
}

TEST_CASE("interior product agrees with dense contraction", "[exterior]") {
    auto ctx = make_context(4);
    testing::TestRng rng(17);
    for (int i = 0; i < 25; ++i) {
        const std::size_t m = 2 + rng.index(2);
        const auto n = testing::rand_multivector(ctx, rng, m);
        std::vector<Polynomial> fs;
        for (std::size_t k = 0; k < m; ++k)
            fs.push_back(testing::rand_poly(ctx, rng, 2, 3));
        const auto contracted = interior_product(differential(fs[0]), n);
        const std::vector<Polynomial> rest(fs.begin() + 1, fs.end());
        CHECK(testing::full_contraction(contracted, rest) == testing::full_contraction(n, fs));
        const std::size_t u = rng.index(4);
        CHECK(contract_coordinate(u, n) == interior_product(OneForm<Polynomial>::coordinate(ctx, u), n));
    }
}

TEST_CASE("vector fields act as derivations", "[exterior]") {
    auto ctx = make_context(2);
    auto v = VectorField<Polynomial>(ctx, {x(ctx, 2), -x(ctx, 1)});
    CHECK(v.apply(x(ctx, 1) * x(ctx, 1) + x(ctx, 2) * x(ctx, 2)).is_zero());
    CHECK(v.apply(x(ctx, 1)) == x(ctx, 2));
    CHECK(v.to_multivector().to_vector_field() == v);
    CHECK(v.to_string() == "[x2] e1 + [-x1] e2");
    CHECK_THROWS_AS(MV::basis(ctx, {0, 1}).to_vector_field(), degree_error);
    CHECK_THROWS_AS(VectorField<Polynomial>(ctx, {x(ctx, 1)}), input_error);
}

TEST_CASE("mixed coefficient types promote", "[exterior]") {
    auto ctx = make_context(3);
    const MultiVector<RationalFunction> r =
        MultiVector<RationalFunction>::basis(ctx, {0}, RationalFunction(Polynomial::one(ctx), x(ctx, 3)));
    const auto w = wedge(r, MV::basis(ctx, {1}, x(ctx, 3)));
    static_assert(std::same_as<decltype(w), const MultiVector<RationalFunction>>);
    CHECK(w.coefficient(mask::from_indices({0, 1})) == RationalFunction::constant(ctx, 1));
    CHECK(coefficient_cast<RationalFunction>(MV::basis(ctx, {2})).degree() == 1);
}
