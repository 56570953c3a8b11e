#include <catch_amalgamated.hpp>

#include "support.hpp"

using namespace gpoisson;
using testing::d;
using testing::x;

namespace {

using MV = MultiVector<Polynomial>;
using VF = VectorField<Polynomial>;

// det M1 + det M2 by permutation expansion, rows X_i applied to h_j.
Polynomial multiplier_oracle(const ProblemData& data) {
    const std::size_t s = data.symmetries.size();
    auto det_of = [&](std::vector<std::size_t> rows) {
        std::vector<std::vector<Polynomial>> m;
        for (auto r : rows) {
            std::vector<Polynomial> row;
            for (const auto& h : data.integrals)
                row.push_back(data.symmetries[r].apply(h));
            m.push_back(row);
        }
        return testing::leibniz_det(m, data.context);
    };
    std::vector<std::size_t> common;
    for (std::size_t i = 0; i + 4 < s; ++i)
        common.push_back(i);
    auto r1 = common, r2 = common;
    r1.insert(r1.end(), {s - 4, s - 3});
    r2.insert(r2.end(), {s - 2, s - 1});
    return det_of(r1) + det_of(r2);
}

const CheckResult& find(const std::vector<CheckResult>& cs, const std::string& name) {
    for (const auto& c : cs)
        if (c.name == name)
            return c;
    FAIL("missing check " << name);
    throw std::logic_error("unreachable");
}

}  // namespace

TEST_CASE("Bareiss determinant agrees with permutation expansion", "[constructions]") {
    auto ctx = make_context(3);
    testing::TestRng rng(10);
    for (int i = 0; i < 30; ++i) {
        const std::size_t k = 1 + rng.index(4);
        std::vector<std::vector<Polynomial>> m(k);
        for (auto& row : m)
            for (std::size_t c = 0; c < k; ++c)
                row.push_back(rng.index(4) == 0 ? Polynomial::zero(ctx) : testing::rand_poly(ctx, rng, 1, 2));
        CHECK(determinant(m, ctx) == testing::leibniz_det(m, ctx));
    }
    CHECK(determinant({}, ctx) == Polynomial::one(ctx));
    CHECK_THROWS_AS(determinant({{x(ctx, 1), x(ctx, 2)}}, ctx), input_error);
}

TEST_CASE("span membership over rational functions", "[constructions]") {
    auto ctx = make_context(3);
    const VF a(ctx, {x(ctx, 1), x(ctx, 2), Polynomial::zero(ctx)});
    const VF b = d(ctx, 3);
    CHECK(in_span({a, b}, x(ctx, 3) * a + x(ctx, 1) * b));
    CHECK_FALSE(in_span({a, b}, d(ctx, 1)));
    CHECK(in_span({a}, VF(ctx)));
}

TEST_CASE("coordinate desk case pins the sign", "[constructions]") {
    const auto data = testing::desk_case(6, 5, 3);
    const auto out = build_theorem1(data);
    const auto& ctx = data.context;
    const auto expect = wedge_all(ctx, std::vector{d(ctx, 6), d(ctx, 1), d(ctx, 2), d(ctx, 3)}) +
                        wedge_all(ctx, std::vector{d(ctx, 6), d(ctx, 1), d(ctx, 4), d(ctx, 5)});
    CHECK(out.tensor == expect);
    CHECK(out.multiplier == Polynomial::one(ctx));
    CHECK(hamiltonian_field(out.tensor, data.integrals, Slot::first) == d(ctx, 6));
    CHECK(testing::contraction_field(out.tensor, data.integrals) == d(ctx, 6));
    CHECK(quasi_hamiltonian_sign == 1);
    CHECK(out.passed());
    CHECK_FALSE(find(out.checks, "non_decomposable").required);
    CHECK(find(out.checks, "non_decomposable").passed);
    // 2s = 10 is not above n + 4 = 10
    CHECK_FALSE(out.scaled.has_value());
    CHECK_THROWS_AS(scale_to_J(out, 6, 5), inapplicable_error);
}

TEST_CASE("symmetric construction on shipped problems", "[constructions]") {
    for (const auto* name : {"paper-ex1", "paper-ex2", "paper-angle"}) {
        INFO(name);
        const auto data = testing::golden_problem(name);
        const auto out = build_theorem1(data);
        CHECK(out.multiplier == multiplier_oracle(data));
        // Independent check of N(., dh) = h~ Gamma.
        CHECK(testing::contraction_field(out.tensor, data.integrals) == out.multiplier * data.gamma);
        CHECK(out.passed());
        for (const auto& h : out.hypotheses)
            CHECK(h.passed);
    }
}

TEST_CASE("rescaled tensor when 2s > n + 4", "[constructions]") {
    const auto data = testing::golden_problem("paper-ex2");  // n = 7, s = 6
    const auto out = build_theorem1(data);
    REQUIRE(out.scaled.has_value());
    CHECK(find(out.checks, "scaled_generalized_poisson").passed);
    CHECK(find(out.checks, "scaled_hamiltonian").passed);
    CHECK(*out.scaled == coefficient_cast<RationalFunction>(out.tensor));
    const auto field = hamiltonian_field(out.tensor, data.integrals, Slot::first);
    for (std::size_t u = 1; u <= 7; ++u) {
        const auto f = x(data.context, u);
        CHECK(field.apply(f) == f.derivative(6));
    }
}

TEST_CASE("bivector construction", "[constructions]") {
    auto ctx = make_context(5);
    ProblemData data(ctx, d(ctx, 5), {d(ctx, 1), d(ctx, 2), d(ctx, 3)}, {x(ctx, 3)});
    const auto out = build_theorem2(data);
    const auto g = d(ctx, 5).to_multivector();
    CHECK(out.tensor ==
          wedge(g, d(ctx, 1).to_multivector()) + wedge(g, d(ctx, 3).to_multivector()) +
              wedge(d(ctx, 1).to_multivector(), d(ctx, 2).to_multivector()));
    CHECK(out.multiplier == Polynomial::one(ctx));
    CHECK(testing::contraction_field(out.tensor, data.integrals) == d(ctx, 5));
    CHECK(out.passed());

    ProblemData four(ctx, d(ctx, 5), {d(ctx, 1), d(ctx, 2), d(ctx, 3), d(ctx, 4)}, {x(ctx, 3)});
    CHECK_THROWS_AS(build_theorem2(four), input_error);
}

TEST_CASE("reduced family", "[constructions]") {
    const auto data = testing::desk_case(7, 6, 4);
    const auto members = build_theorem3_family(data);
    REQUIRE(members.size() == 2);
    const auto& ctx = data.context;
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(members[i].dropped_index == i + 1);
        CHECK(members[i].tensor.degree() == 4);
        CHECK(members[i].multiplier == Polynomial::one(ctx));
        std::vector<Polynomial> reduced;
        for (std::size_t k = 0; k < 4; ++k)
            if (k != i)
                reduced.push_back(data.integrals[k]);
        CHECK(testing::contraction_field(members[i].tensor, reduced) == d(ctx, 7));
        CHECK(members[i].passed());
    }
    CHECK_THROWS_AS(build_theorem3_family(testing::desk_case(6, 4, 2)), input_error);
}

TEST_CASE("hypothesis validation modes", "[constructions]") {
    auto ctx = make_context(6);
    // Gamma = x1 d6 does not commute with d1.
    ProblemData bad(ctx, x(ctx, 1) * d(ctx, 6), {d(ctx, 1), d(ctx, 2), d(ctx, 3), d(ctx, 4), d(ctx, 5)},
                    {x(ctx, 1), x(ctx, 2), x(ctx, 3)});
    try {
        build_theorem1(bad);
        FAIL("expected hypothesis_error");
    } catch (const hypothesis_error& e) {
        CHECK_FALSE(find(e.results(), "commutator[X1,Gamma]").passed);
        CHECK(find(e.results(), "commutator[X1,Gamma]").witness->value == "[1] e6");
        CHECK(find(e.results(), "commutator[X2,Gamma]").passed);
    }
    bad.mode = ValidationMode::warn;
    const auto out = build_theorem1(bad);
    const auto& c = find(out.hypotheses, "commutator[X1,Gamma]");
    CHECK_FALSE(c.passed);
    CHECK_FALSE(c.required);
}

TEST_CASE("shape errors and degenerate multipliers", "[constructions]") {
    auto few = testing::desk_case(6, 3, 1);
    CHECK_THROWS_AS(build_theorem1(few), input_error);
    auto wrong_count = testing::desk_case(6, 5, 2);
    CHECK_THROWS_AS(build_theorem1(wrong_count), input_error);

    // Repeated integral columns make both determinants vanish.
    auto ctx = make_context(6);
    ProblemData flat(ctx, d(ctx, 6), {d(ctx, 1), d(ctx, 2), d(ctx, 3), d(ctx, 4), d(ctx, 5)},
                     {x(ctx, 1), x(ctx, 1), x(ctx, 2)});
    CHECK_THROWS_AS(build_theorem1(flat), hypothesis_error);
    flat.mode = ValidationMode::warn;
    CHECK_THROWS_AS(build_theorem1(flat), degenerate_construction_error);

    ProblemData dependent(ctx, d(ctx, 6), {d(ctx, 1), d(ctx, 2), d(ctx, 3), d(ctx, 4), d(ctx, 1)},
                          {x(ctx, 1), x(ctx, 2), x(ctx, 3)});
    dependent.mode = ValidationMode::warn;
    const auto hyps = validate_inputs(dependent, Theorem::symmetric);
    CHECK_FALSE(find(hyps, "independence").passed);
}
