#include "doctest.h"

#include "caloron/errors.hpp"
#include "caloron/invariants.hpp"
#include "caloron/ktheory.hpp"
#include "caloron/random_data.hpp"
#include "caloron/rng.hpp"

using namespace caloron;

namespace {

const GroupSpec u2{GroupFamily::UnitaryU, 2};

} // namespace

TEST_CASE("curvature of a combined element adds, of an inverse negates") {
    CounterRng rng(91);
    const Mesh t2 = make_torus_mesh({16, 16});
    const TwzElement a = random_twz_element(rng, u2, t2);
    const TwzElement b = random_twz_element(rng, u2, t2);
    const TwzElement sum = twz_combine(a, b);
    CHECK(graded_distance(twz_curvature(sum),
                          graded_add(twz_curvature(a), twz_curvature(b))) <= 1e-10);
    const TwzElement neg = twz_inverse(a);
    CHECK(graded_distance(twz_curvature(neg),
                          graded_scale(cd(-1.0, 0.0), twz_curvature(a))) <= 1e-10);
}

TEST_CASE("block sum is commutative and associative at the curvature level") {
    CounterRng rng(92);
    const Mesh t2 = make_torus_mesh({16, 16});
    const TwzElement a = random_twz_element(rng, u2, t2);
    const TwzElement b = random_twz_element(rng, u2, t2);
    const TwzElement c = random_twz_element(rng, u2, t2);
    CHECK(graded_distance(twz_curvature(twz_combine(a, b)),
                          twz_curvature(twz_combine(b, a))) <= 1e-12);
    CHECK(graded_distance(twz_curvature(twz_combine(twz_combine(a, b), c)),
                          twz_curvature(twz_combine(a, twz_combine(b, c)))) <= 1e-12);
}

TEST_CASE("combining ranks pads and records it") {
    CounterRng rng(93);
    const Mesh t2 = make_torus_mesh({16, 16});
    const TwzElement a = random_twz_element(rng, u2, t2);
    const TwzElement b = random_twz_element(rng, GroupSpec{GroupFamily::UnitaryU, 3}, t2);
    const TwzElement sum = twz_combine(a, b);
    CHECK(sum.g.spec.rank_n == 6);
    bool noted = false;
    for (const std::string& n : sum.notes) noted = noted || n.find("pad") != std::string::npos;
    CHECK(noted);
}

TEST_CASE("the doubling homotopy lands on the identity with zero integrand") {
    CounterRng rng(94);
    const Mesh s1 = make_circle_mesh(16);
    const GroupMap g = random_phase_conjugate_map(rng, u2, s1, 2, 2);
    const HomotopySpec h = nullhomotopy_construct(g);
    CHECK_NOTHROW(check_homotopy_endpoints(h));
    // endpoint 0 is g + g^{-1}, endpoint 1 the constant identity
    const MatrixForm expected0 = block_sum_values(g.values, map_inverse_values(g));
    CHECK((h.g0 - expected0).max_abs() == 0.0);
    for (int j = 0; j <= 1; ++j) CHECK(homotopy_integrand_max(h, j) <= 1e-10);
    CHECK(graded_max_abs(homotopy_cs_integral(h)) <= 1e-10);
}

TEST_CASE("the homotopy integral transgresses the odd character difference") {
    CounterRng rng(95);
    const Mesh t2 = make_torus_mesh({32, 32});
    const GroupMap g = random_phase_conjugate_map(rng, u2, t2, 1, 1);
    const HomotopySpec h = random_homotopy_from(rng, g, 0.3);
    GroupMap g1;
    g1.spec = u2;
    g1.values = h.g1;
    const GradedForm diff = graded_add(odd_chern_character(g1),
                                       graded_scale(cd(-1.0, 0.0), odd_chern_character(g)));
    CHECK(graded_distance(diff, graded_d(homotopy_cs_integral(h))) <= 1e-8);
}

TEST_CASE("equivalence accepts transported corrections and flags shifted periods") {
    CounterRng rng(96);
    const Mesh t2 = make_torus_mesh({32, 32});
    const TwzElement e0 = random_twz_element(rng, u2, t2);
    const HomotopySpec h = random_homotopy_from(rng, e0.g, 0.25);
    const GradedForm moved = homotopy_cs_integral(h);
    TwzElement e1;
    e1.g.spec = u2;
    e1.g.values = h.g1;
    e1.chi = graded_add(e0.chi, graded_scale(cd(-1.0, 0.0), moved));
    const EquivalenceDecision yes = twz_equivalent(e0, e1, h);
    CHECK(yes.equivalent);
    CHECK(yes.max_period_distance <= 1e-10);

    TwzElement shifted = e1;
    shifted.chi.at(0) += constant_scalar_form(t2, cd(0.4, 0.0));
    const EquivalenceDecision no = twz_equivalent(e0, shifted, h);
    CHECK_FALSE(no.equivalent);
    CHECK(no.max_period_distance == doctest::Approx(0.4).epsilon(1e-6));

    // the opposite comparison sign is available behind the flag
    TwzElement flipped = e1;
    flipped.chi = graded_add(e0.chi, moved);
    CHECK(twz_equivalent(e0, flipped, h, 1e-6, true).equivalent);
}

TEST_CASE("endpoint validation rejects a homotopy that does not match") {
    CounterRng rng(97);
    const Mesh s1 = make_circle_mesh(16);
    const GroupMap g = random_phase_conjugate_map(rng, u2, s1, 2, 2);
    HomotopySpec h = random_homotopy_from(rng, g, 0.3);
    h.g1 *= cd(2.0, 0.0);
    CHECK_THROWS_AS(check_homotopy_endpoints(h), ValidationError);
}
