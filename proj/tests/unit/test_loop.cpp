#include "doctest.h"

#include <cmath>

#include "caloron/errors.hpp"
#include "caloron/loop.hpp"
#include "caloron/random_data.hpp"
#include "caloron/rng.hpp"
#include "helpers.hpp"

using namespace caloron;
using caloron::testing::phase_loop;

TEST_CASE("winding of explicit phase loops") {
    CHECK(winding_number(phase_loop(64, 3.0)).winding == 3);
    CHECK(winding_number(phase_loop(64, -2.0)).winding == -2);
    CHECK(winding_number(phase_loop(64, 0.0)).winding == 0);
    CHECK(winding_number(phase_loop(64, 3.0)).distance <= 1e-12);

    // diag(e^{i theta}, e^{-2 i theta}) in U(2) winds by the trace: -1
    SampledLoop l(GroupSpec{GroupFamily::UnitaryU, 2}, 64);
    for (int j = 0; j < 64; ++j) {
        const double th = theta_period * j / 64.0;
        cmat v = cmat::Zero(2, 2);
        v(0, 0) = std::exp(cd(0.0, th));
        v(1, 1) = std::exp(cd(0.0, -2.0 * th));
        l.set_sample(j, v);
    }
    CHECK(winding_number(l).winding == -1);
}

TEST_CASE("winding rejects non-integral samples") {
    // e^{i theta/2} sampled on [0, 2 pi) is not a loop; the raw number lands
    // near 1/2 and integrality enforcement trips
    CHECK_THROWS_AS(winding_number(phase_loop(64, 0.5)), IntegralityViolation);
}

TEST_CASE("winding is additive under products, inverses and block sums") {
    CounterRng rng(41);
    const GroupSpec u2{GroupFamily::UnitaryU, 2};
    for (int trial = 0; trial < 8; ++trial) {
        const WindingLoop a = random_winding_loop(rng, u2, 128, 4);
        const WindingLoop b = random_winding_loop(rng, u2, 128, 4);
        CHECK(winding_number(a.loop).winding == a.winding);
        CHECK(winding_number(pointwise_product(a.loop, b.loop)).winding ==
              a.winding + b.winding);
        CHECK(winding_number(pointwise_inverse(a.loop)).winding == -a.winding);
        CHECK(winding_number(block_sum(a.loop, b.loop)).winding == a.winding + b.winding);
    }
}

TEST_CASE("log derivative of a phase loop is the constant frequency") {
    const SampledLoop d = log_derivative(phase_loop(64, 3.0));
    double err = 0.0;
    for (int j = 0; j < 64; ++j)
        err = std::max(err, std::abs(d.raw_data()[static_cast<size_t>(j)] - cd(0.0, 3.0)));
    CHECK(err <= 1e-12);
    CHECK(d.invariant_defect() <= 1e-12); // skew-Hermitian samples
}

TEST_CASE("sampled loops validate their group invariants") {
    SampledLoop l(GroupSpec{GroupFamily::UnitaryU, 2}, 16);
    for (int j = 0; j < 16; ++j) l.set_sample(j, cmat::Identity(2, 2));
    CHECK(l.invariant_defect() <= 1e-15);
    cmat bad = cmat::Identity(2, 2);
    bad(0, 0) = cd(2.0, 0.0);
    l.set_sample(3, bad);
    CHECK(l.invariant_defect() > 0.5);
}

TEST_CASE("loop combinators reject mismatched shapes") {
    const GroupSpec u2{GroupFamily::UnitaryU, 2};
    SampledLoop a(u2, 16), b(u2, 32);
    CHECK_THROWS_AS(pointwise_product(a, b), DimensionMismatch);
}
