#include "doctest.h"

#include <cmath>

#include "caloron/coefficients.hpp"
#include "caloron/errors.hpp"
#include "caloron/invariants.hpp"

using namespace caloron;

// Frozen fraction values; computed independently with python fractions from
// the closed forms before these tables were wired up.

TEST_CASE("chern-simons coefficients match frozen fractions") {
    CHECK(cs_coefficient(1, 0) == rational(1));
    CHECK(cs_coefficient(2, 0) == rational(1));
    CHECK(cs_coefficient(2, 1) == rational(-1, 6));
    CHECK(cs_coefficient(3, 0) == rational(1));
    CHECK(cs_coefficient(3, 1) == rational(-1, 4));
    CHECK(cs_coefficient(3, 2) == rational(1, 40));
    CHECK(cs_coefficient(4, 1) == rational(-3, 10));
    CHECK(cs_coefficient(4, 2) == rational(1, 20));
    CHECK(cs_coefficient(4, 3) == rational(-1, 280));
    // the total-potential coefficients share the closed form
    for (int k = 1; k <= 6; ++k)
        for (int i = 0; i < k; ++i)
            CHECK(total_potential_coefficient(k, i) == cs_coefficient(k, i));
}

TEST_CASE("transgression and generator prefactors match frozen fractions") {
    CHECK(tau_prefactor(1) == rational(1));
    CHECK(tau_prefactor(2) == rational(-1, 6));
    CHECK(tau_prefactor(3) == rational(1, 40));
    CHECK(tau_prefactor(4) == rational(-1, 280));
    CHECK(cohomology_generator_coefficient(2) == rational(-1, 2));
    CHECK(cohomology_generator_coefficient(3) == rational(1, 8));
    CHECK(cohomology_generator_coefficient(4) == rational(-1, 40));
    for (int k = 1; k <= 8; ++k)
        CHECK(cohomology_generator_coefficient(k) == rational(2 * k - 1) * tau_prefactor(k));
}

TEST_CASE("character series rationals match frozen fractions") {
    CHECK(odd_character_rational(0) == rational(-1));
    CHECK(odd_character_rational(1) == rational(-1, 6));
    CHECK(odd_character_rational(2) == rational(-1, 60));
    CHECK(odd_character_rational(3) == rational(-1, 840));
    CHECK(homotopy_integral_rational(1) == rational(-1, 2));
    CHECK(homotopy_integral_rational(2) == rational(-1, 12));
    CHECK(homotopy_integral_rational(3) == rational(-1, 120));
    CHECK(sym_trace_rational(3) == rational(1, 36));
}

TEST_CASE("alternating sum equals the beta integral exactly for k = 1..10") {
    for (int k = 1; k <= 10; ++k) {
        CHECK(beta_alternating_sum(k) == beta_kk(k));
        const BetaCheck c = beta_coefficients(k);
        CHECK(c.exact_equal);
        CHECK_FALSE(c.has_quadrature);
    }
    CHECK(beta_kk(2) == rational(1, 6));
    CHECK(beta_kk(3) == rational(1, 30));
    CHECK(beta_kk(4) == rational(1, 140));
}

TEST_CASE("cutoff quadrature reproduces the beta value for two distinct ramps") {
    for (int k = 2; k <= 4; ++k) {
        const BetaCheck smooth = beta_coefficients(k, smoothstep_cutoff(256));
        const BetaCheck sine = beta_coefficients(k, sine_ramp_cutoff(256));
        REQUIRE(smooth.has_quadrature);
        REQUIRE(sine.has_quadrature);
        CHECK(std::abs(smooth.quadrature - to_double(beta_kk(k))) <= 1e-8);
        CHECK(std::abs(sine.quadrature - to_double(beta_kk(k))) <= 1e-8);
    }
}

TEST_CASE("normalization powers match frozen values") {
    CHECK(inv_two_pi_i_pow(0) == cd(1.0, 0.0));
    CHECK(std::abs(inv_two_pi_i_pow(1) - cd(0.0, -0.15915494309189535)) <= 1e-16);
    CHECK(std::abs(inv_two_pi_i_pow(2) - cd(-0.025330295910584444, 0.0)) <= 1e-16);
}

TEST_CASE("factorials and binomials are exact") {
    CHECK(factorial_exact(0) == rational(1));
    CHECK(factorial_exact(12) == rational(479001600));
    CHECK(binomial_exact(10, 3) == rational(120));
    CHECK(binomial_exact(5, 0) == rational(1));
}

TEST_CASE("table self-check passes and the csv carries exact fractions") {
    CHECK_NOTHROW(check_coefficient_tables(12));
    const std::string csv = coefficient_table_csv(4);
    CHECK(csv.find("tau,2,0,-1/6") != std::string::npos);
    CHECK(csv.find("cs,3,2,1/40") != std::string::npos);
    CHECK(csv.find("beta_kk,4,0,1/140") != std::string::npos);
}
