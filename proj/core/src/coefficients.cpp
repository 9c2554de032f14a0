#include "caloron/coefficients.hpp"

#include <cmath>
#include <sstream>

namespace caloron {

namespace {

using boost::multiprecision::cpp_int;

cpp_int fact_int(int n) {
    cpp_int f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

rational half_pow(int p) {
    rational r(1);
    for (int i = 0; i < p; ++i) r /= -2;
    return r;
}

double fact_double(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

void require(bool ok, const std::string& what) {
    if (!ok) throw ValidationError("coefficient table: " + what);
}

void close_enough(const rational& exact, double floated, const std::string& what) {
    const double e = to_double(exact);
    const double scale = std::max(1.0, std::abs(e));
    require(std::abs(e - floated) <= 1e-14 * scale, what + " exact/float mismatch");
}

} // namespace

rational factorial_exact(int n) {
    if (n < 0) throw DimensionMismatch("factorial of a negative integer");
    return rational(fact_int(n));
}

rational binomial_exact(int n, int k) {
    if (k < 0 || k > n) return rational(0);
    return rational(fact_int(n), fact_int(k) * fact_int(n - k));
}

rational cs_coefficient(int k, int j) {
    if (k < 1 || j < 0 || j > k - 1) throw DimensionMismatch("cs coefficient: need 0 <= j <= k-1");
    return half_pow(j) * rational(fact_int(k) * fact_int(k - 1),
                                  fact_int(k + j) * fact_int(k - 1 - j));
}

rational total_potential_coefficient(int k, int i) { return cs_coefficient(k, i); }

rational tau_prefactor(int k) {
    if (k < 1) throw DimensionMismatch("tau prefactor: need k >= 1");
    return half_pow(k - 1) * rational(fact_int(k) * fact_int(k - 1), fact_int(2 * k - 1));
}

rational beta_kk(int k) {
    if (k < 1) throw DimensionMismatch("beta: need k >= 1");
    const cpp_int f = fact_int(k - 1);
    return rational(f * f, fact_int(2 * k - 1));
}

rational beta_alternating_sum(int k) {
    if (k < 1) throw DimensionMismatch("beta sum: need k >= 1");
    rational acc(0);
    for (int i = 0; i <= k - 1; ++i) {
        rational term = binomial_exact(k - 1, i) / (k + i);
        acc += (i & 1) ? -term : term;
    }
    return acc;
}

rational cohomology_generator_coefficient(int k) {
    if (k < 1) throw DimensionMismatch("generator coefficient: need k >= 1");
    return half_pow(k - 1) * rational(fact_int(k) * fact_int(k - 1), fact_int(2 * k - 2));
}

rational odd_character_rational(int j) {
    if (j < 0) throw DimensionMismatch("odd character term: need j >= 0");
    return -rational(fact_int(j), fact_int(2 * j + 1));
}

rational homotopy_integral_rational(int j) {
    if (j < 0) throw DimensionMismatch("homotopy integral term: need j >= 0");
    return -rational(fact_int(j), fact_int(2 * j));
}

rational sym_trace_rational(int k) {
    if (k < 1) throw DimensionMismatch("trace normalization: need k >= 1");
    const cpp_int f = fact_int(k);
    return rational(1, f * f);
}

double to_double(const rational& r) { return r.convert_to<double>(); }

cd inv_two_pi_i_pow(int p) {
    cd out(1.0, 0.0);
    for (int i = 0; i < p; ++i) out *= inv_two_pi_i;
    return out;
}

void check_coefficient_tables(int k_max) {
    for (int k = 1; k <= k_max; ++k) {
        require(beta_alternating_sum(k) == beta_kk(k), "alternating sum != B(k,k)");
        require(cs_coefficient(k, k - 1) == tau_prefactor(k), "last cs term != tau prefactor");
        require(cohomology_generator_coefficient(k) == rational(2 * k - 1) * tau_prefactor(k),
                "generator scale != (2k-1) tau");

        for (int j = 0; j <= k - 1; ++j) {
            const double f = std::pow(-0.5, j) * fact_double(k) * fact_double(k - 1) /
                             (fact_double(k + j) * fact_double(k - 1 - j));
            close_enough(cs_coefficient(k, j), f, "cs");
        }
        close_enough(tau_prefactor(k),
                     std::pow(-0.5, k - 1) * fact_double(k) * fact_double(k - 1) /
                         fact_double(2 * k - 1),
                     "tau");
        close_enough(beta_kk(k),
                     fact_double(k - 1) * fact_double(k - 1) / fact_double(2 * k - 1), "beta");
        double alt = 0.0;
        for (int i = 0; i <= k - 1; ++i)
            alt += std::pow(-1.0, i) * fact_double(k - 1) /
                   (fact_double(i) * fact_double(k - 1 - i) * (k + i));
        close_enough(beta_alternating_sum(k), alt, "beta sum");
        close_enough(cohomology_generator_coefficient(k),
                     std::pow(-0.5, k - 1) * fact_double(k) * fact_double(k - 1) /
                         fact_double(2 * k - 2),
                     "generator");
        close_enough(odd_character_rational(k - 1),
                     -fact_double(k - 1) / fact_double(2 * k - 1), "odd character");
        close_enough(homotopy_integral_rational(k - 1),
                     -fact_double(k - 1) / fact_double(2 * k - 2), "homotopy");
        close_enough(sym_trace_rational(k), 1.0 / (fact_double(k) * fact_double(k)),
                     "trace normalization");
    }
}

std::string coefficient_table_csv(int k_max) {
    std::ostringstream out;
    out << "kind,k,index,value\n";
    for (int k = 1; k <= k_max; ++k) {
        for (int j = 0; j <= k - 1; ++j)
            out << "c," << k << "," << j << "," << total_potential_coefficient(k, j) << "\n";
        for (int j = 0; j <= k - 1; ++j)
            out << "cs," << k << "," << j << "," << cs_coefficient(k, j) << "\n";
        out << "tau," << k << ",0," << tau_prefactor(k) << "\n";
        out << "beta_sum," << k << ",0," << beta_alternating_sum(k) << "\n";
        out << "beta_kk," << k << ",0," << beta_kk(k) << "\n";
        out << "generator," << k << ",0," << cohomology_generator_coefficient(k) << "\n";
        out << "odd_character," << k - 1 << ",0," << odd_character_rational(k - 1) << "\n";
        out << "homotopy," << k - 1 << ",0," << homotopy_integral_rational(k - 1) << "\n";
        out << "trace_norm," << k << ",0," << sym_trace_rational(k) << "\n";
    }
    return out.str();
}

} // namespace caloron
