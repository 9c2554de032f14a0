#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

#include "caloron/dense.hpp"

namespace caloron {

using rational = boost::multiprecision::cpp_rational;

rational factorial_exact(int n);
rational binomial_exact(int n, int k);

/// (-1/2)^j k!(k-1)! / ((k+j)!(k-1-j)!), 0 <= j <= k-1. These are the
/// Chern-Simons expansion coefficients; the total-potential coefficients c_i
/// share the same closed form.
rational cs_coefficient(int k, int j);
rational total_potential_coefficient(int k, int i);

/// (-1/2)^{k-1} k!(k-1)!/(2k-1)!, the transgression-form prefactor.
rational tau_prefactor(int k);

/// B(k,k) = ((k-1)!)^2/(2k-1)!.
rational beta_kk(int k);

/// sum_{i=0}^{k-1} C(k-1,i) (-1)^i/(k+i); equals beta_kk(k) exactly.
rational beta_alternating_sum(int k);

/// (-1/2)^{k-1} k!(k-1)!/(2k-2)! = (2k-1) * tau_prefactor(k); the scale of
/// the loop-group cohomology generators.
rational cohomology_generator_coefficient(int k);

/// -j!/(2j+1)!, the rational part of the odd character term of degree 2j+1.
rational odd_character_rational(int j);

/// -j!/(2j)!, the rational part of the homotopy integral term of degree 2j.
rational homotopy_integral_rational(int j);

/// 1/(k!)^2, the rational part of the normalized symmetrized trace.
rational sym_trace_rational(int k);

double to_double(const rational& r);

/// (1/(2*pi*i))^p by repeated multiplication (deterministic).
cd inv_two_pi_i_pow(int p);

/// Recomputes every table entry through an independent floating-point route
/// and checks the exact cross-identities (alternating sum = B(k,k), last c
/// equals the tau prefactor, generator scale = (2k-1) tau). Any relative
/// mismatch beyond 1e-14 throws ValidationError; the verification suite runs
/// this at startup so a bad table can never produce a passing report.
void check_coefficient_tables(int k_max = 12);

/// CSV rows "kind,k,index,value" with exact fraction strings.
std::string coefficient_table_csv(int k_max = 10);

} // namespace caloron
