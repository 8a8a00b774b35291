#pragma once

// The extension operator on the cone, the pair-convolution table
// F(u) = sum_{η1+η2=u} f(η1) f(η2), the quartic functional sum_u |F(u)|^2 and
// the closed-form sharp constants.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "fxcone/certificate.hpp"
#include "fxcone/cone.hpp"
#include "fxcone/numeric.hpp"

namespace fxcone {

// Complex values indexed by cone ordinal.
using ConeFunction = std::vector<Complex>;

// Exact unit-modulus function: value at ordinal k is zeta_p^exponent[k].
struct PhaseFunction {
  std::uint32_t p = 0;
  std::vector<std::uint32_t> exponent;
};

// Frequency vector a of the character η -> e(a·η).
using CharParam = std::array<FieldElem, 4>;

struct RepCountTable {
  std::vector<Complex> table;  // indexed by point index in [0, q^4)
};

// Pair counts by power of zeta_p: counts[u * p + k] pairs contribute zeta_p^k to F(u).
struct CyclotomicTable {
  std::uint32_t p = 0;
  std::vector<std::uint32_t> counts;
};

// Element sum_k coeff[k] zeta_p^k of Z[zeta_p].
struct CyclotomicInt {
  std::vector<Integer> coeff;

  // The element is rational (hence an integer) iff coeff[1] = ... = coeff[p-1];
  // its value is then coeff[0] - coeff[1].
  std::optional<Integer> as_integer() const;
};

RepCountTable pair_convolution(const ConeCtx& cc, std::span<const Complex> f);
// Bilinear form: sum_{η1+η2=u} f(η1) g(η2).
RepCountTable pair_convolution(const ConeCtx& cc, std::span<const Complex> f, std::span<const Complex> g);
std::vector<std::int64_t> pair_convolution_exact(const ConeCtx& cc, std::span<const std::int64_t> f);
CyclotomicTable pair_convolution_phase(const ConeCtx& cc, const PhaseFunction& f);

double quartic_lhs(const RepCountTable& F);
Integer quartic_lhs_exact(std::span<const std::int64_t> F);
CyclotomicInt quartic_lhs_phase(const CyclotomicTable& F);

double mass(std::span<const Complex> f);  // sum |f|^2

// quartic_lhs / (sum |f|^2)^2; throws zero_function.
double ratio(const ConeCtx& cc, std::span<const Complex> f);
Rational ratio_exact(const ConeCtx& cc, std::span<const std::int64_t> f);

// (1/|Γ|) sum_ξ f(ξ) e_a(ξ·x); throws principal_character for a = 0.
Complex extension(const ConeCtx& cc, std::span<const Complex> f, const Point4& x, FieldElem a = FieldCtx::one());

struct Norms {
  double l2_sigma = 0.0;     // ((1/|Γ|) sum |f|^2)^(1/2)
  double l4_counting = 0.0;  // (sum_x |ext(x)|^4)^(1/4)
};
Norms norms(const ConeCtx& cc, std::span<const Complex> f, FieldElem a = FieldCtx::one());

// ||ext||_4^4 against (q^4/|Γ|^4) quartic_lhs, relative tolerance tol.
Certificate verify_duality(const ConeCtx& cc, std::span<const Complex> f, FieldElem a = FieldCtx::one(),
                           double tol = 1e-9);

// f#(ξ) = sqrt((|f(ξ)|^2 + |f(-ξ)|^2) / 2).
ConeFunction symmetrize(const ConeCtx& cc, std::span<const Complex> f);

// sum over cone 4-tuples with η1+η2+η3+η4 = 0 of
// f1(η1) conj(f2(-η2)) f3(η3) conj(f4(-η4)), with the unnormalized counting
// measure on solutions.
Complex quadrilinear_Q(const ConeCtx& cc, std::span<const Complex> f1, std::span<const Complex> f2,
                       std::span<const Complex> f3, std::span<const Complex> f4);

struct SharpConstants {
  std::uint64_t q = 0;
  Integer N;    // q^5 + 4q^4 - 4q^3 - 6q^2 + 3q + 3
  Rational C;   // N / ((q+1)^2 (q-1)), combinatorial constant
  Rational R4;  // q^4 N / ((q+1)^6 (q-1)^3), fourth power of the extension constant
  Rational M;   // (2q^4 - 5q^3 - 5q^2 + 5q + 4) / ((q-1)(q+1)^2)
  double R = 0.0;
};
// Throws invalid_argument for q < 3.
SharpConstants sharp_constants(std::uint64_t q);

ConeFunction character(const ConeCtx& cc, const CharParam& a, Complex lambda = 1.0);
PhaseFunction phase_character(const ConeCtx& cc, const CharParam& a);
ConeFunction to_complex(const ConeCtx& cc, const PhaseFunction& f, Complex lambda = 1.0);
// Exponent of e(a·η) at the cone point with ordinal k.
std::uint32_t character_exponent(const ConeCtx& cc, const CharParam& a, std::size_t k);

}  // namespace fxcone
