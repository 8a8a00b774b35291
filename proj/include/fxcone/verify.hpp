#pragma once

// Certificate-producing checks: pair census, sharpness, the mixed-product
// identity, every step of the inequality chain, the functional equation and
// the classification of extremizers.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fxcone/certificate.hpp"
#include "fxcone/cone.hpp"
#include "fxcone/xform.hpp"

namespace fxcone {

Certificate census_check(const ConeCtx& cc);
Certificate mixed_product_identity_check(const ConeCtx& cc, std::size_t trials, std::uint64_t seed,
                                         ArithMode mode);
// Exact integer identity quartic_lhs(1) * den(C) = num(C) * |Γ|^2.
Certificate sharpness_check(const ConeCtx& cc);

// One certificate per step of the chain, ordered by claim id.
std::vector<Certificate> chain_check(const ConeCtx& cc, std::size_t trials, std::uint64_t seed, ArithMode mode);

// Scalar terms of the chain evaluated for one even nonnegative function.
// Per-plane vectors list the q+1 planes A+ followed by the q+1 planes A-.
struct ChainTerms {
  double quartic = 0;         // sum_u F(u)^2
  double mass_sq = 0;         // (sum f^2)^2
  double offcone = 0;         // sum over generic u of F(u)^2
  double offcone_bound = 0;   // (q^2+q) sum over generic u of F2(u)
  double offcone_closed = 0;  // (q^2+q)[(sum f^2)^2 - sum_cone F2 - sum f^4]
  double main_lhs = 0;        // reduced main inequality, should be <= 0
  double upper_bound = 0;     // main_lhs after the mixed-term separation
  double plane_sum = 0;       // sum of S(A) over all 2(q+1) planes
  std::vector<double> plane_s;      // S(A)
  std::vector<double> plane_bound;  // closed-form upper bound of S(A), <= 0
};
ChainTerms chain_terms(const ConeCtx& cc, std::span<const double> f);

// Exact S(A) for integer f with the same plane ordering as ChainTerms.
std::vector<Rational> plane_s_exact(const ConeCtx& cc, std::span<const std::int64_t> f);

// Max over x+y = z+w (all on the cone) of |φ(x)φ(y) - φ(z)φ(w)|.
// Throws non_unimodular if some |φ| differs from 1 by more than 1e-9.
// With exhaustive = false, samples quadruples.
Certificate functional_eq_check(const ConeCtx& cc, std::span<const Complex> phi, bool exhaustive = true,
                                std::size_t samples = 10000, std::uint64_t seed = 0);
Certificate functional_eq_check(const ConeCtx& cc, const PhaseFunction& phi);

// Functions on F_q^2 \ {0}, indexed by x1 + q x2 - 1.
using PlaneFunction = std::vector<Complex>;

struct PlaneFit {
  Complex lambda;
  FieldElem a1, a2;
  double residual = 0;
};

double plane_functional_deviation(const FieldCtx& f, std::span<const Complex> psi);
std::optional<PlaneFit> classify_plane(const FieldCtx& f, std::span<const Complex> psi, double tol = 1e-9);
PlaneFunction plane_character(const FieldCtx& f, FieldElem a1, FieldElem a2, Complex lambda = 1.0);

Certificate plane_classification_check(const FieldCtx& f, std::size_t trials, std::uint64_t seed);

struct ExtremizerFit {
  Complex lambda;
  CharParam a{};          // frequencies in the cone's model coordinates
  CharParam a_product{};  // frequencies in product coordinates
  double residual = 0;    // max |f(η) - λ e(a·η)|
  double ratio = 0;
};

enum class NotExtremalReason { none, nonconstant_modulus, plane_fit_failed, global_psi_nonconstant, ratio_below_c };
const char* reason_name(NotExtremalReason r) noexcept;

struct ClassifyOptions {
  double tol = 1e-6;         // relative modulus spread, phase residual
  double ratio_tol = 1e-9;   // relative gap below C still accepted
};

struct ExtremizerVerdict {
  std::optional<ExtremizerFit> fit;
  NotExtremalReason reason = NotExtremalReason::none;
  double ratio = 0;
  double measured = 0;  // the quantity that failed (spread, band offset, deviation, gap)
};

// Throws zero_function for f = 0.
ExtremizerVerdict classify_extremizer(const ConeCtx& cc, std::span<const Complex> f, ClassifyOptions opt = {});

// Runs every check for one field and model.
struct VerifyOptions {
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  ArithMode mode = ArithMode::floating;
};
std::vector<Certificate> verify_all(const ConeCtx& cc, const VerifyOptions& opt);

// Structural checks of the cone enumeration.
Certificate cone_cardinality_check(const ConeCtx& cc);
Certificate segre_bijection_check(const ConeCtx& cc);
Certificate incidence_check(const ConeCtx& cc, std::size_t samples, std::uint64_t seed);
Certificate plane_foliation_check(const ConeCtx& cc);
Certificate constants_check(std::uint64_t q);
Certificate upper_bound_check(const ConeCtx& cc, std::size_t trials, std::uint64_t seed);
Certificate character_extremality_check(const ConeCtx& cc, std::size_t trials, std::uint64_t seed,
                                        ArithMode mode);
Certificate extremizer_classification_check(const ConeCtx& cc, std::size_t trials, std::uint64_t seed);
Certificate duality_check(const ConeCtx& cc, std::size_t trials, std::uint64_t seed);
Certificate symmetrization_check(const ConeCtx& cc, std::size_t trials, std::uint64_t seed);
// (2,2) and, when q = 1 mod 4, (3,1) models against the product cone.
Certificate model_bridge_check(std::shared_ptr<const FieldCtx> field);

// Seeding helpers shared with the optimizer and tests.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view label) noexcept;
ConeFunction random_complex_function(std::size_t n, std::uint64_t seed);
ConeFunction random_even_nonnegative(const ConeCtx& cc, std::uint64_t seed);

}  // namespace fxcone
