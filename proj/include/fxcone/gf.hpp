#pragma once

// Arithmetic in F_q, q = p^n with p an odd prime, plus the trace map and the
// additive characters built on it.

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "fxcone/error.hpp"

namespace fxcone {

// Element of F_q encoded as the base-p integer sum c_r p^r of its coefficient
// vector in F_p[x]/(modulus). idx 0 is zero and idx 1 is one.
struct FieldElem {
  std::uint32_t idx = 0;

  friend constexpr auto operator<=>(FieldElem, FieldElem) = default;
};

struct FieldParams {
  std::uint32_t p = 0;
  std::uint32_t n = 0;
  // Coefficients low degree first; length n + 1, leading coefficient 1.
  std::vector<std::uint32_t> modulus;
};

inline constexpr std::uint64_t kDefaultFieldBudget = std::uint64_t{1} << 20;

class FieldCtx {
 public:
  std::uint32_t p() const noexcept { return params_.p; }
  std::uint32_t n() const noexcept { return params_.n; }
  std::uint32_t q() const noexcept { return q_; }
  const FieldParams& params() const noexcept { return params_; }

  static constexpr FieldElem zero() noexcept { return FieldElem{0}; }
  static constexpr FieldElem one() noexcept { return FieldElem{1}; }

  FieldElem add(FieldElem a, FieldElem b) const noexcept {
    if (!add_table_.empty()) return FieldElem{add_table_[std::size_t{a.idx} * q_ + b.idx]};
    return add_digits(a, b);
  }
  FieldElem neg(FieldElem a) const noexcept { return FieldElem{neg_[a.idx]}; }
  FieldElem sub(FieldElem a, FieldElem b) const noexcept { return add(a, neg(b)); }
  FieldElem mul(FieldElem a, FieldElem b) const noexcept {
    if (a.idx == 0 || b.idx == 0) return zero();
    std::uint32_t e = log_[a.idx] + log_[b.idx];
    if (e >= q_ - 1) e -= q_ - 1;
    return FieldElem{exp_[e]};
  }
  // Throws Errc::invalid_argument for a == 0.
  FieldElem inv(FieldElem a) const;
  FieldElem div(FieldElem a, FieldElem b) const { return mul(a, inv(b)); }
  FieldElem pow(FieldElem a, std::uint64_t e) const noexcept;

  // Image of an integer under Z -> F_p -> F_q.
  FieldElem from_int(std::int64_t k) const noexcept;
  std::vector<std::uint32_t> coeffs(FieldElem a) const;
  FieldElem from_coeffs(std::span<const std::uint32_t> c) const;
  bool valid(FieldElem a) const noexcept { return a.idx < q_; }

  // Tr(x) = sum_{r<n} x^{p^r}, which lies in the prime subfield; returned as
  // an integer in [0, p).
  std::uint32_t trace(FieldElem x) const noexcept { return trace_[x.idx]; }

  // Exponent k in [0, p) with e_a(x) = zeta_p^k.
  std::uint32_t char_exponent(FieldElem a, FieldElem x) const noexcept {
    return trace_[mul(a, x).idx];
  }
  std::complex<double> char_value(FieldElem a, FieldElem x) const noexcept {
    return zeta_[char_exponent(a, x)];
  }
  // zeta_p^k for k in [0, p).
  std::complex<double> zeta(std::uint32_t k) const noexcept { return zeta_[k % params_.p]; }

  // Present iff q = 1 (mod 4); the smaller-idx root of x^2 = -1.
  std::optional<FieldElem> sqrt_minus_one() const noexcept { return sqrt_minus_one_; }

  // Fixed primitive element used for the log tables.
  FieldElem generator() const noexcept { return FieldElem{exp_[q_ > 1 ? 1 : 0]}; }

 private:
  friend std::shared_ptr<const FieldCtx> build_field(std::uint32_t, std::uint32_t,
                                                     std::uint64_t);
  FieldCtx() = default;
  FieldElem add_digits(FieldElem a, FieldElem b) const noexcept;

  FieldParams params_;
  std::uint32_t q_ = 0;
  std::vector<std::uint32_t> add_table_;  // q*q when q is small, else empty
  std::vector<std::uint32_t> neg_;
  std::vector<std::uint32_t> log_;
  std::vector<std::uint32_t> exp_;
  std::vector<std::uint32_t> trace_;
  std::vector<std::complex<double>> zeta_;
  std::optional<FieldElem> sqrt_minus_one_;
};

// Builds F_{p^n} using the lexicographically smallest monic irreducible
// polynomial of degree n (coefficients compared from degree 0 upward).
// Errors: invalid_argument for p even or n == 0, composite_p, budget_exceeded.
std::shared_ptr<const FieldCtx> build_field(std::uint32_t p, std::uint32_t n,
                                            std::uint64_t budget = kDefaultFieldBudget);

// Free-function forms.
inline std::uint32_t trace(const FieldCtx& f, FieldElem x) { return f.trace(x); }
inline std::complex<double> char_value(const FieldCtx& f, FieldElem a, FieldElem x) {
  return f.char_value(a, x);
}
inline std::optional<FieldElem> sqrt_of_minus_one(const FieldCtx& f) { return f.sqrt_minus_one(); }

bool is_prime(std::uint64_t v) noexcept;

// Monic polynomial over F_p, coefficients low degree first.
bool is_irreducible(std::span<const std::uint32_t> monic, std::uint32_t p);

}  // namespace fxcone
