// Functional-equation checks and the classification of extremizers, on
// punctured planes of F_q^2 and on the whole cone.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "fxcone/verify.hpp"

namespace fxcone {

namespace {

constexpr double kGuardBand = 0.3;

// k with z close to zeta_p^k; nullopt when arg(z) is outside the guard band
// around every multiple of 2π/p. offset receives the distance in units of 2π/p.
std::optional<std::uint32_t> phase_exponent(Complex z, std::uint32_t p, double& offset) {
  if (!(std::abs(z) > 1e-300)) {
    offset = 0.5;
    return std::nullopt;
  }
  const double t = std::arg(z) / (2.0 * std::numbers::pi / p);
  const double r = std::round(t);
  offset = std::abs(t - r);
  if (offset > kGuardBand) return std::nullopt;
  const auto pi = static_cast<std::int64_t>(p);
  return static_cast<std::uint32_t>(((static_cast<std::int64_t>(r) % pi) + pi) % pi);
}

// The unique a with Tr(a x^r) = k[r] for r < n.
std::optional<FieldElem> solve_trace(const FieldCtx& F, std::span<const std::uint32_t> k) {
  for (std::uint32_t a = 0; a < F.q(); ++a) {
    bool ok = true;
    std::uint32_t basis = 1;
    for (std::uint32_t r = 0; r < F.n() && ok; ++r, basis *= F.p())
      ok = F.char_exponent(FieldElem{a}, FieldElem{basis}) == k[r];
    if (ok) return FieldElem{a};
  }
  return std::nullopt;
}

// Recovers a from ratio(t) = e(a t), sampled at the basis elements t = x^r.
template <class Ratio>
std::optional<FieldElem> recover_frequency(const FieldCtx& F, Ratio ratio, double& worst_offset) {
  std::vector<std::uint32_t> k(F.n());
  std::uint32_t basis = 1;
  for (std::uint32_t r = 0; r < F.n(); ++r, basis *= F.p()) {
    double off = 0.0;
    const auto e = phase_exponent(ratio(FieldElem{basis}), F.p(), off);
    worst_offset = std::max(worst_offset, off);
    if (!e) return std::nullopt;
    k[r] = *e;
  }
  return solve_trace(F, k);
}

std::size_t plane_index(const FieldCtx& F, FieldElem x1, FieldElem x2) {
  return std::size_t{x1.idx} + std::size_t{F.q()} * x2.idx - 1;
}

void require_unimodular(std::span<const Complex> phi) {
  for (const Complex& v : phi)
    if (std::abs(std::abs(v) - 1.0) > 1e-9)
      throw Error(Errc::non_unimodular, "functional equation check needs a unimodular function");
}

Complex product_char(const FieldCtx& F, const CharParam& a, const Point4& z) {
  FieldElem s{};
  for (std::size_t i = 0; i < 4; ++i) s = F.add(s, F.mul(a[i], z.c[i]));
  return F.zeta(F.trace(s));
}

}  // namespace

const char* reason_name(NotExtremalReason r) noexcept {
  switch (r) {
    case NotExtremalReason::none: return "none";
    case NotExtremalReason::nonconstant_modulus: return "nonconstant_modulus";
    case NotExtremalReason::plane_fit_failed: return "plane_fit_failed";
    case NotExtremalReason::global_psi_nonconstant: return "global_psi_nonconstant";
    case NotExtremalReason::ratio_below_c: return "ratio_below_C";
  }
  return "unknown";
}

Certificate functional_eq_check(const ConeCtx& cc, std::span<const Complex> phi, bool exhaustive,
                                std::size_t samples, std::uint64_t seed) {
  if (phi.size() != cc.size()) throw Error(Errc::invalid_argument, "function length does not match the cone");
  require_unimodular(phi);
  const std::size_t n = cc.size();
  double dev = 0.0;
  std::uint64_t checked = 0;
  if (exhaustive) {
    // Every ordered pair is compared against the first pair with the same sum.
    std::vector<Complex> ref(cc.ambient_size());
    std::vector<char> seen(cc.ambient_size(), 0);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        const std::uint64_t u = cc.sum_index(a, b);
        const Complex v = phi[a] * phi[b];
        if (!seen[u]) {
          seen[u] = 1;
          ref[u] = v;
        } else {
          dev = std::max(dev, std::abs(v - ref[u]));
          ++checked;
        }
      }
  } else {
    std::mt19937_64 rng(derive_seed(seed, "functional-equation"));
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    const FieldCtx& F = cc.field();
    for (std::size_t attempts = 0; checked < samples && attempts < 50 * samples; ++attempts) {
      const std::size_t x = pick(rng), y = pick(rng), z = pick(rng);
      const Point4 w = point_sub(F, point_add(F, cc.point(x), cc.point(y)), cc.point(z));
      const auto wo = cc.ordinal_of(w);
      if (!wo) continue;
      dev = std::max(dev, std::abs(phi[x] * phi[y] - phi[z] * phi[*wo]));
      ++checked;
    }
  }
  Certificate c;
  c.claim_id = "functional-equation";
  c.q = cc.q();
  c.mode = ArithMode::floating;
  c.observed = dev;
  c.expected = 0.0;
  c.tolerance = 1e-9;
  c.pass = dev <= 1e-9;
  c.metadata = {{"exhaustive", exhaustive}, {"quadruples", checked}, {"seed", seed}};
  return c;
}

Certificate functional_eq_check(const ConeCtx& cc, const PhaseFunction& phi) {
  if (phi.exponent.size() != cc.size()) throw Error(Errc::invalid_argument, "function length does not match the cone");
  const std::size_t n = cc.size();
  const std::uint32_t p = phi.p;
  std::vector<std::int32_t> ref(cc.ambient_size(), -1);
  std::uint32_t worst_gap = 0;
  std::uint64_t checked = 0, mismatches = 0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const std::uint64_t u = cc.sum_index(a, b);
      const auto e = static_cast<std::int32_t>((phi.exponent[a] + phi.exponent[b]) % p);
      if (ref[u] < 0) {
        ref[u] = e;
        continue;
      }
      ++checked;
      if (e != ref[u]) {
        ++mismatches;
        const auto d = static_cast<std::uint32_t>((e - ref[u] + static_cast<std::int32_t>(p)) %
                                                  static_cast<std::int32_t>(p));
        worst_gap = std::max(worst_gap, std::min(d, p - d));
      }
    }
  Certificate c;
  c.claim_id = "functional-equation";
  c.q = cc.q();
  c.mode = ArithMode::exact;
  c.observed = worst_gap == 0 ? 0.0 : std::abs(cc.field().zeta(worst_gap) - 1.0);
  c.expected = 0.0;
  c.tolerance = 0.0;
  c.pass = mismatches == 0;
  c.metadata = {{"exhaustive", true}, {"quadruples", checked}, {"mismatches", mismatches}};
  return c;
}

double plane_functional_deviation(const FieldCtx& F, std::span<const Complex> psi) {
  const std::uint32_t q = F.q();
  const std::size_t m = std::size_t{q} * q;
  if (psi.size() != m - 1) throw Error(Errc::invalid_argument, "plane function needs q^2 - 1 values");
  std::vector<Complex> ref(m);
  std::vector<char> seen(m, 0);
  double dev = 0.0;
  for (std::size_t x = 1; x < m; ++x)
    for (std::size_t y = 1; y < m; ++y) {
      const FieldElem s1 = F.add(FieldElem{static_cast<std::uint32_t>(x % q)}, FieldElem{static_cast<std::uint32_t>(y % q)});
      const FieldElem s2 = F.add(FieldElem{static_cast<std::uint32_t>(x / q)}, FieldElem{static_cast<std::uint32_t>(y / q)});
      const std::size_t s = s1.idx + std::size_t{q} * s2.idx;
      const Complex v = psi[x - 1] * psi[y - 1];
      if (!seen[s]) {
        seen[s] = 1;
        ref[s] = v;
      } else {
        dev = std::max(dev, std::abs(v - ref[s]));
      }
    }
  return dev;
}

PlaneFunction plane_character(const FieldCtx& F, FieldElem a1, FieldElem a2, Complex lambda) {
  const std::uint32_t q = F.q();
  PlaneFunction out(std::size_t{q} * q - 1);
  for (std::uint32_t x2 = 0; x2 < q; ++x2)
    for (std::uint32_t x1 = 0; x1 < q; ++x1) {
      if (x1 == 0 && x2 == 0) continue;
      const FieldElem s = F.add(F.mul(a1, FieldElem{x1}), F.mul(a2, FieldElem{x2}));
      out[plane_index(F, FieldElem{x1}, FieldElem{x2})] = lambda * F.zeta(F.trace(s));
    }
  return out;
}

std::optional<PlaneFit> classify_plane(const FieldCtx& F, std::span<const Complex> psi, double tol) {
  const std::uint32_t q = F.q();
  if (psi.size() != std::size_t{q} * q - 1) throw Error(Errc::invalid_argument, "plane function needs q^2 - 1 values");
  auto at = [&](FieldElem x1, FieldElem x2) { return psi[plane_index(F, x1, x2)]; };
  const FieldElem zero{}, one = FieldCtx::one();
  double off = 0.0;
  const auto a1 = recover_frequency(F, [&](FieldElem t) { return at(t, one) / at(zero, one); }, off);
  const auto a2 = recover_frequency(F, [&](FieldElem t) { return at(one, t) / at(one, zero); }, off);
  if (!a1 || !a2) return std::nullopt;
  const PlaneFunction e = plane_character(F, *a1, *a2);
  Complex lambda = 0.0;
  double scale = 0.0;
  for (std::size_t k = 0; k < psi.size(); ++k) {
    lambda += psi[k] * std::conj(e[k]);
    scale += std::abs(psi[k]);
  }
  lambda /= static_cast<double>(psi.size());
  scale /= static_cast<double>(psi.size());
  double residual = 0.0;
  for (std::size_t k = 0; k < psi.size(); ++k) residual = std::max(residual, std::abs(psi[k] - lambda * e[k]));
  if (residual > tol * std::max(1.0, scale)) return std::nullopt;
  return PlaneFit{lambda, *a1, *a2, residual};
}

Certificate plane_classification_check(const FieldCtx& F, std::size_t trials, std::uint64_t seed) {
  const std::uint32_t q = F.q(), p = F.p();
  std::mt19937_64 rng(derive_seed(seed, "plane-classification"));
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  auto random_lambda = [&] {
    for (;;) {
      const double re = u(rng);
      const double im = u(rng);
      const Complex l(re, im);
      if (std::abs(l) > 0.1) return l;
    }
  };
  auto neg_index = [&](std::size_t k) {
    const std::size_t x = k + 1;
    return plane_index(F, F.neg(FieldElem{static_cast<std::uint32_t>(x % q)}),
                       F.neg(FieldElem{static_cast<std::uint32_t>(x / q)}));
  };
  auto dbl_index = [&](std::size_t k) {
    const std::size_t x = k + 1;
    const FieldElem two = F.from_int(2);
    return plane_index(F, F.mul(two, FieldElem{static_cast<std::uint32_t>(x % q)}),
                       F.mul(two, FieldElem{static_cast<std::uint32_t>(x / q)}));
  };
  const std::size_t x0 = plane_index(F, FieldCtx::one(), FieldElem{});

  // Consequences used in the proof, for a solution ψ of the plane equation:
  // after dividing by sqrt(ψ(x0)ψ(-x0)), ψ(x)ψ(-x) = 1, ψ^{2p} = 1 and
  // ψ(2x) = s ψ(x)^2 with one sign s for all x.
  struct Steps {
    double antipodal = 0, root_of_unity = 0;
    bool uniform_sign = true;
  };
  auto proof_steps = [&](const PlaneFunction& psi) {
    Steps st;
    const Complex c = std::sqrt(psi[x0] * psi[neg_index(x0)]);
    PlaneFunction w(psi.size());
    for (std::size_t k = 0; k < psi.size(); ++k) w[k] = psi[k] / c;
    int sign = 0;
    for (std::size_t k = 0; k < w.size(); ++k) {
      st.antipodal = std::max(st.antipodal, std::abs(w[k] * w[neg_index(k)] - 1.0));
      st.root_of_unity = std::max(st.root_of_unity, std::abs(std::pow(w[k], 2.0 * p) - 1.0));
      const Complex s = w[dbl_index(k)] / (w[k] * w[k]);
      const int sk = s.real() >= 0 ? 1 : -1;
      if (std::abs(s - static_cast<double>(sk)) > 1e-6) st.uniform_sign = false;
      if (sign == 0) sign = sk;
      if (sk != sign) st.uniform_sign = false;
    }
    return st;
  };

  std::size_t round_trips = 0, fe_failures = 0, step_failures = 0;
  double worst_residual = 0.0, worst_fe = 0.0;
  for (std::uint32_t a2 = 0; a2 < q; ++a2)
    for (std::uint32_t a1 = 0; a1 < q; ++a1) {
      const Complex lambda = random_lambda();
      const PlaneFunction psi = plane_character(F, FieldElem{a1}, FieldElem{a2}, lambda);
      const double fe = plane_functional_deviation(F, psi);
      worst_fe = std::max(worst_fe, fe);
      if (fe > 1e-9) ++fe_failures;
      const auto fit = classify_plane(F, psi);
      if (fit && fit->a1.idx == a1 && fit->a2.idx == a2 && std::abs(fit->lambda - lambda) <= 1e-9) ++round_trips;
      if (fit) worst_residual = std::max(worst_residual, fit->residual);
      const Steps st = proof_steps(psi);
      if (st.antipodal > 1e-9 || st.root_of_unity > 1e-9 || !st.uniform_sign) ++step_failures;
    }

  // Negating one value of a character mixes the signs in ψ(2x) = ±ψ(x)^2 and
  // breaks the plane equation.
  PlaneFunction mixed = plane_character(F, FieldCtx::one(), F.from_int(2));
  const std::size_t flip = plane_index(F, FieldElem{}, FieldCtx::one());
  mixed[flip] = -mixed[flip];
  const bool mixed_rejected = !proof_steps(mixed).uniform_sign && plane_functional_deviation(F, mixed) > 1.0 &&
                              !classify_plane(F, mixed);

  std::size_t rejected = 0;
  double min_random_fe = 1e300;
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  for (std::size_t t = 0; t < trials; ++t) {
    PlaneFunction psi(std::size_t{q} * q - 1);
    for (auto& v : psi) v = std::polar(1.0, angle(rng));
    const double fe = plane_functional_deviation(F, psi);
    min_random_fe = std::min(min_random_fe, fe);
    if (fe > 1e-3 && !classify_plane(F, psi)) ++rejected;
  }

  const std::size_t total = std::size_t{q} * q;
  Certificate c;
  c.claim_id = "plane-classification";
  c.q = q;
  c.mode = ArithMode::floating;
  c.observed = {{"round_trips", round_trips}, {"random_rejected", rejected}};
  c.expected = {{"round_trips", total}, {"random_rejected", trials}};
  c.tolerance = 1e-9;
  c.pass = round_trips == total && fe_failures == 0 && step_failures == 0 && mixed_rejected && rejected == trials;
  c.metadata = {{"seed", seed},
                {"trials", trials},
                {"worst_residual", worst_residual},
                {"worst_character_deviation", worst_fe},
                {"proof_step_failures", step_failures},
                {"mixed_sign_rejected", mixed_rejected},
                {"min_random_deviation", trials ? min_random_fe : 0.0}};
  return c;
}

ExtremizerVerdict classify_extremizer(const ConeCtx& cc, std::span<const Complex> f, ClassifyOptions opt) {
  const std::size_t n = cc.size();
  if (f.size() != n) throw Error(Errc::invalid_argument, "function length does not match the cone");
  const FieldCtx& F = cc.field();
  ExtremizerVerdict v;

  double lo = 1e300, hi = 0.0, mean = 0.0;
  for (const Complex& z : f) {
    const double a = std::abs(z);
    lo = std::min(lo, a);
    hi = std::max(hi, a);
    mean += a;
  }
  mean /= static_cast<double>(n);
  if (!(hi > 0.0)) throw Error(Errc::zero_function, "classify_extremizer: f is zero");
  v.ratio = ratio(cc, f);
  if (hi - lo > opt.tol * mean) {
    v.reason = NotExtremalReason::nonconstant_modulus;
    v.measured = (hi - lo) / mean;
    return v;
  }

  std::vector<Complex> phi(n);
  for (std::size_t k = 0; k < n; ++k) phi[k] = f[k] / std::abs(f[k]);

  auto at = [&](std::uint32_t a, std::uint32_t b, std::uint32_t c, std::uint32_t d) {
    const auto o = cc.ordinal_of_product(Point4{{FieldElem{a}, FieldElem{b}, FieldElem{c}, FieldElem{d}}});
    return phi[*o];
  };
  auto at_t = [&](std::array<FieldElem, 4> z) { return phi[*cc.ordinal_of_product(Point4{z})]; };
  const FieldElem O{}, I = FieldCtx::one();
  double off = 0.0;
  CharParam ap{};
  // A1 = {(0, η2, 0, η4)} carries a2 and a4; A2 = {(η1, 0, η3, 0)} carries a1 and a3.
  const auto a2 = recover_frequency(F, [&](FieldElem t) { return at_t({O, t, O, I}) / at(0, 0, 0, 1); }, off);
  const auto a4 = recover_frequency(F, [&](FieldElem t) { return at_t({O, I, O, t}) / at(0, 1, 0, 0); }, off);
  const auto a1 = recover_frequency(F, [&](FieldElem t) { return at_t({t, O, I, O}) / at(0, 0, 1, 0); }, off);
  const auto a3 = recover_frequency(F, [&](FieldElem t) { return at_t({I, O, t, O}) / at(1, 0, 0, 0); }, off);
  if (!a1 || !a2 || !a3 || !a4) {
    v.reason = NotExtremalReason::plane_fit_failed;
    v.measured = off;
    return v;
  }
  ap = {*a1, *a2, *a3, *a4};

  // ψ = φ conj(e_a) must be constant, first on the two coordinate planes.
  auto psi = [&](const Point4& z) { return at_t(z.c) * std::conj(product_char(F, ap, z)); };
  const Complex ref = psi(Point4{{O, O, O, I}});
  double plane_dev = 0.0;
  for (std::uint32_t x = 0; x < F.q(); ++x)
    for (std::uint32_t y = 0; y < F.q(); ++y) {
      if (x == 0 && y == 0) continue;
      plane_dev = std::max(plane_dev, std::abs(psi(Point4{{O, FieldElem{x}, O, FieldElem{y}}}) - ref));
      plane_dev = std::max(plane_dev, std::abs(psi(Point4{{FieldElem{x}, O, FieldElem{y}, O}}) - ref));
    }
  if (plane_dev > opt.tol) {
    v.reason = NotExtremalReason::plane_fit_failed;
    v.measured = plane_dev;
    return v;
  }
  double global_dev = 0.0;
  for (std::size_t k = 0; k < n; ++k)
    global_dev = std::max(global_dev, std::abs(phi[k] * std::conj(product_char(F, ap, cc.product_image(k))) - ref));
  if (global_dev > opt.tol) {
    v.reason = NotExtremalReason::global_psi_nonconstant;
    v.measured = global_dev;
    return v;
  }

  const double C = to_double(sharp_constants(cc.q()).C);
  if (v.ratio < C * (1.0 - opt.ratio_tol)) {
    v.reason = NotExtremalReason::ratio_below_c;
    v.measured = (C - v.ratio) / C;
    return v;
  }

  ExtremizerFit fit;
  fit.a_product = ap;
  // e(a_prod · Tη) = e((T^t a_prod) · η).
  const LinearMap4& T = cc.to_product();
  for (std::size_t i = 0; i < 4; ++i) {
    FieldElem s{};
    for (std::size_t j = 0; j < 4; ++j) s = F.add(s, F.mul(T.m[j][i], ap[j]));
    fit.a[i] = s;
  }
  std::vector<Complex> e(n);
  Complex lambda = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    e[k] = product_char(F, ap, cc.product_image(k));
    lambda += f[k] * std::conj(e[k]);
  }
  fit.lambda = lambda / static_cast<double>(n);
  for (std::size_t k = 0; k < n; ++k) fit.residual = std::max(fit.residual, std::abs(f[k] - fit.lambda * e[k]));
  fit.ratio = v.ratio;
  v.fit = fit;
  return v;
}

}  // namespace fxcone
