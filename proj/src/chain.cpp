// Term-by-term evaluation of the reduction from the quartic estimate to the
// per-plane inequalities S(A) <= 0, for even nonnegative functions.

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <stdexcept>

#include "fxcone/parallel.hpp"
#include "fxcone/verify.hpp"

namespace fxcone {

namespace {

template <class A>
struct Num;
template <>
struct Num<double> {
  using Wide = double;
  using Val = double;
  static double val(const Rational& r) { return to_double(r); }
  static nlohmann::json json(double v) { return v; }
};
template <>
struct Num<std::int64_t> {
  using Wide = Integer;
  using Val = Rational;
  static Rational val(const Rational& r) { return r; }
  static nlohmann::json json(const Rational& v) { return to_string(v); }
};

// Sums at one cone point ξ. L° = {μξ : μ != 0, 1}, H+ and H- as in HSet.
//   x* = sum f(η) f(ξ-η), y* = sum f(η)^2 f(ξ-η)^2 over η in L°, H+, H-;
//   p* = sum f(η)^2 over the full line, H+, H-.
template <class A>
struct XiSums {
  A xl{}, xp{}, xm{}, yl{}, yp{}, ym{}, pl{}, pp{}, pm{}, f2{};
};

template <class A>
std::vector<XiSums<A>> xi_sums(const ConeCtx& cc, std::span<const A> f) {
  const FieldCtx& F = cc.field();
  const std::size_t n = cc.size();
  std::vector<XiSums<A>> out(n);
  parallel_chunks(n, std::min<std::size_t>(n, 32), [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t xi = begin; xi < end; ++xi) {
      XiSums<A>& s = out[xi];
      const Point4& x = cc.point(xi);
      const std::uint32_t a = cc.plane_plus_id(xi), b = cc.plane_minus_id(xi);
      auto partner = [&](std::uint32_t eta) {
        const std::int64_t r = cc.ordinal_of_index(point_index(cc.q(), point_sub(F, x, cc.point(eta))));
        if (r < 0) throw std::logic_error("pair partner is not on the cone");
        return static_cast<std::size_t>(r);
      };
      s.f2 = f[xi] * f[xi];
      for (std::uint32_t eta : cc.plane_plus(a)) {
        const A g = f[eta] * f[eta];
        const bool on_line = cc.plane_minus_id(eta) == b;
        (on_line ? s.pl : s.pp) += g;
        if (eta == xi) continue;
        const std::size_t r = partner(eta);
        (on_line ? s.xl : s.xp) += f[eta] * f[r];
        (on_line ? s.yl : s.yp) += g * f[r] * f[r];
      }
      for (std::uint32_t eta : cc.plane_minus(b)) {
        if (cc.plane_plus_id(eta) == a) continue;
        const A g = f[eta] * f[eta];
        const std::size_t r = partner(eta);
        s.pm += g;
        s.xm += f[eta] * f[r];
        s.ym += g * f[r] * f[r];
      }
    }
  });
  return out;
}

template <class A>
std::vector<A> convolution(const ConeCtx& cc, std::span<const A> f) {
  if constexpr (std::is_same_v<A, double>) {
    const ConeFunction c(f.begin(), f.end());
    const RepCountTable t = pair_convolution(cc, c);
    std::vector<double> out(t.table.size());
    for (std::size_t u = 0; u < out.size(); ++u) out[u] = t.table[u].real();
    return out;
  } else {
    return pair_convolution_exact(cc, f);
  }
}

template <class V>
struct Worst {
  std::optional<V> v;
  void add(const V& x) {
    if (!v || x > *v) v = x;
  }
  V get() const { return v.value_or(V(0)); }
};

template <class V>
V abs_v(const V& x) {
  return x < V(0) ? V(-x) : x;
}

struct PlaneCoef {
  Rational m, kl, k4, kp, k, ratio_qp_qm;
};

PlaneCoef plane_coefficients(std::uint64_t q64) {
  const SharpConstants sc = sharp_constants(q64);
  const Integer q = q64;
  const Integer poly = q * q * q * q + 3 * q * q * q - 4 * q * q - 3 * q + 2;
  PlaneCoef c;
  c.m = sc.M / Rational(q - 1);
  c.kl = -Rational(poly, 2 * (q - 1) * (q - 1) * (q + 1));
  c.k4 = -Rational(q - 2, 2);
  c.kp = Rational(q * (q * q * q + 3 * q * q - 3 * q - 4), 2 * (q - 1) * (q + 1) * (q + 1));
  c.k = Rational(poly, 2 * (q + 1) * (q + 1) * (q - 1));
  c.ratio_qp_qm = Rational(q + 1, q - 1);
  return c;
}

template <class V>
struct ChainValues {
  V scale;  // (sum f^2)^2, also the normalization of every gap below
  V quartic, mass_sq, s4;
  V offcone, offcone_bound, offcone_closed, offcone_pointwise;
  V main_lhs, slack, ident_lhs, ident_rhs;
  V t1, t2, t3, upper_bound, plane_sum;
  V zero_gap, cone_gap, cone_sq_gap;
  V cs_line, cs_side, cs_mixed, f4_bound;
  std::vector<V> plane_s, plane_v1, plane_bound;
  std::vector<bool> plane_constant;
};

template <class W>
struct PlaneAcc {
  W xl2{}, xs2{}, xlxs{}, yl{}, ys{}, pl2{}, plps{}, f4{}, p{};
};

template <class A>
ChainValues<typename Num<A>::Val> evaluate_chain(const ConeCtx& cc, std::span<const A> f) {
  using V = typename Num<A>::Val;
  using W = typename Num<A>::Wide;
  const std::size_t n = cc.size();
  const std::uint64_t q = cc.q();
  if (f.size() != n) throw Error(Errc::invalid_argument, "chain: function length does not match the cone");

  std::vector<A> f2(n);
  for (std::size_t k = 0; k < n; ++k) f2[k] = f[k] * f[k];
  const std::vector<A> Ft = convolution<A>(cc, f);
  const std::vector<A> Gt = convolution<A>(cc, std::span<const A>(f2));
  const std::vector<XiSums<A>> xs = xi_sums(cc, f);

  const SharpConstants sc = sharp_constants(q);
  const PlaneCoef pc = plane_coefficients(q);
  const V C = Num<A>::val(sc.C), M = Num<A>::val(sc.M), m = Num<A>::val(pc.m);
  const V kl = Num<A>::val(pc.kl), k4 = Num<A>::val(pc.k4), kp = Num<A>::val(pc.kp), kk = Num<A>::val(pc.k);
  const V qq = V(q * (q + 1));

  W s2{}, s4{};
  for (std::size_t k = 0; k < n; ++k) {
    s2 += W(f2[k]);
    s4 += W(f2[k]) * f2[k];
  }
  W quartic{}, offcone{}, off_g{};
  Worst<V> pointwise;
  for (std::size_t u = 0; u < Ft.size(); ++u) {
    const W sq = W(Ft[u]) * Ft[u];
    quartic += sq;
    if (cc.region_of_index(u) != PointRegion::generic) continue;
    offcone += sq;
    off_g += W(Gt[u]);
    pointwise.add(V(sq) - qq * V(W(Gt[u])));
  }

  ChainValues<V> out;
  out.mass_sq = V(s2) * V(s2);
  out.scale = out.mass_sq > V(0) ? out.mass_sq : V(1);
  out.quartic = V(quartic);
  out.s4 = V(s4);
  out.zero_gap = abs_v(V(Ft[0]) - V(s2));

  const std::size_t np = cc.plane_count();
  std::vector<PlaneAcc<W>> plus(np), minus(np);
  W cone_sq{}, cone_g{}, xpxm{}, pppm{}, xsq{};
  Worst<V> cone_gap, cone_sq_gap, cs_line, cs_side, cs_mixed;
  for (std::size_t xi = 0; xi < n; ++xi) {
    const XiSums<A>& s = xs[xi];
    const A Fx = s.xl + s.xp + s.xm;
    const A Gx = s.yl + s.yp + s.ym;
    const std::uint64_t u = cc.index(xi);
    cone_gap.add(abs_v(V(Ft[u] - Fx)));
    cone_sq_gap.add(abs_v(V(Gt[u] - Gx)));
    cone_sq += W(Fx) * Fx;
    cone_g += W(Gx);
    xpxm += W(s.xp) * s.xm;
    pppm += W(s.pp) * s.pm;
    xsq += W(s.xp) * s.xp + W(s.xm) * s.xm;

    cs_line.add(V(W(s.xl) * s.xl) - V(q - 2) * V(W(s.yl)));
    cs_side.add(V(W(s.xp) * s.xp) - V(q * (q - 1)) * V(W(s.yp)));
    cs_side.add(V(W(s.xm) * s.xm) - V(q * (q - 1)) * V(W(s.ym)));
    cs_mixed.add(V(W(s.xl) * s.xp) - V(W(s.pl - s.f2) * s.pp));
    cs_mixed.add(V(W(s.xl) * s.xm) - V(W(s.pl - s.f2) * s.pm));

    auto fill = [&](PlaneAcc<W>& acc, A x_side, A y_side, A p_side) {
      acc.xl2 += W(s.xl) * s.xl;
      acc.xs2 += W(x_side) * x_side;
      acc.xlxs += W(s.xl) * x_side;
      acc.yl += W(s.yl);
      acc.ys += W(y_side);
      acc.pl2 += W(s.pl) * s.pl;
      acc.plps += W(s.pl) * p_side;
      acc.f4 += W(s.f2) * s.f2;
      acc.p += W(s.f2);
    };
    fill(plus[cc.plane_plus_id(xi)], s.xp, s.yp, s.pp);
    fill(minus[cc.plane_minus_id(xi)], s.xm, s.ym, s.pm);
  }
  out.cone_gap = cone_gap.get();
  out.cone_sq_gap = cone_sq_gap.get();
  out.cs_line = cs_line.get();
  out.cs_side = cs_side.get();
  out.cs_mixed = cs_mixed.get();

  out.offcone = V(offcone);
  out.offcone_bound = qq * V(off_g);
  out.offcone_closed = qq * (out.mass_sq - V(cone_g) - out.s4);
  out.offcone_pointwise = pointwise.get();
  out.main_lhs = V(cone_sq) - qq * V(cone_g) - qq * out.s4 - M * out.mass_sq;
  out.slack = out.offcone_bound - out.offcone;
  out.ident_lhs = out.quartic - C * out.mass_sq;
  out.ident_rhs = out.main_lhs - out.slack;
  out.t1 = V(2) * V(xpxm) - m * V(pppm);
  out.t2 = (V(2) - m) * V(xpxm);
  out.t3 = (V(1) - m / V(2)) * V(xsq);
  out.upper_bound = out.main_lhs - out.t1 + out.t3;

  Worst<V> f4_bound;
  out.plane_sum = V(0);
  auto finish = [&](const PlaneAcc<W>& acc) {
    const V half = V(1) / V(2);
    const V S = half * V(acc.xl2) + (V(2) - m * half) * V(acc.xs2) + V(2) * V(acc.xlxs) - qq * half * V(acc.yl) -
                qq * V(acc.ys) - m * half * V(acc.pl2) - m * V(acc.plps) - qq * half * V(acc.f4);
    const V P2 = V(acc.p) * V(acc.p);
    const V v1 = kl * V(acc.pl2) + k4 * V(acc.f4) + kp * P2;
    const V bound = kk * (P2 - Num<A>::val(pc.ratio_qp_qm) * V(acc.pl2));
    f4_bound.add(P2 / V((q * q) - 1) - V(acc.f4));
    out.plane_s.push_back(S);
    out.plane_v1.push_back(v1);
    out.plane_bound.push_back(bound);
    out.plane_sum += S;
  };
  for (const auto& acc : plus) finish(acc);
  for (const auto& acc : minus) finish(acc);
  out.f4_bound = f4_bound.get();

  auto constant_on = [&](std::span<const std::uint32_t> pts) {
    A lo = f[pts[0]], hi = f[pts[0]];
    for (std::uint32_t k : pts) {
      lo = std::min(lo, f[k]);
      hi = std::max(hi, f[k]);
    }
    if constexpr (std::is_same_v<A, double>)
      return hi - lo <= 1e-12 * std::max(1.0, std::abs(hi));
    else
      return hi == lo;
  };
  for (std::uint32_t i = 0; i < np; ++i) out.plane_constant.push_back(constant_on(cc.plane_plus(i)));
  for (std::uint32_t i = 0; i < np; ++i) out.plane_constant.push_back(constant_on(cc.plane_minus(i)));
  return out;
}

std::vector<double> random_even_real(const ConeCtx& cc, std::mt19937_64& rng) {
  std::vector<double> g(cc.size());
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ConeFunction h(cc.size());
  for (auto& v : h) {
    const double re = u(rng);
    const double im = u(rng);
    v = Complex(re, im);
  }
  const ConeFunction s = symmetrize(cc, h);
  for (std::size_t k = 0; k < g.size(); ++k) g[k] = s[k].real();
  return g;
}

std::vector<std::int64_t> random_even_int(const ConeCtx& cc, std::mt19937_64& rng) {
  std::vector<std::int64_t> g(cc.size());
  std::uniform_int_distribution<std::int64_t> u(0, 6);
  for (std::size_t k = 0; k < g.size(); ++k) {
    const std::size_t a = cc.antipode(k);
    g[k] = a < k ? g[a] : u(rng);
  }
  return g;
}

std::size_t budget_trials(std::size_t trials, double cost_per_trial, double budget = 5e8) {
  const double cap = std::max(1.0, std::floor(budget / std::max(1.0, cost_per_trial)));
  return std::min<std::size_t>(trials, static_cast<std::size_t>(cap));
}

template <class A>
std::vector<Certificate> run_chain(const ConeCtx& cc, std::size_t trials, std::uint64_t seed, ArithMode mode) {
  using V = typename Num<A>::Val;
  constexpr bool exact = !std::is_same_v<A, double>;
  const double tol = exact ? 0.0 : 1e-9;
  const std::uint32_t q = cc.q();
  const double pairs = static_cast<double>(cc.size()) * static_cast<double>(cc.size());
  const std::size_t eff = budget_trials(trials, 2.0 * pairs);

  std::mt19937_64 rng(derive_seed(seed, "chain"));
  auto draw = [&] {
    if constexpr (exact)
      return random_even_int(cc, rng);
    else
      return random_even_real(cc, rng);
  };

  Worst<V> decomposition, offcone, main_est, sep12, sep23, plane_s, plane_v1, plane_b, cs_line, cs_side, cs_mixed,
      f4b;
  std::size_t nonconstant_planes = 0, strict_nonconstant = 0;
  V min_slack_seen = V(0);
  bool have_slack = false;
  for (std::size_t t = 0; t < eff; ++t) {
    const auto f = draw();
    const ChainValues<V> r = evaluate_chain<A>(cc, std::span<const A>(f));
    const V& sc = r.scale;
    decomposition.add(abs_v(V(r.ident_lhs - r.ident_rhs)) / sc);
    decomposition.add(abs_v(V(r.upper_bound - r.plane_sum)) / sc);
    decomposition.add(abs_v(V(r.offcone_bound - r.offcone_closed)) / sc);
    decomposition.add(r.zero_gap / sc);
    decomposition.add(r.cone_gap / sc);
    decomposition.add(r.cone_sq_gap / sc);
    offcone.add((r.offcone - r.offcone_bound) / sc);
    offcone.add(r.offcone_pointwise / sc);
    main_est.add(r.main_lhs / sc);
    sep12.add((r.t1 - r.t2) / sc);
    sep23.add((r.t2 - r.t3) / sc);
    for (std::size_t i = 0; i < r.plane_s.size(); ++i) {
      plane_s.add(r.plane_s[i] / sc);
      plane_v1.add((r.plane_s[i] - r.plane_v1[i]) / sc);
      plane_b.add((r.plane_v1[i] - r.plane_bound[i]) / sc);
      plane_b.add(r.plane_bound[i] / sc);
      if (!r.plane_constant[i]) {
        ++nonconstant_planes;
        if (r.plane_s[i] < V(0)) ++strict_nonconstant;
        const V slack = -r.plane_s[i] / sc;
        if (!have_slack || slack < min_slack_seen) min_slack_seen = slack;
        have_slack = true;
      }
    }
    cs_line.add(r.cs_line / sc);
    cs_side.add(r.cs_side / sc);
    cs_mixed.add(r.cs_mixed / sc);
    f4b.add(r.f4_bound / sc);
  }

  auto cert = [&](std::string id, const V& worst, bool pass, nlohmann::json meta) {
    Certificate c;
    c.claim_id = std::move(id);
    c.q = q;
    c.mode = mode;
    c.observed = Num<A>::json(worst);
    c.expected = exact ? nlohmann::json("<= 0") : nlohmann::json(tol);
    c.tolerance = tol;
    c.pass = pass;
    meta["trials"] = eff;
    meta["requested_trials"] = trials;
    meta["seed"] = seed;
    meta["normalization"] = "(sum f^2)^2";
    c.metadata = std::move(meta);
    return c;
  };
  auto within = [&](const V& worst) { return worst <= V(tol); };

  std::vector<Certificate> out;
  out.push_back(cert("chain-decomposition", decomposition.get(), within(decomposition.get()),
                     {{"checks",
                       {"quartic - C (sum f^2)^2 = main - offcone slack", "sum of S(A) = separated upper bound",
                        "off-cone pair mass closed form", "F(0) = sum f^2", "F on the cone from line and H sums",
                        "F2 on the cone from line and H sums"}}}));
  out.push_back(cert("chain-offcone-bound", offcone.get(), within(offcone.get()), {{"factor", q * (q + 1)}}));
  out.push_back(cert("chain-main-estimate", main_est.get(), within(main_est.get()), {}));

  const SharpConstants sharp = sharp_constants(q);
  const Rational two_minus = Rational(2) - sharp.M / Rational(q - 1);
  const Integer qi = q;
  const Rational closed(5 * qi * qi * qi + qi * qi - 5 * qi - 2, (qi * qi - 1) * (qi * qi - 1));
  const bool coef_ok = two_minus == closed && two_minus > 0;
  const V sep = std::max(sep12.get(), sep23.get());
  out.push_back(cert("chain-mixed-term-separation", sep, within(sep) && coef_ok,
                     {{"coefficient", to_string(two_minus)},
                      {"coefficient_closed_form", to_string(closed)},
                      {"separation_worst", Num<A>::json(sep12.get())},
                      {"am_gm_worst", Num<A>::json(sep23.get())}}));

  const V pb = std::max({plane_s.get(), plane_v1.get(), plane_b.get(), cs_line.get(), cs_side.get(), cs_mixed.get(),
                         f4b.get()});
  bool plane_pass = within(pb);
  if constexpr (exact) plane_pass = plane_pass && strict_nonconstant == nonconstant_planes;
  out.push_back(cert("chain-plane-bound", plane_s.get(), plane_pass,
                     {{"S_vs_fubini_form", Num<A>::json(plane_v1.get())},
                      {"fubini_vs_closed_bound", Num<A>::json(plane_b.get())},
                      {"line_cauchy_schwarz", Num<A>::json(cs_line.get())},
                      {"side_cauchy_schwarz", Num<A>::json(cs_side.get())},
                      {"mixed_am_gm", Num<A>::json(cs_mixed.get())},
                      {"fourth_power_mean", Num<A>::json(f4b.get())},
                      {"nonconstant_planes", nonconstant_planes},
                      {"strictly_negative_on_nonconstant", strict_nonconstant},
                      {"min_relative_slack", Num<A>::json(min_slack_seen)}}));

  // Equality cases: f = 1, and f constant on one plane with random values elsewhere.
  const std::vector<A> ones(cc.size(), A(1));
  const ChainValues<V> e = evaluate_chain<A>(cc, std::span<const A>(ones));
  Worst<V> eq;
  eq.add(abs_v(e.main_lhs) / e.scale);
  eq.add(abs_v(e.ident_lhs) / e.scale);
  eq.add(abs_v(V(e.offcone - e.offcone_bound)) / e.scale);
  eq.add(abs_v(V(e.t1 - e.t2)) / e.scale);
  eq.add(abs_v(V(e.t2 - e.t3)) / e.scale);
  for (std::size_t i = 0; i < e.plane_s.size(); ++i) {
    eq.add(abs_v(e.plane_s[i]) / e.scale);
    eq.add(abs_v(e.plane_v1[i]) / e.scale);
    eq.add(abs_v(e.plane_bound[i]) / e.scale);
  }
  Worst<V> pc_zero, pc_others;
  const std::size_t pc_trials = std::min<std::size_t>(eff, 20);
  for (std::size_t t = 0; t < pc_trials; ++t) {
    auto f = draw();
    const A c = exact ? A(1 + t % 5) : A(0.25 + 0.5 * static_cast<double>(t % 3));
    for (std::uint32_t k : cc.plane_plus(0)) f[k] = c;
    const ChainValues<V> r = evaluate_chain<A>(cc, std::span<const A>(f));
    pc_zero.add(abs_v(r.plane_s[0]) / r.scale);
    for (std::size_t i = 1; i < r.plane_s.size(); ++i) pc_others.add(r.plane_s[i] / r.scale);
  }
  const V eq_worst = std::max(eq.get(), pc_zero.get());
  out.push_back(cert("chain-equality-constant", eq_worst, within(eq_worst) && within(pc_others.get()),
                     {{"constant_function_worst", Num<A>::json(eq.get())},
                      {"plane_constant_worst", Num<A>::json(pc_zero.get())},
                      {"other_planes_max", Num<A>::json(pc_others.get())},
                      {"plane_constant_trials", pc_trials}}));
  if constexpr (exact)
    for (auto& c : out) c.expected = c.claim_id == "chain-decomposition" || c.claim_id == "chain-equality-constant"
                                         ? nlohmann::json("0")
                                         : nlohmann::json("<= 0");
  return out;
}

Certificate symmetrization_impl(const ConeCtx& cc, std::size_t trials, std::uint64_t seed) {
  const double pairs = static_cast<double>(cc.size()) * static_cast<double>(cc.size());
  const std::size_t eff = budget_trials(trials, 4.0 * pairs);
  std::mt19937_64 rng(derive_seed(seed, "chain-symmetrization"));
  double worst = -1e300, mass_gap = 0.0, q_gap = 0.0;
  for (std::size_t t = 0; t < eff; ++t) {
    const ConeFunction f = random_complex_function(cc.size(), rng());
    const ConeFunction s = symmetrize(cc, f);
    const double a = quartic_lhs(pair_convolution(cc, f));
    const double b = quartic_lhs(pair_convolution(cc, s));
    const double Q = quadrilinear_Q(cc, f, f, f, f).real();
    worst = std::max(worst, (a - b) / std::max(1.0, b));
    mass_gap = std::max(mass_gap, rel_gap(mass(f), mass(s)));
    q_gap = std::max(q_gap, rel_gap(Q, a));
  }
  Certificate c;
  c.claim_id = "chain-symmetrization";
  c.q = cc.q();
  c.mode = ArithMode::floating;
  c.observed = worst;
  c.expected = 1e-9;
  c.tolerance = 1e-9;
  c.pass = worst <= 1e-9 && mass_gap <= 1e-12 && q_gap <= 1e-9;
  c.metadata = {{"trials", eff}, {"requested_trials", trials}, {"seed", seed},
                {"mass_gap", mass_gap}, {"q_form_gap", q_gap}, {"observed_is", "max (Q(f)-Q(f#))/Q(f#)"}};
  return c;
}

}  // namespace

ChainTerms chain_terms(const ConeCtx& cc, std::span<const double> f) {
  const ChainValues<double> r = evaluate_chain<double>(cc, f);
  ChainTerms t;
  t.quartic = r.quartic;
  t.mass_sq = r.mass_sq;
  t.offcone = r.offcone;
  t.offcone_bound = r.offcone_bound;
  t.offcone_closed = r.offcone_closed;
  t.main_lhs = r.main_lhs;
  t.upper_bound = r.upper_bound;
  t.plane_sum = r.plane_sum;
  t.plane_s = r.plane_s;
  t.plane_bound = r.plane_bound;
  return t;
}

std::vector<Rational> plane_s_exact(const ConeCtx& cc, std::span<const std::int64_t> f) {
  return evaluate_chain<std::int64_t>(cc, f).plane_s;
}

Certificate symmetrization_check(const ConeCtx& cc, std::size_t trials, std::uint64_t seed) {
  return symmetrization_impl(cc, trials, seed);
}

std::vector<Certificate> chain_check(const ConeCtx& cc, std::size_t trials, std::uint64_t seed, ArithMode mode) {
  std::vector<Certificate> out = mode == ArithMode::exact ? run_chain<std::int64_t>(cc, trials, seed, mode)
                                                          : run_chain<double>(cc, trials, seed, mode);
  out.push_back(symmetrization_impl(cc, trials, seed));
  std::sort(out.begin(), out.end(), [](const Certificate& a, const Certificate& b) { return a.claim_id < b.claim_id; });
  return out;
}

Certificate mixed_product_identity_check(const ConeCtx& cc, std::size_t trials, std::uint64_t seed,
                                         ArithMode mode) {
  if (trials < 1) throw Error(Errc::invalid_argument, "mixed product identity needs at least one trial");
  const std::uint32_t q = cc.q();
  const std::size_t n = cc.size();
  std::mt19937_64 rng(derive_seed(seed, "mixed-product-identity"));

  // sum over ξ of (sum over A+_ξ of g)(sum over A-_ξ of g), summed point by point.
  auto lhs = [&](auto const& g, auto zero) {
    auto total = zero;
    for (std::size_t xi = 0; xi < n; ++xi) {
      auto a = zero, b = zero;
      for (std::uint32_t k : cc.plane_plus(cc.plane_plus_id(xi))) a += g[k];
      for (std::uint32_t k : cc.plane_minus(cc.plane_minus_id(xi))) b += g[k];
      total += a * b;
    }
    return total;
  };

  Certificate c;
  c.claim_id = "mixed-product-identity";
  c.q = q;
  c.mode = mode;
  nlohmann::json samples = nlohmann::json::array();
  if (mode == ArithMode::exact) {
    std::uniform_int_distribution<int> u(0, 10);
    std::size_t mismatches = 0;
    auto run = [&](const std::vector<Integer>& g) {
      Integer m = 0;
      for (const Integer& v : g) m += v;
      const Integer l = lhs(g, Integer(0));
      const Integer r = Integer(q - 1) * m * m;
      if (l != r) ++mismatches;
      return std::pair{l, r};
    };
    const auto [l1, r1] = run(std::vector<Integer>(n, Integer(1)));
    samples.push_back({{"input", "constant"}, {"lhs", l1.str()}, {"rhs", r1.str()}});
    std::vector<Integer> ind(n, Integer(0));
    for (std::uint32_t k : cc.plane_plus(0)) ind[k] = 1;
    const auto [l2, r2] = run(ind);
    samples.push_back({{"input", "plane indicator"}, {"lhs", l2.str()}, {"rhs", r2.str()}});
    for (std::size_t t = 0; t < trials; ++t) {
      std::vector<Integer> g(n);
      for (auto& v : g) v = u(rng);
      run(g);
    }
    c.observed = mismatches;
    c.expected = 0;
    c.tolerance = 0.0;
    c.pass = mismatches == 0;
  } else {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
      std::vector<double> g(n);
      for (auto& v : g) v = u(rng);
      double m = 0.0;
      for (double v : g) m += v;
      worst = std::max(worst, rel_gap(lhs(g, 0.0), (q - 1.0) * m * m));
    }
    c.observed = worst;
    c.expected = 0.0;
    c.tolerance = 1e-9;
    c.pass = worst <= 1e-9;
  }
  c.metadata = {{"trials", trials}, {"seed", seed}, {"examples", samples}};
  return c;
}

}  // namespace fxcone
