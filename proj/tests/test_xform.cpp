#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fxcone/xform.hpp"

using namespace fxcone;

namespace {

ConeFunction random_complex(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ConeFunction f(n);
  for (auto& v : f) v = Complex(u(rng), u(rng));
  return f;
}

ConeFunction ones(const ConeCtx& cc) { return ConeFunction(cc.size(), 1.0); }

ConeFunction indicator(const ConeCtx& cc, std::size_t k) {
  ConeFunction f(cc.size(), 0.0);
  f[k] = 1.0;
  return f;
}

// F(u) by looping over the explicit pair lists.
std::vector<Complex> convolution_oracle(const ConeCtx& cc, const ConeFunction& f) {
  std::vector<Complex> F(cc.ambient_size());
  for (std::uint64_t i = 0; i < cc.ambient_size(); ++i)
    for (const auto& [a, b] : cc.sigma_pairs(point_from_index(cc.q(), i))) F[i] += f[a] * f[b];
  return F;
}

// Q by brute force over cone triples, the fourth point forced.
Complex q_oracle(const ConeCtx& cc, const ConeFunction& f1, const ConeFunction& f2, const ConeFunction& f3,
                 const ConeFunction& f4) {
  const auto& F = cc.field();
  Complex s = 0.0;
  for (std::size_t a = 0; a < cc.size(); ++a)
    for (std::size_t b = 0; b < cc.size(); ++b)
      for (std::size_t c = 0; c < cc.size(); ++c) {
        const Point4 d = point_neg(F, point_add(F, point_add(F, cc.point(a), cc.point(b)), cc.point(c)));
        const auto o = cc.ordinal_of(d);
        if (!o) continue;
        s += f1[a] * std::conj(f2[cc.antipode(b)]) * f3[c] * std::conj(f4[cc.antipode(*o)]);
      }
  return s;
}

CharParam param(std::uint32_t a, std::uint32_t b, std::uint32_t c, std::uint32_t d) {
  return {FieldElem{a}, FieldElem{b}, FieldElem{c}, FieldElem{d}};
}

// Ordinal permutation induced by a coordinate permutation preserving the product form.
std::vector<std::size_t> coord_perm(const ConeCtx& cc, std::array<int, 4> perm) {
  std::vector<std::size_t> out(cc.size());
  for (std::size_t k = 0; k < cc.size(); ++k) {
    Point4 y;
    for (int i = 0; i < 4; ++i) y.c[i] = cc.point(k).c[perm[i]];
    out[k] = *cc.ordinal_of(y);
  }
  return out;
}

}  // namespace

TEST_CASE("convolution of the constant reproduces the pair counts") {
  for (auto [p, n] : {std::pair{3u, 1u}, {5u, 1u}, {7u, 1u}, {3u, 2u}}) {
    const ConeCtx cc(build_field(p, n));
    const auto F = pair_convolution(cc, ones(cc));
    const auto tab = cc.sigma_table();
    for (std::uint64_t i = 0; i < cc.ambient_size(); ++i) REQUIRE(F.table[i] == Complex(double(tab[i]), 0.0));
    std::vector<std::int64_t> one(cc.size(), 1);
    const auto E = pair_convolution_exact(cc, one);
    for (std::uint64_t i = 0; i < cc.ambient_size(); ++i) REQUIRE(E[i] == std::int64_t(tab[i]));
  }
}

TEST_CASE("convolution against the pair-list oracle") {
  const ConeCtx cc(build_field(3, 1));
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> d(-5, 5);
  ConeFunction f(cc.size());
  std::vector<std::int64_t> fi(cc.size());
  for (std::size_t k = 0; k < cc.size(); ++k) f[k] = fi[k] = d(rng);
  const auto oracle = convolution_oracle(cc, f);
  const auto F = pair_convolution(cc, f);
  const auto E = pair_convolution_exact(cc, fi);
  Integer lhs = 0;
  for (std::uint64_t i = 0; i < cc.ambient_size(); ++i) {
    REQUIRE(std::abs(F.table[i] - oracle[i]) < 1e-12);
    REQUIRE(double(E[i]) == oracle[i].real());
    lhs += Integer(E[i]) * E[i];
  }
  CHECK(quartic_lhs_exact(E) == lhs);

  const auto g = random_complex(cc.size(), 5);
  const auto og = convolution_oracle(cc, g);
  const auto G = pair_convolution(cc, g);
  for (std::uint64_t i = 0; i < cc.ambient_size(); ++i) REQUIRE(std::abs(G.table[i] - og[i]) < 1e-12);
}

TEST_CASE("indicator convolution") {
  const ConeCtx cc(build_field(5, 1));
  const auto& F = cc.field();
  for (std::size_t k : {std::size_t{0}, std::size_t{17}, cc.size() - 1}) {
    const auto T = pair_convolution(cc, indicator(cc, k));
    const std::uint64_t two = point_index(5, point_add(F, cc.point(k), cc.point(k)));
    for (std::uint64_t i = 0; i < cc.ambient_size(); ++i) REQUIRE(T.table[i] == Complex(i == two ? 1.0 : 0.0));
    CHECK(quartic_lhs(T) == 1.0);
    CHECK(ratio(cc, indicator(cc, k)) == 1.0);
  }
}

TEST_CASE("quartic values at q = 3") {
  const ConeCtx cc(build_field(3, 1));
  CHECK(quartic_lhs(pair_convolution(cc, ones(cc))) == 13344.0);
  CHECK(ratio(cc, ones(cc)) == doctest::Approx(13.03125).epsilon(1e-15));
  for (const auto& a : {param(1, 0, 0, 0), param(2, 1, 0, 2), param(1, 1, 1, 1)}) {
    CHECK(quartic_lhs(pair_convolution(cc, character(cc, a))) == doctest::Approx(13344.0).epsilon(1e-12));
    const auto Z = quartic_lhs_phase(pair_convolution_phase(cc, phase_character(cc, a)));
    REQUIRE(Z.as_integer().has_value());
    CHECK(*Z.as_integer() == 13344);
  }
  std::vector<std::int64_t> one(cc.size(), 1);
  CHECK(ratio_exact(cc, one) == Rational(417, 32));
  CHECK_THROWS_AS(ratio(cc, ConeFunction(cc.size(), 0.0)), Error);
}

TEST_CASE("random functions stay below the constant") {
  const ConeCtx cc(build_field(5, 1));
  const double C = to_double(sharp_constants(5).C);
  for (std::uint64_t s = 0; s < 1000; ++s) REQUIRE(ratio(cc, random_complex(cc.size(), s)) <= C * (1 + 1e-12));
}

TEST_CASE("sharp constants") {
  const auto s3 = sharp_constants(3);
  CHECK(s3.N == 417);
  CHECK(s3.C == Rational(417, 32));
  CHECK(s3.M == Rational(1, 32));
  CHECK(s3.R4 == Rational(33777, 32768));
  CHECK(s3.R == doctest::Approx(3 * std::pow(417.0 / 32768.0, 0.25)).epsilon(1e-14));
  CHECK(sharp_constants(5).N == 3125 + 2500 - 500 - 150 + 15 + 3);
  for (std::uint64_t q : {3, 5, 7, 9, 11, 13, 25, 27, 49}) {
    const auto s = sharp_constants(q);
    const Integer g = cone_size_closed_form(q);
    const Integer q4 = Integer(q) * q * q * q;
    CHECK(s.C == s.R4 * Rational(g * g, q4));
    const Rational gap = 2 - s.M / Rational(q - 1);
    const Integer Q = q;
    CHECK(gap == Rational(5 * Q * Q * Q + Q * Q - 5 * Q - 2, (Q * Q - 1) * (Q * Q - 1)));
    CHECK(gap > 0);
  }
  CHECK_THROWS_AS(sharp_constants(2), Error);
}

TEST_CASE("extension operator and norms") {
  const ConeCtx cc(build_field(3, 1));
  const auto one = ones(cc);
  CHECK(std::abs(extension(cc, one, Point4{}) - 1.0) < 1e-15);
  CHECK_THROWS_AS(extension(cc, one, Point4{}, FieldElem{0}), Error);

  const CharParam b = param(1, 2, 0, 1);
  const auto f = character(cc, b);
  Point4 minus_b;
  for (int i = 0; i < 4; ++i) minus_b.c[i] = cc.field().neg(b[i]);
  CHECK(std::abs(extension(cc, f, minus_b)) == doctest::Approx(1.0).epsilon(1e-14));
  for (std::uint64_t i = 0; i < cc.ambient_size(); ++i) REQUIRE(std::abs(extension(cc, f, point_from_index(3, i))) <= 1 + 1e-12);

  const Norms n1 = norms(cc, one);
  CHECK(n1.l2_sigma == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(n1.l4_counting == doctest::Approx(3 * std::pow(417.0 / 32768.0, 0.25)).epsilon(1e-12));
  CHECK(n1.l4_counting == doctest::Approx(1.007611).epsilon(1e-6));

  // Brute-force fourth power over the 81 points with e(ξ·x) written out.
  const auto& F = cc.field();
  double s4 = 0.0;
  for (std::uint64_t i = 0; i < 81; ++i) {
    const Point4 x = point_from_index(3, i);
    Complex e = 0.0;
    for (const auto& xi : cc.points()) e += std::polar(1.0, 2 * std::numbers::pi * F.trace(dot(F, xi, x)) / 3);
    s4 += std::pow(std::abs(e / 32.0), 4);
  }
  CHECK(std::pow(n1.l4_counting, 4) == doctest::Approx(s4).epsilon(1e-12));

  ConeFunction two(one.size(), 2.0);
  const Norms n2 = norms(cc, two);
  CHECK(n2.l2_sigma == doctest::Approx(2 * n1.l2_sigma));
  CHECK(n2.l4_counting == doctest::Approx(2 * n1.l4_counting));
}

TEST_CASE("Parseval factor") {
  const ConeCtx c3(build_field(3, 1));
  const auto cert = verify_duality(c3, ones(c3));
  CHECK(cert.pass);
  CHECK(std::pow(norms(c3, ones(c3)).l4_counting, 4) == doctest::Approx(81.0 * 13344 / std::pow(32.0, 4)).epsilon(1e-12));
  const auto ind = norms(c3, indicator(c3, 3));
  CHECK(std::pow(ind.l4_counting, 4) == doctest::Approx(81.0 / std::pow(32.0, 4)).epsilon(1e-12));
  for (std::uint32_t p : {3u, 5u, 7u}) {
    const ConeCtx cc(build_field(p, 1));
    for (std::uint64_t s = 0; s < 5; ++s) {
      const auto f = random_complex(cc.size(), 100 + s);
      const double lhs = std::pow(norms(cc, f).l4_counting, 4);
      const double g = double(cc.size());
      const double rhs = std::pow(double(p), 4) / (g * g * g * g) * quartic_lhs(pair_convolution(cc, f));
      CHECK(std::abs(lhs - rhs) <= 1e-9 * rhs);
      CHECK(verify_duality(cc, f, FieldElem{2}).pass);
    }
  }
}

TEST_CASE("symmetrization") {
  const ConeCtx cc(build_field(5, 1));
  // Even nonnegative input is fixed.
  auto g = random_complex(cc.size(), 3);
  ConeFunction even(cc.size());
  for (std::size_t k = 0; k < cc.size(); ++k) even[k] = std::abs(g[k]) + std::abs(g[cc.antipode(k)]);
  const auto se = symmetrize(cc, even);
  for (std::size_t k = 0; k < cc.size(); ++k) REQUIRE(std::abs(se[k] - even[k]) < 1e-14);

  const auto sc = symmetrize(cc, character(cc, param(1, 2, 3, 4)));
  for (auto v : sc) REQUIRE(std::abs(v - 1.0) < 1e-14);

  for (std::uint64_t s = 0; s < 50; ++s) {
    const auto f = random_complex(cc.size(), 500 + s);
    const auto fs = symmetrize(cc, f);
    CHECK(mass(fs) == doctest::Approx(mass(f)).epsilon(1e-13));
    for (std::size_t k = 0; k < cc.size(); ++k) {
      REQUIRE(fs[k].imag() == 0.0);
      REQUIRE(fs[k].real() >= 0.0);
      REQUIRE(fs[k] == fs[cc.antipode(k)]);
    }
    CHECK(quartic_lhs(pair_convolution(cc, f)) <= quartic_lhs(pair_convolution(cc, fs)) * (1 + 1e-12));
  }
}

TEST_CASE("quadrilinear form") {
  const ConeCtx cc(build_field(3, 1));
  const auto one = ones(cc);
  CHECK(std::abs(quadrilinear_Q(cc, one, one, one, one) - 13344.0) < 1e-9);
  const ConeFunction zero(cc.size(), 0.0);
  CHECK(quadrilinear_Q(cc, one, zero, one, one) == Complex(0.0));

  const auto f1 = random_complex(cc.size(), 1), f2 = random_complex(cc.size(), 2);
  const auto f3 = random_complex(cc.size(), 3), f4 = random_complex(cc.size(), 4);
  CHECK(std::abs(quadrilinear_Q(cc, f1, f2, f3, f4) - q_oracle(cc, f1, f2, f3, f4)) < 1e-9);

  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto f = random_complex(cc.size(), 40 + s);
    const Complex qf = quadrilinear_Q(cc, f, f, f, f);
    CHECK(std::abs(qf.imag()) < 1e-9 * std::abs(qf));
    CHECK(qf.real() >= 0.0);
    const auto fs = symmetrize(cc, f);
    CHECK(quadrilinear_Q(cc, fs, fs, fs, fs).real() ==
          doctest::Approx(quartic_lhs(pair_convolution(cc, fs))).epsilon(1e-12));
  }
}

TEST_CASE("ratio invariances") {
  const ConeCtx cc(build_field(5, 1));
  const auto f = random_complex(cc.size(), 77);
  const double r = ratio(cc, f);
  auto near = [&](const ConeFunction& g) { return std::abs(ratio(cc, g) - r) <= 1e-12 * r; };

  ConeFunction g = f;
  for (auto& v : g) v *= std::polar(1.0, 0.7);
  CHECK(near(g));
  for (auto& v : g) v *= 3.5;
  CHECK(near(g));

  const auto e = character(cc, param(2, 0, 4, 1));
  for (std::size_t k = 0; k < cc.size(); ++k) g[k] = f[k] * e[k];
  CHECK(near(g));

  for (std::size_t k = 0; k < cc.size(); ++k) g[k] = f[cc.antipode(k)];
  CHECK(near(g));

  for (auto perm : {std::array<int, 4>{1, 0, 2, 3}, {0, 1, 3, 2}, {2, 3, 0, 1}}) {
    const auto m = coord_perm(cc, perm);
    for (std::size_t k = 0; k < cc.size(); ++k) g[k] = f[m[k]];
    CHECK(near(g));
  }
}

TEST_CASE("phase functions") {
  const ConeCtx cc(build_field(3, 2));
  const CharParam a = param(1, 4, 0, 7);
  const auto ph = phase_character(cc, a);
  const auto f = character(cc, a, Complex(0.0, 2.0));
  const auto g = to_complex(cc, ph, Complex(0.0, 2.0));
  for (std::size_t k = 0; k < cc.size(); ++k) {
    REQUIRE(ph.exponent[k] == character_exponent(cc, a, k));
    REQUIRE(std::abs(f[k] - g[k]) < 1e-14);
  }
  CyclotomicInt z{{Integer(5), Integer(2), Integer(2)}};
  REQUIRE(z.as_integer().has_value());
  CHECK(*z.as_integer() == 3);
  CyclotomicInt w{{Integer(5), Integer(2), Integer(1)}};
  CHECK_FALSE(w.as_integer().has_value());
}
