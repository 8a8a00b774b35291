#include <doctest.h>

#include <cmath>
#include <random>

#include "fxcone/parallel.hpp"
#include "fxcone/verify.hpp"

using namespace fxcone;

namespace {

CharParam param(std::uint32_t a, std::uint32_t b, std::uint32_t c, std::uint32_t d) {
  return {FieldElem{a}, FieldElem{b}, FieldElem{c}, FieldElem{d}};
}

std::vector<double> real_part(const ConeFunction& f) {
  std::vector<double> out(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) out[k] = f[k].real();
  return out;
}

// sum_ξ (sum_{A+_ξ} g)(sum_{A-_ξ} g) straight from the plane tables.
Integer mixed_lhs(const ConeCtx& cc, const std::vector<std::int64_t>& g) {
  std::vector<Integer> plus(cc.plane_count()), minus(cc.plane_count());
  for (std::uint32_t i = 0; i < cc.plane_count(); ++i) {
    for (auto k : cc.plane_plus(i)) plus[i] += g[k];
    for (auto k : cc.plane_minus(i)) minus[i] += g[k];
  }
  Integer s = 0;
  for (std::size_t k = 0; k < cc.size(); ++k) s += plus[cc.plane_plus_id(k)] * minus[cc.plane_minus_id(k)];
  return s;
}

// Direct quadruple search over F_q^2 \ {0}.
double plane_deviation_oracle(const FieldCtx& F, const PlaneFunction& psi) {
  const std::uint32_t q = F.q();
  auto at = [&](std::uint32_t a, std::uint32_t b) { return psi[a + q * b - 1]; };
  double dev = 0.0;
  for (std::uint32_t x1 = 0; x1 < q; ++x1)
    for (std::uint32_t x2 = 0; x2 < q; ++x2)
      for (std::uint32_t y1 = 0; y1 < q; ++y1)
        for (std::uint32_t y2 = 0; y2 < q; ++y2)
          for (std::uint32_t z1 = 0; z1 < q; ++z1)
            for (std::uint32_t z2 = 0; z2 < q; ++z2) {
              if ((!x1 && !x2) || (!y1 && !y2) || (!z1 && !z2)) continue;
              const FieldElem w1 = F.sub(F.add(FieldElem{x1}, FieldElem{y1}), FieldElem{z1});
              const FieldElem w2 = F.sub(F.add(FieldElem{x2}, FieldElem{y2}), FieldElem{z2});
              if (!w1.idx && !w2.idx) continue;
              dev = std::max(dev, std::abs(at(x1, x2) * at(y1, y2) - at(z1, z2) * at(w1.idx, w2.idx)));
            }
  return dev;
}

}  // namespace

TEST_CASE("census and sharpness certificates") {
  const ConeCtx c3(build_field(3, 1));
  const auto cen = census_check(c3);
  CHECK(cen.pass);
  CHECK(cen.observed == nlohmann::json{{"zero", 32}, {"on_cone", 13}, {"generic", 12}});
  CHECK(cen.metadata["total_pairs"] == 1024);
  const auto sh = sharpness_check(c3);
  CHECK(sh.pass);
  CHECK(sh.observed["quartic_lhs"] == "13344");
  CHECK(sh.observed["lhs_times_den"] == "427008");
  CHECK(sh.expected["C"] == "417/32");
  const ConeCtx c5(build_field(5, 1));
  CHECK(census_check(c5).observed["on_cone"] == 43);
  CHECK(sharpness_check(c5).pass);
}

TEST_CASE("mixed-product identity against a direct oracle") {
  for (std::uint32_t p : {3u, 5u}) {
    const ConeCtx cc(build_field(p, 1));
    const Integer q = p;
    std::mt19937_64 rng(p);
    std::uniform_int_distribution<int> d(0, 9);
    for (int t = 0; t < 20; ++t) {
      std::vector<std::int64_t> g(cc.size());
      Integer total = 0;
      for (auto& v : g) total += (v = d(rng));
      REQUIRE(mixed_lhs(cc, g) == (q - 1) * total * total);
    }
    std::vector<std::int64_t> one(cc.size(), 1);
    const Integer G = cc.size();
    CHECK(mixed_lhs(cc, one) == G * (q * q - 1) * (q * q - 1));
    CHECK(mixed_lhs(cc, one) == (q - 1) * G * G);
    std::vector<std::int64_t> plane(cc.size(), 0);
    for (auto k : cc.plane_plus(1)) plane[k] = 1;
    CHECK(mixed_lhs(cc, plane) == (q - 1) * (q * q - 1) * (q * q - 1));
    CHECK(mixed_product_identity_check(cc, 100, 1, ArithMode::exact).pass);
    CHECK(mixed_product_identity_check(cc, 100, 1, ArithMode::floating).pass);
  }
  const ConeCtx c3(build_field(3, 1));
  std::vector<std::int64_t> one(c3.size(), 1);
  CHECK(mixed_lhs(c3, one) == 2048);
}

TEST_CASE("chain terms for the constant function") {
  for (std::uint32_t p : {3u, 5u}) {
    const ConeCtx cc(build_field(p, 1));
    const std::vector<double> one(cc.size(), 1.0);
    const ChainTerms t = chain_terms(cc, one);
    const double C = to_double(sharp_constants(p).C);
    CHECK(t.quartic == doctest::Approx(C * t.mass_sq).epsilon(1e-12));
    CHECK(std::abs(t.main_lhs) <= 1e-9 * t.mass_sq);
    CHECK(std::abs(t.upper_bound) <= 1e-9 * t.mass_sq);
    CHECK(t.plane_s.size() == 2 * (p + 1));
    for (double s : t.plane_s) CHECK(std::abs(s) <= 1e-9 * t.mass_sq);
    for (double b : t.plane_bound) CHECK(std::abs(b) <= 1e-9 * t.mass_sq);
    const std::vector<std::int64_t> onei(cc.size(), 1);
    for (const auto& s : plane_s_exact(cc, onei)) CHECK(s == 0);
  }
}

TEST_CASE("chain terms for random even nonnegative functions") {
  for (std::uint32_t p : {3u, 5u}) {
    const ConeCtx cc(build_field(p, 1));
    const double C = to_double(sharp_constants(p).C);
    for (std::uint64_t s = 0; s < 30; ++s) {
      const auto f = real_part(random_even_nonnegative(cc, 1000 + s));
      const ChainTerms t = chain_terms(cc, f);
      const double scale = t.mass_sq;
      // Independent evaluation of the quartic and the off-cone part.
      ConeFunction fc(f.begin(), f.end());
      const auto F = pair_convolution(cc, fc);
      double quartic = 0.0, off = 0.0;
      for (std::uint64_t u = 0; u < cc.ambient_size(); ++u) {
        const double v = std::norm(F.table[u]);
        quartic += v;
        if (cc.region_of_index(u) == PointRegion::generic) off += v;
      }
      CHECK(t.quartic == doctest::Approx(quartic).epsilon(1e-12));
      CHECK(t.offcone == doctest::Approx(off).epsilon(1e-12));
      CHECK(t.quartic <= C * scale * (1 + 1e-12));
      CHECK(t.offcone <= t.offcone_bound * (1 + 1e-12));
      CHECK(t.offcone_bound == doctest::Approx(t.offcone_closed).epsilon(1e-10));
      CHECK(t.main_lhs <= 1e-9 * scale);
      CHECK(t.main_lhs <= t.upper_bound + 1e-9 * scale);
      CHECK(t.plane_sum == doctest::Approx(t.upper_bound).epsilon(1e-9).scale(scale));
      for (std::size_t i = 0; i < t.plane_s.size(); ++i) {
        CHECK(t.plane_s[i] <= t.plane_bound[i] + 1e-9 * scale);
        CHECK(t.plane_bound[i] <= 1e-9 * scale);
      }
    }
  }
}

TEST_CASE("plane-local equality") {
  const ConeCtx cc(build_field(5, 1));
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> d(0, 6);
  std::vector<std::int64_t> f(cc.size());
  for (std::size_t k = 0; k < cc.size(); ++k) {
    const std::size_t a = cc.antipode(k);
    if (a < k) f[k] = f[a];
    else f[k] = d(rng);
  }
  for (auto k : cc.plane_plus(2)) f[k] = 4;
  const auto s = plane_s_exact(cc, f);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i == 2) CHECK(s[i] == 0);
    else CHECK(s[i] < 0);
  }
}

TEST_CASE("chain certificates") {
  for (std::uint32_t p : {3u, 5u}) {
    const ConeCtx cc(build_field(p, 1));
    for (auto mode : {ArithMode::floating, ArithMode::exact}) {
      const auto certs = chain_check(cc, 40, 9, mode);
      CHECK(certs.size() >= 7);
      for (const auto& c : certs) {
        INFO(c.claim_id);
        CHECK(c.pass);
      }
      for (std::size_t i = 1; i < certs.size(); ++i) CHECK(certs[i - 1].claim_id < certs[i].claim_id);
    }
  }
}

TEST_CASE("functional equation on the cone") {
  const ConeCtx cc(build_field(3, 1));
  const auto e = character(cc, param(1, 2, 0, 1));
  const auto c1 = functional_eq_check(cc, e);
  CHECK(c1.pass);
  CHECK(c1.observed.get<double>() < 1e-12);
  CHECK(functional_eq_check(cc, phase_character(cc, param(1, 2, 0, 1))).pass);
  CHECK(functional_eq_check(cc, ConeFunction(cc.size(), 1.0)).pass);
  auto bad = e;
  bad[5] = -bad[5];
  const auto c2 = functional_eq_check(cc, bad);
  CHECK_FALSE(c2.pass);
  CHECK(c2.observed.get<double>() == doctest::Approx(2.0).epsilon(1e-12));
  auto ph = phase_character(cc, param(0, 1, 1, 0));
  ph.exponent[3] = (ph.exponent[3] + 1) % 3;
  CHECK_FALSE(functional_eq_check(cc, ph).pass);
  auto shrunk = e;
  shrunk[0] *= 0.5;
  CHECK_THROWS_AS(functional_eq_check(cc, shrunk), Error);
  const ConeCtx c5(build_field(5, 1));
  CHECK(functional_eq_check(c5, character(c5, param(1, 1, 2, 3)), false, 5000, 4).pass);
}

TEST_CASE("plane classification") {
  const auto F5 = build_field(5, 1);
  const Complex i(0.0, 1.0);
  const auto psi = plane_character(*F5, FieldElem{1}, FieldElem{2}, i);
  const auto fit = classify_plane(*F5, psi);
  REQUIRE(fit.has_value());
  CHECK(fit->a1 == FieldElem{1});
  CHECK(fit->a2 == FieldElem{2});
  CHECK(std::abs(fit->lambda - i) < 1e-12);
  CHECK(fit->residual < 1e-12);
  CHECK(plane_functional_deviation(*F5, psi) < 1e-12);

  const PlaneFunction one(24, 1.0);
  const auto fo = classify_plane(*F5, one);
  REQUIRE(fo.has_value());
  CHECK(fo->a1 == FieldElem{0});
  CHECK(fo->a2 == FieldElem{0});

  const auto F3 = build_field(3, 1);
  for (std::uint32_t a1 = 0; a1 < 3; ++a1)
    for (std::uint32_t a2 = 0; a2 < 3; ++a2) {
      const auto g = plane_character(*F3, FieldElem{a1}, FieldElem{a2}, std::polar(1.7, 0.3));
      CHECK(plane_deviation_oracle(*F3, g) < 1e-12);
      const auto gf = classify_plane(*F3, g);
      REQUIRE(gf.has_value());
      CHECK(gf->a1.idx == a1);
      CHECK(gf->a2.idx == a2);
    }
  auto mixed = plane_character(*F3, FieldElem{1}, FieldElem{2});
  mixed[3] = -mixed[3];
  CHECK(plane_deviation_oracle(*F3, mixed) > 1.0);
  CHECK(plane_functional_deviation(*F3, mixed) == doctest::Approx(plane_deviation_oracle(*F3, mixed)));
  CHECK_FALSE(classify_plane(*F3, mixed).has_value());

  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 6.283185307179586);
  PlaneFunction r(8);
  for (auto& v : r) v = std::polar(1.0, u(rng));
  CHECK(plane_deviation_oracle(*F3, r) > 1e-3);
  CHECK_FALSE(classify_plane(*F3, r).has_value());

  CHECK(plane_classification_check(*F3, 100, 0).pass);
  CHECK(plane_classification_check(*F5, 100, 0).pass);
}

TEST_CASE("extremizer classification") {
  const ConeCtx c5(build_field(5, 1));
  const auto f = character(c5, param(1, 2, 3, 4), 2.5);
  const auto v = classify_extremizer(c5, f);
  REQUIRE(v.fit.has_value());
  CHECK(v.reason == NotExtremalReason::none);
  CHECK(v.fit->a == param(1, 2, 3, 4));
  CHECK(std::abs(v.fit->lambda - 2.5) < 1e-12);
  CHECK(v.fit->residual < 1e-12);
  CHECK(v.fit->ratio == doctest::Approx(to_double(sharp_constants(5).C)).epsilon(1e-12));

  const auto vo = classify_extremizer(c5, ConeFunction(c5.size(), 1.0));
  REQUIRE(vo.fit.has_value());
  CHECK(vo.fit->a == param(0, 0, 0, 0));
  CHECK(std::abs(vo.fit->lambda - 1.0) < 1e-12);

  auto pert = f;
  pert[7] += 1e-3;
  const auto vp = classify_extremizer(c5, pert, {1e-2, 1e-9});
  CHECK_FALSE(vp.fit.has_value());
  CHECK(vp.reason == NotExtremalReason::ratio_below_c);
  CHECK(vp.measured > 0.0);

  auto bump = f;
  bump[0] *= 1.5;
  CHECK(classify_extremizer(c5, bump).reason == NotExtremalReason::nonconstant_modulus);
  CHECK(classify_extremizer(c5, random_complex_function(c5.size(), 2)).reason ==
        NotExtremalReason::nonconstant_modulus);
  CHECK_THROWS_AS(classify_extremizer(c5, ConeFunction(c5.size(), 0.0)), Error);
  CHECK(std::string(reason_name(NotExtremalReason::ratio_below_c)) == "ratio_below_C");

  // Unimodular but not a character.
  auto twisted = character(c5, param(1, 0, 0, 0));
  for (std::size_t k = 0; k < c5.size(); k += 3) twisted[k] *= std::polar(1.0, 0.4);
  CHECK_FALSE(classify_extremizer(c5, twisted).fit.has_value());

  const ConeCtx c7(build_field(7, 1));
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<std::uint32_t> d(0, 6);
  for (int t = 0; t < 100; ++t) {
    const CharParam a = param(d(rng), d(rng), d(rng), d(rng));
    const auto w = classify_extremizer(c7, character(c7, a, std::polar(0.5 + t, 0.1 * t)));
    REQUIRE(w.fit.has_value());
    REQUIRE(w.fit->a == a);
  }
  CHECK(extremizer_classification_check(c5, 10, 0).pass);
}

TEST_CASE("other models") {
  const auto F5 = build_field(5, 1);
  CHECK(model_bridge_check(F5).pass);
  const ConeCtx c31(F5, ConeModel::quadratic31);
  const auto f = character(c31, param(2, 1, 0, 3));
  const auto v = classify_extremizer(c31, f);
  REQUIRE(v.fit.has_value());
  CHECK(v.fit->a == param(2, 1, 0, 3));
  for (const auto& c : verify_all(c31, {20, 0, ArithMode::floating})) {
    INFO(c.claim_id);
    CHECK(c.pass);
  }
}

TEST_CASE("verify_all passes and is reproducible") {
  const ConeCtx c3(build_field(3, 1));
  for (auto mode : {ArithMode::floating, ArithMode::exact}) {
    const auto a = verify_all(c3, {50, 7, mode});
    for (const auto& c : a) {
      INFO(c.claim_id);
      CHECK(c.pass);
    }
    const auto b = verify_all(c3, {50, 7, mode});
    CHECK(nlohmann::json(a).dump() == nlohmann::json(b).dump());
  }
  set_worker_count(1);
  const auto serial = nlohmann::json(verify_all(c3, {30, 1, ArithMode::exact})).dump();
  set_worker_count(4);
  const auto wide = nlohmann::json(verify_all(c3, {30, 1, ArithMode::exact})).dump();
  set_worker_count(0);
  CHECK(serial == wide);
}

TEST_CASE("seeding helpers") {
  CHECK(derive_seed(1, "a") == derive_seed(1, "a"));
  CHECK(derive_seed(1, "a") != derive_seed(1, "b"));
  CHECK(derive_seed(1, "a") != derive_seed(2, "a"));
  CHECK(random_complex_function(10, 3) == random_complex_function(10, 3));
  const ConeCtx c3(build_field(3, 1));
  const auto g = random_even_nonnegative(c3, 5);
  for (std::size_t k = 0; k < g.size(); ++k) {
    CHECK(g[k] == g[c3.antipode(k)]);
    CHECK(g[k].real() >= 0.0);
  }
}

TEST_CASE("certificate json round trip") {
  const ConeCtx c3(build_field(3, 1));
  const Certificate c = census_check(c3);
  const nlohmann::json j = c;
  const Certificate back = j.get<Certificate>();
  CHECK(nlohmann::json(back) == j);
  CHECK(close_rel(1.0, 1.0 + 1e-10, 1e-9));
  CHECK_FALSE(close_rel(1.0, 1.1, 1e-9));
}
