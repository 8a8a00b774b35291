// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fxcone/optim.hpp"
#include "fxcone/parallel.hpp"
#include "fxcone/verify.hpp"

using namespace fxcone;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " FAILED[" << what << "]";
    }
  }
};

struct Field {
  std::uint32_t p, n;
};

std::string qname(Field f) {
  std::uint32_t q = 1;
  for (std::uint32_t i = 0; i < f.n; ++i) q *= f.p;
  return std::to_string(q);
}

const std::vector<Field> kUpTo13 = {{3, 1}, {5, 1}, {7, 1}, {3, 2}, {11, 1}, {13, 1}};

void c1_cardinality(Outcome& o) {
  for (Field fd : {Field{3, 1}, {5, 1}, {7, 1}, {3, 2}, {11, 1}, {13, 1}, {5, 2}, {3, 3}, {7, 2}}) {
    const auto t0 = Clock::now();
    const auto F = build_field(fd.p, fd.n);
    const ConeCtx cc(F);
    const double t_build = seconds_since(t0);
    // Independent count from the defining equation.
    const std::uint32_t q = F->q();
    std::uint64_t count = 0;
    for (std::uint32_t a = 0; a < q; ++a)
      for (std::uint32_t b = 0; b < q; ++b) {
        const FieldElem ab = F->mul(FieldElem{a}, FieldElem{b});
        for (std::uint32_t c = 0; c < q; ++c)
          for (std::uint32_t d = 0; d < q; ++d)
            count += (a | b | c | d) != 0 && ab == F->mul(FieldElem{c}, FieldElem{d});
      }
    const std::uint64_t expect = std::uint64_t{q - 1} * (q + 1) * (q + 1);
    const double limit = q <= 13 ? 1.0 : 30.0;
    o.detail << " q=" << q << ":" << cc.size();
    o.require(cc.size() == expect && count == expect, "count q=" + qname(fd));
    o.require(t_build < limit, "runtime q=" + qname(fd));
  }
}

void c2_census(Outcome& o) {
  set_worker_count(1);
  for (Field fd : kUpTo13) {
    const auto t0 = Clock::now();
    const ConeCtx cc(build_field(fd.p, fd.n));
    const Certificate c = census_check(cc);
    const double t = seconds_since(t0);
    o.require(c.pass && c.metadata["mismatches"] == 0, "census q=" + qname(fd));
    if (cc.q() == 3)
      o.require(c.observed == nlohmann::json{{"zero", 32}, {"on_cone", 13}, {"generic", 12}}, "q=3 region values");
    if (cc.q() == 13) {
      o.detail << " q=13 single-threaded " << t << " s";
      o.require(t < 5.0, "q=13 runtime");
    }
  }
  set_worker_count(0);
}

void c3_sharpness(Outcome& o) {
  for (Field fd : kUpTo13) {
    const ConeCtx cc(build_field(fd.p, fd.n));
    const Certificate c = sharpness_check(cc);
    o.require(c.pass && c.mode == ArithMode::exact && c.observed["lhs_times_den"] == c.expected["num_times_cone_sq"],
              "identity q=" + qname(fd));
    if (cc.q() == 3) {
      o.require(c.observed["quartic_lhs"] == "13344" && c.expected["C"] == "417/32", "q=3 values");
      o.detail << " q=3: quartic=" << c.observed["quartic_lhs"].get<std::string>()
               << " C=" << c.expected["C"].get<std::string>();
    }
  }
}

void c4_characters(Outcome& o) {
  for (std::uint32_t p : {3u, 5u, 7u}) {
    const ConeCtx cc(build_field(p, 1));
    for (ArithMode m : {ArithMode::floating, ArithMode::exact}) {
      const Certificate c = character_extremality_check(cc, 20, derive_seed(p, "acceptance-characters"), m);
      const bool enough = c.metadata.value("trials", c.metadata.value("requested_trials", 0)) >= 10;
      o.require(c.pass && enough, std::string("q=") + std::to_string(p) + " " + mode_name(m));
      if (m == ArithMode::floating) o.require(c.tolerance <= 1e-9, "float tolerance");
      else o.require(c.tolerance == 0.0, "exact tolerance");
    }
  }
  o.detail << " 20 characters per q and mode";
}

void c5_upper_bound(Outcome& o) {
  for (std::uint32_t p : {3u, 5u, 7u}) {
    const ConeCtx cc(build_field(p, 1));
    const double C = to_double(sharp_constants(p).C);
    double worst = 0.0;
    for (std::uint64_t t = 0; t < 1000; ++t) {
      const ConeFunction f = random_complex_function(cc.size(), derive_seed(p * 100000 + t, "acceptance-upper"));
      worst = std::max(worst, ratio(cc, f) / C);
    }
    AscentConfig cfg;
    cfg.restarts = 20;
    cfg.seed = p;
    const AscentResult res = maximize(cc, cfg);
    const double worst_opt = res.max_ratio_seen / C;
    o.detail << " q=" << p << ": random " << worst << ", ascent " << worst_opt;
    o.require(worst <= 1 + 1e-9, "random q=" + std::to_string(p));
    o.require(res.runs.size() == 20 && worst_opt <= 1 + 1e-9, "ascent q=" + std::to_string(p));
  }
}

void c6_optimizer(Outcome& o) {
  for (std::uint32_t p : {3u, 5u}) {
    const auto t0 = Clock::now();
    const ConeCtx cc(build_field(p, 1));
    const double C = to_double(sharp_constants(p).C);
    AscentConfig cfg;
    cfg.restarts = 20;
    cfg.seed = 0;
    const AscentResult res = maximize(cc, cfg);
    std::size_t good = 0;
    for (const auto& tr : res.runs) {
      const double r = tr.ratios.back();
      const FitReport rep = fit_and_report(cc, tr, 1e-4, 1e-6);
      if (std::abs(r - C) <= 1e-6 && rep.verdict.fit && rep.verdict.fit->residual < 1e-4) ++good;
    }
    const double t = seconds_since(t0);
    o.detail << " q=" << p << ": " << good << "/20 in " << t << " s";
    o.require(good >= 18, "recovery q=" + std::to_string(p));
    o.require(t < 60.0, "runtime q=" + std::to_string(p));
  }
}

void c7_mixed(Outcome& o) {
  for (std::uint32_t p : {3u, 5u, 7u}) {
    const ConeCtx cc(build_field(p, 1));
    const Certificate c = mixed_product_identity_check(cc, 100, derive_seed(p, "acceptance-mixed"), ArithMode::exact);
    o.require(c.pass && c.mode == ArithMode::exact && c.metadata["trials"] == 100, "q=" + std::to_string(p));
  }
  o.detail << " 100 exact trials per q";
}

void c8_chain(Outcome& o) {
  for (std::uint32_t p : {3u, 5u}) {
    const ConeCtx cc(build_field(p, 1));
    for (ArithMode m : {ArithMode::floating, ArithMode::exact}) {
      const auto certs = chain_check(cc, 200, derive_seed(p, "acceptance-chain"), m);
      std::size_t passed = 0;
      for (const auto& c : certs) {
        const bool full = !c.metadata.contains("trials") || c.metadata["trials"] == 200 ||
                          c.claim_id == "chain-equality-constant";
        if (c.pass && full) ++passed;
        else o.require(false, c.claim_id + " q=" + std::to_string(p) + " " + mode_name(m));
        if (c.claim_id == "chain-equality-constant" && m == ArithMode::exact)
          o.require(c.observed == 0 || c.observed == "0", "exact equality for constants");
      }
      o.detail << " q=" << p << " " << mode_name(m) << ": " << passed << "/" << certs.size();
    }
    // Equality exactly on plane-constant inputs, strict inequality elsewhere.
    std::vector<std::int64_t> f(cc.size());
    std::mt19937_64 rng(derive_seed(p, "acceptance-plane"));
    std::uniform_int_distribution<int> d(0, 6);
    for (std::size_t k = 0; k < cc.size(); ++k) f[k] = cc.antipode(k) < k ? f[cc.antipode(k)] : d(rng);
    for (auto k : cc.plane_minus(1)) f[k] = 3;
    const auto s = plane_s_exact(cc, f);
    bool local = true;
    for (std::size_t i = 0; i < s.size(); ++i) local = local && (i == cc.plane_count() + 1 ? s[i] == 0 : s[i] < 0);
    o.require(local, "plane-constant equality q=" + std::to_string(p));
    const std::vector<std::int64_t> one(cc.size(), 1);
    bool zero = true;
    for (const auto& v : plane_s_exact(cc, one)) zero = zero && v == 0;
    o.require(zero, "constant equality q=" + std::to_string(p));
  }
}

void c9_duality(Outcome& o) {
  for (std::uint32_t p : {3u, 5u, 7u}) {
    const ConeCtx cc(build_field(p, 1));
    const Certificate c = duality_check(cc, 100, derive_seed(p, "acceptance-duality"));
    o.require(c.pass && c.tolerance <= 1e-9 && c.metadata["trials"] == 100, "q=" + std::to_string(p));
    o.detail << " q=" << p << " gap " << c.observed.get<double>();
  }
}

void c10_bridge(Outcome& o) {
  for (Field fd : {Field{5, 1}, {3, 2}, {13, 1}}) {
    const Certificate c = model_bridge_check(build_field(fd.p, fd.n));
    bool has31 = false;
    for (const auto& m : c.observed)
      if (m["model"] == "quadratic31") {
        has31 = m["bijective"] == true && m["ratio_gap"].get<double>() <= 1e-9;
        o.detail << " q=" << qname(fd) << " gap " << m["ratio_gap"].get<double>();
      }
    o.require(c.pass && has31, "q=" + qname(fd));
  }
}

void c11_plane(Outcome& o) {
  for (std::uint32_t p : {3u, 5u}) {
    const Certificate c = plane_classification_check(*build_field(p, 1), 100, derive_seed(p, "acceptance-plane"));
    o.require(c.pass && c.observed["round_trips"] == p * p && c.observed["random_rejected"] == 100,
              "q=" + std::to_string(p));
    o.detail << " q=" << p << ": " << c.observed["round_trips"] << " round trips, " << c.observed["random_rejected"]
             << " rejected";
  }
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
      {"cone cardinality", c1_cardinality},
      {"pair census", c2_census},
      {"sharp constant attained", c3_sharpness},
      {"character extremality", c4_characters},
      {"upper bound never violated", c5_upper_bound},
      {"optimizer recovers extremizers", c6_optimizer},
      {"mixed-product identity", c7_mixed},
      {"inequality chain", c8_chain},
      {"duality factor", c9_duality},
      {"model bridge", c10_bridge},
      {"plane classification", c11_plane},
  };
  std::size_t passed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto t0 = Clock::now();
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double t = seconds_since(t0);
    passed += o.pass;
    std::printf("%s  %2zu  %-32s %.2fs %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), t,
                o.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", passed, criteria.size());
  return passed == criteria.size() ? 0 : 1;
}
