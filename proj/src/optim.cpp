#include "fxcone/optim.hpp"

#include <algorithm>
#include <cmath>

#include "fxcone/parallel.hpp"

namespace fxcone {

namespace {

void normalize(ConeFunction& f) {
  const double m = std::sqrt(mass(f));
  if (!(m > 0.0)) throw Error(Errc::zero_function, "cannot normalize the zero function");
  for (auto& v : f) v /= m;
}

}  // namespace

void AscentConfig::validate() const {
  if (max_iters < 1) throw Error(Errc::invalid_argument, "max_iters must be at least 1");
  if (rule == StepRule::relaxed && !(relax > 0.0 && relax <= 1.0))
    throw Error(Errc::invalid_argument, "relaxed step weight must lie in (0, 1]");
  if (!(tol_ratio >= 0.0) || !(tol_stall >= 0.0)) throw Error(Errc::invalid_argument, "tolerances must be >= 0");
}

ConeFunction gradient(const ConeCtx& cc, std::span<const Complex> f, const RepCountTable& F) {
  const std::size_t n = cc.size();
  if (f.size() != n) throw Error(Errc::invalid_argument, "function length does not match the cone");
  ConeFunction g(n);
  parallel_chunks(n, std::min<std::size_t>(n, 64), [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t a = begin; a < end; ++a) {
      Complex s = 0.0;
      for (std::size_t b = 0; b < n; ++b) s += F.table[cc.sum_index(a, b)] * std::conj(f[b]);
      g[a] = 2.0 * s;
    }
  });
  return g;
}

ConeFunction gradient(const ConeCtx& cc, std::span<const Complex> f) {
  return gradient(cc, f, pair_convolution(cc, f));
}

AscentTrace ascend(const ConeCtx& cc, ConeFunction f, const AscentConfig& cfg) {
  cfg.validate();
  const double C = to_double(sharp_constants(cc.q()).C);
  normalize(f);
  AscentTrace tr;
  RepCountTable F = pair_convolution(cc, f);
  tr.ratios.push_back(quartic_lhs(F));
  for (std::size_t it = 0; it < cfg.max_iters; ++it) {
    ConeFunction g = gradient(cc, f, F);
    normalize(g);
    if (cfg.rule == StepRule::relaxed) {
      for (std::size_t k = 0; k < g.size(); ++k) g[k] = (1.0 - cfg.relax) * f[k] + cfg.relax * g[k];
      normalize(g);
    }
    RepCountTable G = pair_convolution(cc, g);
    const double r = quartic_lhs(G);
    const double prev = tr.ratios.back();
    f = std::move(g);
    F = std::move(G);
    tr.ratios.push_back(r);
    if (std::abs(r - prev) <= cfg.tol_stall * std::max(1.0, prev)) {
      tr.stalled = true;
      break;
    }
  }
  tr.converged = tr.stalled || std::abs(tr.ratios.back() - C) <= cfg.tol_ratio * C;
  tr.final = std::move(f);
  return tr;
}

AscentResult maximize(const ConeCtx& cc, const AscentConfig& cfg) {
  cfg.validate();
  AscentResult res;
  res.runs.resize(cfg.restarts);
  parallel_chunks(cfg.restarts, cfg.restarts, [&](std::size_t i, std::size_t, std::size_t) {
    const std::uint64_t s = cfg.seed + i;
    AscentTrace tr = ascend(cc, random_complex_function(cc.size(), derive_seed(s, "optimize")), cfg);
    tr.restart = i;
    tr.seed = s;
    res.runs[i] = std::move(tr);
  });
  for (std::size_t i = 0; i < res.runs.size(); ++i) {
    const auto& r = res.runs[i].ratios;
    res.max_ratio_seen = std::max(res.max_ratio_seen, *std::max_element(r.begin(), r.end()));
    if (r.back() > res.runs[res.best].ratios.back()) res.best = i;
  }
  return res;
}

FitReport fit_and_report(const ConeCtx& cc, const AscentTrace& trace, double tol, double ratio_tol) {
  FitReport rep;
  const Complex f0 = trace.final.at(0);
  rep.phase = std::abs(f0) > 0.0 ? std::conj(f0) / std::abs(f0) : Complex(1.0);
  if (!trace.converged) {
    rep.verdict.reason = NotExtremalReason::ratio_below_c;
    rep.verdict.ratio = trace.ratios.empty() ? 0.0 : trace.ratios.back();
    const double C = to_double(sharp_constants(cc.q()).C);
    rep.verdict.measured = (C - rep.verdict.ratio) / C;
    return rep;
  }
  ConeFunction f = trace.final;
  for (auto& v : f) v *= rep.phase;
  rep.verdict = classify_extremizer(cc, f, {tol, ratio_tol});
  return rep;
}

}  // namespace fxcone
