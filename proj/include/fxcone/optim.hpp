#pragma once

// Power-iteration ascent of the quartic ratio over complex functions on the
// cone, used to corroborate the sharp constant and the shape of maximizers.

#include <cstdint>
#include <optional>
#include <vector>

#include "fxcone/verify.hpp"

namespace fxcone {

// Conjugate gradient of quartic_lhs: g(η) = 2 sum_ρ F(η+ρ) conj f(ρ), so the
// derivative along d is 2 Re sum d conj(g).
ConeFunction gradient(const ConeCtx& cc, std::span<const Complex> f);
ConeFunction gradient(const ConeCtx& cc, std::span<const Complex> f, const RepCountTable& F);

enum class StepRule { replace, relaxed };

struct AscentConfig {
  std::size_t max_iters = 2000;
  StepRule rule = StepRule::replace;
  double relax = 0.5;  // blend weight s in (0, 1] for the relaxed rule
  std::size_t restarts = 20;
  std::uint64_t seed = 0;
  double tol_ratio = 1e-6;   // relative distance to C counted as converged
  double tol_stall = 1e-12;  // relative ratio increment that stops a run

  // Throws invalid_argument.
  void validate() const;
};

struct AscentTrace {
  std::vector<double> ratios;  // ratios[0] is the start
  ConeFunction final;
  bool converged = false;
  bool stalled = false;
  std::size_t restart = 0;
  std::uint64_t seed = 0;
};

struct AscentResult {
  std::vector<AscentTrace> runs;  // ordered by restart index
  std::size_t best = 0;
  double max_ratio_seen = 0.0;    // over every iterate of every run
};

// One ascent from f0 (rescaled to unit mass).
AscentTrace ascend(const ConeCtx& cc, ConeFunction f0, const AscentConfig& cfg);
// cfg.restarts ascents from random unit-mass starts, seeds cfg.seed + i.
AscentResult maximize(const ConeCtx& cc, const AscentConfig& cfg);

struct FitReport {
  ExtremizerVerdict verdict;
  Complex phase;  // unimodular factor applied so that f at ordinal 0 is real positive
};

// Classifies trace.final with structural tolerance tol and ratio tolerance
// ratio_tol. A trace that did not converge yields ratio_below_c without fitting.
FitReport fit_and_report(const ConeCtx& cc, const AscentTrace& trace, double tol = 1e-4, double ratio_tol = 1e-6);

}  // namespace fxcone
