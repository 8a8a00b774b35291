#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "fxcone/numeric.hpp"

namespace fxcone {

// Verdict record for one check at one q.
struct Certificate {
  std::string claim_id;
  std::uint32_t q = 0;
  ArithMode mode = ArithMode::floating;
  nlohmann::json observed;
  nlohmann::json expected;
  double tolerance = 0.0;  // relative unless metadata says otherwise; 0 in exact mode
  bool pass = false;
  nlohmann::json metadata = nlohmann::json::object();
};

void to_json(nlohmann::json& j, const Certificate& c);
void from_json(const nlohmann::json& j, Certificate& c);

// |a - b| <= tol * max(1, |a|, |b|).
bool close_rel(double a, double b, double tol) noexcept;
double rel_gap(double a, double b) noexcept;

}  // namespace fxcone
