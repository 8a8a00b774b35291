#include "fxcone/certificate.hpp"

#include <algorithm>
#include <cmath>

namespace fxcone {

void to_json(nlohmann::json& j, const Certificate& c) {
  j = nlohmann::json{{"claim_id", c.claim_id}, {"q", c.q},           {"mode", mode_name(c.mode)},
                     {"observed", c.observed}, {"expected", c.expected}, {"tolerance", c.tolerance},
                     {"pass", c.pass},         {"metadata", c.metadata}};
}

void from_json(const nlohmann::json& j, Certificate& c) {
  j.at("claim_id").get_to(c.claim_id);
  j.at("q").get_to(c.q);
  c.mode = j.at("mode").get<std::string>() == "exact" ? ArithMode::exact : ArithMode::floating;
  c.observed = j.at("observed");
  c.expected = j.at("expected");
  j.at("tolerance").get_to(c.tolerance);
  j.at("pass").get_to(c.pass);
  c.metadata = j.value("metadata", nlohmann::json::object());
}

double rel_gap(double a, double b) noexcept {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

bool close_rel(double a, double b, double tol) noexcept { return rel_gap(a, b) <= tol; }

}  // namespace fxcone
