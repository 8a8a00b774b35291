#pragma once

#include <stdexcept>
#include <string>

namespace fxcone {

enum class Errc {
  invalid_argument = 1,
  composite_p,
  budget_exceeded,
  model_unavailable,
  not_on_cone,
  zero_function,
  principal_character,
  non_unimodular,
};

const char* errc_name(Errc c) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace fxcone
