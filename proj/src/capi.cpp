#include "fxcone/fxcone.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "fxcone/report.hpp"
#include "fxcone/xform.hpp"

struct fxc_field {
  std::shared_ptr<const fxcone::FieldCtx> ctx;
};

struct fxc_cone {
  fxcone::ConeCtx ctx;
};

namespace {

thread_local std::string last_error;

fxc_status status_of(fxcone::Errc e) {
  using fxcone::Errc;
  switch (e) {
    case Errc::invalid_argument: return FXC_INVALID_ARGUMENT;
    case Errc::composite_p: return FXC_COMPOSITE_P;
    case Errc::budget_exceeded: return FXC_BUDGET_EXCEEDED;
    case Errc::model_unavailable: return FXC_MODEL_UNAVAILABLE;
    case Errc::not_on_cone: return FXC_NOT_ON_CONE;
    case Errc::zero_function: return FXC_ZERO_FUNCTION;
    case Errc::principal_character: return FXC_PRINCIPAL_CHARACTER;
    case Errc::non_unimodular: return FXC_NON_UNIMODULAR;
  }
  return FXC_INTERNAL;
}

fxc_status fail(fxc_status s, std::string msg) {
  last_error = std::move(msg);
  return s;
}

template <class Fn>
fxc_status guarded(Fn&& fn) {
  last_error.clear();
  try {
    return fn();
  } catch (const fxcone::Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(FXC_PARSE_ERROR, e.what());
  } catch (const std::bad_alloc&) {
    return fail(FXC_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(FXC_INTERNAL, e.what());
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

fxc_status null_arg(const char* what) { return fail(FXC_INVALID_ARGUMENT, std::string(what) + " is NULL"); }

}  // namespace

extern "C" {

const char* fxc_version(void) { return fxcone::library_version(); }

const char* fxc_status_string(fxc_status status) {
  switch (status) {
    case FXC_OK: return "OK";
    case FXC_INVALID_ARGUMENT: return "InvalidArgument";
    case FXC_COMPOSITE_P: return "CompositeP";
    case FXC_BUDGET_EXCEEDED: return "BudgetExceeded";
    case FXC_MODEL_UNAVAILABLE: return "ModelUnavailable";
    case FXC_NOT_ON_CONE: return "NotOnCone";
    case FXC_ZERO_FUNCTION: return "ZeroFunction";
    case FXC_PRINCIPAL_CHARACTER: return "PrincipalCharacter";
    case FXC_NON_UNIMODULAR: return "NonUnimodular";
    case FXC_PARSE_ERROR: return "ParseError";
    case FXC_INTERNAL: return "Internal";
  }
  return "Unknown";
}

const char* fxc_last_error(void) { return last_error.c_str(); }

fxc_status fxc_field_create(uint32_t p, uint32_t n, fxc_field** out) {
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    *out = new fxc_field{fxcone::build_field(p, n)};
    return FXC_OK;
  });
}

void fxc_field_destroy(fxc_field* field) { delete field; }

uint32_t fxc_field_order(const fxc_field* field) { return field ? field->ctx->q() : 0; }

fxc_status fxc_field_add(const fxc_field* field, uint32_t a, uint32_t b, uint32_t* out) {
  if (!field || !out) return null_arg("field or out");
  const auto& F = *field->ctx;
  if (a >= F.q() || b >= F.q()) return fail(FXC_INVALID_ARGUMENT, "element out of range");
  *out = F.add(fxcone::FieldElem{a}, fxcone::FieldElem{b}).idx;
  return FXC_OK;
}

fxc_status fxc_field_mul(const fxc_field* field, uint32_t a, uint32_t b, uint32_t* out) {
  if (!field || !out) return null_arg("field or out");
  const auto& F = *field->ctx;
  if (a >= F.q() || b >= F.q()) return fail(FXC_INVALID_ARGUMENT, "element out of range");
  *out = F.mul(fxcone::FieldElem{a}, fxcone::FieldElem{b}).idx;
  return FXC_OK;
}

fxc_status fxc_field_trace(const fxc_field* field, uint32_t x, uint32_t* out) {
  if (!field || !out) return null_arg("field or out");
  if (x >= field->ctx->q()) return fail(FXC_INVALID_ARGUMENT, "element out of range");
  *out = field->ctx->trace(fxcone::FieldElem{x});
  return FXC_OK;
}

fxc_status fxc_field_sqrt_minus_one(const fxc_field* field, uint32_t* out) {
  if (!field || !out) return null_arg("field or out");
  const auto w = field->ctx->sqrt_minus_one();
  if (!w) return fail(FXC_MODEL_UNAVAILABLE, "-1 is not a square when q = 3 mod 4");
  *out = w->idx;
  return FXC_OK;
}

fxc_status fxc_cone_create(const fxc_field* field, const char* model, fxc_cone** out) {
  if (!field || !out) return null_arg("field or out");
  *out = nullptr;
  const auto m = fxcone::parse_model(model ? model : "product");
  if (!m) return fail(FXC_INVALID_ARGUMENT, std::string("unknown model '") + model + "'");
  return guarded([&] {
    *out = new fxc_cone{fxcone::ConeCtx(field->ctx, *m)};
    return FXC_OK;
  });
}

void fxc_cone_destroy(fxc_cone* cone) { delete cone; }

size_t fxc_cone_size(const fxc_cone* cone) { return cone ? cone->ctx.size() : 0; }

fxc_status fxc_cone_point(const fxc_cone* cone, size_t ordinal, uint32_t out[4]) {
  if (!cone || !out) return null_arg("cone or out");
  if (ordinal >= cone->ctx.size()) return fail(FXC_INVALID_ARGUMENT, "ordinal out of range");
  const auto& x = cone->ctx.point(ordinal);
  for (int i = 0; i < 4; ++i) out[i] = x.c[i].idx;
  return FXC_OK;
}

fxc_status fxc_cone_sigma_count(const fxc_cone* cone, const uint32_t xi[4], uint64_t* out) {
  if (!cone || !xi || !out) return null_arg("cone, xi or out");
  fxcone::Point4 x;
  for (int i = 0; i < 4; ++i) {
    if (xi[i] >= cone->ctx.q()) return fail(FXC_INVALID_ARGUMENT, "coordinate out of range");
    x.c[i] = fxcone::FieldElem{xi[i]};
  }
  return guarded([&] {
    *out = cone->ctx.sigma_count(x);
    return FXC_OK;
  });
}

fxc_status fxc_ratio(const fxc_cone* cone, const double* re, const double* im, size_t len, double* out) {
  if (!cone || !re || !out) return null_arg("cone, re or out");
  return guarded([&] {
    fxcone::ConeFunction f(len);
    for (size_t k = 0; k < len; ++k) f[k] = fxcone::Complex(re[k], im ? im[k] : 0.0);
    *out = fxcone::ratio(cone->ctx, f);
    return FXC_OK;
  });
}

fxc_status fxc_sharp_constant(uint32_t p, uint32_t n, char** out_c, double* out_value) {
  if (!out_c) return null_arg("out_c");
  *out_c = nullptr;
  return guarded([&] {
    const auto F = fxcone::build_field(p, n);
    const fxcone::SharpConstants s = fxcone::sharp_constants(F->q());
    *out_c = dup_string(fxcone::to_string(s.C));
    if (out_value) *out_value = fxcone::to_double(s.C);
    return FXC_OK;
  });
}

fxc_status fxc_run(const char* command, const char* config_json, char** out_report, int* all_pass) {
  if (!command || !out_report) return null_arg("command or out_report");
  *out_report = nullptr;
  return guarded([&] {
    const nlohmann::json j = config_json && *config_json ? nlohmann::json::parse(config_json) : nlohmann::json::object();
    const fxcone::RunConfig cfg = fxcone::config_from_json(j);
    const fxcone::CommandResult r = fxcone::run_command(command, cfg);
    *out_report = dup_string(r.report.dump());
    if (all_pass) *all_pass = r.all_pass ? 1 : 0;
    return FXC_OK;
  });
}

fxc_status fxc_render(const char* report_json, const char* format, char** out) {
  if (!report_json || !out) return null_arg("report_json or out");
  *out = nullptr;
  const auto f = fxcone::parse_format(format ? format : "text");
  if (!f) return fail(FXC_INVALID_ARGUMENT, "format must be json, csv or text");
  return guarded([&] {
    *out = dup_string(fxcone::render(nlohmann::json::parse(report_json), *f));
    return FXC_OK;
  });
}

void fxc_string_free(char* s) { std::free(s); }

}  // extern "C"
