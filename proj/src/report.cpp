#include "fxcone/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>
#include <sstream>

#include "fxcone/optim.hpp"
#include "fxcone/verify.hpp"

namespace fxcone {

namespace {

using nlohmann::json;

const char* format_name(OutputFormat f) {
  switch (f) {
    case OutputFormat::json: return "json";
    case OutputFormat::csv: return "csv";
    case OutputFormat::text: return "text";
  }
  return "text";
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

std::uint64_t parse_uint(const std::string& s, const char* what) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (s.empty() || pos != s.size() || s[0] == '-')
    throw Error(Errc::invalid_argument, std::string("bad ") + what + ": '" + s + "'");
  return v;
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

json param_json(const CharParam& a) { return json::array({a[0].idx, a[1].idx, a[2].idx, a[3].idx}); }

struct Context {
  std::shared_ptr<const FieldCtx> field;
  std::unique_ptr<ConeCtx> cone;
};

std::shared_ptr<const FieldCtx> field_of(const RunConfig& cfg) { return build_field(cfg.p, cfg.n); }

json config_echo(const RunConfig& cfg) {
  json j = cfg;
  j.erase("output_path");
  return j;
}

json header(std::string_view command, const RunConfig& cfg) {
  return json{{"schema_version", kReportSchemaVersion},
              {"tool", "fxcone"},
              {"version", library_version()},
              {"command", std::string(command)},
              {"config", config_echo(cfg)}};
}

void attach_certificates(CommandResult& r, const std::vector<Certificate>& certs) {
  json arr = json::array();
  std::size_t passed = 0;
  for (const auto& c : certs) {
    arr.push_back(c);
    passed += c.pass;
  }
  r.report["certificates"] = arr;
  r.report["summary"] = {{"total", certs.size()}, {"passed", passed}, {"failed", certs.size() - passed}};
  r.all_pass = passed == certs.size();
  r.report["all_pass"] = r.all_pass;
}

// Cone function named on the command line, in float and (when representable) exact form.
struct NamedFunction {
  ConeFunction values;
  std::optional<std::vector<std::int64_t>> integer;
  std::optional<PhaseFunction> phase;
  json description;
};

NamedFunction named_function(const ConeCtx& cc, const RunConfig& cfg) {
  NamedFunction nf;
  const std::size_t n = cc.size();
  if (!cfg.values.is_null()) {
    if (!cfg.values.is_array() || cfg.values.size() != n)
      throw Error(Errc::invalid_argument, "values must be an array of " + std::to_string(n) + " entries");
    nf.values.resize(n);
    std::vector<std::int64_t> ints(n);
    bool integral = true;
    for (std::size_t k = 0; k < n; ++k) {
      const json& v = cfg.values[k];
      if (v.is_number()) {
        nf.values[k] = v.get<double>();
      } else if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
        nf.values[k] = Complex(v[0].get<double>(), v[1].get<double>());
      } else {
        throw Error(Errc::invalid_argument, "values entries must be numbers or [re, im] pairs");
      }
      const double re = nf.values[k].real();
      integral = integral && nf.values[k].imag() == 0.0 && std::floor(re) == re && std::abs(re) < 1e6;
      if (integral) ints[k] = static_cast<std::int64_t>(re);
    }
    if (integral) nf.integer = std::move(ints);
    nf.description = {{"kind", "values"}, {"length", n}};
    return nf;
  }
  const std::vector<std::string> parts = split(cfg.function, ':');
  const std::string& kind = parts[0];
  if (kind == "constant" && parts.size() == 1) {
    nf.values.assign(n, 1.0);
    nf.integer = std::vector<std::int64_t>(n, 1);
    nf.description = {{"kind", "constant"}};
  } else if (kind == "character" && parts.size() == 2) {
    const auto coords = split(parts[1], ',');
    if (coords.size() != 4) throw Error(Errc::invalid_argument, "character needs four frequencies a1,a2,a3,a4");
    CharParam a{};
    for (std::size_t i = 0; i < 4; ++i) {
      const std::uint64_t v = parse_uint(coords[i], "frequency");
      if (v >= cc.q()) throw Error(Errc::invalid_argument, "frequency out of range for F_q");
      a[i] = FieldElem{static_cast<std::uint32_t>(v)};
    }
    nf.phase = phase_character(cc, a);
    nf.values = to_complex(cc, *nf.phase);
    nf.description = {{"kind", "character"}, {"a", param_json(a)}};
  } else if (kind == "indicator" && parts.size() == 2) {
    const std::uint64_t k = parse_uint(parts[1], "cone ordinal");
    if (k >= n) throw Error(Errc::invalid_argument, "indicator ordinal out of range");
    nf.values.assign(n, 0.0);
    nf.values[k] = 1.0;
    std::vector<std::int64_t> ints(n, 0);
    ints[k] = 1;
    nf.integer = std::move(ints);
    nf.description = {{"kind", "indicator"}, {"ordinal", k}};
  } else if (kind == "random" && parts.size() == 2) {
    const std::uint64_t s = parse_uint(parts[1], "seed");
    nf.values = random_complex_function(n, derive_seed(s, "ratio"));
    nf.description = {{"kind", "random"}, {"seed", s}};
  } else {
    throw Error(Errc::invalid_argument, "unknown function '" + cfg.function + "'");
  }
  return nf;
}

CommandResult cmd_field(const RunConfig& cfg) {
  const auto f = field_of(cfg);
  CommandResult r{header("field", cfg), true};
  const auto w = f->sqrt_minus_one();
  r.report["result"] = {{"p", f->p()},
                        {"n", f->n()},
                        {"q", f->q()},
                        {"q_mod_4", f->q() % 4},
                        {"modulus", f->params().modulus},
                        {"generator", f->generator().idx},
                        {"omega", w ? json(w->idx) : json(nullptr)}};
  r.report["all_pass"] = true;
  return r;
}

CommandResult cmd_cone(const RunConfig& cfg) {
  const ConeCtx cc(field_of(cfg), cfg.model);
  CommandResult r{header("cone", cfg), true};
  json plus = json::array(), minus = json::array();
  for (std::uint32_t i = 0; i < cc.plane_count(); ++i) {
    plus.push_back(cc.plane_plus(i).size());
    minus.push_back(cc.plane_minus(i).size());
  }
  const auto table = cc.sigma_table();
  std::set<std::uint32_t> zero, on, gen;
  for (std::uint64_t u = 0; u < cc.ambient_size(); ++u) {
    switch (cc.region_of_index(u)) {
      case PointRegion::zero: zero.insert(table[u]); break;
      case PointRegion::on_cone: on.insert(table[u]); break;
      case PointRegion::generic: gen.insert(table[u]); break;
    }
  }
  auto value = [](const std::set<std::uint32_t>& s) {
    return s.size() == 1 ? json(*s.begin()) : json(std::vector<std::uint32_t>(s.begin(), s.end()));
  };
  r.report["result"] = {{"q", cc.q()},
                        {"model", std::string(model_name(cc.model()))},
                        {"cone_size", cc.size()},
                        {"plane_sizes", {{"plus", plus}, {"minus", minus}}},
                        {"census", {{"zero", value(zero)}, {"on_cone", value(on)}, {"generic", value(gen)}}}};
  r.report["all_pass"] = true;
  return r;
}

CommandResult cmd_census(const RunConfig& cfg) {
  const ConeCtx cc(field_of(cfg), cfg.model);
  CommandResult r{header("census", cfg), true};
  attach_certificates(r, {census_check(cc), sharpness_check(cc)});
  return r;
}

CommandResult cmd_constant(const RunConfig& cfg) {
  const auto f = field_of(cfg);
  const SharpConstants s = sharp_constants(f->q());
  CommandResult r{header("constant", cfg), true};
  r.report["result"] = {{"q", f->q()},  {"N", s.N.str()}, {"C", to_string(s.C)}, {"R4", to_string(s.R4)},
                        {"R", s.R}, {"M", to_string(s.M)}, {"C_float", to_double(s.C)}};
  r.report["all_pass"] = true;
  return r;
}

CommandResult cmd_ratio(const RunConfig& cfg) {
  const ConeCtx cc(field_of(cfg), cfg.model);
  const NamedFunction nf = named_function(cc, cfg);
  const SharpConstants s = sharp_constants(cc.q());
  CommandResult r{header("ratio", cfg), true};
  json res = {{"q", cc.q()}, {"function", nf.description}, {"C", to_string(s.C)}};
  const double value = ratio(cc, nf.values);
  res["ratio"] = value;
  res["ratio_over_C"] = value / to_double(s.C);
  if (cfg.mode == ArithMode::exact) {
    Rational exact;
    if (nf.phase) {
      const auto v = quartic_lhs_phase(pair_convolution_phase(cc, *nf.phase)).as_integer();
      if (!v) throw Error(Errc::invalid_argument, "quartic sum of this phase function is not rational");
      const Integer m = cc.size();
      exact = Rational(*v, m * m);
    } else if (nf.integer) {
      exact = ratio_exact(cc, *nf.integer);
    } else {
      throw Error(Errc::invalid_argument, "exact mode needs an integer-valued or character function");
    }
    res["ratio_exact"] = to_string(exact);
    res["equals_C"] = exact == s.C;
  }
  r.report["result"] = res;
  r.report["all_pass"] = true;
  return r;
}

CommandResult cmd_verify_all(const RunConfig& cfg) {
  const ConeCtx cc(field_of(cfg), cfg.model);
  CommandResult r{header("verify-all", cfg), true};
  attach_certificates(r, verify_all(cc, {cfg.trials, cfg.seed, cfg.mode}));
  return r;
}

CommandResult cmd_optimize(const RunConfig& cfg) {
  const ConeCtx cc(field_of(cfg), cfg.model);
  AscentConfig acfg;
  acfg.max_iters = cfg.iters;
  acfg.restarts = cfg.restarts;
  acfg.seed = cfg.seed;
  acfg.tol_ratio = std::max(cfg.tol, 1e-12);
  const AscentResult res = maximize(cc, acfg);
  const double C = to_double(sharp_constants(cc.q()).C);

  json runs = json::array();
  std::size_t recovered = 0, monotone = 0;
  for (const AscentTrace& t : res.runs) {
    const FitReport fr = fit_and_report(cc, t, 1e-4, acfg.tol_ratio);
    bool mono = true;
    for (std::size_t i = 1; i < t.ratios.size(); ++i) mono = mono && t.ratios[i] >= t.ratios[i - 1] - 1e-12 * C;
    monotone += mono;
    json verdict = {{"extremal", fr.verdict.fit.has_value()},
                    {"reason", reason_name(fr.verdict.reason)},
                    {"measured", fr.verdict.measured}};
    if (fr.verdict.fit) {
      const ExtremizerFit& fit = *fr.verdict.fit;
      verdict["lambda"] = complex_json(fit.lambda);
      verdict["a"] = param_json(fit.a);
      verdict["a_product"] = param_json(fit.a_product);
      verdict["residual"] = fit.residual;
      if (fit.residual < 1e-4 && std::abs(t.ratios.back() - C) <= acfg.tol_ratio * C) ++recovered;
    }
    runs.push_back({{"restart", t.restart},
                    {"seed", t.seed},
                    {"iterations", t.ratios.size() - 1},
                    {"initial_ratio", t.ratios.front()},
                    {"final_ratio", t.ratios.back()},
                    {"converged", t.converged},
                    {"stalled", t.stalled},
                    {"monotone", mono},
                    {"phase_normalization", complex_json(fr.phase)},
                    {"fit", verdict}});
  }
  CommandResult r{header("optimize", cfg), true};
  r.report["result"] = {{"q", cc.q()},
                        {"C", C},
                        {"best", res.best},
                        {"best_ratio", res.runs.empty() ? 0.0 : res.runs[res.best].ratios.back()},
                        {"max_ratio_seen", res.max_ratio_seen},
                        {"recovered", recovered},
                        {"runs", runs}};

  std::vector<Certificate> certs;
  Certificate ub;
  ub.claim_id = "optimizer-upper-bound";
  ub.q = cc.q();
  ub.observed = res.max_ratio_seen;
  ub.expected = C;
  ub.tolerance = 1e-9;
  ub.pass = res.max_ratio_seen <= C * (1.0 + 1e-9);
  ub.metadata = {{"restarts", cfg.restarts}, {"iters", cfg.iters}, {"seed", cfg.seed}};
  certs.push_back(ub);
  Certificate mono;
  mono.claim_id = "optimizer-monotone";
  mono.q = cc.q();
  mono.observed = monotone;
  mono.expected = res.runs.size();
  mono.tolerance = 1e-12;
  mono.pass = monotone == res.runs.size();
  certs.push_back(mono);
  Certificate ex;
  ex.claim_id = "optimizer-extremizer";
  ex.q = cc.q();
  ex.observed = recovered;
  const auto need = static_cast<std::size_t>(std::ceil(0.9 * static_cast<double>(res.runs.size())));
  ex.expected = need;
  ex.tolerance = acfg.tol_ratio;
  ex.pass = recovered >= need;
  ex.metadata = {{"residual_threshold", 1e-4}, {"required_fraction", 0.9}};
  certs.push_back(ex);
  attach_certificates(r, certs);
  return r;
}

std::string truncate(std::string s, std::size_t width) {
  if (s.size() > width) s = s.substr(0, width - 3) + "...";
  return s;
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out.push_back('"');
    out.push_back(ch);
  }
  return out + "\"";
}

std::string scalar_string(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

}  // namespace

const char* library_version() noexcept { return "1.0.0"; }

std::optional<OutputFormat> parse_format(std::string_view s) noexcept {
  if (s == "json") return OutputFormat::json;
  if (s == "csv") return OutputFormat::csv;
  if (s == "text") return OutputFormat::text;
  return std::nullopt;
}

void RunConfig::validate() const {
  if (n < 1) throw Error(Errc::invalid_argument, "n must be at least 1");
  if (trials < 1) throw Error(Errc::invalid_argument, "trials must be at least 1");
  if (!(tol > 0.0) || !(tol < 1.0)) throw Error(Errc::invalid_argument, "tol must lie in (0, 1)");
  if (restarts < 1) throw Error(Errc::invalid_argument, "restarts must be at least 1");
  if (iters < 1) throw Error(Errc::invalid_argument, "iters must be at least 1");
}

void to_json(nlohmann::json& j, const RunConfig& c) {
  j = json{{"p", c.p},
           {"n", c.n},
           {"model", std::string(model_name(c.model))},
           {"seed", c.seed},
           {"trials", c.trials},
           {"tol", c.tol},
           {"mode", mode_name(c.mode)},
           {"format", format_name(c.format)},
           {"output_path", c.output_path},
           {"restarts", c.restarts},
           {"iters", c.iters},
           {"function", c.function},
           {"values", c.values},
           {"timing", c.timing}};
}

RunConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(Errc::invalid_argument, "config must be a JSON object");
  static const std::set<std::string> known = {"p",        "n",     "model",    "seed",   "trials",
                                              "tol",      "mode",  "format",   "output_path", "restarts",
                                              "iters",    "function", "values", "timing"};
  for (const auto& [k, v] : j.items())
    if (!known.count(k)) throw Error(Errc::invalid_argument, "unknown config key '" + k + "'");
  RunConfig c;
  try {
    if (j.contains("p")) c.p = j["p"].get<std::uint32_t>();
    if (j.contains("n")) c.n = j["n"].get<std::uint32_t>();
    if (j.contains("model")) {
      const auto m = parse_model(j["model"].get<std::string>());
      if (!m) throw Error(Errc::invalid_argument, "unknown model '" + j["model"].get<std::string>() + "'");
      c.model = *m;
    }
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("trials")) c.trials = j["trials"].get<std::size_t>();
    if (j.contains("tol")) c.tol = j["tol"].get<double>();
    if (j.contains("mode")) {
      const std::string m = j["mode"].get<std::string>();
      if (m == "exact")
        c.mode = ArithMode::exact;
      else if (m == "float")
        c.mode = ArithMode::floating;
      else
        throw Error(Errc::invalid_argument, "mode must be exact or float");
    }
    if (j.contains("format")) {
      const auto f = parse_format(j["format"].get<std::string>());
      if (!f) throw Error(Errc::invalid_argument, "format must be json, csv or text");
      c.format = *f;
    }
    if (j.contains("output_path")) c.output_path = j["output_path"].get<std::string>();
    if (j.contains("restarts")) c.restarts = j["restarts"].get<std::size_t>();
    if (j.contains("iters")) c.iters = j["iters"].get<std::size_t>();
    if (j.contains("function")) c.function = j["function"].get<std::string>();
    if (j.contains("values")) c.values = j["values"];
    if (j.contains("timing")) c.timing = j["timing"].get<bool>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::invalid_argument, std::string("bad config value: ") + e.what());
  }
  c.validate();
  return c;
}

CommandResult run_command(std::string_view command, const RunConfig& cfg) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  CommandResult r;
  if (command == "field")
    r = cmd_field(cfg);
  else if (command == "cone")
    r = cmd_cone(cfg);
  else if (command == "census")
    r = cmd_census(cfg);
  else if (command == "constant")
    r = cmd_constant(cfg);
  else if (command == "ratio")
    r = cmd_ratio(cfg);
  else if (command == "verify-all")
    r = cmd_verify_all(cfg);
  else if (command == "optimize")
    r = cmd_optimize(cfg);
  else
    throw Error(Errc::invalid_argument, "unknown command '" + std::string(command) + "'");
  if (cfg.timing) {
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
    r.report["timing"] = {{"total_seconds", dt.count()}};
  }
  return r;
}

std::string render(const nlohmann::json& report, OutputFormat format) {
  if (format == OutputFormat::json) return report.dump(2) + "\n";
  std::ostringstream os;
  const bool certs = report.contains("certificates");
  if (format == OutputFormat::csv) {
    if (certs) {
      os << "claim_id,q,mode,pass,observed,expected,tolerance\n";
      for (const auto& c : report["certificates"])
        os << csv_cell(c["claim_id"].get<std::string>()) << ',' << c["q"].dump() << ','
           << c["mode"].get<std::string>() << ',' << (c["pass"].get<bool>() ? "true" : "false") << ','
           << csv_cell(scalar_string(c["observed"])) << ',' << csv_cell(scalar_string(c["expected"])) << ','
           << c["tolerance"].dump() << '\n';
    } else {
      os << "key,value\n";
      const json flat = report.value("result", json::object()).flatten();
      for (const auto& [k, v] : flat.items())
        os << csv_cell(k) << ',' << csv_cell(scalar_string(v)) << '\n';
    }
    return os.str();
  }
  const json& cfg = report["config"];
  os << "fxcone " << report["version"].get<std::string>() << "  " << report["command"].get<std::string>()
     << "  p=" << cfg["p"] << " n=" << cfg["n"] << " model=" << cfg["model"].get<std::string>()
     << " mode=" << cfg["mode"].get<std::string>() << " seed=" << cfg["seed"] << '\n';
  if (report.contains("result")) os << report["result"].dump(2) << '\n';
  if (certs) {
    std::size_t width = 8;
    for (const auto& c : report["certificates"]) width = std::max(width, c["claim_id"].get<std::string>().size());
    for (const auto& c : report["certificates"]) {
      const std::string id = c["claim_id"].get<std::string>();
      os << (c["pass"].get<bool>() ? "PASS  " : "FAIL  ") << id << std::string(width - id.size() + 2, ' ')
         << "q=" << c["q"] << "  " << c["mode"].get<std::string>() << "  observed="
         << truncate(scalar_string(c["observed"]), 60) << "  expected=" << truncate(scalar_string(c["expected"]), 40)
         << '\n';
    }
    const json& s = report["summary"];
    os << s["passed"] << '/' << s["total"] << " certificates passed\n";
  }
  return os.str();
}

}  // namespace fxcone
