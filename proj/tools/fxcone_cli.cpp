// fxcone command-line tool. Parses flags, hands a JSON configuration to the C
// library and prints the rendered report.
//
// Exit codes: 0 all certificates passed, 1 some certificate failed,
// 2 usage or precondition error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "fxcone/fxcone.h"

namespace {

struct Flags {
  std::uint32_t p = 3;
  std::uint32_t n = 1;
  std::string model = "product";
  std::uint64_t seed = 0;
  std::size_t trials = 100;
  double tol = 1e-9;
  std::string mode = "float";
  std::string format = "text";
  std::string output;
  bool timing = false;
  std::size_t restarts = 20;
  std::size_t iters = 2000;
  std::string function = "constant";
  std::string values;
};

using CString = std::unique_ptr<char, decltype(&fxc_string_free)>;

int precondition(const std::string& msg) {
  std::cerr << "fxcone: " << msg << '\n'
            << "usage: fxcone {field|cone|census|constant|ratio|verify-all|optimize} [options]; --help for details\n";
  return 2;
}

std::string read_values(const std::string& arg) {
  if (arg.empty() || arg[0] != '@') return arg;
  std::ifstream in(arg.substr(1));
  if (!in) throw std::runtime_error("cannot read " + arg.substr(1));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run(const std::string& command, const Flags& f) {
  nlohmann::json cfg = {{"p", f.p},           {"n", f.n},           {"model", f.model},   {"seed", f.seed},
                        {"trials", f.trials}, {"tol", f.tol},       {"mode", f.mode},     {"format", f.format},
                        {"restarts", f.restarts}, {"iters", f.iters}, {"function", f.function},
                        {"timing", f.timing}, {"output_path", f.output}};
  if (!f.values.empty()) {
    try {
      cfg["values"] = nlohmann::json::parse(read_values(f.values));
    } catch (const std::exception& e) {
      return precondition(std::string("bad --values: ") + e.what());
    }
  }
  char* raw = nullptr;
  int all_pass = 0;
  const fxc_status st = fxc_run(command.c_str(), cfg.dump().c_str(), &raw, &all_pass);
  if (st != FXC_OK) return precondition(std::string(fxc_status_string(st)) + ": " + fxc_last_error());
  CString report(raw, fxc_string_free);

  if (!f.output.empty()) {
    char* pretty = nullptr;
    if (fxc_render(report.get(), "json", &pretty) != FXC_OK) return precondition(fxc_last_error());
    CString keep(pretty, fxc_string_free);
    std::ofstream out(f.output, std::ios::binary);
    if (!out) return precondition("cannot write " + f.output);
    out << pretty;
  }
  char* text = nullptr;
  if (fxc_render(report.get(), f.format.c_str(), &text) != FXC_OK) return precondition(fxc_last_error());
  CString keep(text, fxc_string_free);
  std::fputs(text, stdout);
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cone geometry, exact certificates and extremizer search over F_q"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(fxc_version()));
  Flags f;

  auto common = [&](CLI::App* s) {
    s->add_option("--p", f.p, "odd prime p")->capture_default_str();
    s->add_option("--n", f.n, "extension degree n, q = p^n")->capture_default_str();
    s->add_option("--model", f.model, "cone model")
        ->check(CLI::IsMember({"product", "quadratic22", "22", "quadratic31", "31"}))
        ->capture_default_str();
    s->add_option("--seed", f.seed, "random seed")->capture_default_str();
    s->add_option("--trials", f.trials, "random trials per check")->capture_default_str();
    s->add_option("--tol", f.tol, "float tolerance")->capture_default_str();
    s->add_option("--mode", f.mode, "arithmetic mode")->check(CLI::IsMember({"exact", "float"}))->capture_default_str();
    s->add_option("--format", f.format, "stdout format")
        ->check(CLI::IsMember({"json", "csv", "text"}))
        ->capture_default_str();
    s->add_option("--output", f.output, "write the JSON report to this file");
    s->add_flag("--timing", f.timing, "include wall-clock timing in the report");
  };

  const std::map<std::string, std::string> commands = {
      {"field", "field parameters and modulus"},
      {"cone", "cone size, plane sizes and pair census"},
      {"census", "pair-count census certificates"},
      {"constant", "closed-form sharp constants"},
      {"ratio", "quartic ratio of one function"},
      {"verify-all", "run every certificate"},
      {"optimize", "power-iteration ascent with extremizer fits"},
  };
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, help] : commands) {
    CLI::App* s = app.add_subcommand(name, help);
    common(s);
    subs[name] = s;
  }
  subs["ratio"]->add_option("--function", f.function, "constant | character:a1,a2,a3,a4 | indicator:k | random:seed")
      ->capture_default_str();
  subs["ratio"]->add_option("--values", f.values, "JSON array of values, or @file");
  subs["optimize"]->add_option("--restarts", f.restarts, "independent ascents")->capture_default_str();
  subs["optimize"]->add_option("--iters", f.iters, "iterations per ascent")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "fxcone: " << e.what() << "\n\n" << app.help();
    return 2;
  }
  for (const auto& [name, s] : subs)
    if (s->parsed()) return run(name, f);
  return 2;
}
