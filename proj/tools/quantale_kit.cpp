// Copyright 2026 The quantale-kit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// quantale-kit: command-line front end over the C API.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qkit/qkit.h"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitLawFailure = 1;
constexpr int kExitInputError = 2;

struct InstanceDeleter {
  void operator()(qkit_instance* p) const { qkit_instance_free(p); }
};
struct ReportDeleter {
  void operator()(qkit_report* p) const { qkit_report_free(p); }
};
using InstanceHandle = std::unique_ptr<qkit_instance, InstanceDeleter>;
using ReportHandle = std::unique_ptr<qkit_report, ReportDeleter>;

std::string take(char* s) {
  std::string out = s ? s : "";
  qkit_string_free(s);
  return out;
}

int exit_code(qkit_status st) {
  if (st == QKIT_OK) return kExitPass;
  if (st == QKIT_LAW_FAILURE) return kExitLawFailure;
  return kExitInputError;
}

int input_error(qkit_status st) {
  std::cerr << "error[" << qkit_status_name(st) << "]: " << qkit_last_error() << "\n";
  return kExitInputError;
}

bool write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return true;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    std::cerr << "error: cannot write " << path << "\n";
    return false;
  }
  f << text;
  return static_cast<bool>(f);
}

int emit_report(qkit_status st, qkit_report* raw, bool json, bool with_time) {
  ReportHandle r(raw);
  if (st != QKIT_OK && st != QKIT_LAW_FAILURE) return input_error(st);
  char* text = nullptr;
  const qkit_status rs = qkit_report_render(r.get(), json ? 1 : 0, with_time ? 1 : 0, &text);
  if (rs != QKIT_OK) return input_error(rs);
  std::cout << take(text);
  return exit_code(st);
}

std::optional<InstanceHandle> open_instance(const std::string& path, bool allow_invalid,
                                            int& code) {
  qkit_instance* raw = nullptr;
  const qkit_status st = qkit_instance_load(path.c_str(), allow_invalid ? 1 : 0, &raw);
  if (st != QKIT_OK) {
    code = input_error(st);
    return std::nullopt;
  }
  return InstanceHandle(raw);
}

struct CheckArgs {
  std::string path;
  bool json = false;
  bool time = false;
};

struct QuantaleArgs {
  std::string path;
  std::vector<std::string> show;
  bool verify = false;
  bool json = false;
  bool allow_invalid = false;
};

struct ConvertArgs {
  std::string path;
  std::string output;
  bool roundtrip = false;
  bool json = false;
  bool allow_invalid = false;
};

struct VerifyArgs {
  std::string scope;
  qkit_verify_bounds bounds{};
  std::vector<std::string> only;
  bool no_named = false;
  bool json = false;
  bool no_time = false;
};

struct EnumerateArgs {
  std::string kind;
  std::size_t max_arrows = 3;
  long objects = -1;
  std::size_t max_points = 3;
  long points = -1;
  bool discrete = false;
  std::string over;
  std::optional<std::uint64_t> seed;
  std::size_t samples = 16;
  std::string output;
  bool count = false;
};

int run_check(const CheckArgs& a) {
  // Law violations belong in the report, so validation on load is relaxed.
  int code = 0;
  auto inst = open_instance(a.path, true, code);
  if (!inst) return code;
  qkit_report* r = nullptr;
  const qkit_status st = qkit_check(inst->get(), &r);
  return emit_report(st, r, a.json, a.time);
}

int run_quantale(const QuantaleArgs& a) {
  int code = 0;
  auto inst = open_instance(a.path, a.allow_invalid, code);
  if (!inst) return code;
  std::vector<qkit_show> dumps;
  for (const auto& s : a.show) {
    if (s == "tables") dumps.push_back(QKIT_SHOW_TABLES);
    else if (s == "partial-units") dumps.push_back(QKIT_SHOW_PARTIAL_UNITS);
    else if (s == "support") dumps.push_back(QKIT_SHOW_SUPPORT);
  }
  if (dumps.empty() && !a.verify) dumps.push_back(QKIT_SHOW_TABLES);
  for (qkit_show d : dumps) {
    char* text = nullptr;
    const qkit_status st = qkit_quantale_show(inst->get(), d, &text);
    if (st != QKIT_OK) return input_error(st);
    std::cout << take(text);
  }
  if (!a.verify) return kExitPass;
  qkit_report* r = nullptr;
  const qkit_status st = qkit_quantale_verify(inst->get(), &r);
  return emit_report(st, r, a.json, false);
}

int run_convert(const ConvertArgs& a) {
  int code = 0;
  auto inst = open_instance(a.path, a.allow_invalid, code);
  if (!inst) return code;
  if (a.roundtrip) {
    qkit_report* r = nullptr;
    const qkit_status st = qkit_roundtrip(inst->get(), &r);
    return emit_report(st, r, a.json, false);
  }
  qkit_instance* raw = nullptr;
  qkit_status st = qkit_convert(inst->get(), &raw);
  if (st != QKIT_OK) return input_error(st);
  InstanceHandle out(raw);
  char* text = nullptr;
  st = qkit_instance_save(out.get(), &text);
  if (st != QKIT_OK) return input_error(st);
  return write_output(a.output, take(text)) ? kExitPass : kExitInputError;
}

int run_verify(VerifyArgs& a) {
  std::vector<const char*> only;
  for (const auto& s : a.only) only.push_back(s.c_str());
  a.bounds.only = only.empty() ? nullptr : only.data();
  a.bounds.only_count = only.size();
  a.bounds.named = a.no_named ? 0 : 1;
  qkit_report* r = nullptr;
  const qkit_status st = qkit_verify(a.scope.c_str(), &a.bounds, &r);
  return emit_report(st, r, a.json, !a.no_time);
}

int run_enumerate(const EnumerateArgs& a) {
  qkit_enumerate_options o;
  qkit_enumerate_options_default(&o);
  o.kind = a.kind.c_str();
  o.max_arrows = a.max_arrows;
  o.objects = a.objects;
  o.max_points = a.max_points;
  o.points = a.points;
  o.discrete = a.discrete ? 1 : 0;
  o.over = a.over.empty() ? nullptr : a.over.c_str();
  o.has_seed = a.seed ? 1 : 0;
  o.seed = a.seed.value_or(0);
  o.samples = a.samples;
  char* lines = nullptr;
  std::size_t n = 0;
  const qkit_status st = qkit_enumerate(&o, &lines, &n);
  if (st != QKIT_OK) return input_error(st);
  const std::string text = take(lines);
  if (a.count) {
    std::cout << n << "\n";
    return kExitPass;
  }
  return write_output(a.output, text) ? kExitPass : kExitInputError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite etale groupoids, their quantales, and the modules between them"};
  app.set_version_flag("--version", std::string(qkit_version()));
  app.require_subcommand(1);

  CheckArgs check;
  auto* c = app.add_subcommand("check", "Run every checker for a groupoid, glocale, qlocale or hom file");
  c->add_option("path", check.path, "Instance file")->required();
  c->add_flag("--json", check.json, "JSON-lines report");
  c->add_flag("--time", check.time, "Append wall time");
  c->add_flag("--allow-invalid", "Accepted for symmetry; check always reports law violations");

  QuantaleArgs quantale;
  auto* q = app.add_subcommand("quantale", "Build O(G) for an etale groupoid file");
  q->add_option("path", quantale.path, "Groupoid file")->required();
  q->add_option("--show", quantale.show, "tables, partial-units or support")
      ->check(CLI::IsMember({"tables", "partial-units", "support"}));
  q->add_flag("--verify", quantale.verify, "Check the inverse quantal frame laws and mu_*");
  q->add_flag("--json", quantale.json, "JSON-lines report for --verify");
  q->add_flag("--allow-invalid", quantale.allow_invalid, "Load without validation");

  ConvertArgs convert;
  auto* cv = app.add_subcommand("convert", "glocale <-> qlocale");
  cv->add_option("path", convert.path, "glocale or qlocale file")->required();
  cv->add_option("-o,--output", convert.output, "Output file (default stdout)");
  cv->add_flag("--roundtrip", convert.roundtrip, "Convert back and compare canonical forms");
  cv->add_flag("--json", convert.json, "JSON-lines report for --roundtrip");
  cv->add_flag("--allow-invalid", convert.allow_invalid, "Load without validation");

  VerifyArgs verify;
  qkit_verify_bounds_default(&verify.bounds);
  auto* v = app.add_subcommand("verify", "Run a law suite over the exhaustive corpus");
  v->add_option("scope", verify.scope,
                "projection-factorization (lemma-2.1), functor-faithful, lax, actions-coincide, "
                "alpha-star, mu-star, bijection, cat-iso, support-laws, sections, sheaf-cat-iso, "
                "iqf, tensor-oracle, all")
      ->required();
  v->add_option("--max-arrows", verify.bounds.max_arrows, "All etale groupoids up to this many arrows")
      ->capture_default_str();
  v->add_option("--discrete-arrows", verify.bounds.discrete_arrows,
                "Discrete groupoids up to this many arrows")
      ->capture_default_str();
  v->add_option("--identity-points", verify.bounds.identity_points,
                "Identity groupoids on every space up to this size")
      ->capture_default_str();
  v->add_option("--max-points", verify.bounds.max_points, "Module carriers up to this size")
      ->capture_default_str();
  v->add_option("--only", verify.only, "Restrict the corpus to these groupoids (names or files)");
  v->add_flag("--no-named", verify.no_named, "Skip z2, pair(2), pair(3)");
  v->add_flag("--json", verify.json, "JSON-lines report");
  v->add_flag("--no-time", verify.no_time, "Omit the wall-time line");

  EnumerateArgs enumerate;
  auto* e = app.add_subcommand("enumerate", "Stream canonical instances, one per line");
  e->add_option("kind", enumerate.kind, "groupoid, glocale or qlocale")
      ->required()
      ->check(CLI::IsMember({"groupoid", "glocale", "qlocale"}));
  e->add_option("--max-arrows", enumerate.max_arrows, "Groupoids: |G1| bound")->capture_default_str();
  e->add_option("--objects", enumerate.objects, "Groupoids: exact |G0|");
  e->add_option("--max-points", enumerate.max_points, "Modules: |X| bound")->capture_default_str();
  e->add_option("--points", enumerate.points, "Modules: exact |X|");
  e->add_flag("--discrete", enumerate.discrete, "Discrete topologies only");
  e->add_option("--over", enumerate.over, "Base groupoid for glocale and qlocale");
  e->add_option("--seed", enumerate.seed, "Random sampling instead of exhaustive enumeration");
  e->add_option("--samples", enumerate.samples, "Sample count with --seed")->capture_default_str();
  e->add_option("-o,--output", enumerate.output, "Output file (default stdout)");
  e->add_flag("--count", enumerate.count, "Print only the number of instances");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int rc = app.exit(err);
    return rc == 0 ? kExitPass : kExitInputError;
  }

  if (*c) return run_check(check);
  if (*q) return run_quantale(quantale);
  if (*cv) return run_convert(convert);
  if (*v) return run_verify(verify);
  if (*e) return run_enumerate(enumerate);
  return kExitInputError;
}
