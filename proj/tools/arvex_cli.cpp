// Command-line frontend. Everything numerical goes through the C API in
// arvex/arvex.h; this file only handles arguments, reports, and exit codes.
//
// Exit codes: 0 success / member, 1 semantic negative (non-member, failed
// verification), 2 input error, 3 solver failure.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "arvex/arvex.h"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitInput = 2;
constexpr int kExitSolver = 3;

int exit_code_for(int status) {
  switch (status) {
    case ARVEX_OK: return kExitOk;
    case ARVEX_ERR_INVALID: return kExitInput;
    default: return kExitSolver;
  }
}

uint64_t fnv1a64(const std::string& bytes) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 1099511628211ULL;
  }
  return h;
}

json input_record(const std::string& path) {
  json rec;
  rec["path"] = path;
  std::ifstream in(path, std::ios::binary);
  if (in) {
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(bytes)));
    rec["fnv1a64"] = buf;
  } else {
    rec["fnv1a64"] = nullptr;
  }
  return rec;
}

struct Timer {
  std::chrono::steady_clock::time_point begin = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - begin).count();
  }
};

json config_echo(const arvex_options& opts) {
  json cfg;
  cfg["tol_sym"] = opts.tol_sym;
  cfg["tol_psd"] = opts.tol_psd;
  cfg["tol_kernel"] = opts.tol_kernel;
  cfg["tol_opt"] = opts.tol_opt;
  cfg["max_iter"] = opts.max_iter;
  cfg["verbosity"] = opts.verbosity;
  return cfg;
}

void print_report(const std::string& command, const std::vector<std::string>& inputs,
                  const arvex_options& opts, const json& outcome, const Timer& timer) {
  json rep;
  rep["command"] = command;
  json ins = json::array();
  for (const auto& path : inputs) ins.push_back(input_record(path));
  rep["inputs"] = std::move(ins);
  rep["config"] = config_echo(opts);
  rep["seed"] = opts.seed;
  rep["outcome"] = outcome;
  rep["wall_time_s"] = timer.seconds();
  std::cout << rep.dump(2) << "\n";
}

int fail(const std::string& command, const std::vector<std::string>& inputs,
         const arvex_options& opts, const Timer& timer, int status) {
  json outcome;
  outcome["error"] = arvex_last_error();
  print_report(command, inputs, opts, outcome, timer);
  std::cerr << "error: " << arvex_last_error() << "\n";
  return exit_code_for(status);
}

int verbosity_from_env() {
  const char* env = std::getenv("FS_LOG");
  if (!env) return 0;
  const std::string v = env;
  if (v == "info") return 1;
  if (v == "trace") return 2;
  return 0;
}

struct PencilHandle {
  arvex_pencil* p = nullptr;
  ~PencilHandle() { arvex_pencil_free(p); }
};
struct TupleHandle {
  arvex_tuple* t = nullptr;
  ~TupleHandle() { arvex_tuple_free(t); }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"free spectrahedron dilation and extreme decomposition toolkit"};
  app.require_subcommand(1);

  arvex_options opts;
  arvex_options_init(&opts);
  opts.verbosity = verbosity_from_env();

  app.add_option("--tol", opts.tol_opt, "optimizer convergence tolerance");
  app.add_option("--tol-psd", opts.tol_psd, "PSD slack tolerance");
  app.add_option("--tol-ker", opts.tol_kernel, "kernel / rank threshold");
  app.add_option("--tol-sym", opts.tol_sym, "self-adjointness tolerance");
  app.add_option("--max-iter", opts.max_iter, "iteration cap per solver call");
  app.add_option("--seed", opts.seed, "random stream seed");

  std::string pencil_path, tuple_path, decomp_path, out_path;

  auto* check = app.add_subcommand("check", "test membership of a tuple in a spectrahedron");
  check->add_option("pencil", pencil_path, "pencil JSON file")->required();
  check->add_option("tuple", tuple_path, "tuple JSON file")->required();

  auto* dilate = app.add_subcommand("dilate", "dilate a member to the Arveson boundary");
  dilate->add_option("pencil", pencil_path)->required();
  dilate->add_option("tuple", tuple_path)->required();
  dilate->add_option("--out", out_path, "where to write the dilation trace");

  auto* decompose =
      app.add_subcommand("decompose", "write a member as a combination of absolute extreme points");
  decompose->add_option("pencil", pencil_path)->required();
  decompose->add_option("tuple", tuple_path)->required();
  decompose->add_option("--out", out_path, "where to write the decomposition");

  auto* verify = app.add_subcommand("verify", "re-check a decomposition independently");
  verify->add_option("pencil", pencil_path)->required();
  verify->add_option("decomposition", decomp_path, "decomposition JSON file")->required();

  int gen_d = 2, gen_g = 2, gen_n = 2;
  std::string gen_field = "real";
  auto* gen = app.add_subcommand("gen", "generate a reproducible bounded instance");
  gen->add_option("--d", gen_d, "size of the random pencil blocks");
  gen->add_option("--g", gen_g, "tuple length");
  gen->add_option("--n", gen_n, "member size");
  gen->add_option("--field", gen_field, "member field: real or complex")
      ->check(CLI::IsMember({"real", "complex"}));
  gen->add_option("--out", out_path, "output prefix")->required();

  int par_n = 1, par_g = 1;
  auto* params = app.add_subcommand("params", "parameter counts for extreme representations");
  params->add_option("--n", par_n, "member size")->required();
  params->add_option("--g", par_g, "tuple length")->required();

  for (auto* sub : app.get_subcommands([](const CLI::App*) { return true; }))
    sub->fallthrough();

  CLI11_PARSE(app, argc, argv);
  Timer timer;

  if (*check) {
    const std::vector<std::string> inputs = {pencil_path, tuple_path};
    PencilHandle p;
    TupleHandle x;
    if (int rc = arvex_pencil_read(pencil_path.c_str(), &p.p))
      return fail("check", inputs, opts, timer, rc);
    if (int rc = arvex_tuple_read(tuple_path.c_str(), &x.t))
      return fail("check", inputs, opts, timer, rc);
    int member = 0;
    double min_eig = 0.0;
    if (int rc = arvex_check_membership(p.p, x.t, &opts, &member, &min_eig))
      return fail("check", inputs, opts, timer, rc);
    json outcome;
    outcome["member"] = member == 1;
    outcome["min_eig"] = min_eig;
    print_report("check", inputs, opts, outcome, timer);
    return member ? kExitOk : kExitNegative;
  }

  if (*dilate) {
    const std::vector<std::string> inputs = {pencil_path, tuple_path};
    PencilHandle p;
    TupleHandle x;
    if (int rc = arvex_pencil_read(pencil_path.c_str(), &p.p))
      return fail("dilate", inputs, opts, timer, rc);
    if (int rc = arvex_tuple_read(tuple_path.c_str(), &x.t))
      return fail("dilate", inputs, opts, timer, rc);
    arvex_trace* trace = nullptr;
    if (int rc = arvex_dilate(p.p, x.t, &opts, &trace))
      return fail("dilate", inputs, opts, timer, rc);
    json outcome;
    outcome["steps"] = arvex_trace_step_count(trace);
    json dims = json::array();
    for (int i = 0; i < arvex_trace_step_count(trace); ++i) {
      json step;
      step["dim_before"] = arvex_trace_dim_before(trace, i);
      step["dim_after"] = arvex_trace_dim_after(trace, i);
      step["c"] = arvex_trace_scale(trace, i);
      dims.push_back(std::move(step));
    }
    outcome["dims"] = std::move(dims);
    outcome["final_size"] = arvex_trace_final_size(trace);
    if (!out_path.empty()) {
      if (int rc = arvex_trace_write(trace, out_path.c_str())) {
        arvex_trace_free(trace);
        return fail("dilate", inputs, opts, timer, rc);
      }
      outcome["trace_file"] = out_path;
    }
    arvex_trace_free(trace);
    print_report("dilate", inputs, opts, outcome, timer);
    return kExitOk;
  }

  if (*decompose) {
    const std::vector<std::string> inputs = {pencil_path, tuple_path};
    PencilHandle p;
    TupleHandle x;
    if (int rc = arvex_pencil_read(pencil_path.c_str(), &p.p))
      return fail("decompose", inputs, opts, timer, rc);
    if (int rc = arvex_tuple_read(tuple_path.c_str(), &x.t))
      return fail("decompose", inputs, opts, timer, rc);
    arvex_decomposition* dec = nullptr;
    if (int rc = arvex_decompose(p.p, x.t, &opts, &dec))
      return fail("decompose", inputs, opts, timer, rc);
    json outcome;
    const int m = arvex_decomposition_component_count(dec);
    outcome["components"] = m;
    json sizes = json::array();
    json flags = json::array();
    bool all_absolute = true;
    for (int i = 0; i < m; ++i) {
      sizes.push_back(arvex_decomposition_component_size(dec, i));
      int irr = 0, arv = 0, abs_ext = 0;
      arvex_decomposition_flags(dec, i, &irr, &arv, &abs_ext);
      json f;
      f["irreducible"] = irr == 1;
      f["arveson"] = arv == 1;
      f["absolute_extreme"] = abs_ext == 1;
      flags.push_back(std::move(f));
      all_absolute = all_absolute && abs_ext == 1;
    }
    outcome["sizes"] = std::move(sizes);
    outcome["flags"] = std::move(flags);
    outcome["all_absolute_extreme"] = all_absolute;
    outcome["total_size"] = arvex_decomposition_total_size(dec);
    outcome["bound"] = arvex_decomposition_bound(dec);
    if (!out_path.empty()) {
      if (int rc = arvex_decomposition_write(dec, out_path.c_str())) {
        arvex_decomposition_free(dec);
        return fail("decompose", inputs, opts, timer, rc);
      }
      outcome["decomposition_file"] = out_path;
    }
    arvex_decomposition_free(dec);
    print_report("decompose", inputs, opts, outcome, timer);
    return kExitOk;
  }

  if (*verify) {
    const std::vector<std::string> inputs = {pencil_path, decomp_path};
    PencilHandle p;
    if (int rc = arvex_pencil_read(pencil_path.c_str(), &p.p))
      return fail("verify", inputs, opts, timer, rc);
    arvex_decomposition* dec = nullptr;
    if (int rc = arvex_decomposition_read(decomp_path.c_str(), &dec))
      return fail("verify", inputs, opts, timer, rc);
    int ok = 0;
    char* report = nullptr;
    const int rc = arvex_verify(p.p, dec, &opts, &ok, &report);
    arvex_decomposition_free(dec);
    if (rc) return fail("verify", inputs, opts, timer, rc);
    json outcome;
    outcome["verified"] = ok == 1;
    outcome["report"] = report ? report : "";
    arvex_string_free(report);
    print_report("verify", inputs, opts, outcome, timer);
    return ok ? kExitOk : kExitNegative;
  }

  if (*gen) {
    arvex_pencil* p = nullptr;
    arvex_tuple* x = nullptr;
    const int field = gen_field == "complex" ? 1 : 0;
    if (int rc = arvex_generate(gen_d, gen_g, gen_n, field, opts.seed, &p, &x))
      return fail("gen", {}, opts, timer, rc);
    const std::string pencil_file = out_path + ".pencil.json";
    const std::string tuple_file = out_path + ".tuple.json";
    int rc = arvex_pencil_write(p, pencil_file.c_str());
    if (rc == ARVEX_OK) rc = arvex_tuple_write(x, tuple_file.c_str());
    arvex_pencil_free(p);
    arvex_tuple_free(x);
    if (rc) return fail("gen", {}, opts, timer, rc);
    json outcome;
    outcome["pencil_file"] = pencil_file;
    outcome["tuple_file"] = tuple_file;
    outcome["d"] = gen_d;
    outcome["g"] = gen_g;
    outcome["n"] = gen_n;
    outcome["field"] = gen_field;
    print_report("gen", {pencil_file, tuple_file}, opts, outcome, timer);
    return kExitOk;
  }

  if (*params) {
    uint64_t classical = 0, free_dim = 0;
    if (int rc = arvex_parameter_counts(par_n, par_g, &classical, &free_dim))
      return fail("params", {}, opts, timer, rc);
    json outcome;
    outcome["n"] = par_n;
    outcome["g"] = par_g;
    outcome["classical_params"] = classical;
    outcome["free_params"] = free_dim;
    print_report("params", {}, opts, outcome, timer);
    return kExitOk;
  }

  return kExitInput;
}
