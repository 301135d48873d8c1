#include "arvex/arvex.h"

#include <cstring>
#include <new>
#include <string>

#include "arvex/complexify.hpp"
#include "arvex/decomposition.hpp"
#include "arvex/dilation.hpp"
#include "arvex/generate.hpp"
#include "arvex/io.hpp"
#include "arvex/tuple.hpp"
#include "arvex/verify.hpp"

struct arvex_tuple {
  arvex::MatrixTuple t;
};
struct arvex_pencil {
  arvex::Pencil p;
};
struct arvex_trace {
  arvex::DilationTrace t;
};
struct arvex_decomposition {
  arvex::ExtremeDecomposition d;
};

namespace {

thread_local std::string g_last_error;

arvex::ToleranceConfig to_config(const arvex_options* opts) {
  arvex::ToleranceConfig cfg;
  if (opts) {
    cfg.sym = opts->tol_sym;
    cfg.psd = opts->tol_psd;
    cfg.kernel = opts->tol_kernel;
    cfg.opt = opts->tol_opt;
    cfg.max_iter = opts->max_iter;
    cfg.verbosity = opts->verbosity;
  }
  return cfg;
}

uint64_t seed_of(const arvex_options* opts) { return opts ? opts->seed : 0; }

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    fn();
    return ARVEX_OK;
  } catch (const arvex::InputError& e) {
    g_last_error = e.what();
    return ARVEX_ERR_INVALID;
  } catch (const arvex::SolverError& e) {
    g_last_error = e.what();
    return ARVEX_ERR_SOLVER;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return ARVEX_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return ARVEX_ERR_INTERNAL;
  }
}

int require_args(bool ok) {
  if (!ok) {
    g_last_error = "null argument";
    return ARVEX_ERR_INVALID;
  }
  return ARVEX_OK;
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

void arvex_options_init(arvex_options* opts) {
  if (!opts) return;
  const arvex::ToleranceConfig cfg;
  opts->tol_sym = cfg.sym;
  opts->tol_psd = cfg.psd;
  opts->tol_kernel = cfg.kernel;
  opts->tol_opt = cfg.opt;
  opts->max_iter = cfg.max_iter;
  opts->verbosity = cfg.verbosity;
  opts->seed = 0;
}

const char* arvex_last_error(void) { return g_last_error.c_str(); }

const char* arvex_version(void) { return "0.1.0"; }

void arvex_string_free(char* s) { delete[] s; }

int arvex_tuple_parse(const char* json_text, arvex_tuple** out) {
  if (int rc = require_args(json_text && out)) return rc;
  return guarded([&] { *out = new arvex_tuple{arvex::tuple_from_json(json_text)}; });
}

int arvex_tuple_read(const char* path, arvex_tuple** out) {
  if (int rc = require_args(path && out)) return rc;
  return guarded([&] { *out = new arvex_tuple{arvex::tuple_from_json(arvex::read_text_file(path))}; });
}

int arvex_tuple_to_json(const arvex_tuple* t, char** out) {
  if (int rc = require_args(t && out)) return rc;
  return guarded([&] { *out = dup_string(arvex::tuple_to_json(t->t)); });
}

int arvex_tuple_write(const arvex_tuple* t, const char* path) {
  if (int rc = require_args(t && path)) return rc;
  return guarded([&] { arvex::write_text_file(path, arvex::tuple_to_json(t->t)); });
}

void arvex_tuple_free(arvex_tuple* t) { delete t; }

int arvex_tuple_length(const arvex_tuple* t) { return t ? t->t.g() : 0; }
int arvex_tuple_rows(const arvex_tuple* t) { return t ? static_cast<int>(t->t.rows) : 0; }
int arvex_tuple_cols(const arvex_tuple* t) { return t ? static_cast<int>(t->t.cols) : 0; }
int arvex_tuple_is_complex(const arvex_tuple* t) {
  return t && t->t.field == arvex::Field::Complex ? 1 : 0;
}

int arvex_pencil_parse(const char* json_text, arvex_pencil** out) {
  if (int rc = require_args(json_text && out)) return rc;
  return guarded([&] { *out = new arvex_pencil{arvex::pencil_from_json(json_text)}; });
}

int arvex_pencil_read(const char* path, arvex_pencil** out) {
  if (int rc = require_args(path && out)) return rc;
  return guarded(
      [&] { *out = new arvex_pencil{arvex::pencil_from_json(arvex::read_text_file(path))}; });
}

int arvex_pencil_to_json(const arvex_pencil* p, char** out) {
  if (int rc = require_args(p && out)) return rc;
  return guarded([&] { *out = dup_string(arvex::pencil_to_json(p->p)); });
}

int arvex_pencil_write(const arvex_pencil* p, const char* path) {
  if (int rc = require_args(p && path)) return rc;
  return guarded([&] { arvex::write_text_file(path, arvex::pencil_to_json(p->p)); });
}

void arvex_pencil_free(arvex_pencil* p) { delete p; }

int arvex_pencil_size(const arvex_pencil* p) { return p ? static_cast<int>(p->p.d()) : 0; }
int arvex_pencil_length(const arvex_pencil* p) { return p ? p->p.g() : 0; }

int arvex_check_membership(const arvex_pencil* p, const arvex_tuple* x, const arvex_options* opts,
                           int* is_member, double* min_eig) {
  if (int rc = require_args(p && x && is_member)) return rc;
  return guarded([&] {
    arvex::MembershipReport rep = arvex::is_member(p->p, x->t, to_config(opts));
    *is_member = rep.member ? 1 : 0;
    if (min_eig) *min_eig = rep.min_eig;
  });
}

int arvex_pencil_is_bounded(const arvex_pencil* p, const arvex_options* opts, int* bounded) {
  if (int rc = require_args(p && bounded)) return rc;
  return guarded([&] { *bounded = arvex::is_bounded(p->p, to_config(opts)) ? 1 : 0; });
}

int arvex_dilate(const arvex_pencil* p, const arvex_tuple* x, const arvex_options* opts,
                 arvex_trace** out) {
  if (int rc = require_args(p && x && out)) return rc;
  return guarded([&] {
    arvex::CounterRng rng(seed_of(opts));
    *out = new arvex_trace{arvex::arveson_dilation(p->p, x->t, to_config(opts), rng)};
  });
}

void arvex_trace_free(arvex_trace* t) { delete t; }

int arvex_trace_step_count(const arvex_trace* t) {
  return t ? static_cast<int>(t->t.steps.size()) : 0;
}

int arvex_trace_dim_before(const arvex_trace* t, int step) {
  if (!t || step < 0 || step >= static_cast<int>(t->t.steps.size())) return -1;
  return t->t.steps[static_cast<size_t>(step)].dim_before;
}

int arvex_trace_dim_after(const arvex_trace* t, int step) {
  if (!t || step < 0 || step >= static_cast<int>(t->t.steps.size())) return -1;
  return t->t.steps[static_cast<size_t>(step)].dim_after;
}

double arvex_trace_scale(const arvex_trace* t, int step) {
  if (!t || step < 0 || step >= static_cast<int>(t->t.steps.size())) return -1.0;
  return t->t.steps[static_cast<size_t>(step)].c;
}

int arvex_trace_final_size(const arvex_trace* t) {
  return t ? static_cast<int>(t->t.final_size()) : 0;
}

int arvex_trace_to_json(const arvex_trace* t, char** out) {
  if (int rc = require_args(t && out)) return rc;
  return guarded([&] { *out = dup_string(arvex::trace_to_json(t->t)); });
}

int arvex_trace_write(const arvex_trace* t, const char* path) {
  if (int rc = require_args(t && path)) return rc;
  return guarded([&] { arvex::write_text_file(path, arvex::trace_to_json(t->t)); });
}

int arvex_decompose(const arvex_pencil* p, const arvex_tuple* x, const arvex_options* opts,
                    arvex_decomposition** out) {
  if (int rc = require_args(p && x && out)) return rc;
  return guarded([&] {
    arvex::CounterRng rng(seed_of(opts));
    *out = new arvex_decomposition{arvex::decompose(p->p, x->t, to_config(opts), rng)};
  });
}

int arvex_decomposition_parse(const char* json_text, arvex_decomposition** out) {
  if (int rc = require_args(json_text && out)) return rc;
  return guarded([&] { *out = new arvex_decomposition{arvex::decomposition_from_json(json_text)}; });
}

int arvex_decomposition_read(const char* path, arvex_decomposition** out) {
  if (int rc = require_args(path && out)) return rc;
  return guarded([&] {
    *out = new arvex_decomposition{arvex::decomposition_from_json(arvex::read_text_file(path))};
  });
}

int arvex_decomposition_to_json(const arvex_decomposition* d, char** out) {
  if (int rc = require_args(d && out)) return rc;
  return guarded([&] { *out = dup_string(arvex::decomposition_to_json(d->d)); });
}

int arvex_decomposition_write(const arvex_decomposition* d, const char* path) {
  if (int rc = require_args(d && path)) return rc;
  return guarded([&] { arvex::write_text_file(path, arvex::decomposition_to_json(d->d)); });
}

void arvex_decomposition_free(arvex_decomposition* d) { delete d; }

int arvex_decomposition_component_count(const arvex_decomposition* d) {
  return d ? static_cast<int>(d->d.components.size()) : 0;
}

int arvex_decomposition_component_size(const arvex_decomposition* d, int i) {
  if (!d || i < 0 || i >= static_cast<int>(d->d.components.size())) return -1;
  return static_cast<int>(d->d.components[static_cast<size_t>(i)].rows);
}

int arvex_decomposition_flags(const arvex_decomposition* d, int i, int* irreducible, int* arveson,
                              int* absolute_extreme) {
  if (!d || i < 0 || i >= static_cast<int>(d->d.flags.size())) {
    g_last_error = "component index out of range";
    return ARVEX_ERR_INVALID;
  }
  const arvex::CertFlags& f = d->d.flags[static_cast<size_t>(i)];
  if (irreducible) *irreducible = f.irreducible ? 1 : 0;
  if (arveson) *arveson = f.arveson ? 1 : 0;
  if (absolute_extreme) *absolute_extreme = f.absolute_extreme ? 1 : 0;
  return ARVEX_OK;
}

int arvex_decomposition_total_size(const arvex_decomposition* d) {
  return d ? static_cast<int>(d->d.total_size) : 0;
}

int arvex_decomposition_bound(const arvex_decomposition* d) {
  return d ? static_cast<int>(d->d.bound) : 0;
}

int arvex_verify(const arvex_pencil* p, const arvex_decomposition* d, const arvex_options* opts,
                 int* ok, char** report) {
  if (int rc = require_args(p && d && ok)) return rc;
  return guarded([&] {
    arvex::VerifyReport rep = arvex::verify_decomposition(p->p, d->d, to_config(opts));
    *ok = rep.ok ? 1 : 0;
    if (report) *report = dup_string(rep.lines);
  });
}

int arvex_generate(int d, int g, int n, int field, uint64_t seed, arvex_pencil** pencil,
                   arvex_tuple** member) {
  if (int rc = require_args(pencil && member)) return rc;
  return guarded([&] {
    arvex::CounterRng rng(seed);
    arvex::ToleranceConfig cfg;
    arvex::Pencil p = arvex::generate_pencil(d, g, rng);
    arvex::MatrixTuple x = arvex::generate_member(
        p, n, field ? arvex::Field::Complex : arvex::Field::Real, rng, cfg);
    *pencil = new arvex_pencil{std::move(p)};
    *member = new arvex_tuple{std::move(x)};
  });
}

int arvex_parameter_counts(int n, int g, uint64_t* classical, uint64_t* free_dim) {
  if (int rc = require_args(classical && free_dim)) return rc;
  return guarded([&] {
    arvex::ParameterReport rep = arvex::parameter_report(n, g);
    *classical = rep.classical;
    *free_dim = rep.free_dim;
  });
}

}  // extern "C"
