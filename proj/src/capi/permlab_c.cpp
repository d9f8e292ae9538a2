#include "permlab.h"

#include <cstring>
#include <new>
#include <string>

#include "permlab/bounds.hpp"
#include "permlab/cycles.hpp"
#include "permlab/errors.hpp"
#include "permlab/json_io.hpp"
#include "permlab/permanent.hpp"
#include "permlab/search.hpp"
#include "permlab/transforms.hpp"
#include "permlab/verify.hpp"

struct permlab_matrix {
  permlab::Matrix value;
};

struct permlab_search_config {
  permlab::SearchConfig value;
};

namespace {

using namespace permlab;
using json::Json;

thread_local std::string g_last_error;

permlab_status status_of(ErrorKind k) {
  switch (k) {
    case ErrorKind::Dimension: return PERMLAB_DIMENSION;
    case ErrorKind::Precondition: return PERMLAB_PRECONDITION;
    case ErrorKind::Guard: return PERMLAB_GUARD;
    case ErrorKind::Infeasible: return PERMLAB_INFEASIBLE;
    case ErrorKind::Parse: return PERMLAB_PARSE;
    case ErrorKind::Io: return PERMLAB_IO;
  }
  return PERMLAB_INTERNAL;
}

struct BadArgument : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void need(const void* p, const char* what) {
  if (p == nullptr) throw BadArgument(std::string(what) + " is null");
}

template <typename F>
permlab_status guarded(F&& body) {
  g_last_error.clear();
  try {
    body();
    return PERMLAB_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_of(e.kind());
  } catch (const BadArgument& e) {
    g_last_error = e.what();
    return PERMLAB_INVALID_ARGUMENT;
  } catch (const nlohmann::json::exception& e) {
    g_last_error = e.what();
    return PERMLAB_PARSE;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return PERMLAB_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return PERMLAB_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return PERMLAB_INTERNAL;
  }
}

char* dup(const std::string& s) {
  char* p = new char[s.size() + 1];
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

void emit(char** out, const std::string& s) {
  need(out, "out");
  *out = dup(s);
}

void emit(char** out, const Json& j) { emit(out, j.dump(2)); }

void emit(permlab_matrix** out, Matrix m) {
  need(out, "out");
  *out = new permlab_matrix{std::move(m)};
}

const Matrix& mat(const permlab_matrix* m) {
  need(m, "matrix");
  return m->value;
}

Matrix target(const permlab_matrix* m, int i_minus_flag) { return i_minus_flag ? i_minus(mat(m)) : mat(m); }

std::string text(const char* s, const char* what) {
  need(s, what);
  return s;
}

const char* method_name(permlab_method m) {
  switch (m) {
    case PERMLAB_NAIVE: return "naive";
    case PERMLAB_RYSER: return "ryser";
    case PERMLAB_GRAY: return "gray";
  }
  throw BadArgument("unknown permanent method");
}

Preserve parse_preserve(const std::string& s) {
  if (s == "row") return Preserve::RowSubstochastic;
  if (s == "doubly") return Preserve::DoublySubstochastic;
  throw BadArgument("preserve must be 'row' or 'doubly', got '" + s + "'");
}

ConjectureKind parse_conjecture(const std::string& s) {
  if (s == "odd_stochastic") return ConjectureKind::OddStochastic;
  if (s == "omega3") return ConjectureKind::Omega3;
  if (s == "odd_substochastic") return ConjectureKind::OddSubstochastic;
  throw BadArgument("unknown conjecture '" + s + "'");
}

}  // namespace

extern "C" {

const char* permlab_version(void) { return "1.0.0"; }

const char* permlab_status_string(permlab_status status) {
  switch (status) {
    case PERMLAB_OK: return "ok";
    case PERMLAB_INVALID_ARGUMENT: return "invalid argument";
    case PERMLAB_DIMENSION: return "dimension error";
    case PERMLAB_PRECONDITION: return "precondition violated";
    case PERMLAB_GUARD: return "size guard exceeded";
    case PERMLAB_INFEASIBLE: return "infeasible";
    case PERMLAB_PARSE: return "parse error";
    case PERMLAB_IO: return "i/o error";
    case PERMLAB_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* permlab_last_error(void) { return g_last_error.c_str(); }

void permlab_free_string(char* s) { delete[] s; }

permlab_status permlab_matrix_parse(const char* text_in, permlab_matrix** out) {
  return guarded([&] { emit(out, parse_matrix(text(text_in, "text"))); });
}

permlab_status permlab_matrix_load(const char* path, permlab_matrix** out) {
  return guarded([&] { emit(out, load_matrix(text(path, "path"))); });
}

permlab_status permlab_matrix_from_json(const char* doc, permlab_matrix** out) {
  return guarded([&] { emit(out, json::decode<Matrix>(json::parse(text(doc, "json")))); });
}

permlab_status permlab_matrix_from_entries(size_t n, const char* const* entries, permlab_matrix** out) {
  return guarded([&] {
    need(entries, "entries");
    std::vector<Rational> e;
    for (size_t k = 0; k < n * n; ++k) e.push_back(parse_rational(text(entries[k], "entry")));
    emit(out, Matrix(n, std::move(e)));
  });
}

void permlab_matrix_free(permlab_matrix* m) { delete m; }

size_t permlab_matrix_order(const permlab_matrix* m) { return m ? m->value.order() : 0; }

permlab_status permlab_matrix_entry(const permlab_matrix* m, size_t i, size_t j, char** out) {
  return guarded([&] {
    const Matrix& a = mat(m);
    require(i < a.order() && j < a.order(), ErrorKind::Dimension, "entry index out of range");
    emit(out, to_string(a(i, j)));
  });
}

permlab_status permlab_matrix_to_text(const permlab_matrix* m, char** out) {
  return guarded([&] { emit(out, format_matrix(mat(m))); });
}

permlab_status permlab_matrix_to_json(const permlab_matrix* m, char** out) {
  return guarded([&] { emit(out, json::encode(mat(m))); });
}

permlab_status permlab_classify_json(const permlab_matrix* m, char** out) {
  return guarded([&] { emit(out, json::encode(classify(mat(m)))); });
}

permlab_status permlab_permanent(const permlab_matrix* m, permlab_method method, int i_minus_flag, char** out) {
  return guarded([&] {
    const Matrix a = target(m, i_minus_flag);
    switch (method) {
      case PERMLAB_NAIVE: emit(out, to_string(permanent_naive(a))); return;
      case PERMLAB_RYSER: emit(out, to_string(permanent_ryser(a).total)); return;
      case PERMLAB_GRAY: throw BadArgument("the Gray-code evaluator is floating point; use permlab_permanent_float");
    }
    throw BadArgument("unknown permanent method");
  });
}

permlab_status permlab_permanent_float(const permlab_matrix* m, int i_minus_flag, double* out) {
  return guarded([&] {
    need(out, "out");
    *out = permanent_gray(to_real(target(m, i_minus_flag)));
  });
}

permlab_status permlab_permanent_json(const permlab_matrix* m, permlab_method method, int i_minus_flag, char** out) {
  return guarded([&] {
    const Matrix a = target(m, i_minus_flag);
    Json j{{"method", method_name(method)}, {"target", i_minus_flag ? "I-A" : "A"}, {"n", a.order()}};
    if (method == PERMLAB_GRAY) {
      j["value"] = nullptr;
      j["value_float"] = permanent_gray(to_real(a));
    } else {
      const Rational v = method == PERMLAB_NAIVE ? permanent_naive(a) : permanent_ryser(a).total;
      j["value"] = to_string(v);
      j["value_float"] = to_double(v);
    }
    emit(out, j);
  });
}

permlab_status permlab_ryser_trace_json(const permlab_matrix* m, int i_minus_flag, char** out) {
  return guarded([&] { emit(out, json::encode(permanent_ryser(target(m, i_minus_flag)))); });
}

permlab_status permlab_determinant(const permlab_matrix* m, int i_minus_flag, char** out) {
  return guarded([&] { emit(out, to_string(determinant(target(m, i_minus_flag)))); });
}

permlab_status permlab_sign_structure_json(const permlab_matrix* m, char** out) {
  return guarded([&] { emit(out, json::encode(check_sign_structure(mat(m)))); });
}

permlab_status permlab_epsilon_shift(const permlab_matrix* m, size_t i, size_t j, const char* eps,
                                     permlab_matrix** out) {
  return guarded([&] { emit(out, epsilon_shift(mat(m), i, j, parse_rational(text(eps, "eps")))); });
}

permlab_status permlab_zero_diagonalize_json(const permlab_matrix* m, const char* preserve, char** out) {
  return guarded(
      [&] { emit(out, json::encode(zero_diagonalize(mat(m), parse_preserve(text(preserve, "preserve"))))); });
}

permlab_status permlab_concentrate_json(const permlab_matrix* m, char** out) {
  return guarded([&] { emit(out, json::encode(concentrate_rows(mat(m)))); });
}

permlab_status permlab_pair_up(const permlab_matrix* m, permlab_matrix** out) {
  return guarded([&] { emit(out, pair_up(mat(m))); });
}

permlab_status permlab_decompose_json(const permlab_matrix* m, char** out) {
  return guarded([&] {
    const WeightedDigraph g = build_graph(mat(m));
    const CycleDecomposition d = find_cycles(g);
    Json j{{"n", g.n}, {"graph", json::encode(g)}, {"cycles", json::encode(d).at("cycles")}};
    j["per_via_cycles"] = to_string(per_via_cycles(mat(m)));
    emit(out, j);
  });
}

permlab_status permlab_per_via_cycles(const permlab_matrix* m, char** out) {
  return guarded([&] { emit(out, to_string(per_via_cycles(mat(m)))); });
}

permlab_status permlab_bound_json(const char* kind, size_t n, const char* s, long k, char** out) {
  return guarded([&] {
    const std::string which = text(kind, "kind");
    if (which == "malek") return emit(out, json::encode(malek_report(n)));
    if (which == "subdefect") return emit(out, json::encode(subdefect_bound(n, k)));
    const Rational sv = parse_rational(text(s, "s"));
    if (which == "theorem") return emit(out, json::encode(theorem_bound(n, sv)));
    if (which == "rowsub_odd") return emit(out, json::encode(rowsub_odd_bound(n, sv)));
    throw BadArgument("unknown bound kind '" + which + "'");
  });
}

permlab_status permlab_construct(const char* kind, size_t n, const char* s, permlab_matrix** out) {
  return guarded([&] {
    const std::string which = text(kind, "kind");
    const Rational sv = parse_rational(text(s, "s"));
    if (which == "extremal") return emit(out, construct_extremal(n, sv));
    if (which == "rowsub_odd") return emit(out, construct_rowsub_odd(n, sv));
    if (which == "omega3_a0") return emit(out, omega3_candidates(sv).a0);
    if (which == "omega3_a1") return emit(out, omega3_candidates(sv).a1);
    if (which == "circulant3") return emit(out, circulant3(sv));
    throw BadArgument("unknown construction '" + which + "'");
  });
}

permlab_status permlab_conjecture_json(const char* kind, size_t n, const char* s, char** out) {
  return guarded([&] {
    const ConjectureKind ck = parse_conjecture(text(kind, "kind"));
    const Rational sv = ck == ConjectureKind::OddStochastic ? Rational(static_cast<long>(n))
                                                              : parse_rational(text(s, "s"));
    emit(out, json::encode(conjecture_values(ck, n, sv)));
  });
}

permlab_status permlab_labeling_bound_json(const permlab_matrix* m, char** out) {
  return guarded([&] { emit(out, json::encode(labeling_bound(mat(m)))); });
}

permlab_status permlab_search_config_parse(const char* doc, permlab_search_config** out) {
  return guarded([&] {
    need(out, "out");
    SearchConfig c = json::search_config_from_document(json::parse(text(doc, "json")));
    validate(c);
    *out = new permlab_search_config{c};
  });
}

permlab_status permlab_search_config_default(size_t n, double s, permlab_search_config** out) {
  return guarded([&] {
    need(out, "out");
    SearchConfig c = default_config(n, s);
    validate(c);
    *out = new permlab_search_config{c};
  });
}

void permlab_search_config_free(permlab_search_config* c) { delete c; }

permlab_status permlab_search_config_to_json(const permlab_search_config* c, char** out) {
  return guarded([&] {
    need(c, "config");
    emit(out, json::encode(c->value));
  });
}

permlab_status permlab_search_run(const permlab_search_config* c, unsigned threads, char** out) {
  return guarded([&] {
    need(c, "config");
    emit(out, json::encode(maximize(c->value, threads)));
  });
}

permlab_status permlab_exhaustive_omega3_json(double s, double grid_step, char** out) {
  return guarded([&] { emit(out, json::encode(exhaustive_omega3(s, grid_step))); });
}

permlab_status permlab_evidence_json(size_t n, const double* s_values, size_t count,
                                     const permlab_search_config* base, unsigned threads, char** out) {
  return guarded([&] {
    if (count > 0) need(s_values, "s_values");
    std::vector<double> grid(s_values, s_values + count);
    std::optional<SearchConfig> b;
    if (base) b = base->value;
    emit(out, json::encode(evidence_report(n, grid, b, threads)));
  });
}

permlab_status permlab_verify_json(char** out, size_t* failures) {
  return guarded([&] {
    const auto outcomes = run_verification();
    const auto report = verification_report(outcomes);
    if (failures) *failures = report.at("failures").get<std::size_t>();
    emit(out, report);
  });
}

}  // extern "C"
