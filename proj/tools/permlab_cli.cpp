// permlab command-line front end. Talks to the library only through permlab.h.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "permlab.h"

namespace {

using Json = nlohmann::ordered_json;

constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

// Carries a library failure up to main.
struct LibraryError {
  permlab_status status;
  std::string message;
};

struct UsageError {
  std::string message;
};

void check(permlab_status st) {
  if (st != PERMLAB_OK) throw LibraryError{st, permlab_last_error()};
}

std::string take(char* s) {
  std::string out(s);
  permlab_free_string(s);
  return out;
}

using MatrixPtr = std::unique_ptr<permlab_matrix, decltype(&permlab_matrix_free)>;
using ConfigPtr = std::unique_ptr<permlab_search_config, decltype(&permlab_search_config_free)>;

MatrixPtr load(const std::string& path) {
  permlab_matrix* m = nullptr;
  check(permlab_matrix_load(path.c_str(), &m));
  return {m, &permlab_matrix_free};
}

MatrixPtr wrap(permlab_matrix* m) { return {m, &permlab_matrix_free}; }

Json matrix_json(const permlab_matrix* m) {
  char* s = nullptr;
  check(permlab_matrix_to_json(m, &s));
  return Json::parse(take(s));
}

std::string matrix_text(const permlab_matrix* m) {
  char* s = nullptr;
  check(permlab_matrix_to_text(m, &s));
  return take(s);
}

// per(I - A) as text, or null when the order is past the exact guard.
Json per_i_minus_or_null(const permlab_matrix* m) {
  char* s = nullptr;
  if (permlab_permanent(m, PERMLAB_RYSER, 1, &s) != PERMLAB_OK) return nullptr;
  return take(s);
}

// s is read only after the call that fills it has run.
Json call_json(permlab_status st, char*& s) {
  check(st);
  return Json::parse(take(s));
}

unsigned thread_count() {
  const char* env = std::getenv("PERMLAB_THREADS");
  if (env == nullptr || *env == '\0') return 0;
  char* end = nullptr;
  const unsigned long v = std::strtoul(env, &end, 10);
  if (*end != '\0' || v == 0 || v > 1024) throw UsageError{"PERMLAB_THREADS must be a positive integer"};
  return static_cast<unsigned>(v);
}

// ---- rendering ----------------------------------------------------------

std::string scalar(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_null()) return "";
  return j.dump();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string str() const {
    std::ostringstream os;
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << csv_field(cells[i]);
      os << '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
    return os.str();
  }
};

Table row_of(const Json& obj, const std::vector<std::string>& keys) {
  Table t{keys, {{}}};
  for (const auto& k : keys) t.rows[0].push_back(obj.contains(k) ? scalar(obj.at(k)) : "");
  return t;
}

Table matrix_table(const Json& m) {
  Table t;
  const auto n = m.at("n").get<std::size_t>();
  for (std::size_t j = 0; j < n; ++j) t.header.push_back("c" + std::to_string(j));
  for (const auto& r : m.at("entries")) {
    std::vector<std::string> cells;
    for (const auto& x : r) cells.push_back(scalar(x));
    t.rows.push_back(std::move(cells));
  }
  return t;
}

bool is_matrix(const Json& j) { return j.is_object() && j.size() == 2 && j.contains("n") && j.contains("entries"); }

void render_text(std::ostream& os, const Json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (is_matrix(j)) {
    for (const auto& r : j.at("entries")) {
      os << pad;
      for (std::size_t k = 0; k < r.size(); ++k) os << (k ? " " : "") << scalar(r[k]);
      os << '\n';
    }
    return;
  }
  if (j.is_object()) {
    for (const auto& [key, v] : j.items()) {
      if (v.is_structured() && !v.empty()) {
        os << pad << key << ":\n";
        render_text(os, v, indent + 2);
      } else {
        const std::string shown = v.is_structured() ? v.dump() : scalar(v);
        os << pad << key << ":" << (shown.empty() ? "" : " ") << shown << '\n';
      }
    }
    return;
  }
  if (j.is_array()) {
    bool flat = true, strings = true;
    for (const auto& v : j) {
      flat = flat && !v.is_structured();
      strings = strings && v.is_string();
    }
    if (strings) {
      // one per line; notes are sentences
      for (const auto& v : j) os << pad << "- " << v.get<std::string>() << '\n';
      return;
    }
    if (flat) {
      os << pad;
      for (std::size_t k = 0; k < j.size(); ++k) os << (k ? " " : "") << scalar(j[k]);
      os << '\n';
      return;
    }
    for (const auto& v : j) {
      os << pad << "-\n";
      render_text(os, v, indent + 2);
    }
    return;
  }
  os << pad << scalar(j) << '\n';
}

struct Output {
  Json json;
  Table csv;
  std::optional<std::string> text;  // overrides the generic text rendering
};

// ---- verbs --------------------------------------------------------------

Output do_permanent(const std::string& input, const std::string& method, bool i_minus, bool trace) {
  auto m = load(input);
  const permlab_method pm = method == "naive" ? PERMLAB_NAIVE : method == "gray" ? PERMLAB_GRAY : PERMLAB_RYSER;
  char* s = nullptr;
  Json j = call_json(permlab_permanent_json(m.get(), pm, i_minus ? 1 : 0, &s), s);
  if (trace) {
    if (pm != PERMLAB_RYSER) throw UsageError{"--trace needs --method ryser"};
    j["trace"] = call_json(permlab_ryser_trace_json(m.get(), i_minus ? 1 : 0, &s), s);
  }
  Output o{j, row_of(j, {"method", "target", "n", "value", "value_float"}), std::nullopt};
  o.text = (j.at("value").is_null() ? j.at("value_float").dump() : scalar(j.at("value"))) + "\n";
  if (trace) {
    std::ostringstream os;
    render_text(os, j.at("trace"), 0);
    *o.text += os.str();
  }
  return o;
}

Output do_classify(const std::string& input) {
  auto m = load(input);
  char* s = nullptr;
  Json j = call_json(permlab_classify_json(m.get(), &s), s);
  Json with_n{{"n", permlab_matrix_order(m.get())}};
  with_n.update(j);
  j = std::move(with_n);
  return {j,
          row_of(j, {"n", "nonnegative", "row_substochastic", "doubly_substochastic", "doubly_stochastic",
                     "zero_diagonal", "at_most_one_positive_per_row", "sigma", "sub_defect"}),
          std::nullopt};
}

const std::vector<std::string> kBoundColumns = {"reading", "n",        "s",        "e",         "value",
                                                "value_float", "source", "hypotheses_met", "supremum"};

Output do_bound(const std::string& kind, std::size_t n, const std::optional<std::string>& s, long k,
                const std::optional<std::string>& input) {
  char* out = nullptr;
  const std::string sv = s.value_or(std::to_string(n));
  if (kind == "labeling") {
    if (!input) throw UsageError{"bound --kind labeling needs --input"};
    auto m = load(*input);
    Json j = call_json(permlab_labeling_bound_json(m.get(), &out), out);
    return {j, row_of(j, {"value", "exhaustive"}), std::nullopt};
  }
  if (kind == "odd_stochastic" || kind == "omega3" || kind == "odd_substochastic") {
    Json j = call_json(permlab_conjecture_json(kind.c_str(), n, sv.c_str(), &out), out);
    Table t{kBoundColumns, {}};
    for (const char* reading : {"consistent", "literal"}) t.rows.push_back(row_of(j.at(reading), kBoundColumns).rows[0]);
    return {j, t, std::nullopt};
  }
  Json j = call_json(permlab_bound_json(kind.c_str(), n, sv.c_str(), k, &out), out);
  return {j, row_of(j, kBoundColumns), std::nullopt};
}

Output do_construct(const std::string& kind, std::size_t n, const std::optional<std::string>& s) {
  permlab_matrix* raw = nullptr;
  const std::string sv = s.value_or(std::to_string(n));
  check(permlab_construct(kind.c_str(), n, sv.c_str(), &raw));
  auto m = wrap(raw);
  const Json mj = matrix_json(m.get());
  Json j{{"kind", kind}, {"n", permlab_matrix_order(m.get())}, {"s", sv}, {"matrix", mj},
         {"per_i_minus", per_i_minus_or_null(m.get())}};
  return {j, matrix_table(mj), matrix_text(m.get())};
}

Output do_transform(const std::string& input, const std::string& op, const std::string& preserve,
                    std::optional<std::size_t> i, std::optional<std::size_t> jj, const std::optional<std::string>& eps) {
  auto m = load(input);
  Json steps = Json::array();
  char* out = nullptr;
  MatrixPtr result{nullptr, &permlab_matrix_free};
  permlab_matrix* raw = nullptr;
  if (op == "zero_diagonalize" || op == "concentrate") {
    const Json r = call_json(op == "concentrate" ? permlab_concentrate_json(m.get(), &out)
                                                 : permlab_zero_diagonalize_json(m.get(), preserve.c_str(), &out),
                             out);
    steps = r.at("steps");
    check(permlab_matrix_from_json(r.at("matrix").dump().c_str(), &raw));
  } else if (op == "pair_up") {
    check(permlab_pair_up(m.get(), &raw));
  } else {
    if (!i || !jj || !eps) throw UsageError{"epsilon_shift needs --row, --col and --eps"};
    check(permlab_epsilon_shift(m.get(), *i, *jj, eps->c_str(), &raw));
  }
  result = wrap(raw);

  const Json mj = matrix_json(result.get());
  Json j{{"op", op}, {"matrix", mj}, {"steps", steps},
         {"per_before", per_i_minus_or_null(m.get())}, {"per_after", per_i_minus_or_null(result.get())}};
  Table t{{"kind", "row", "from_col", "to_col", "epsilon", "per_before", "per_after"}, {}};
  for (const auto& st : steps)
    t.rows.push_back({scalar(st.at("kind")), std::to_string(st.at("indices")[0][0].get<std::size_t>()),
                      std::to_string(st.at("indices")[0][1].get<std::size_t>()),
                      std::to_string(st.at("indices")[1][1].get<std::size_t>()), scalar(st.at("epsilon")),
                      scalar(st.at("per_before")), scalar(st.at("per_after"))});
  std::string text = matrix_text(result.get());
  text += "per(I-A): " + scalar(j.at("per_before")) + " -> " + scalar(j.at("per_after")) + "\n";
  return {j, t, text};
}

Output do_decompose(const std::string& input) {
  auto m = load(input);
  char* out = nullptr;
  Json j = call_json(permlab_decompose_json(m.get(), &out), out);
  Table t{{"cycle", "length", "vertices", "weight_product", "factor"}, {}};
  std::size_t idx = 0;
  for (const auto& c : j.at("cycles")) {
    std::string verts;
    for (const auto& v : c.at("vertices")) verts += (verts.empty() ? "" : " ") + v.dump();
    t.rows.push_back({std::to_string(idx++), c.at("length").dump(), verts, scalar(c.at("weight_product")),
                      scalar(c.at("factor"))});
  }
  return {j, t, std::nullopt};
}

struct SearchOverrides {
  std::optional<std::size_t> restarts;
  std::optional<std::size_t> steps;
  std::optional<std::uint64_t> seed;
};

Json apply_overrides(Json doc, const SearchOverrides& o) {
  if (o.restarts) doc["restarts"] = *o.restarts;
  if (o.steps) doc["steps_per_restart"] = *o.steps;
  if (o.seed) doc["seed"] = *o.seed;
  return doc;
}

ConfigPtr parse_config(const Json& doc) {
  permlab_search_config* c = nullptr;
  check(permlab_search_config_parse(doc.dump().c_str(), &c));
  return {c, &permlab_search_config_free};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LibraryError{PERMLAB_IO, "cannot open '" + path + "'"};
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Output do_search(const std::optional<std::string>& config_path, std::optional<std::size_t> n,
                 std::optional<double> s, const std::optional<std::string>& cls, const SearchOverrides& o) {
  Json doc = Json::object();
  if (config_path) {
    try {
      doc = Json::parse(read_file(*config_path));
    } catch (const Json::parse_error& e) {
      throw LibraryError{PERMLAB_PARSE, "'" + *config_path + "': " + e.what()};
    }
  }
  if (n) doc["n"] = *n;
  if (s) doc["s"] = *s;
  if (cls) doc["class"] = *cls;
  if (!doc.is_object() || !doc.contains("n")) throw UsageError{"search needs --config or --n"};
  const auto cfg = parse_config(apply_overrides(doc, o));
  char* out = nullptr;
  Json j = call_json(permlab_search_run(cfg.get(), thread_count(), &out), out);
  const Json& c = j.at("config");
  Table t{{"n", "s", "class", "seed", "restarts", "best_value", "formula_value", "formula_source", "gap", "feasible",
           "evaluations", "best_restart", "rationalized_value"},
          {{scalar(c.at("n")), scalar(c.at("s")), scalar(c.at("class")), scalar(c.at("seed")),
            scalar(c.at("restarts")), scalar(j.at("best_value")), scalar(j.at("formula_value")),
            scalar(j.at("formula_source")), scalar(j.at("gap")), scalar(j.at("feasible")),
            scalar(j.at("evaluations")), scalar(j.at("best_restart")), scalar(j.at("rationalized_value"))}}};
  return {j, t, std::nullopt};
}

Output do_evidence(std::size_t n, std::vector<double> s_values, bool omega3, double step, const SearchOverrides& o) {
  char* out = nullptr;
  if (omega3) {
    if (s_values.empty())
      for (int k = 1; k <= 8; ++k) s_values.push_back(2.0 + k / 8.0);
    Json grids = Json::array();
    Table t{{"s", "grid_step", "points_feasible", "best_value", "best_value_float", "candidate_quadratic",
             "candidate_linear", "envelope", "exceeds_envelope"},
            {}};
    for (double s : s_values) {
      Json g = call_json(permlab_exhaustive_omega3_json(s, step, &out), out);
      const bool exceeds = !g.at("best_value_float").is_null() &&
                           g.at("best_value_float").get<double>() > g.at("envelope").get<double>() + 1e-12;
      g["exceeds_envelope"] = exceeds;
      auto row = row_of(g, t.header).rows[0];
      t.rows.push_back(row);
      grids.push_back(std::move(g));
    }
    Json notes = Json::array();
    const std::string probe = "5/2";
    const Json conj = call_json(permlab_conjecture_json("omega3", 3, probe.c_str(), &out), out);
    for (const auto& x : conj.at("literal").at("notes")) notes.push_back(x);
    const Json odd = call_json(permlab_conjecture_json("odd_substochastic", 5, "9/2", &out), out);
    notes.push_back(odd.at("literal").at("notes")[0]);
    return {Json{{"grids", grids}, {"conjecture_notes", notes}}, t, std::nullopt};
  }
  if (s_values.empty())
    for (int k = 1; k <= 4; ++k) s_values.push_back(static_cast<double>(n) - 1 + k / 4.0);
  ConfigPtr base{nullptr, &permlab_search_config_free};
  if (o.restarts || o.steps || o.seed) {
    Json doc{{"n", n}, {"s", static_cast<double>(n)}};
    base = parse_config(apply_overrides(doc, o));
  }
  Json j = call_json(permlab_evidence_json(n, s_values.data(), s_values.size(), base.get(), thread_count(), &out), out);
  Table t{{"n", "s", "observed", "conjectured_grid", "conjectured_formula", "difference", "feasible"}, {}};
  for (const auto& r : j.at("rows"))
    t.rows.push_back({std::to_string(n), scalar(r.at("s")), scalar(r.at("observed")), scalar(r.at("conjectured_grid")),
                      scalar(r.at("conjectured_formula")), scalar(r.at("difference")), scalar(r.at("feasible"))});
  return {j, t, std::nullopt};
}

Output do_verify(std::size_t& failures) {
  char* out = nullptr;
  Json j = call_json(permlab_verify_json(&out, &failures), out);
  Table t{{"name", "cases", "failures", "passed"}, {}};
  for (const auto& c : j.at("checks"))
    t.rows.push_back({scalar(c.at("name")), scalar(c.at("cases")), scalar(c.at("failures")), scalar(c.at("passed"))});
  return {j, t, std::nullopt};
}

void write(const Output& o, const std::string& format, const std::optional<std::string>& path) {
  std::string body;
  if (format == "json") {
    body = o.json.dump(2) + "\n";
  } else if (format == "csv") {
    body = o.csv.str();
  } else if (o.text) {
    body = *o.text;
  } else {
    std::ostringstream os;
    render_text(os, o.json, 0);
    body = os.str();
  }
  if (!path) {
    std::cout << body;
    return;
  }
  std::ofstream f(*path, std::ios::binary);
  if (!f || !(f << body)) throw LibraryError{PERMLAB_IO, "cannot write '" + *path + "'"};
}

int exit_code(permlab_status st) {
  switch (st) {
    case PERMLAB_OK: return 0;
    case PERMLAB_INVALID_ARGUMENT:
    case PERMLAB_PARSE:
    case PERMLAB_IO: return kExitUsage;
    default: return kExitDomain;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"permlab: permanents of I - A for doubly substochastic A"};
  app.require_subcommand(1);
  std::string format = "text";
  std::optional<std::string> output;
  app.add_option("--format", format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--output,-o", output, "write the report to a file instead of stdout");
  app.fallthrough();

  std::string input;
  std::string method = "ryser";
  bool i_minus = false, trace = false;
  auto* perm = app.add_subcommand("permanent", "permanent of A, or of I - A with --i-minus");
  perm->add_option("--input,-i", input, "matrix file")->required();
  perm->add_option("--method", method)->check(CLI::IsMember({"naive", "ryser", "gray"}));
  perm->add_flag("--i-minus", i_minus, "evaluate per(I - A)");
  perm->add_flag("--trace", trace, "include Ryser level sums");

  auto* cls = app.add_subcommand("classify", "class membership flags, sigma and sub-defect");
  cls->add_option("--input,-i", input, "matrix file")->required();

  std::string bound_kind = "theorem";
  std::size_t n = 0;
  std::optional<std::string> s_text;
  long k = 0;
  std::optional<std::string> bound_input;
  auto* bound = app.add_subcommand("bound", "proven bounds and conjectured values");
  bound->add_option("--kind", bound_kind)
      ->check(CLI::IsMember({"theorem", "malek", "subdefect", "rowsub_odd", "odd_stochastic", "omega3",
                             "odd_substochastic", "labeling"}));
  bound->add_option("--n", n, "matrix order");
  bound->add_option("--s", s_text, "element sum as p/q (default n)");
  bound->add_option("--k", k, "sub-defect for --kind subdefect");
  bound->add_option("--input,-i", bound_input, "matrix file for --kind labeling");

  std::string construct_kind = "extremal";
  auto* construct = app.add_subcommand("construct", "extremal and candidate matrices");
  construct->add_option("--kind", construct_kind)
      ->check(CLI::IsMember({"extremal", "rowsub_odd", "omega3_a0", "omega3_a1", "circulant3"}));
  construct->add_option("--n", n)->required();
  construct->add_option("--s", s_text, "element sum (x for circulant3)");

  std::string op, preserve = "row";
  std::optional<std::size_t> ti, tj;
  std::optional<std::string> eps;
  auto* transform = app.add_subcommand("transform", "diagonal and row surgery");
  transform->add_option("--input,-i", input, "matrix file")->required();
  transform->add_option("--op", op)
      ->required()
      ->check(CLI::IsMember({"zero_diagonalize", "concentrate", "pair_up", "epsilon_shift"}));
  transform->add_option("--preserve", preserve)->check(CLI::IsMember({"row", "doubly"}));
  transform->add_option("--row", ti, "row of the diagonal entry for epsilon_shift");
  transform->add_option("--col", tj, "destination column for epsilon_shift");
  transform->add_option("--eps", eps);

  auto* decompose = app.add_subcommand("decompose", "cycles of a functional digraph");
  decompose->add_option("--input,-i", input, "matrix file")->required();

  std::optional<std::string> config_path, search_class;
  std::optional<std::size_t> search_n;
  std::optional<double> search_s;
  SearchOverrides over;
  auto* search = app.add_subcommand("search", "multistart ascent of per(I - A)");
  search->add_option("--config", config_path, "SearchConfig JSON document");
  search->add_option("--n", search_n);
  search->add_option("--s", search_s);
  search->add_option("--class", search_class)
      ->check(CLI::IsMember({"doubly_stochastic", "doubly_substochastic_fixed_sum"}));
  search->add_option("--restarts", over.restarts);
  search->add_option("--steps", over.steps);
  search->add_option("--seed", over.seed);

  std::vector<double> s_values;
  bool omega3 = false;
  double step = 0.125;
  auto* evidence = app.add_subcommand("evidence", "search maxima against the conjectured values");
  evidence->add_option("--n", n);
  evidence->add_option("--s", s_values, "sums to sample");
  evidence->add_flag("--omega3", omega3, "exhaustive 3x3 grid instead of the search");
  evidence->add_option("--step", step, "grid step for --omega3");
  evidence->add_option("--restarts", over.restarts);
  evidence->add_option("--steps", over.steps);
  evidence->add_option("--seed", over.seed);

  auto* verify = app.add_subcommand("verify", "run the built-in invariant suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    Output o;
    int code = 0;
    if (*perm) {
      o = do_permanent(input, method, i_minus, trace);
    } else if (*cls) {
      o = do_classify(input);
    } else if (*bound) {
      if (bound_kind != "labeling" && bound_kind != "omega3" && n == 0) throw UsageError{"bound needs --n"};
      o = do_bound(bound_kind, bound_kind == "omega3" ? 3 : n, s_text, k, bound_input);
    } else if (*construct) {
      o = do_construct(construct_kind, n, s_text);
    } else if (*transform) {
      o = do_transform(input, op, preserve, ti, tj, eps);
    } else if (*decompose) {
      o = do_decompose(input);
    } else if (*search) {
      o = do_search(config_path, search_n, search_s, search_class, over);
    } else if (*evidence) {
      if (!omega3 && n == 0) throw UsageError{"evidence needs --n or --omega3"};
      o = do_evidence(n, s_values, omega3, step, over);
    } else if (*verify) {
      std::size_t failures = 0;
      o = do_verify(failures);
      code = failures == 0 ? 0 : kExitDomain;
    }
    write(o, format, output);
    return code;
  } catch (const UsageError& e) {
    std::cerr << "permlab: " << e.message << '\n';
    return kExitUsage;
  } catch (const LibraryError& e) {
    std::cerr << "permlab: " << permlab_status_string(e.status) << ": " << e.message << '\n';
    return exit_code(e.status);
  } catch (const std::exception& e) {
    std::cerr << "permlab: " << e.what() << '\n';
    return kExitDomain;
  }
}
