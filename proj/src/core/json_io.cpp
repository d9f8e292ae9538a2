#include "permlab/json_io.hpp"

#include "permlab/errors.hpp"

namespace permlab::json {

namespace {

template <typename T>
Json encode_optional(const std::optional<T>& v) {
  return v ? encode(*v) : Json(nullptr);
}

Json encode_optional_double(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

template <typename T>
std::optional<T> decode_optional(const Json& j) {
  if (j.is_null()) return std::nullopt;
  return decode<T>(j);
}

std::optional<double> decode_optional_double(const Json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

Json encode_rationals(const std::vector<Rational>& v) {
  Json a = Json::array();
  for (const auto& q : v) a.push_back(encode(q));
  return a;
}

std::vector<Rational> decode_rationals(const Json& j) {
  std::vector<Rational> v;
  for (const auto& x : j) v.push_back(decode<Rational>(x));
  return v;
}

StepKind parse_step_kind(const std::string& s) {
  if (s == "epsilon_shift") return StepKind::EpsilonShift;
  if (s == "row_concentrate") return StepKind::RowConcentrate;
  if (s == "pair_up") return StepKind::PairUp;
  fail(ErrorKind::Parse, "unknown step kind '" + s + "'");
}

std::string step_kind_name(StepKind k) {
  switch (k) {
    case StepKind::EpsilonShift: return "epsilon_shift";
    case StepKind::RowConcentrate: return "row_concentrate";
    case StepKind::PairUp: return "pair_up";
  }
  return "unknown";
}

BoundSource parse_source(const std::string& s) {
  for (auto src : {BoundSource::Malek, BoundSource::FixedSumTheorem, BoundSource::SubDefectCorollary,
                   BoundSource::RowSubstochasticOddTheorem, BoundSource::ConjectureOddStochastic,
                   BoundSource::ConjectureOmega3, BoundSource::ConjectureOddSubstochastic})
    if (to_string(src) == s) return src;
  fail(ErrorKind::Parse, "unknown bound source '" + s + "'");
}

}  // namespace

Json encode(const Rational& q) { return to_string(q); }

template <>
Rational decode<Rational>(const Json& j) {
  require(j.is_string(), ErrorKind::Parse, "rational must be a string");
  return parse_rational(j.get<std::string>());
}

Json encode(const Matrix& a) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < a.order(); ++i) {
    Json r = Json::array();
    for (const auto& x : a.row(i)) r.push_back(encode(x));
    rows.push_back(std::move(r));
  }
  return Json{{"n", a.order()}, {"entries", std::move(rows)}};
}

template <>
Matrix decode<Matrix>(const Json& j) {
  const auto n = j.at("n").get<std::size_t>();
  std::vector<std::vector<Rational>> rows;
  for (const auto& r : j.at("entries")) rows.push_back(decode_rationals(r));
  return make_matrix(n, rows);
}

Json encode(const RealMatrix& a) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < a.n; ++i) {
    Json r = Json::array();
    for (std::size_t k = 0; k < a.n; ++k) r.push_back(a(i, k));
    rows.push_back(std::move(r));
  }
  return Json{{"n", a.n}, {"entries", std::move(rows)}};
}

template <>
RealMatrix decode<RealMatrix>(const Json& j) {
  RealMatrix m(j.at("n").get<std::size_t>());
  const auto& rows = j.at("entries");
  require(rows.size() == m.n, ErrorKind::Parse, "real matrix row count mismatch");
  for (std::size_t i = 0; i < m.n; ++i) {
    require(rows[i].size() == m.n, ErrorKind::Parse, "real matrix row length mismatch");
    for (std::size_t k = 0; k < m.n; ++k) m(i, k) = rows[i][k].get<double>();
  }
  return m;
}

Json encode(const ClassificationReport& r) {
  return Json{{"nonnegative", r.nonnegative},
              {"row_substochastic", r.row_substochastic},
              {"doubly_substochastic", r.doubly_substochastic},
              {"doubly_stochastic", r.doubly_stochastic},
              {"zero_diagonal", r.zero_diagonal},
              {"at_most_one_positive_per_row", r.at_most_one_positive_per_row},
              {"sigma", encode(r.sigma)},
              {"sub_defect", r.sub_defect ? Json(*r.sub_defect) : Json(nullptr)}};
}

template <>
ClassificationReport decode<ClassificationReport>(const Json& j) {
  ClassificationReport r;
  r.nonnegative = j.at("nonnegative").get<bool>();
  r.row_substochastic = j.at("row_substochastic").get<bool>();
  r.doubly_substochastic = j.at("doubly_substochastic").get<bool>();
  r.doubly_stochastic = j.at("doubly_stochastic").get<bool>();
  r.zero_diagonal = j.at("zero_diagonal").get<bool>();
  r.at_most_one_positive_per_row = j.at("at_most_one_positive_per_row").get<bool>();
  r.sigma = decode<Rational>(j.at("sigma"));
  if (!j.at("sub_defect").is_null()) r.sub_defect = j.at("sub_defect").get<long>();
  return r;
}

Json encode(const RyserTrace& t) {
  return Json{{"per_level_sums", encode_rationals(t.per_level_sums)}, {"total", encode(t.total)}};
}

template <>
RyserTrace decode<RyserTrace>(const Json& j) {
  return {decode_rationals(j.at("per_level_sums")), decode<Rational>(j.at("total"))};
}

Json encode(const SignStructureReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.replaced_row_nonpos)
    checks.push_back(Json{{"columns", c.columns}, {"row", c.row}, {"nonpositive", c.nonpositive}});
  return Json{{"row_sum_nonneg", r.row_sum_nonneg},
              {"replaced_row_nonpos", std::move(checks)},
              {"level_sign_ok", r.level_sign_ok},
              {"subsets_checked", r.subsets_checked},
              {"exhaustive", r.exhaustive},
              {"all_ok", r.all_ok()}};
}

template <>
SignStructureReport decode<SignStructureReport>(const Json& j) {
  SignStructureReport r;
  r.row_sum_nonneg = j.at("row_sum_nonneg").get<std::vector<bool>>();
  for (const auto& c : j.at("replaced_row_nonpos"))
    r.replaced_row_nonpos.push_back(
        {c.at("columns").get<std::uint64_t>(), c.at("row").get<std::size_t>(), c.at("nonpositive").get<bool>()});
  r.level_sign_ok = j.at("level_sign_ok").get<std::vector<bool>>();
  r.subsets_checked = j.at("subsets_checked").get<std::size_t>();
  r.exhaustive = j.at("exhaustive").get<bool>();
  return r;
}

Json encode(const TransformStep& s) {
  Json idx = Json::array();
  for (auto [i, k] : s.indices) idx.push_back(Json::array({i, k}));
  return Json{{"kind", step_kind_name(s.kind)},
              {"indices", std::move(idx)},
              {"epsilon", encode(s.epsilon)},
              {"per_before", encode_optional(s.per_before)},
              {"per_after", encode_optional(s.per_after)}};
}

template <>
TransformStep decode<TransformStep>(const Json& j) {
  TransformStep s;
  s.kind = parse_step_kind(j.at("kind").get<std::string>());
  for (const auto& p : j.at("indices")) s.indices.emplace_back(p.at(0).get<std::size_t>(), p.at(1).get<std::size_t>());
  s.epsilon = decode<Rational>(j.at("epsilon"));
  s.per_before = decode_optional<Rational>(j.at("per_before"));
  s.per_after = decode_optional<Rational>(j.at("per_after"));
  return s;
}

Json encode(const TransformResult& r) {
  Json steps = Json::array();
  for (const auto& s : r.steps) steps.push_back(encode(s));
  return Json{{"matrix", encode(r.matrix)}, {"steps", std::move(steps)}};
}

template <>
TransformResult decode<TransformResult>(const Json& j) {
  TransformResult r{decode<Matrix>(j.at("matrix")), {}};
  for (const auto& s : j.at("steps")) r.steps.push_back(decode<TransformStep>(s));
  return r;
}

Json encode(const WeightedDigraph& g) {
  Json edges = Json::array();
  for (const auto& e : g.out_edge)
    edges.push_back(e ? Json{{"target", e->target}, {"weight", encode(e->weight)}} : Json(nullptr));
  return Json{{"n", g.n}, {"out_edge", std::move(edges)}};
}

template <>
WeightedDigraph decode<WeightedDigraph>(const Json& j) {
  WeightedDigraph g;
  g.n = j.at("n").get<std::size_t>();
  for (const auto& e : j.at("out_edge")) {
    if (e.is_null())
      g.out_edge.emplace_back();
    else
      g.out_edge.emplace_back(Edge{e.at("target").get<std::size_t>(), decode<Rational>(e.at("weight"))});
  }
  return g;
}

Json encode(const CycleDecomposition& d) {
  Json cycles = Json::array();
  for (const auto& c : d.cycles)
    cycles.push_back(Json{{"vertices", c.vertices},
                          {"length", c.length},
                          {"weight_product", encode(c.weight_product)},
                          {"factor", encode(cycle_factor(c))}});
  return Json{{"cycles", std::move(cycles)}};
}

template <>
CycleDecomposition decode<CycleDecomposition>(const Json& j) {
  CycleDecomposition d;
  for (const auto& c : j.at("cycles"))
    d.cycles.push_back({c.at("vertices").get<std::vector<std::size_t>>(), c.at("length").get<std::size_t>(),
                        decode<Rational>(c.at("weight_product"))});
  return d;
}

Json encode(const BoundReport& r) {
  Json j{{"n", r.n},
         {"s", encode(r.s)},
         {"e", r.e},
         {"value", encode(r.value)},
         {"value_float", to_double(r.value)},
         {"source", to_string(r.source)},
         {"witness", encode_optional(r.witness)},
         {"hypotheses_met", r.hypotheses_met},
         {"supremum", r.supremum}};
  if (r.reading) j["reading"] = to_string(*r.reading);
  j["notes"] = r.notes;
  return j;
}

template <>
BoundReport decode<BoundReport>(const Json& j) {
  BoundReport r;
  r.n = j.at("n").get<std::size_t>();
  r.s = decode<Rational>(j.at("s"));
  r.e = j.at("e").get<long>();
  r.value = decode<Rational>(j.at("value"));
  r.source = parse_source(j.at("source").get<std::string>());
  r.witness = decode_optional<Matrix>(j.at("witness"));
  r.hypotheses_met = j.at("hypotheses_met").get<bool>();
  r.supremum = j.at("supremum").get<bool>();
  if (j.contains("reading")) {
    const auto s = j.at("reading").get<std::string>();
    require(s == "literal" || s == "consistent", ErrorKind::Parse, "unknown reading '" + s + "'");
    r.reading = s == "literal" ? Reading::Literal : Reading::Consistent;
  }
  r.notes = j.at("notes").get<std::vector<std::string>>();
  return r;
}

Json encode(const ConjectureReport& r) {
  return Json{{"default_reading", "consistent"}, {"consistent", encode(r.consistent)}, {"literal", encode(r.literal)}};
}

template <>
ConjectureReport decode<ConjectureReport>(const Json& j) {
  return {decode<BoundReport>(j.at("literal")), decode<BoundReport>(j.at("consistent"))};
}

Json encode(const LabelingBound& b) {
  Json pairs = Json::array();
  for (auto [p, q] : b.pairing) pairs.push_back(Json::array({p, q}));
  return Json{{"value", encode(b.value)}, {"pairing", std::move(pairs)}, {"exhaustive", b.exhaustive}};
}

template <>
LabelingBound decode<LabelingBound>(const Json& j) {
  LabelingBound b;
  b.value = decode<Rational>(j.at("value"));
  for (const auto& p : j.at("pairing")) b.pairing.emplace_back(p.at(0).get<std::size_t>(), p.at(1).get<std::size_t>());
  b.exhaustive = j.at("exhaustive").get<bool>();
  return b;
}

Json encode(const SearchConfig& c) {
  return Json{{"n", c.n},
              {"s", c.s},
              {"class", to_string(c.cls)},
              {"restarts", c.restarts},
              {"steps_per_restart", c.steps_per_restart},
              {"initial_step", c.initial_step},
              {"step_decay", c.step_decay},
              {"tolerance", c.tolerance},
              {"seed", c.seed}};
}

template <>
SearchConfig decode<SearchConfig>(const Json& j) {
  SearchConfig c;
  c.n = j.at("n").get<std::size_t>();
  c.s = j.at("s").get<double>();
  c.cls = parse_search_class(j.at("class").get<std::string>());
  c.restarts = j.at("restarts").get<std::size_t>();
  c.steps_per_restart = j.at("steps_per_restart").get<std::size_t>();
  c.initial_step = j.at("initial_step").get<double>();
  c.step_decay = j.at("step_decay").get<double>();
  c.tolerance = j.at("tolerance").get<double>();
  c.seed = j.at("seed").get<std::uint64_t>();
  return c;
}

SearchConfig search_config_from_document(const Json& j) {
  require(j.is_object(), ErrorKind::Parse, "search config must be a JSON object");
  static const char* known[] = {"n",          "s",          "class",     "restarts", "steps_per_restart",
                                "initial_step", "step_decay", "tolerance", "seed"};
  for (const auto& [key, _] : j.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    require(ok, ErrorKind::Parse, "unknown search config key '" + key + "'");
  }
  require(j.contains("n"), ErrorKind::Parse, "search config needs 'n'");
  try {
    const auto n = j.at("n").get<std::size_t>();
    const double s = j.contains("s") ? j.at("s").get<double>() : static_cast<double>(n);
    SearchConfig c = default_config(n, s);
    if (j.contains("class")) c.cls = parse_search_class(j.at("class").get<std::string>());
    if (j.contains("restarts")) c.restarts = j.at("restarts").get<std::size_t>();
    if (j.contains("steps_per_restart")) c.steps_per_restart = j.at("steps_per_restart").get<std::size_t>();
    if (j.contains("initial_step")) c.initial_step = j.at("initial_step").get<double>();
    if (j.contains("step_decay")) c.step_decay = j.at("step_decay").get<double>();
    if (j.contains("tolerance")) c.tolerance = j.at("tolerance").get<double>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    return c;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::Parse, std::string("search config: ") + e.what());
  }
}

Json encode(const SearchResult& r) {
  return Json{{"config", encode(r.config)},
              {"best_value", r.best_value},
              {"formula_value", encode_optional_double(r.formula_value)},
              {"formula_source", r.formula_source},
              {"gap", encode_optional_double(r.gap)},
              {"feasible", r.feasible},
              {"evaluations", r.evaluations},
              {"best_restart", r.best_restart},
              {"per_restart_bests", r.per_restart_bests},
              {"rationalized_value", encode_optional(r.rationalized_value)},
              {"best_matrix", encode(r.best_matrix)}};
}

template <>
SearchResult decode<SearchResult>(const Json& j) {
  SearchResult r;
  r.config = decode<SearchConfig>(j.at("config"));
  r.best_value = j.at("best_value").get<double>();
  r.formula_value = decode_optional_double(j.at("formula_value"));
  r.formula_source = j.at("formula_source").get<std::string>();
  r.gap = decode_optional_double(j.at("gap"));
  r.feasible = j.at("feasible").get<bool>();
  r.evaluations = j.at("evaluations").get<std::size_t>();
  r.best_restart = j.at("best_restart").get<std::size_t>();
  r.per_restart_bests = j.at("per_restart_bests").get<std::vector<double>>();
  r.rationalized_value = decode_optional<Rational>(j.at("rationalized_value"));
  r.best_matrix = decode<RealMatrix>(j.at("best_matrix"));
  return r;
}

Json encode(const Omega3GridResult& r) {
  return Json{{"s", r.s},
              {"grid_step", r.grid_step},
              {"points_feasible", r.points_feasible},
              {"best_value", encode_optional(r.best_value)},
              {"best_value_float", r.best_value ? Json(to_double(*r.best_value)) : Json(nullptr)},
              {"best_matrix", encode_optional(r.best_matrix)},
              {"candidate_quadratic", r.candidate_quadratic},
              {"candidate_linear", r.candidate_linear},
              {"envelope", r.envelope},
              {"notes", r.notes}};
}

template <>
Omega3GridResult decode<Omega3GridResult>(const Json& j) {
  Omega3GridResult r;
  r.s = j.at("s").get<double>();
  r.grid_step = j.at("grid_step").get<double>();
  r.points_feasible = j.at("points_feasible").get<std::size_t>();
  r.best_value = decode_optional<Rational>(j.at("best_value"));
  r.best_matrix = decode_optional<Matrix>(j.at("best_matrix"));
  r.candidate_quadratic = j.at("candidate_quadratic").get<double>();
  r.candidate_linear = j.at("candidate_linear").get<double>();
  r.envelope = j.at("envelope").get<double>();
  r.notes = j.at("notes").get<std::vector<std::string>>();
  return r;
}

Json encode(const EvidenceReport& r) {
  Json rows = Json::array();
  for (const auto& x : r.rows)
    rows.push_back(Json{{"s", x.s},
                        {"observed", x.observed},
                        {"conjectured_grid", x.conjectured_grid},
                        {"conjectured_formula", x.conjectured_formula},
                        {"difference", x.difference},
                        {"feasible", x.feasible}});
  return Json{{"n", r.n}, {"reading", "consistent"}, {"rows", std::move(rows)}, {"notes", r.notes}};
}

template <>
EvidenceReport decode<EvidenceReport>(const Json& j) {
  EvidenceReport r;
  r.n = j.at("n").get<std::size_t>();
  for (const auto& x : j.at("rows"))
    r.rows.push_back({x.at("s").get<double>(), x.at("observed").get<double>(), x.at("conjectured_grid").get<double>(),
                      x.at("conjectured_formula").get<double>(), x.at("difference").get<double>(),
                      x.at("feasible").get<bool>()});
  r.notes = j.at("notes").get<std::vector<std::string>>();
  return r;
}

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorKind::Parse, std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace permlab::json
