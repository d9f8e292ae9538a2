#include <doctest.h>

#include "permlab/bounds.hpp"
#include "permlab/cycles.hpp"
#include "permlab/errors.hpp"
#include "permlab/generators.hpp"
#include "permlab/json_io.hpp"

using namespace permlab;
using permlab::json::decode;
using permlab::json::encode;
using permlab::json::Json;

namespace {

template <typename T>
void round_trip(const T& x) {
  const Json j = encode(x);
  const T back = decode<T>(Json::parse(j.dump()));
  CHECK(back == x);
  CHECK(encode(back).dump() == j.dump());
}

// For types without operator==, the encoding is the identity that matters.
template <typename T>
void round_trip_encoding(const T& x) {
  const Json j = encode(x);
  CHECK(encode(decode<T>(Json::parse(j.dump()))).dump() == j.dump());
}

ErrorKind parse_kind(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Io;
}

Matrix example9() { return direct_sum({swap_block(), swap_block(), ratio(1, 2) * swap_block(), Matrix::zero(3)}); }

}  // namespace

TEST_CASE("rationals are strings") {
  CHECK(encode(ratio(3, 6)).dump() == "\"1/2\"");
  CHECK(encode(Rational(-4)).dump() == "\"-4\"");
  CHECK(decode<Rational>(Json("6/4")) == ratio(3, 2));
  CHECK(parse_kind([] { decode<Rational>(Json("x/2")); }) == ErrorKind::Parse);
  CHECK(parse_kind([] { decode<Rational>(Json(0.5)); }) == ErrorKind::Parse);
}

TEST_CASE("matrix encoding") {
  const Json j = encode(make_matrix(2, {{0, ratio(1, 2)}, {1, 0}}));
  CHECK(j.dump() == R"({"n":2,"entries":[["0","1/2"],["1","0"]]})");
  round_trip(example9());
  CHECK(parse_kind([] { decode<Matrix>(Json::parse(R"({"n":2,"entries":[["0"]]})")); }) == ErrorKind::Dimension);
}

TEST_CASE("floats keep every bit") {
  RealMatrix m(2);
  m.a = {0.1, 1.0 / 3.0, 2.0 / 3.0, 1e-17};
  const RealMatrix back = decode<RealMatrix>(Json::parse(encode(m).dump()));
  CHECK(back.a == m.a);
}

TEST_CASE("report round trips") {
  round_trip(classify(example9()));
  round_trip(classify(make_matrix(2, {{2, 0}, {0, 0}})));
  round_trip(permanent_ryser(example9()));
  round_trip_encoding(check_sign_structure(ratio(1, 2) * circulant3(ratio(1, 3))));

  const auto zd = zero_diagonalize(ratio(1, 2) * Matrix::identity(3), Preserve::DoublySubstochastic);
  round_trip(zd.steps.front());
  round_trip_encoding(zd);

  const Matrix f = make_matrix(4, {{0, ratio(1, 2), 0, 0}, {ratio(3, 4), 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 0, 0}});
  round_trip(build_graph(f));
  round_trip(find_cycles(build_graph(f)));

  round_trip(theorem_bound(9, 5));
  round_trip(subdefect_bound(9, 4));
  round_trip(conjecture_values(ConjectureKind::Omega3, 0, ratio(9, 4)));
  round_trip(conjecture_values(ConjectureKind::OddSubstochastic, 7, ratio(13, 2)));
  round_trip_encoding(labeling_bound(direct_sum({swap_block(), ratio(1, 2) * swap_block()})));

  SearchConfig c = default_config(5, 4.5);
  c.seed = 0xffffffffffffffffULL;
  round_trip(c);

  auto small = default_config(4, 3);
  small.restarts = 2;
  small.steps_per_restart = 200;
  round_trip(maximize(small));
  round_trip(exhaustive_omega3(2.5, 0.25));
  round_trip(evidence_report(3, {3.0}, small));
}

TEST_CASE("bound reports carry a float value and a reading only for conjectures") {
  const Json t = encode(theorem_bound(9, 5));
  CHECK(t["value"] == "5");
  CHECK(t["value_float"] == 5.0);
  CHECK_FALSE(t.contains("reading"));
  const Json c = encode(conjecture_values(ConjectureKind::OddStochastic, 3, 3));
  CHECK(c["default_reading"] == "consistent");
  CHECK(c["consistent"]["reading"] == "consistent");
  CHECK(c["literal"]["reading"] == "literal");
}

TEST_CASE("search config documents") {
  const auto c = json::search_config_from_document(Json::parse(R"({"n": 5, "s": 4.5, "restarts": 3})"));
  CHECK(c.n == 5);
  CHECK(c.s == 4.5);
  CHECK(c.restarts == 3);
  CHECK(c.steps_per_restart == default_config(5, 4.5).steps_per_restart);
  CHECK(c.cls == SearchClass::DoublySubstochasticFixedSum);
  CHECK(json::search_config_from_document(Json::parse(R"({"n": 3})")).cls == SearchClass::DoublyStochastic);
  CHECK(parse_kind([] { json::search_config_from_document(Json::parse(R"({"s": 3})")); }) == ErrorKind::Parse);
  CHECK(parse_kind([] { json::search_config_from_document(Json::parse(R"({"n": 3, "sd": 1})")); }) ==
        ErrorKind::Parse);
  CHECK(parse_kind([] { json::search_config_from_document(Json::parse(R"({"n": "three"})")); }) ==
        ErrorKind::Parse);
  CHECK(parse_kind([] { json::parse("{not json"); }) == ErrorKind::Parse);
}

TEST_CASE("property: random matrices and classifications round trip") {
  gen::Rng rng(71);
  for (int t = 0; t < 100; ++t) {
    const Matrix a = gen::omega(rng, 1 + rng() % 7);
    round_trip(a);
    round_trip(classify(a));
  }
}
