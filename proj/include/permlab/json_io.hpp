#pragma once

// JSON encoding of every report type. Rationals are strings "p/q"; floats
// are JSON numbers in shortest round-trip form. decode<T>(encode(x)) == x.

#include <json.hpp>

#include "permlab/bounds.hpp"
#include "permlab/cycles.hpp"
#include "permlab/matrix.hpp"
#include "permlab/permanent.hpp"
#include "permlab/search.hpp"
#include "permlab/transforms.hpp"

namespace permlab::json {

using Json = nlohmann::ordered_json;

Json encode(const Rational& q);
Json encode(const Matrix& a);
Json encode(const RealMatrix& a);
Json encode(const ClassificationReport& r);
Json encode(const RyserTrace& t);
Json encode(const SignStructureReport& r);
Json encode(const TransformStep& s);
Json encode(const TransformResult& r);
Json encode(const WeightedDigraph& g);
Json encode(const CycleDecomposition& d);
Json encode(const BoundReport& r);
Json encode(const ConjectureReport& r);
Json encode(const LabelingBound& b);
Json encode(const SearchConfig& c);
Json encode(const SearchResult& r);
Json encode(const Omega3GridResult& r);
Json encode(const EvidenceReport& r);

template <typename T>
T decode(const Json& j);

template <> Rational decode<Rational>(const Json& j);
template <> Matrix decode<Matrix>(const Json& j);
template <> RealMatrix decode<RealMatrix>(const Json& j);
template <> ClassificationReport decode<ClassificationReport>(const Json& j);
template <> RyserTrace decode<RyserTrace>(const Json& j);
template <> SignStructureReport decode<SignStructureReport>(const Json& j);
template <> TransformStep decode<TransformStep>(const Json& j);
template <> TransformResult decode<TransformResult>(const Json& j);
template <> WeightedDigraph decode<WeightedDigraph>(const Json& j);
template <> CycleDecomposition decode<CycleDecomposition>(const Json& j);
template <> BoundReport decode<BoundReport>(const Json& j);
template <> ConjectureReport decode<ConjectureReport>(const Json& j);
template <> LabelingBound decode<LabelingBound>(const Json& j);
template <> SearchConfig decode<SearchConfig>(const Json& j);
template <> SearchResult decode<SearchResult>(const Json& j);
template <> Omega3GridResult decode<Omega3GridResult>(const Json& j);
template <> EvidenceReport decode<EvidenceReport>(const Json& j);

/// Parses text, mapping syntax errors to ErrorKind::Parse.
Json parse(const std::string& text);

/// SearchConfig from a partial document: absent keys keep the defaults of
/// default_config(n, s); unknown keys are rejected.
SearchConfig search_config_from_document(const Json& j);

}  // namespace permlab::json
