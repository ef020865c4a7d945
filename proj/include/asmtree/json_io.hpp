#pragma once

// JSON wire formats shared by the CLI and the golden-file tests.
//
// Graph spec, exactly one of:
//   {"n": 4, "edges": [[0,1],[1,2]]}
//   {"family": "cycle", "params": [5]}
//   {"hgraph": {"H_edges": [[0,1]], "phi": [0,1], "mult": [2,2]}}
// Unknown keys are rejected. In "hgraph", H has len(phi) vertices; "mult" may
// be omitted where only the template matters (series, diagonals).
//
// Series dump: [{"exp": [e1,...,ek], "coeff": "p/q"}, ...] listing nonzero
// coefficients in lexicographic exponent order.
//
// Recurrence: {"order": L, "offset": s, "polys": [["c0","c1",...], ...]}
// where polys[i] holds the coefficients of P_i in ascending powers.

#include "asmtree/asymptotics.hpp"
#include "asmtree/graph.hpp"
#include "asmtree/recurrence.hpp"
#include "asmtree/series.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace asmtree {

using json = nlohmann::json;

struct GraphInput {
  Graph graph;
  std::optional<HSpec> hspec;  // set for "hgraph" specs with "mult"
};

// Throws InputError on schema violations.
GraphInput parse_graph_spec(const json& j);

// Accepts {"hgraph": {...}} or the inner object. When require_mult is false
// "mult" is optional and left empty if absent.
HSpec parse_hgraph_spec(const json& j, bool require_mult);

json series_to_json(const TruncatedSeries& s);
json rationals_to_json(const std::vector<Rational>& v);

// Array of rationals (strings or integers), or an object with a single
// "diagonal" or "sequence" array.
std::vector<Rational> parse_sequence(const json& j);

json recurrence_to_json(const PRecurrence& rec);
PRecurrence parse_recurrence(const json& j);

json growth_report(const GrowthModel& model, const LambdaEstimate& lambda);

// Parses text as JSON, turning parse failures into InputError.
json parse_json_text(const std::string& text);

}  // namespace asmtree
