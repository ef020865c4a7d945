#include "asmtree/json_io.hpp"

#include "asmtree/errors.hpp"

#include <set>

namespace asmtree {

namespace {

void require_keys(const json& j, std::initializer_list<const char*> allowed, const char* where) {
  if (!j.is_object()) throw InputError(std::string(where) + " must be a JSON object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, value] : j.items()) {
    if (!ok.contains(key)) throw InputError(std::string(where) + ": unknown key '" + key + "'");
  }
}

int as_int(const json& j, const char* what) {
  if (!j.is_number_integer()) throw InputError(std::string(what) + " must be an integer");
  const auto v = j.get<long long>();
  if (v < -1000000 || v > 1000000) throw InputError(std::string(what) + " out of range");
  return static_cast<int>(v);
}

std::vector<int> int_list(const json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string(what) + " must be an array of integers");
  std::vector<int> out;
  for (const auto& x : j) out.push_back(as_int(x, what));
  return out;
}

std::vector<Edge> edge_list(const json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string(what) + " must be an array of [u,v] pairs");
  std::vector<Edge> out;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2) throw InputError(std::string(what) + " entries must be [u,v] pairs");
    out.emplace_back(as_int(e[0], what), as_int(e[1], what));
  }
  return out;
}

Rational rational_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw InputError("rationals must be given as strings \"p/q\" or integers");
}

}  // namespace

HSpec parse_hgraph_spec(const json& j, bool require_mult) {
  const json& inner = (j.is_object() && j.contains("hgraph")) ? j.at("hgraph") : j;
  if (&inner != &j) require_keys(j, {"hgraph"}, "graph spec");
  require_keys(inner, {"H_edges", "phi", "mult"}, "hgraph");
  if (!inner.contains("H_edges") || !inner.contains("phi")) throw InputError("hgraph needs H_edges and phi");
  HSpec spec;
  spec.phi = int_list(inner.at("phi"), "phi");
  if (spec.phi.empty()) throw InputError("hgraph phi must be nonempty");
  spec.base = from_edge_list(static_cast<int>(spec.phi.size()), edge_list(inner.at("H_edges"), "H_edges"));
  if (inner.contains("mult")) {
    spec.mult = int_list(inner.at("mult"), "mult");
    spec.validate();
  } else if (require_mult) {
    throw InputError("hgraph needs mult to build a graph");
  } else {
    for (int p : spec.phi) {
      if (p != 0 && p != 1) throw InputError("phi entries must be 0 or 1");
    }
  }
  return spec;
}

GraphInput parse_graph_spec(const json& j) {
  if (!j.is_object()) throw InputError("graph spec must be a JSON object");
  if (j.contains("hgraph")) {
    HSpec spec = parse_hgraph_spec(j, true);
    Graph g = build_h_graph(spec);
    return {std::move(g), std::move(spec)};
  }
  if (j.contains("family")) {
    require_keys(j, {"family", "params"}, "graph spec");
    if (!j.at("family").is_string()) throw InputError("family must be a string");
    std::vector<int> params = j.contains("params") ? int_list(j.at("params"), "params") : std::vector<int>{};
    return {family(j.at("family").get<std::string>(), params), std::nullopt};
  }
  require_keys(j, {"n", "edges"}, "graph spec");
  if (!j.contains("n")) throw InputError("graph spec needs one of n, family, hgraph");
  std::vector<Edge> edges = j.contains("edges") ? edge_list(j.at("edges"), "edges") : std::vector<Edge>{};
  return {from_edge_list(as_int(j.at("n"), "n"), edges), std::nullopt};
}

json series_to_json(const TruncatedSeries& s) {
  json out = json::array();
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s.at(i) == 0) continue;
    out.push_back({{"exp", s.exponent_of(i)}, {"coeff", to_string(s.at(i))}});
  }
  return out;
}

json rationals_to_json(const std::vector<Rational>& v) {
  json out = json::array();
  for (const auto& r : v) out.push_back(to_string(r));
  return out;
}

std::vector<Rational> parse_sequence(const json& j) {
  const json* arr = &j;
  if (j.is_object()) {
    if (j.size() != 1 || !(j.contains("diagonal") || j.contains("sequence"))) {
      throw InputError("sequence object must have exactly one key, 'diagonal' or 'sequence'");
    }
    arr = &j.begin().value();
  }
  if (!arr->is_array()) throw InputError("sequence must be a JSON array");
  std::vector<Rational> out;
  for (const auto& x : *arr) out.push_back(rational_from_json(x));
  return out;
}

json recurrence_to_json(const PRecurrence& rec) {
  json polys = json::array();
  for (const auto& p : rec.polys) {
    json cs = json::array();
    for (const auto& c : p.coeffs) cs.push_back(to_string(c));
    polys.push_back(std::move(cs));
  }
  return {{"order", rec.order}, {"offset", rec.offset}, {"polys", std::move(polys)}};
}

PRecurrence parse_recurrence(const json& j) {
  require_keys(j, {"order", "offset", "polys"}, "recurrence");
  if (!j.contains("order") || !j.contains("polys")) throw InputError("recurrence needs order and polys");
  PRecurrence rec;
  rec.order = as_int(j.at("order"), "order");
  rec.offset = j.contains("offset") ? as_int(j.at("offset"), "offset") : 0;
  if (!j.at("polys").is_array()) throw InputError("polys must be an array of coefficient arrays");
  for (const auto& p : j.at("polys")) {
    if (!p.is_array()) throw InputError("each polynomial must be an array of coefficients");
    Polynomial poly;
    for (const auto& c : p) poly.coeffs.push_back(rational_from_json(c));
    rec.polys.push_back(std::move(poly));
  }
  rec.label = "json";
  rec.validate();
  return rec;
}

json growth_report(const GrowthModel& model, const LambdaEstimate& lambda) {
  json corrections = json::array();
  for (long double c : model.corrections) corrections.push_back(static_cast<double>(c));
  json residuals = json::array();
  for (const auto& r : model.residuals) {
    residuals.push_back({{"theta", r.theta}, {"spread", static_cast<double>(r.spread)}});
  }
  return {{"lambda", static_cast<double>(lambda.value)},
          {"lambda_error_bound", static_cast<double>(lambda.error_bound)},
          {"theta", model.theta},
          {"corrections", std::move(corrections)},
          {"n_max", model.n_max},
          {"residuals", std::move(residuals)}};
}

json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace asmtree
