#include "report.hpp"

#include "zkent/cli.hpp"

namespace zkent::report {

json integer(const BigInt& x) {
  if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
    return x.convert_to<std::int64_t>();
  return x.str();
}

json subset(const std::vector<std::size_t>& blocks) {
  json out = json::array();
  for (std::size_t j : blocks) out.push_back(j + 1);
  return out;
}

json distribution(const Distribution& nu) {
  return std::vector<double>(nu.probs().begin(), nu.probs().end());
}

json family(const GeneratorFamily& family) {
  json gens = json::array();
  for (std::size_t i = 0; i < family.size(); ++i) {
    json rows = json::array();
    for (const auto& row : family.matrix(i).rows()) {
      json r = json::array();
      for (const auto& e : row) r.push_back(integer(e));
      rows.push_back(r);
    }
    gens.push_back({{"name", family.generator(i).name}, {"matrix", rows}, {"determinant", integer(family.determinant(i))}});
  }
  return {{"dimension", family.dim()}, {"kind", std::string(to_string(family.kind()))}, {"generators", gens}};
}

json spectrum(const Spectrum& spectrum) {
  json blocks = json::array();
  for (std::size_t j = 0; j < spectrum.size(); ++j) {
    const SpectrumBlock& b = spectrum.blocks[j];
    json basis = json::array();
    for (Eigen::Index c = 0; c < b.basis.cols(); ++c) {
      json col = json::array();
      for (Eigen::Index r = 0; r < b.basis.rows(); ++r) col.push_back(b.basis(r, c));
      basis.push_back(col);
    }
    blocks.push_back({{"index", j + 1},
                      {"dim", b.dim},
                      {"exponents", b.exponents},
                      {"modulus_spread", b.modulus_spread},
                      {"basis", basis}});
  }
  return {{"dimension", spectrum.dim}, {"generators", spectrum.generators}, {"blocks", blocks},
          {"residual", spectrum.residual}};
}

json entropy(const EntropyReport& report) {
  json out = {{"value", report.value},
              {"best_subset", subset(report.best_subset)},
              {"block_terms", report.block_terms},
              {"mixture_bound", report.mixture_bound}};
  if (report.lipschitz_bound) out["lipschitz_bound"] = *report.lipschitz_bound;
  return out;
}

json friedland(const FriedlandReport& report, std::size_t blocks) {
  json tied = json::array();
  for (const auto& t : report.tied_subsets) tied.push_back(subset(t.indices()));
  json coincidence = json::array();
  for (const auto& c : report.coincidence) {
    coincidence.push_back({{"first", c.first + 1},
                           {"second", c.second + 1},
                           {"det_difference", integer(c.det_difference)},
                           {"status", std::string(to_string(c.status))}});
  }
  json pressures = json::array();
  for (std::size_t mask = 0; mask < report.pressures.size(); ++mask) {
    pressures.push_back({{"subset", subset(BlockSet(static_cast<std::uint32_t>(mask)).indices())},
                         {"pressure", report.pressures[mask]}});
  }
  return {{"value", report.value},
          {"label", report.equality_certified ? "equality" : "upper bound"},
          {"equality_certified", report.equality_certified},
          {"certification", report.certification},
          {"best_subset", subset(report.best_subset.indices())},
          {"tied_subsets", tied},
          {"maximizing_nu", distribution(report.maximizing_nu)},
          {"consistency_residual", report.consistency_residual},
          {"coincidence", coincidence},
          {"blocks", blocks},
          {"pressures", pressures}};
}

json bounds(const TopoBoundsReport& report) {
  json out = {{"lower", report.lower}};
  auto put = [&](const char* key, const std::optional<double>& v) {
    if (v) out[key] = *v;
  };
  put("lipschitz_upper", report.lipschitz_upper);
  put("smooth_upper", report.smooth_upper);
  put("degree_value", report.degree_value);
  put("interval_upper", report.interval_upper);
  put("graph_value", report.graph_value);
  json rules = json::object();
  for (const auto& [quantity, rule] : report.rules) rules[quantity] = rule;
  out["rules"] = rules;
  return out;
}

json oracle(const OracleEstimate& estimate) {
  json out = {{"estimate", estimate.estimate},
              {"n", estimate.n},
              {"samples", estimate.samples},
              {"mode", estimate.samples == 0 ? "exact" : "montecarlo"}};
  if (estimate.std_error) {
    out["std_error"] = *estimate.std_error;
    out["seed"] = estimate.seed;
  }
  return out;
}

json envelope(const std::string& command, const std::string& path, const std::string& digest, json parameters,
              json results, const std::vector<std::string>& warnings) {
  return {{"schema_version", kSchemaVersion},
          {"tool", kToolName},
          {"tool_version", kToolVersion},
          {"command", command},
          {"input", {{"path", path}, {"digest", digest}}},
          {"parameters", std::move(parameters)},
          {"results", std::move(results)},
          {"warnings", warnings},
          {"units", "nats"}};
}

}  // namespace zkent::report
