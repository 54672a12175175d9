#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "zkent/entropy.hpp"
#include "zkent/friedland.hpp"
#include "zkent/oracle.hpp"
#include "zkent/spectrum.hpp"
#include "zkent/topo.hpp"

namespace zkent::report {

using nlohmann::json;

json integer(const BigInt& x);  // number when it fits in 64 bits, decimal string otherwise
json subset(const std::vector<std::size_t>& blocks);  // 1-based
json distribution(const Distribution& nu);
json family(const GeneratorFamily& family);
json spectrum(const Spectrum& spectrum);
json entropy(const EntropyReport& report);
json friedland(const FriedlandReport& report, std::size_t blocks);
json bounds(const TopoBoundsReport& report);
json oracle(const OracleEstimate& estimate);

json envelope(const std::string& command, const std::string& path, const std::string& digest, json parameters,
              json results, const std::vector<std::string>& warnings);

}  // namespace zkent::report
