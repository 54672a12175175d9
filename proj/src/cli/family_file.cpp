#include <algorithm>
#include <cctype>
#include <charconv>
#include <functional>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "zkent/cli.hpp"

namespace zkent {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& origin, std::size_t line, const std::string& what) {
  throw ParseError(origin + ":" + std::to_string(line) + ": " + what);
}

[[noreturn]] void fail(const std::string& origin, const std::string& where, const std::string& what) {
  throw ParseError(origin + ": " + where + ": " + what);
}

bool is_integer_literal(const std::string& s) {
  std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (i == s.size()) return false;
  return std::all_of(s.begin() + static_cast<long>(i), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

BigInt parse_bigint(const std::string& s) {
  return s[0] == '+' ? BigInt(s.substr(1)) : BigInt(s);
}

bool parse_real(const std::string& s, double& out) {
  const char* end = s.data() + s.size();
  auto res = std::from_chars(s.data(), end, out);
  return res.ec == std::errc() && res.ptr == end;
}

ActionKind parse_kind(const std::string& s, const std::function<void(const std::string&)>& bad) {
  if (s == "invertible") return ActionKind::invertible;
  if (s == "endomorphism") return ActionKind::endomorphism;
  bad("kind must be 'invertible' or 'endomorphism', got '" + s + "'");
  return ActionKind::invertible;
}

// JSON ------------------------------------------------------------------

BigInt json_integer(const json& v, const std::string& origin, const std::string& where) {
  if (v.is_number_integer()) return v.is_number_unsigned() ? BigInt(v.get<std::uint64_t>()) : BigInt(v.get<std::int64_t>());
  if (v.is_string() && is_integer_literal(v.get<std::string>())) return parse_bigint(v.get<std::string>());
  fail(origin, where, "expected an integer (or a decimal string for large values), got " + v.dump());
}

PhaseSpace json_phase_space(const json& v, const std::string& origin) {
  const std::string type = v.is_string() ? v.get<std::string>() : v.value("type", std::string());
  if (type == "torus") return TorusSpace{};
  if (type == "graph") return GraphSpace{};
  if (type == "circle_expanding") {
    if (!v.is_object() || !v.contains("degrees") || !v["degrees"].is_array())
      fail(origin, "phase_space", "circle_expanding needs a 'degrees' list");
    CircleExpandingSpace space;
    for (std::size_t i = 0; i < v["degrees"].size(); ++i)
      space.degrees.push_back(json_integer(v["degrees"][i], origin, "phase_space.degrees[" + std::to_string(i) + "]"));
    return space;
  }
  if (type == "interval") {
    if (!v.is_object() || !v.contains("branches") || !v["branches"].is_array())
      fail(origin, "phase_space", "interval needs a 'branches' list");
    IntervalSpace space;
    for (const auto& b : v["branches"]) {
      if (!b.is_number_integer()) fail(origin, "phase_space.branches", "branch counts must be integers");
      space.branches.push_back(b.get<long long>());
    }
    return space;
  }
  fail(origin, "phase_space", "unknown phase space '" + type + "'");
}

// Line format ------------------------------------------------------------

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(const std::string& text) {
  std::vector<Line> lines;
  std::istringstream in(text);
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    for (char& c : raw)
      if (c == ',' || c == '[' || c == ']' || c == ';' || c == '\t' || c == '\r') c = ' ';
    std::istringstream words(raw);
    Line line{number, {}};
    for (std::string w; words >> w;) line.tokens.push_back(w);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

std::string keyword(std::string s) {
  if (!s.empty() && s.back() == ':') s.pop_back();
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  std::replace(s.begin(), s.end(), '-', '_');
  return s;
}

}  // namespace

GeneratorFamily FamilySpec::family() const {
  std::vector<Generator> gens;
  for (std::size_t i = 0; i < matrices.size(); ++i) gens.push_back({names[i], IntMatrix::from_rows(matrices[i])});
  return GeneratorFamily::validate(std::move(gens), kind);
}

FamilySpec parse_family_json(const std::string& text, const std::string& origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
    const std::size_t line = 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<long>(upto), '\n'));
    fail(origin, line, std::string("malformed JSON (") + e.what() + ")");
  }
  if (!doc.is_object()) fail(origin, "document", "expected a JSON object");

  FamilySpec spec;
  if (doc.contains("kind")) {
    if (!doc["kind"].is_string()) fail(origin, "kind", "expected a string");
    spec.kind = parse_kind(doc["kind"].get<std::string>(), [&](const std::string& m) { fail(origin, "kind", m); });
  }
  if (!doc.contains("generators") || !doc["generators"].is_array() || doc["generators"].empty())
    fail(origin, "generators", "expected a non-empty list of generators");
  const auto& gens = doc["generators"];
  for (std::size_t g = 0; g < gens.size(); ++g) {
    const std::string where = "generators[" + std::to_string(g) + "]";
    const json* rows = &gens[g];
    std::string name = "A" + std::to_string(g + 1);
    if (gens[g].is_object()) {
      if (gens[g].contains("name")) {
        if (!gens[g]["name"].is_string()) fail(origin, where + ".name", "expected a string");
        name = gens[g]["name"].get<std::string>();
      }
      if (!gens[g].contains("matrix")) fail(origin, where, "missing 'matrix'");
      rows = &gens[g]["matrix"];
    }
    if (!rows->is_array() || rows->empty()) fail(origin, where, "matrix must be a non-empty list of rows");
    std::vector<std::vector<BigInt>> matrix;
    for (std::size_t r = 0; r < rows->size(); ++r) {
      const json& row = (*rows)[r];
      const std::string rw = where + ".matrix[" + std::to_string(r) + "]";
      if (!row.is_array()) fail(origin, rw, "row must be a list of integers");
      std::vector<BigInt> out;
      for (std::size_t c = 0; c < row.size(); ++c) out.push_back(json_integer(row[c], origin, rw + "[" + std::to_string(c) + "]"));
      matrix.push_back(std::move(out));
    }
    spec.names.push_back(name);
    spec.matrices.push_back(std::move(matrix));
  }
  spec.dimension = spec.matrices.front().size();
  if (doc.contains("dimension")) {
    if (!doc["dimension"].is_number_integer() || doc["dimension"].get<long long>() < 1)
      fail(origin, "dimension", "expected a positive integer");
    spec.dimension = doc["dimension"].get<std::size_t>();
  }
  for (std::size_t g = 0; g < spec.matrices.size(); ++g) {
    if (spec.matrices[g].size() != spec.dimension)
      fail(origin, "generators[" + std::to_string(g) + "]", "has " + std::to_string(spec.matrices[g].size()) +
                                                              " rows, dimension is " + std::to_string(spec.dimension));
  }
  if (doc.contains("distribution") && !doc["distribution"].is_null()) {
    if (!doc["distribution"].is_array()) fail(origin, "distribution", "expected a list of numbers");
    std::vector<double> probs;
    for (const auto& p : doc["distribution"]) {
      if (!p.is_number()) fail(origin, "distribution", "expected numbers, got " + p.dump());
      probs.push_back(p.get<double>());
    }
    spec.distribution = std::move(probs);
  }
  if (doc.contains("phase_space") && !doc["phase_space"].is_null()) spec.phase_space = json_phase_space(doc["phase_space"], origin);
  return spec;
}

FamilySpec parse_family_lines(const std::string& text, const std::string& origin) {
  const std::vector<Line> lines = tokenize(text);
  FamilySpec spec;
  std::size_t i = 0;
  auto need_args = [&](const Line& line, std::size_t n) {
    if (line.tokens.size() < n + 1) fail(origin, line.number, "'" + line.tokens[0] + "' needs an argument");
  };
  while (i < lines.size()) {
    const Line& line = lines[i];
    const std::string key = keyword(line.tokens[0]);
    if (key == "dimension" || key == "dim") {
      need_args(line, 1);
      long long d = 0;
      if (!is_integer_literal(line.tokens[1]) || (d = std::stoll(line.tokens[1])) < 1)
        fail(origin, line.number, "dimension must be a positive integer");
      spec.dimension = static_cast<std::size_t>(d);
      ++i;
    } else if (key == "kind") {
      need_args(line, 1);
      spec.kind = parse_kind(keyword(line.tokens[1]), [&](const std::string& m) { fail(origin, line.number, m); });
      ++i;
    } else if (key == "generator" || key == "matrix") {
      const std::string name = line.tokens.size() > 1 ? line.tokens[1] : "A" + std::to_string(spec.matrices.size() + 1);
      const std::size_t header = line.number;
      ++i;
      std::vector<std::vector<BigInt>> matrix;
      while (i < lines.size() && is_integer_literal(lines[i].tokens[0])) {
        std::vector<BigInt> row;
        for (const auto& tok : lines[i].tokens) {
          if (!is_integer_literal(tok)) fail(origin, lines[i].number, "matrix entry '" + tok + "' is not an integer");
          row.push_back(parse_bigint(tok));
        }
        if (!matrix.empty() && row.size() != matrix.front().size())
          fail(origin, lines[i].number, "row has " + std::to_string(row.size()) + " entries, expected " +
                                            std::to_string(matrix.front().size()));
        matrix.push_back(std::move(row));
        ++i;
        if (spec.dimension != 0 && matrix.size() == spec.dimension) break;
      }
      if (matrix.empty()) fail(origin, header, "generator '" + name + "' has no rows");
      if (spec.dimension == 0) spec.dimension = matrix.front().size();
      if (matrix.size() != spec.dimension)
        fail(origin, header, "generator '" + name + "' has " + std::to_string(matrix.size()) + " rows, dimension is " +
                                 std::to_string(spec.dimension));
      spec.names.push_back(name);
      spec.matrices.push_back(std::move(matrix));
    } else if (key == "distribution" || key == "nu") {
      need_args(line, 1);
      std::vector<double> probs;
      for (std::size_t t = 1; t < line.tokens.size(); ++t) {
        double p = 0.0;
        if (!parse_real(line.tokens[t], p)) fail(origin, line.number, "'" + line.tokens[t] + "' is not a number");
        probs.push_back(p);
      }
      spec.distribution = std::move(probs);
      ++i;
    } else if (key == "phase_space") {
      need_args(line, 1);
      const std::string type = keyword(line.tokens[1]);
      if (type == "torus") {
        spec.phase_space = TorusSpace{};
      } else if (type == "graph") {
        spec.phase_space = GraphSpace{};
      } else if (type == "circle_expanding") {
        CircleExpandingSpace space;
        for (std::size_t t = 2; t < line.tokens.size(); ++t) {
          if (!is_integer_literal(line.tokens[t])) fail(origin, line.number, "degree '" + line.tokens[t] + "' is not an integer");
          space.degrees.push_back(parse_bigint(line.tokens[t]));
        }
        spec.phase_space = std::move(space);
      } else if (type == "interval") {
        IntervalSpace space;
        for (std::size_t t = 2; t < line.tokens.size(); ++t) {
          if (!is_integer_literal(line.tokens[t])) fail(origin, line.number, "branch count '" + line.tokens[t] + "' is not an integer");
          space.branches.push_back(std::stoll(line.tokens[t]));
        }
        spec.phase_space = std::move(space);
      } else {
        fail(origin, line.number, "unknown phase space '" + line.tokens[1] + "'");
      }
      ++i;
    } else if (is_integer_literal(line.tokens[0])) {
      fail(origin, line.number, "matrix row outside a 'generator' section");
    } else {
      fail(origin, line.number, "unknown keyword '" + line.tokens[0] + "'");
    }
  }
  if (spec.matrices.empty()) fail(origin, lines.empty() ? 1 : lines.back().number, "no generators given");
  return spec;
}

FamilySpec parse_family_text(const std::string& text, const std::string& origin) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return parse_family_json(text, origin);
  return parse_family_lines(text, origin);
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string digest_string(const std::string& bytes) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(fnv1a64(bytes)));
  return buf;
}

}  // namespace zkent
