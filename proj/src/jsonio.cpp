#include "gradlie/jsonio.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

namespace gradlie {

namespace {

using nlohmann::json;

constexpr const char* kFormatVersion = "gradlie/1";

const json& require(const json& doc, const char* key, json::value_t type,
                    const char* type_name) {
  auto it = doc.find(key);
  if (it == doc.end()) throw ParseError(std::string("missing field: ") + key);
  if (it->type() != type &&
      !(type == json::value_t::number_unsigned && it->is_number_integer()))
    throw ParseError(std::string(key) + " must be " + type_name);
  return *it;
}

json document_json(const LieAlgebraFp& L, const std::vector<int>* degree) {
  json doc;
  doc["format_version"] = kFormatVersion;
  doc["p"] = L.p;
  doc["dim"] = L.dim;
  json labels = json::array();
  for (u32 i = 0; i < L.dim; ++i)
    labels.push_back(i < L.labels.size() ? L.labels[i] : "b" + std::to_string(i));
  doc["labels"] = std::move(labels);
  if (degree) doc["grading"] = *degree;
  std::vector<std::pair<u32, u32>> pairs;
  for (const auto& [key, terms] : L.table)
    if (!terms.empty()) pairs.push_back({(u32)(key / L.dim), (u32)(key % L.dim)});
  std::sort(pairs.begin(), pairs.end());
  json table = json::array();
  for (auto [i, j] : pairs) {
    json terms = json::array();
    for (auto [k, c] : *L.find_terms(i, j)) terms.push_back(json::array({k, c}));
    table.push_back(json::array({i, j, std::move(terms)}));
  }
  doc["table"] = std::move(table);
  return doc;
}

}  // namespace

ParsedAlgebra parse_algebra(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("document must be a JSON object");

  const json& fv = require(doc, "format_version", json::value_t::string, "a string");
  if (fv.get<std::string>() != kFormatVersion)
    throw ParseError("unsupported format_version: " + fv.get<std::string>());

  const json& pj = require(doc, "p", json::value_t::number_unsigned, "a positive integer");
  if (!pj.is_number_unsigned() || pj.get<u64>() < 2 || pj.get<u64>() > 1u << 20)
    throw ParseError("p must be a prime in a reasonable range");
  u32 p = pj.get<u32>();
  for (u32 d = 2; d * d <= p; ++d)
    if (p % d == 0) throw ParseError("p must be prime");

  const json& dj = require(doc, "dim", json::value_t::number_unsigned, "a nonnegative integer");
  u64 dim64 = dj.get<u64>();
  if (dim64 > 1u << 16) throw ParseError("dim is out of range");
  u32 dim = (u32)dim64;

  const json& lj = require(doc, "labels", json::value_t::array, "an array");
  if (lj.size() != dim) throw ParseError("labels must have exactly dim entries");
  LieAlgebraFp L(p, dim);
  L.labels.clear();
  for (const json& s : lj) {
    if (!s.is_string()) throw ParseError("labels entries must be strings");
    L.labels.push_back(s.get<std::string>());
  }

  std::optional<std::vector<int>> degree;
  if (auto it = doc.find("grading"); it != doc.end()) {
    if (!it->is_array() || it->size() != dim)
      throw ParseError("grading must be an array with exactly dim entries");
    degree.emplace();
    for (const json& d : *it) {
      if (!d.is_number_integer()) throw ParseError("grading entries must be integers");
      degree->push_back(d.get<int>());
    }
  }

  const json& tj = require(doc, "table", json::value_t::array, "an array");
  for (const json& row : tj) {
    if (!row.is_array() || row.size() != 3 || !row[0].is_number_unsigned() ||
        !row[1].is_number_unsigned() || !row[2].is_array())
      throw ParseError("table rows must have the form [i, j, [[k, c], ...]]");
    u64 i = row[0].get<u64>(), j = row[1].get<u64>();
    if (i >= j || j >= dim)
      throw ParseError("table rows require 0 <= i < j < dim, got [" +
                       std::to_string(i) + ", " + std::to_string(j) + "]");
    if (L.find_terms((u32)i, (u32)j))
      throw ParseError("duplicate table entry for [" + std::to_string(i) + ", " +
                       std::to_string(j) + "]");
    Terms terms;
    u64 prev_k = 0;
    bool first = true;
    for (const json& t : row[2]) {
      if (!t.is_array() || t.size() != 2 || !t[0].is_number_unsigned() ||
          !t[1].is_number_unsigned())
        throw ParseError("bracket terms must have the form [k, c]");
      u64 k = t[0].get<u64>(), c = t[1].get<u64>();
      if (k >= dim) throw ParseError("term index out of range: " + std::to_string(k));
      if (c == 0 || c >= p)
        throw ParseError("coefficients must be reduced and nonzero (got " +
                         std::to_string(c) + ")");
      if (!first && k <= prev_k)
        throw ParseError("bracket terms must be sorted by index without repeats");
      first = false;
      prev_k = k;
      terms.push_back({(u32)k, (u32)c});
    }
    if (!terms.empty()) L.set_bracket((u32)i, (u32)j, std::move(terms));
  }

  return ParsedAlgebra{std::move(L), std::move(degree)};
}

std::string serialize(const LieAlgebraFp& L) {
  return document_json(L, nullptr).dump(2) + "\n";
}

std::string serialize(const GradedLieAlgebra& G) {
  return document_json(G.alg, &G.degree).dump(2) + "\n";
}

}  // namespace gradlie
