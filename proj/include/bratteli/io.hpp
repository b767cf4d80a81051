#pragma once

// JSON documents for diagrams and certificates.
//
// {"schema_version": 1, "kind": "stationary", "matrix": [[...], ...], "metadata": {...}}
// {"schema_version": 1, "kind": "finite_rank", "root": [...], "prefix": [M, ...],
//  "cycle": [M, ...], "metadata": {...}}
// Matrices are row-major arrays of integers; row v, column w counts edges from v at
// level n+1 to w at level n.

#include "bratteli/classify.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <variant>

namespace bratteli {

constexpr int kSchemaVersion = 1;

struct DiagramDocument {
  int schema_version = kSchemaVersion;
  std::variant<StationaryDiagram, FiniteRankDiagram> diagram;
  nlohmann::json metadata = nlohmann::json::object();

  bool stationary() const { return std::holds_alternative<StationaryDiagram>(diagram); }
  FiniteRankDiagram finite_rank() const;
  friend bool operator==(const DiagramDocument& a, const DiagramDocument& b);
};

// Errors are Error(input) with "source:line:col" or a field path in the message.
DiagramDocument parse_document(const std::string& text, const std::string& source = "<input>");
DiagramDocument load_document(const std::filesystem::path& path);
// Canonical form: sorted keys, two-space indent, trailing newline.
std::string save_document(const DiagramDocument& doc);

nlohmann::json to_json(const IncidenceMatrix& m);
nlohmann::json to_json(const ClopenSet& s);
nlohmann::json to_json(const BackForthCertificate& cert);

}  // namespace bratteli
