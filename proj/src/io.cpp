#include "bratteli/io.hpp"

#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace bratteli {

using nlohmann::json;

FiniteRankDiagram DiagramDocument::finite_rank() const {
  if (stationary()) return FiniteRankDiagram::from_stationary(std::get<StationaryDiagram>(diagram));
  return std::get<FiniteRankDiagram>(diagram);
}

bool operator==(const DiagramDocument& a, const DiagramDocument& b) {
  return a.schema_version == b.schema_version && a.diagram == b.diagram && a.metadata == b.metadata;
}

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::input, where + ": " + what);
}

const json& field(const json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) bad(where, std::string("missing field \"") + key + "\"");
  return *it;
}

std::int64_t entry(const json& j, const std::string& where) {
  if (!j.is_number_integer()) bad(where, "expected an integer, got " + j.dump());
  const auto v = j.get<std::int64_t>();
  if (j.is_number_unsigned() && j.get<std::uint64_t>() > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()))
    bad(where, "integer out of range");
  if (v < 0) bad(where, "expected a nonnegative integer, got " + std::to_string(v));
  return v;
}

IncidenceMatrix matrix(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) bad(where, "expected a nonempty array of rows");
  const auto rows = j.size();
  std::size_t cols = 0;
  for (std::size_t r = 0; r < rows; ++r) {
    const auto rw = where + "[" + std::to_string(r) + "]";
    if (!j[r].is_array() || j[r].empty()) bad(rw, "expected a nonempty array of integers");
    if (r == 0) cols = j[r].size();
    else if (j[r].size() != cols)
      bad(rw, "expected " + std::to_string(cols) + " entries, got " + std::to_string(j[r].size()));
  }
  IncidenceMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          entry(j[r][c], where + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
  return m;
}

std::vector<IncidenceMatrix> matrices(const json& j, const std::string& where) {
  if (!j.is_array()) bad(where, "expected an array of matrices");
  std::vector<IncidenceMatrix> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(matrix(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

std::string position(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return std::to_string(line) + ":" + std::to_string(col);
}

}  // namespace

DiagramDocument parse_document(const std::string& text, const std::string& source) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    std::string msg = e.what();
    if (auto p = msg.find(": "); p != std::string::npos) msg = msg.substr(p + 2);
    throw Error(ErrorKind::input, source + ":" + position(text, e.byte == 0 ? 0 : e.byte - 1) + ": " + msg);
  }
  if (!j.is_object()) bad(source, "top level must be an object");
  DiagramDocument d;
  const auto& sv = field(j, "schema_version", source);
  if (!sv.is_number_integer()) bad(source + ": schema_version", "expected an integer");
  d.schema_version = sv.get<int>();
  if (d.schema_version != kSchemaVersion)
    bad(source + ": schema_version", "unsupported version " + std::to_string(d.schema_version));
  const auto& kind = field(j, "kind", source);
  if (!kind.is_string()) bad(source + ": kind", "expected a string");
  for (const auto& [k, v] : j.items()) {
    static const std::set<std::string> known{"schema_version", "kind", "matrix", "root", "prefix", "cycle", "metadata"};
    if (!known.count(k)) bad(source, "unknown field \"" + k + "\"");
  }
  try {
    if (kind == "stationary") {
      d.diagram = StationaryDiagram(matrix(field(j, "matrix", source), source + ": matrix"));
    } else if (kind == "finite_rank") {
      const auto& r = field(j, "root", source);
      if (!r.is_array() || r.empty()) bad(source + ": root", "expected a nonempty array of integers");
      std::vector<std::int64_t> root;
      for (std::size_t i = 0; i < r.size(); ++i) root.push_back(entry(r[i], source + ": root[" + std::to_string(i) + "]"));
      auto prefix = j.contains("prefix") ? matrices(j["prefix"], source + ": prefix") : std::vector<IncidenceMatrix>{};
      d.diagram = FiniteRankDiagram(root, prefix, matrices(field(j, "cycle", source), source + ": cycle"));
    } else {
      bad(source + ": kind", "expected \"stationary\" or \"finite_rank\", got " + kind.dump());
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::input) throw;
    const std::string m = e.what();
    if (m.rfind(source, 0) == 0) throw;
    bad(source, m);
  }
  if (j.contains("metadata")) {
    if (!j["metadata"].is_object()) bad(source + ": metadata", "expected an object");
    d.metadata = j["metadata"];
  }
  return d;
}

DiagramDocument load_document(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::input, path.string() + ": cannot open");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_document(ss.str(), path.string());
}

json to_json(const IncidenceMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(row);
  }
  return rows;
}

std::string save_document(const DiagramDocument& doc) {
  json j;
  j["schema_version"] = doc.schema_version;
  if (doc.stationary()) {
    j["kind"] = "stationary";
    j["matrix"] = to_json(std::get<StationaryDiagram>(doc.diagram).F());
  } else {
    const auto& f = std::get<FiniteRankDiagram>(doc.diagram);
    j["kind"] = "finite_rank";
    j["root"] = f.root_edges();
    j["prefix"] = json::array();
    for (const auto& m : f.prefix()) j["prefix"].push_back(to_json(m));
    j["cycle"] = json::array();
    for (const auto& m : f.cycle()) j["cycle"].push_back(to_json(m));
  }
  if (!doc.metadata.empty()) j["metadata"] = doc.metadata;
  return j.dump(2) + "\n";
}

json to_json(const ClopenSet& s) {
  json cells = json::array();
  for (const auto& c : s.cylinders()) {
    json path = json::array();
    for (const auto& st : c.path) path.push_back(json::array({st.vertex, st.edge}));
    cells.push_back(path);
  }
  return json{{"level", s.level()}, {"cylinders", cells}};
}

json to_json(const BackForthCertificate& cert) {
  json stages = json::array();
  for (std::size_t s = 0; s < cert.stages.size(); ++s) {
    const auto& st = cert.stages[s];
    json pairs = json::array();
    for (std::size_t i = 0; i < st.x.size(); ++i)
      pairs.push_back(json{{"parent", st.parent[i]},
                           {"measure", st.measure[i].to_string()},
                           {"first", to_json(st.x[i])},
                           {"second", to_json(st.y[i])}});
    stages.push_back(json{{"stage", s}, {"pairs", pairs}});
  }
  return json{{"depth", cert.depth}, {"stages", stages}};
}

}  // namespace bratteli
