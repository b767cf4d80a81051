// bratteli: command-line front end.
//
// Exit codes: 0 positive / complete, 1 negative, 2 input error, 3 undetermined.
// BRATTELI_BUDGET="max_level=6,max_cells=200000,bound=2,closure_bound=128" overrides
// search budgets.

#include "bratteli/io.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>

using namespace bratteli;
using nlohmann::json;

namespace {

enum Exit { kPositive = 0, kNegative = 1, kInput = 2, kUndetermined = 3 };

struct Settings {
  int closure_bound = 64;
  EnumerationBudget budget;
};

Settings settings() {
  Settings s;
  s.budget = budget_from_env();
  if (const char* env = std::getenv("BRATTELI_BUDGET")) {
    std::stringstream ss(env);
    std::string item;
    while (std::getline(ss, item, ','))
      if (item.rfind("closure_bound=", 0) == 0) {
        try {
          s.closure_bound = std::stoi(item.substr(14));
        } catch (const std::logic_error&) {
          throw Error(ErrorKind::input, "BRATTELI_BUDGET: bad value for closure_bound");
        }
      }
  }
  return s;
}

std::string lambda_line(const AlgebraicNumber& l) {
  if (l.is_rational()) return to_string(l.to_rational());
  std::ostringstream o;
  o << "λ where " << to_string(l.minpoly(), "λ") << " = 0, λ ≈ " << l.approx();
  return o.str();
}

// value printer plus the minpoly note when the field is not Q
std::string show(const FieldElement& x) { return x.to_string(); }

std::string field_note(const FieldPtr& f) {
  if (!f) return "";
  return "  (λ: " + to_string(f->generator().minpoly(), "λ") + ")";
}

StationaryDiagram stationary_of(const DiagramDocument& doc, const std::string& path) {
  if (!doc.stationary()) throw Error(ErrorKind::input, path + ": this command needs a stationary diagram");
  return std::get<StationaryDiagram>(doc.diagram);
}

// Most downstream class carrying a measure unless one is named.
ErgodicMeasure pick(const StationaryDiagram& d, std::optional<std::size_t> cls) {
  const auto cd = class_decomposition(d);
  if (cls) {
    if (*cls >= cd.size()) throw Error(ErrorKind::input, "no class " + std::to_string(*cls));
    try {
      return ergodic_measure(d, *cls);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::not_applicable) throw Error(ErrorKind::input, e.what());
      throw;
    }
  }
  auto order = cd.topological_order();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    try {
      return ergodic_measure(d, *it);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::not_applicable) throw;
    }
  }
  throw Error(ErrorKind::input, "diagram carries no ergodic measure");
}

std::optional<Odometer> odometer_of(const DiagramDocument& doc, const std::string& path) {
  if (doc.stationary()) return std::nullopt;
  const auto& m = doc.metadata;
  if (!m.contains("construction") || m["construction"] != "odometer_from_grouplike" || !m.contains("generators"))
    return std::nullopt;
  std::vector<Rational> gens;
  for (const auto& g : m["generators"]) {
    if (!g.is_string()) throw Error(ErrorKind::input, path + ": metadata.generators must be strings");
    gens.push_back(parse_rational(g.get<std::string>()));
  }
  auto o = odometer_from_grouplike(grouplike_from_rationals(gens));
  if (!(o.diagram == std::get<FiniteRankDiagram>(doc.diagram)))
    throw Error(ErrorKind::input, path + ": diagram does not match its recorded construction");
  return o;
}

struct Loaded {
  MeasureInvariants inv;
  PathMeasure pm;
  std::string label;
};

Loaded load_measure(const std::string& path, std::optional<std::size_t> cls, const Settings& s) {
  const auto doc = load_document(path);
  if (auto o = odometer_of(doc, path)) return {invariants(*o), o->measure, path + " (odometer)"};
  const auto mu = canonical(pick(stationary_of(doc, path), cls));
  return {invariants(mu, s.closure_bound), path_measure(mu), path + " class " + std::to_string(mu.alpha)};
}

const char* kind_name(VertexKind k) {
  switch (k) {
    case VertexKind::finite: return "finite";
    case VertexKind::infinite: return "inf";
    default: return "0";
  }
}

int cmd_analyze(const std::string& path, bool as_json, const Settings& s) {
  const auto doc = load_document(path);
  json out;
  out["file"] = path;
  std::ostringstream txt;
  if (!doc.stationary()) {
    const auto f = doc.finite_rank();
    out["kind"] = "finite_rank";
    out["rank_bound"] = f.rank_bound();
    out["prefix_length"] = f.prefix().size();
    out["cycle_length"] = f.cycle().size();
    txt << "finite-rank diagram, rank " << f.rank_bound() << ", prefix " << f.prefix().size() << ", cycle "
        << f.cycle().size() << "\n";
    if (auto o = odometer_of(doc, path)) {
      out["primes"] = o->primes.to_string();
      out["svalues"] = o->svalues.to_string();
      out["profile"] = o->profile.kind_string();
      txt << "odometer on primes " << o->primes.to_string() << "\n  S = " << o->svalues.to_string()
          << "\n  defective set: " << o->profile.kind_string() << ", mass " << o->profile.mass_string() << "\n";
    }
    std::cout << (as_json ? out.dump(2) + "\n" : txt.str());
    return kPositive;
  }
  const auto d = std::get<StationaryDiagram>(doc.diagram);
  const auto cd = class_decomposition(d);
  out["kind"] = "stationary";
  out["vertices"] = d.vertex_count();
  txt << "stationary diagram, " << d.vertex_count() << " vertices, " << cd.size() << " classes, "
      << minimal_component_count(d) << " minimal component(s)\n";
  txt << "classes (upstream first):\n";
  json classes = json::array();
  for (auto c : cd.topological_order()) {
    const auto& cls = cd.classes[c];
    json jc;
    jc["class"] = c;
    jc["vertices"] = cls;
    txt << "  class " << c << " {";
    for (std::size_t i = 0; i < cls.size(); ++i) txt << (i ? "," : "") << cls[i];
    txt << "}: ";
    if (is_trivial_class(d, cls)) {
      jc["trivial"] = true;
      txt << "trivial\n";
    } else {
      const auto r = perron_root(class_block(d, cls));
      jc["perron_root"] = lambda_line(r);
      jc["period"] = class_period(d, cls);
      txt << "rho = " << lambda_line(r) << ", period " << class_period(d, cls) << "\n";
    }
    classes.push_back(jc);
  }
  out["classes"] = classes;
  txt << "measures:\n";
  json measures = json::array();
  bool open = false;
  for (auto c : cd.topological_order()) {
    json jm;
    jm["class"] = c;
    try {
      const auto mu = ergodic_measure(d, c);
      const auto can = canonical(mu);
      const auto prof = defective_profile(mu);
      const auto g = is_good(mu, s.closure_bound);
      jm["lambda"] = lambda_line(mu.lambda);
      jm["tag"] = mu.finite ? "finite" : "infinite";
      json xs = json::array();
      for (std::size_t v = 0; v < d.vertex_count(); ++v)
        xs.push_back(mu.kind[v] == VertexKind::finite ? show(mu.x[v]) : kind_name(mu.kind[v]));
      jm["x"] = xs;
      jm["mass_f"] = show(mu.raw_mass);
      jm["normalizer"] = show(can.scale);
      jm["defective"] = {{"kind", prof.kind_string()}, {"mass", prof.mass_string()}};
      jm["good"] = to_string(g.verdict);
      if (g.verdict == GoodnessVerdict::Value::undetermined) open = true;
      txt << "  class " << c << ": lambda = " << lambda_line(mu.lambda) << ", " << (mu.finite ? "finite" : "infinite")
          << ", " << to_string(g.verdict) << "\n    x = [";
      for (std::size_t v = 0; v < xs.size(); ++v) txt << (v ? ", " : "") << xs[v].get<std::string>();
      txt << "]" << field_note(mu.field) << "\n    mass of B_f paths = " << show(mu.raw_mass)
          << ", probability normalizer = " << show(can.scale) << "\n    defective set: " << prof.kind_string()
          << ", mass " << prof.mass_string() << "\n";
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::not_applicable) continue;
      if (e.kind() != ErrorKind::unsupported_spectrum && e.kind() != ErrorKind::unsupported &&
          e.kind() != ErrorKind::unsupported_field)
        throw;
      open = true;
      jm["unsupported"] = e.what();
      txt << "  class " << c << ": unsupported: " << e.what() << "\n";
    }
    measures.push_back(jm);
  }
  out["measures"] = measures;
  std::cout << (as_json ? out.dump(2) + "\n" : txt.str());
  return open ? kUndetermined : kPositive;
}

int cmd_svalues(const std::string& path, std::optional<std::size_t> cls, const std::vector<std::string>& members,
                bool normalized, const Settings& s) {
  const auto doc = load_document(path);
  ClopenValuesSet sv;
  if (auto o = odometer_of(doc, path)) {
    sv = o->svalues;
  } else {
    auto mu = pick(stationary_of(doc, path), cls);
    if (normalized) mu = canonical(mu);
    sv = clopen_values(mu);
  }
  std::cout << "S = " << sv.to_string() << field_note(sv.field) << "\n";
  bool open = false, out = false;
  for (const auto& m : members) {
    Rational v;
    try {
      v = parse_rational(m);
    } catch (const std::exception&) {
      throw Error(ErrorKind::input, "not a rational number: '" + m + "'");
    }
    const Tri t = svalues_member(sv, FieldElement(v), s.closure_bound);
    if (t == Tri::undetermined) open = true;
    if (t == Tri::no) out = true;
    std::cout << "  " << to_string(v) << "\t" << (t == Tri::yes ? "yes" : t == Tri::no ? "no" : "undetermined") << "\n";
  }
  if (out) return kNegative;
  return open ? kUndetermined : kPositive;
}

std::string cylinder_text(const CylinderSet& c) {
  std::string s = "[";
  for (std::size_t i = 0; i < c.path.size(); ++i)
    s += (i ? " " : "") + std::to_string(c.path[i].vertex) + ":" + std::to_string(c.path[i].edge);
  return s + "]";
}

int cmd_good(const std::string& path, std::optional<std::size_t> cls, bool normalized, const Settings& s) {
  const auto doc = load_document(path);
  if (odometer_of(doc, path)) {
    std::cout << "good (odometer construction)\n";
    return kPositive;
  }
  auto mu = pick(stationary_of(doc, path), cls);
  if (normalized) mu = canonical(mu);
  const auto g = is_good(mu, s.closure_bound);
  std::cout << "class " << mu.alpha << ": " << to_string(g.verdict) << "\n";
  if (g.witness) {
    const auto& w = *g.witness;
    std::cout << "witness:\n  V = cylinder " << cylinder_text(w.v) << ", mu(V) = " << show(cylinder_measure(mu, w.v).value)
              << "\n  w = " << show(w.w) << " = mu(U) for U = cylinder " << cylinder_text(w.u) << " (x_" << w.vertex
              << " / lambda^" << w.exponent << ")\n"
              << "  no clopen W inside V has mu(W) = w: lambda^R x_" << w.vertex
              << " lies outside the group generated by the alpha entries for every R\n";
  }
  if (!mu.lambda.is_rational()) std::cout << "  " << lambda_line(mu.lambda) << "\n";
  switch (g.verdict) {
    case GoodnessVerdict::Value::good: return kPositive;
    case GoodnessVerdict::Value::bad: return kNegative;
    default: return kUndetermined;
  }
}

int verdict_exit(const HomeoVerdict& v) {
  if (v.verdict == HomeoVerdict::Value::homeomorphic) return kPositive;
  if (v.verdict == HomeoVerdict::Value::not_homeomorphic) return kNegative;
  return kUndetermined;
}

void print_verdict(const HomeoVerdict& v) {
  std::cout << to_string(v.verdict) << " (" << to_string(v.reason) << ")\n";
  if (!v.detail.empty()) std::cout << "  " << v.detail << "\n";
}

int cmd_homeo(const std::string& a, const std::string& b, std::optional<std::size_t> ca, std::optional<std::size_t> cb,
              const Settings& s) {
  const auto x = load_measure(a, ca, s), y = load_measure(b, cb, s);
  const auto v = homeomorphic(x.inv, y.inv, s.closure_bound);
  print_verdict(v);
  return verdict_exit(v);
}

int cmd_certify(const std::string& a, const std::string& b, std::optional<std::size_t> ca,
                std::optional<std::size_t> cb, std::size_t depth, const Settings& s) {
  const auto x = load_measure(a, ca, s), y = load_measure(b, cb, s);
  const auto v = homeomorphic(x.inv, y.inv, s.closure_bound);
  if (v.verdict != HomeoVerdict::Value::homeomorphic) {
    print_verdict(v);
    return verdict_exit(v);
  }
  try {
    const auto cert = back_and_forth(x.pm, y.pm, depth, s.budget);
    const auto problem = verify(cert, x.pm, y.pm, s.budget.max_cells);
    json out{{"first", x.label}, {"second", y.label}, {"verified", problem.empty()}, {"certificate", to_json(cert)}};
    if (!problem.empty()) out["problem"] = problem;
    std::cout << out.dump(2) << "\n";
    return problem.empty() ? kPositive : kNegative;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::certificate_failure && e.kind() != ErrorKind::enumeration_too_large) throw;
    std::cout << "certificate not produced: " << e.what() << "\n";
    return kUndetermined;
  }
}

std::vector<Rational> parse_generators(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t"), e = item.find_last_not_of(" \t");
    if (b == std::string::npos) continue;
    try {
      out.push_back(parse_rational(item.substr(b, e - b + 1)));
    } catch (const std::exception&) {
      throw Error(ErrorKind::input, "not a rational generator: '" + item + "'");
    }
  }
  if (out.empty()) throw Error(ErrorKind::input, "--grouplike needs at least one generator");
  return out;
}

int cmd_construct(const std::string& gens_text, bool plain, const std::string& extend, std::optional<std::size_t> cls,
                  std::size_t count) {
  DiagramDocument doc;
  if (!extend.empty()) {
    const auto src = load_document(extend);
    const auto d = stationary_of(src, extend);
    const auto alpha = pick(d, cls).alpha;
    doc.diagram = add_infinite_components(d, alpha, count);
    doc.metadata = {{"construction", "add_infinite_components"},
                    {"source", extend},
                    {"class", alpha},
                    {"count", count}};
  } else {
    const auto gens = parse_generators(gens_text);
    auto d = grouplike_from_rationals(gens);
    if (plain) d.lambda = FieldElement(1);  // D = G[gens] ∩ [0, ∞), no 1/L closure
    const auto o = odometer_from_grouplike(d);
    doc.diagram = o.diagram;
    json g = json::array();
    for (const auto& r : gens) g.push_back(to_string(r));
    json pre = json::array(), cyc = json::array();
    for (const auto& p : o.prime_prefix) pre.push_back(to_string(p));
    for (const auto& p : o.prime_cycle) cyc.push_back(to_string(p));
    doc.metadata = {{"construction", "odometer_from_grouplike"},
                    {"generators", g},
                    {"rec", o.primes.to_string()},
                    {"prime_prefix", pre},
                    {"prime_cycle", cyc},
                    {"a_n_over_p_n", "1"},
                    {"svalues", o.svalues.to_string()}};
  }
  std::cout << save_document(doc);
  return kPositive;
}

int cmd_dot(const std::string& path) {
  const auto doc = load_document(path);
  const auto d = stationary_of(doc, path);
  const auto cd = class_decomposition(d);
  std::vector<std::string> labels(cd.size());
  for (std::size_t c = 0; c < cd.size(); ++c) {
    if (is_trivial_class(d, cd.classes[c])) continue;
    const auto r = perron_root(class_block(d, cd.classes[c]));
    labels[c] = "rho = " + (r.is_rational() ? to_string(r.to_rational()) : std::to_string(r.approx()));
    try {
      labels[c] += ergodic_measure(d, c).finite ? ", finite" : ", infinite";
    } catch (const Error&) {
    }
  }
  std::cout << condensation_dot(d, labels);
  return kPositive;
}

int exit_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::input:
    case ErrorKind::precondition:
    case ErrorKind::coordinate_dimension:
    case ErrorKind::not_applicable: return kInput;
    case ErrorKind::density_violation:
    case ErrorKind::certificate_failure: return kNegative;
    default: return kUndetermined;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Invariant measures, clopen values sets and homeomorphism verdicts for Bratteli diagrams"};
  app.require_subcommand(1);
  std::string file, file2, gens, extend;
  std::optional<std::size_t> measure, measure2;
  std::vector<std::string> members;
  bool as_json = false, normalized = false;
  std::size_t depth = 2, count = 1;

  auto* analyze = app.add_subcommand("analyze", "classes, Perron roots and ergodic measures");
  analyze->add_option("file", file, "diagram document")->required();
  analyze->add_flag("--json", as_json, "JSON report");

  auto* sv = app.add_subcommand("svalues", "clopen values set and membership");
  sv->add_option("file", file)->required();
  sv->add_option("--measure", measure, "class index of the measure");
  sv->add_option("--member", members, "values to test")->expected(1, -1);
  sv->add_flag("--normalized", normalized, "use the probability normalization on B_f");

  auto* good = app.add_subcommand("good", "goodness verdict with witness");
  good->add_option("file", file)->required();
  good->add_option("--measure", measure);
  good->add_flag("--normalized", normalized);

  auto* homeo = app.add_subcommand("homeo", "homeomorphism verdict (probability-normalized measures)");
  homeo->add_option("first", file)->required();
  homeo->add_option("second", file2)->required();
  homeo->add_option("--measure-a", measure);
  homeo->add_option("--measure-b", measure2);

  auto* certify = app.add_subcommand("certify", "back-and-forth certificate as JSON");
  certify->add_option("first", file)->required();
  certify->add_option("second", file2)->required();
  certify->add_option("--measure-a", measure);
  certify->add_option("--measure-b", measure2);
  certify->add_option("--depth", depth, "number of stages")->check(CLI::Range(1, 8));

  auto* construct = app.add_subcommand("construct", "build a diagram document");
  auto* gl = construct->add_option("--grouplike", gens, "rational generators, e.g. \"1, 1/6\"");
  bool plain = false;
  construct->add_flag("--plain", plain, "take D = G[gens] without closing under division by the denominators");
  auto* ext = construct->add_option("--add-components", extend, "stationary diagram to extend");
  construct->add_option("--measure", measure, "class whose measure is kept (with --add-components)");
  construct->add_option("--count", count, "components to add (with --add-components)");
  gl->excludes(ext);

  auto* dot = app.add_subcommand("dot", "condensation DAG in DOT");
  dot->add_option("file", file)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kInput;
  }
  try {
    const auto s = settings();
    if (analyze->parsed()) return cmd_analyze(file, as_json, s);
    if (sv->parsed()) return cmd_svalues(file, measure, members, normalized, s);
    if (good->parsed()) return cmd_good(file, measure, normalized, s);
    if (homeo->parsed()) return cmd_homeo(file, file2, measure, measure2, s);
    if (certify->parsed()) return cmd_certify(file, file2, measure, measure2, depth, s);
    if (construct->parsed()) {
      if (gens.empty() && extend.empty()) throw Error(ErrorKind::input, "construct needs --grouplike or --add-components");
      return cmd_construct(gens, plain, extend, measure, count);
    }
    if (dot->parsed()) return cmd_dot(file);
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return exit_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  }
  return kInput;
}
