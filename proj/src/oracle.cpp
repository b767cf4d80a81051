#include "bratteli/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <set>
#include <unordered_map>
#include <sstream>

namespace bratteli {

EnumerationBudget budget_from_env(EnumerationBudget base) {
  const char* env = std::getenv("BRATTELI_BUDGET");
  if (!env) return base;
  std::stringstream ss(env);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) throw Error(ErrorKind::input, "BRATTELI_BUDGET: expected key=value, got '" + item + "'");
    auto k = item.substr(0, eq), v = item.substr(eq + 1);
    try {
      if (k == "max_level") base.max_level = std::stoul(v);
      else if (k == "max_cells") base.max_cells = std::stoul(v);
      else if (k == "bound") base.value_bound = FieldElement(parse_rational(v));
      else if (k == "closure_bound") continue;  // read by the CLI
      else throw Error(ErrorKind::input, "BRATTELI_BUDGET: unknown key '" + k + "'");
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::input, "BRATTELI_BUDGET: bad value for " + k);
    }
  }
  return base;
}

const char* to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::found: return "found";
    case SearchStatus::none: return "none";
    default: return "inconclusive";
  }
}

namespace {

using Key = std::vector<Rational>;

struct Group {
  FieldElement value;
  std::size_t count = 0;
  std::vector<std::uint32_t> vertices;  // terminal vertices carrying this value
};

struct LevelData {
  std::vector<Group> groups;   // finite positive values, descending
  bool has_infinite = false;
  bool too_large = false;
};

std::size_t degree_of(const FieldElement& x) { return static_cast<std::size_t>(x.degree()); }

// Counts per terminal vertex of the level-L descendants of u.
std::vector<Integer> descendant_counts(const FiniteRankDiagram& d, const ClopenSet& u, std::size_t level) {
  std::vector<Integer> total(d.level_size(level), Integer(0));
  if (u.level() == 0 && !u.empty()) return path_counts(d, level);
  std::vector<Integer> start(d.level_size(u.level()), Integer(0));
  for (const auto& c : u.cylinders()) start[c.terminal_vertex()] += 1;
  for (std::size_t n = u.level(); n < level; ++n) {
    const auto& f = d.incidence(n);
    std::vector<Integer> next(static_cast<std::size_t>(f.rows()), Integer(0));
    for (Eigen::Index a = 0; a < f.rows(); ++a)
      for (Eigen::Index b = 0; b < f.cols(); ++b)
        if (f(a, b)) next[static_cast<std::size_t>(a)] += Integer(f(a, b)) * start[static_cast<std::size_t>(b)];
    start = std::move(next);
  }
  return start;
}

LevelData level_data(const PathMeasure& mu, const ClopenSet& u, std::size_t level, std::size_t cap) {
  LevelData out;
  if (u.empty()) return out;
  const auto counts = descendant_counts(mu.diagram, u, level);
  std::map<Key, std::size_t> index;
  std::size_t dim = 1;
  std::vector<std::pair<std::uint32_t, ExtValue>> vals;
  for (std::uint32_t v = 0; v < counts.size(); ++v) {
    if (counts[v] == 0) continue;
    auto x = mu.value(level, v);
    if (x.infinite) {
      out.has_infinite = true;
      continue;
    }
    if (x.value.is_zero()) continue;
    dim = std::max(dim, degree_of(x.value));
    vals.emplace_back(v, x);
  }
  for (const auto& [v, x] : vals) {
    if (counts[v] > Integer(cap)) {
      out.too_large = true;
      return out;
    }
    const auto k = x.value.coords(dim);
    auto it = index.find(k);
    if (it == index.end()) {
      index.emplace(k, out.groups.size());
      out.groups.push_back(Group{x.value, static_cast<std::size_t>(counts[v].convert_to<unsigned long>()), {v}});
    } else {
      auto& g = out.groups[it->second];
      g.count += static_cast<std::size_t>(counts[v].convert_to<unsigned long>());
      g.vertices.push_back(v);
    }
  }
  std::sort(out.groups.begin(), out.groups.end(), [](const Group& a, const Group& b) { return b.value < a.value; });
  return out;
}

// Bounded knapsack over value groups with a failure memo on (group, remainder).
class CountSearch {
 public:
  CountSearch(const std::vector<Group>& groups, std::vector<std::size_t> avail, std::size_t node_cap)
      : g_(groups), avail_(std::move(avail)), cap_(node_cap) {
    suffix_.assign(g_.size() + 1, FieldElement(0));
    for (std::size_t j = g_.size(); j-- > 0;) suffix_[j] = suffix_[j + 1] + FieldElement(static_cast<long>(avail_[j])) * g_[j].value;
    for (const auto& gr : g_) dim_ = std::max(dim_, degree_of(gr.value));
  }

  // Calls visit(k) for solutions until it returns true. Returns false when the cap hit.
  template <typename Visit>
  bool run(const FieldElement& target, Visit visit) {
    std::vector<std::size_t> k(g_.size(), 0);
    stopped_ = false;
    dfs(0, target, k, visit);
    return !exhausted_;
  }
  bool exhausted() const { return exhausted_; }

 private:
  template <typename Visit>
  bool dfs(std::size_t j, const FieldElement& rem, std::vector<std::size_t>& k, Visit& visit) {
    if (stopped_) return true;
    if (++nodes_ > cap_) {
      exhausted_ = true;
      stopped_ = true;
      return true;
    }
    const int s = rem.sign();
    if (s < 0) return false;
    if (s == 0) {
      std::fill(k.begin() + static_cast<long>(j), k.end(), 0);
      if (visit(k)) stopped_ = true;
      return true;
    }
    if (j == g_.size() || suffix_[j] < rem) return false;
    auto key = std::make_pair(j, rem.coords(dim_));
    if (dead_.count(key)) return false;
    // largest feasible multiplicity first
    std::size_t hi = avail_[j];
    const Integer fl = floor(rem / g_[j].value);
    if (fl < Integer(static_cast<unsigned long>(hi))) hi = static_cast<std::size_t>(fl.convert_to<unsigned long>());
    bool any = false;
    for (std::size_t c = hi + 1; c-- > 0;) {
      k[j] = c;
      if (dfs(j + 1, rem - FieldElement(static_cast<long>(c)) * g_[j].value, k, visit)) any = true;
      if (stopped_) return true;
    }
    k[j] = 0;
    if (!any) dead_.insert(std::move(key));
    return any;
  }

  const std::vector<Group>& g_;
  std::vector<std::size_t> avail_;
  std::size_t cap_;
  std::vector<FieldElement> suffix_;
  std::size_t dim_ = 1;
  std::size_t nodes_ = 0;
  bool exhausted_ = false, stopped_ = false;
  std::set<std::pair<std::size_t, Key>> dead_;
};

// Level-L cylinders inside u grouped like level_data's groups.
std::vector<std::vector<CylinderSet>> group_cylinders(const PathMeasure& mu, const ClopenSet& u, std::size_t level,
                                                      const LevelData& data, std::size_t cap) {
  std::map<std::uint32_t, std::size_t> which;
  for (std::size_t j = 0; j < data.groups.size(); ++j)
    for (auto v : data.groups[j].vertices) which[v] = j;
  std::vector<std::vector<CylinderSet>> out(data.groups.size());
  const ClopenSet lifted = u.level() == 0 && !u.empty() ? lift(mu.diagram, ClopenSet::whole(), level, cap)
                                                        : lift(mu.diagram, u, level, cap);
  for (const auto& c : lifted.cylinders()) {
    auto it = which.find(c.terminal_vertex());
    if (it != which.end()) out[it->second].push_back(c);
  }
  return out;
}

std::size_t first_level(const ClopenSet& u) { return std::max<std::size_t>(u.level(), 1); }

}  // namespace

namespace {

// bits |= bits << sh, reading only old bits (each piece used once)
void shift_or(std::vector<std::uint64_t>& bits, std::size_t sh, std::size_t nbits) {
  const std::size_t q = sh / 64, r = sh % 64;
  for (std::size_t i = bits.size(); i-- > q;) {
    std::uint64_t v = bits[i - q] << r;
    if (r && i > q) v |= bits[i - q - 1] >> (64 - r);
    bits[i] |= v;
  }
  if (nbits % 64) bits.back() &= (std::uint64_t(1) << (nbits % 64)) - 1;
}

// Subset sums over integer weights: bounded multiplicities split into powers of two.
bool rational_sums(const LevelData& data, const EnumerationBudget& budget, ValueEnumeration& out) {
  for (const auto& g : data.groups)
    if (!g.value.is_rational()) return false;
  if (budget.value_bound && !budget.value_bound->is_rational()) return false;
  Integer d = 1;
  for (const auto& g : data.groups) d = lcm(d, den(g.value.to_rational()));
  Integer total = 0;
  std::vector<Integer> w;
  for (const auto& g : data.groups) {
    const auto q = g.value.to_rational();
    w.push_back(num(q) * (d / den(q)));
    total += w.back() * Integer(static_cast<unsigned long>(g.count));
  }
  Integer b = total;
  if (budget.value_bound) b = std::min(b, floor(budget.value_bound->to_rational() * d));
  if (b < 0) return true;
  if (b > Integer(64) * Integer(static_cast<unsigned long>(budget.max_cells))) return false;
  const auto nbits = static_cast<std::size_t>(b.convert_to<unsigned long>()) + 1;
  std::vector<std::uint64_t> bits((nbits + 63) / 64, 0);
  bits[0] = 1;
  for (std::size_t j = 0; j < data.groups.size(); ++j) {
    std::size_t left = data.groups[j].count;
    for (std::size_t k = 1; left > 0; k *= 2) {
      const std::size_t take = std::min(k, left);
      left -= take;
      const Integer sh = w[j] * Integer(static_cast<unsigned long>(take));
      if (sh < Integer(static_cast<unsigned long>(nbits))) shift_or(bits, static_cast<std::size_t>(sh.convert_to<unsigned long>()), nbits);
    }
  }
  for (std::size_t i = 0; i < nbits; ++i)
    if (bits[i / 64] >> (i % 64) & 1) {
      if (out.values.size() >= budget.max_cells) {
        out.partial = true;
        break;
      }
      out.values.emplace_back(Rational(Integer(static_cast<unsigned long>(i)), d));
    }
  return true;
}

// Same sums for algebraic values: integer coordinate vectors in a hash set, with reals
// compared in floating point and exactly only when two approximations are close.
struct VecHash {
  std::size_t operator()(const std::vector<std::int64_t>& v) const {
    std::size_t h = 1469598103934665603ULL;
    for (auto x : v) h = (h ^ static_cast<std::size_t>(x)) * 1099511628211ULL;
    return h;
  }
};

bool lattice_sums(const LevelData& data, const EnumerationBudget& budget, ValueEnumeration& out) {
  FieldPtr f;
  for (const auto& g : data.groups)
    if (g.value.field()) f = g.value.field();
  if (!f) return false;
  const auto dim = static_cast<std::size_t>(f->degree());
  Integer d = 1;
  for (const auto& g : data.groups)
    for (std::size_t i = 0; i < dim; ++i) d = lcm(d, den(g.value.coord(i)));
  const Integer limit = Integer(1) << 62;
  std::vector<std::vector<std::int64_t>> w;
  std::vector<double> approx;
  Integer spread = 0;
  for (const auto& g : data.groups) {
    std::vector<std::int64_t> v(dim);
    Integer m = 0;
    for (std::size_t i = 0; i < dim; ++i) {
      const Integer c = num(g.value.coord(i)) * (d / den(g.value.coord(i)));
      if (abs(c) >= limit) return false;
      v[i] = c.convert_to<std::int64_t>();
      m = std::max(m, Integer(abs(c)));
    }
    spread += m * Integer(static_cast<unsigned long>(g.count));
    if (spread >= limit) return false;
    w.push_back(std::move(v));
    approx.push_back(g.value.approx());
  }
  const Rational inv_d(Integer(1), d);
  auto element = [&](const std::vector<std::int64_t>& v) {
    std::vector<Rational> c(dim);
    for (std::size_t i = 0; i < dim; ++i) c[i] = Rational(Integer(v[i])) * inv_d;
    return FieldElement(f, std::move(c));
  };
  auto close = [](double a, double b) { return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)}); };
  const double bound = budget.value_bound ? budget.value_bound->approx() : 0.0;
  auto over = [&](const std::vector<std::int64_t>& v, double a) {
    if (!budget.value_bound) return false;
    if (!close(a, bound)) return a > bound;
    return *budget.value_bound < element(v);
  };
  std::unordered_map<std::vector<std::int64_t>, double, VecHash> sums;
  sums.emplace(std::vector<std::int64_t>(dim, 0), 0.0);
  for (std::size_t j = 0; j < data.groups.size() && !out.partial; ++j) {
    std::vector<std::pair<std::vector<std::int64_t>, double>> fresh;
    for (const auto& [k, a] : sums) {
      auto t = k;
      double ta = a;
      for (std::size_t c = 1; c <= data.groups[j].count; ++c) {
        for (std::size_t i = 0; i < dim; ++i) t[i] += w[j][i];
        ta += approx[j];
        if (over(t, ta)) break;
        fresh.emplace_back(t, ta);
      }
      if (fresh.size() > budget.max_cells) break;
    }
    for (auto& [t, ta] : fresh) sums.emplace(std::move(t), ta);
    if (sums.size() > budget.max_cells || fresh.size() > budget.max_cells) out.partial = true;
  }
  std::vector<std::pair<double, const std::vector<std::int64_t>*>> order;
  order.reserve(sums.size());
  for (const auto& [k, a] : sums) order.emplace_back(a, &k);
  std::sort(order.begin(), order.end(), [&](const auto& x, const auto& y) {
    if (!close(x.first, y.first)) return x.first < y.first;
    return element(*x.second) < element(*y.second);
  });
  out.values.reserve(order.size());
  for (const auto& [a, k] : order) out.values.push_back(element(*k));
  return true;
}

}  // namespace

ValueEnumeration enumerate_clopen_values(const PathMeasure& mu, const EnumerationBudget& budget) {
  ValueEnumeration out;
  auto data = level_data(mu, ClopenSet::whole(), budget.max_level, budget.max_cells);
  if (data.too_large) {
    out.partial = true;
    return out;
  }
  if (rational_sums(data, budget, out)) return out;
  if (lattice_sums(data, budget, out)) return out;
  std::size_t dim = 1;
  for (const auto& g : data.groups) dim = std::max(dim, degree_of(g.value));
  std::map<Key, FieldElement> sums;
  sums.emplace(FieldElement(0).coords(dim), FieldElement(0));
  for (const auto& g : data.groups) {
    std::vector<FieldElement> fresh;
    for (const auto& [k, s] : sums) {
      FieldElement t = s;
      for (std::size_t c = 1; c <= g.count; ++c) {
        t = t + g.value;
        if (budget.value_bound && *budget.value_bound < t) break;
        fresh.push_back(t);
      }
      if (fresh.size() > budget.max_cells) break;
    }
    for (auto& t : fresh) sums.emplace(t.coords(dim), t);
    if (sums.size() > budget.max_cells || fresh.size() > budget.max_cells) {
      out.partial = true;
      break;
    }
  }
  for (auto& [k, v] : sums) out.values.push_back(v);
  std::sort(out.values.begin(), out.values.end(), [](const FieldElement& a, const FieldElement& b) { return a < b; });
  return out;
}

SubsetResult subset_search(const PathMeasure& mu, const ClopenSet& v, const FieldElement& w,
                           const EnumerationBudget& budget) {
  SubsetResult out;
  if (w.sign() < 0) return out;
  if (w.is_zero()) {
    out.status = SearchStatus::found;
    out.level = v.level();
    return out;
  }
  bool cut = false;
  for (std::size_t level = first_level(v); level <= budget.max_level; ++level) {
    auto data = level_data(mu, v, level, budget.max_cells);
    if (data.too_large) {
      cut = true;
      break;
    }
    std::vector<std::size_t> avail;
    for (const auto& g : data.groups) avail.push_back(g.count);
    CountSearch search(data.groups, avail, budget.max_cells);
    std::optional<std::vector<std::size_t>> hit;
    search.run(w, [&](const std::vector<std::size_t>& k) {
      hit = k;
      return true;
    });
    if (hit) {
      auto cyl = group_cylinders(mu, v, level, data, budget.max_cells);
      std::vector<CylinderSet> chosen;
      for (std::size_t j = 0; j < cyl.size(); ++j)
        chosen.insert(chosen.end(), cyl[j].begin(), cyl[j].begin() + static_cast<long>((*hit)[j]));
      out.status = SearchStatus::found;
      out.set = clopen_normalize(mu.diagram, chosen, budget.max_cells);
      out.level = level;
      return out;
    }
    if (search.exhausted()) cut = true;
  }
  out.status = cut ? SearchStatus::inconclusive : SearchStatus::none;
  return out;
}

PartitionResult refinability_check(const PathMeasure& mu, const ClopenSet& u, const std::vector<FieldElement>& parts,
                                   const EnumerationBudget& budget) {
  const auto total = clopen_measure(mu, u);
  if (total.infinite) throw Error(ErrorKind::precondition, "refinability needs a set of finite measure");
  FieldElement s(0);
  for (const auto& p : parts) {
    if (p.sign() < 0) throw Error(ErrorKind::precondition, "negative part");
    s += p;
  }
  if (parts.empty() || s != total.value)
    throw Error(ErrorKind::precondition, "parts sum to " + s.to_string() + ", not " + total.value.to_string());
  PartitionResult out;
  if (parts.size() == 1) {
    out.status = SearchStatus::found;
    out.parts = {u};
    return out;
  }
  bool cut = false;
  for (std::size_t level = first_level(u); level <= budget.max_level; ++level) {
    auto data = level_data(mu, u, level, budget.max_cells);
    if (data.too_large) {
      cut = true;
      break;
    }
    std::vector<std::size_t> avail;
    for (const auto& g : data.groups) avail.push_back(g.count);
    std::vector<std::vector<std::size_t>> chosen(parts.size());
    std::size_t nodes = 0;
    bool exhausted = false;
    std::set<std::pair<std::size_t, std::vector<std::size_t>>> dead;
    // assign parts in order; the last part takes whatever remains
    std::function<bool(std::size_t, std::vector<std::size_t>&)> assign = [&](std::size_t i, std::vector<std::size_t>& rem) {
      if (i + 1 == parts.size()) {
        chosen[i] = rem;
        return true;
      }
      if (dead.count({i, rem})) return false;
      CountSearch search(data.groups, rem, budget.max_cells);
      bool ok = false;
      search.run(parts[i], [&](const std::vector<std::size_t>& k) {
        if (++nodes > budget.max_cells) {
          exhausted = true;
          return true;
        }
        std::vector<std::size_t> next(rem.size());
        for (std::size_t j = 0; j < rem.size(); ++j) next[j] = rem[j] - k[j];
        if (assign(i + 1, next)) {
          chosen[i] = k;
          ok = true;
          return true;
        }
        return exhausted;
      });
      if (search.exhausted()) exhausted = true;
      if (!ok && !exhausted) dead.insert({i, rem});
      return ok;
    };
    if (assign(0, avail)) {
      auto cyl = group_cylinders(mu, u, level, data, budget.max_cells);
      std::vector<std::size_t> used(cyl.size(), 0);
      out.status = SearchStatus::found;
      for (std::size_t i = 0; i < parts.size(); ++i) {
        std::vector<CylinderSet> cs;
        for (std::size_t j = 0; j < cyl.size(); ++j) {
          const std::size_t take = i + 1 == parts.size() ? cyl[j].size() - used[j] : chosen[i][j];
          cs.insert(cs.end(), cyl[j].begin() + static_cast<long>(used[j]), cyl[j].begin() + static_cast<long>(used[j] + take));
          used[j] += take;
        }
        out.parts.push_back(clopen_normalize(mu.diagram, cs, budget.max_cells));
      }
      // zero-measure cylinders (null vertices) join the last part so the parts cover u
      auto covered = ClopenSet{};
      for (const auto& p : out.parts) covered = unite(mu.diagram, covered, p);
      auto rest = subtract(mu.diagram, u.level() == 0 ? lift(mu.diagram, ClopenSet::whole(), level) : u, covered);
      if (!rest.empty()) out.parts.back() = unite(mu.diagram, out.parts.back(), rest);
      return out;
    }
    if (exhausted) cut = true;
  }
  out.status = cut ? SearchStatus::inconclusive : SearchStatus::none;
  return out;
}

bool verify_invariance(const PathMeasure& mu, const PathMap& successor, std::size_t depth, std::size_t cap) {
  const auto paths = cylinders_at_level(mu.diagram, depth, cap);
  std::map<std::vector<Step>, ExtValue> pre;
  for (const auto& p : paths) {
    const auto t = successor(p);
    if (t.level() != depth) return false;
    const auto m = cylinder_measure(mu, p);
    for (std::size_t k = 1; k <= depth; ++k) {
      std::vector<Step> key(t.path.begin(), t.path.begin() + static_cast<long>(k));
      auto it = pre.find(key);
      if (it == pre.end()) pre.emplace(std::move(key), m);
      else it->second = it->second + m;
    }
  }
  for (std::size_t k = 1; k <= depth; ++k)
    for (const auto& u : cylinders_at_level(mu.diagram, k, cap)) {
      auto it = pre.find(u.path);
      const ExtValue got = it == pre.end() ? ExtValue{FieldElement(0), false} : it->second;
      if (!(got == cylinder_measure(mu, u))) return false;
    }
  return true;
}

}  // namespace bratteli
