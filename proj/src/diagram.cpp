#include "bratteli/diagram.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <sstream>

namespace bratteli {

namespace {

void check_nonnegative(const IncidenceMatrix& f, const std::string& what) {
  for (Eigen::Index i = 0; i < f.rows(); ++i)
    for (Eigen::Index j = 0; j < f.cols(); ++j)
      if (f(i, j) < 0) throw Error(ErrorKind::input, what + ": negative entry at (" + std::to_string(i) + ", " + std::to_string(j) + ")");
}

void check_no_zero_lines(const IncidenceMatrix& f, const std::string& what) {
  for (Eigen::Index i = 0; i < f.rows(); ++i)
    if (f.row(i).sum() == 0) throw Error(ErrorKind::input, what + ": row " + std::to_string(i) + " is zero");
  for (Eigen::Index j = 0; j < f.cols(); ++j)
    if (f.col(j).sum() == 0) throw Error(ErrorKind::input, what + ": column " + std::to_string(j) + " is zero");
}

}  // namespace

StationaryDiagram::StationaryDiagram(IncidenceMatrix f) : f_(std::move(f)) {
  if (f_.rows() == 0 || f_.rows() != f_.cols())
    throw Error(ErrorKind::input, "incidence matrix must be square and nonempty (got " + std::to_string(f_.rows()) +
                                      "x" + std::to_string(f_.cols()) + ")");
  check_nonnegative(f_, "incidence matrix");
  check_no_zero_lines(f_, "incidence matrix");
}

std::vector<std::int64_t> StationaryDiagram::root_edges() const {
  std::vector<std::int64_t> r(vertex_count());
  for (Eigen::Index i = 0; i < f_.rows(); ++i) r[static_cast<std::size_t>(i)] = f_.row(i).sum();
  return r;
}

FiniteRankDiagram::FiniteRankDiagram(std::vector<std::int64_t> root, std::vector<IncidenceMatrix> prefix,
                                     std::vector<IncidenceMatrix> cycle)
    : root_(std::move(root)), prefix_(std::move(prefix)), cycle_(std::move(cycle)) {
  if (root_.empty()) throw Error(ErrorKind::input, "root must have at least one edge");
  for (auto r : root_)
    if (r <= 0) throw Error(ErrorKind::input, "every level-1 vertex needs a root edge");
  if (cycle_.empty()) throw Error(ErrorKind::input, "finite-rank diagram needs a nonempty cycle");
  std::size_t cols = root_.size();
  auto check = [&](const IncidenceMatrix& f, const std::string& name) {
    if (static_cast<std::size_t>(f.cols()) != cols || f.rows() == 0)
      throw Error(ErrorKind::input, name + ": expected " + std::to_string(cols) + " columns, got " + std::to_string(f.cols()));
    check_nonnegative(f, name);
    check_no_zero_lines(f, name);
    cols = static_cast<std::size_t>(f.rows());
  };
  for (std::size_t i = 0; i < prefix_.size(); ++i) check(prefix_[i], "prefix[" + std::to_string(i) + "]");
  for (std::size_t i = 0; i < cycle_.size(); ++i) check(cycle_[i], "cycle[" + std::to_string(i) + "]");
  if (static_cast<std::size_t>(cycle_.front().cols()) != cols)
    throw Error(ErrorKind::input, "cycle does not close up: last rows != first columns");
}

FiniteRankDiagram FiniteRankDiagram::from_stationary(const StationaryDiagram& d) {
  return FiniteRankDiagram(d.root_edges(), {}, {d.F()});
}

const IncidenceMatrix& FiniteRankDiagram::incidence(std::size_t n) const {
  if (n == 0) throw Error(ErrorKind::precondition, "incidence index starts at 1");
  if (n - 1 < prefix_.size()) return prefix_[n - 1];
  return cycle_[(n - 1 - prefix_.size()) % cycle_.size()];
}

std::size_t FiniteRankDiagram::level_size(std::size_t n) const {
  if (n == 0) return 1;
  if (n == 1) return root_.size();
  return static_cast<std::size_t>(incidence(n - 1).rows());
}

std::size_t FiniteRankDiagram::rank_bound() const {
  std::size_t r = root_.size();
  for (const auto& f : prefix_) r = std::max(r, static_cast<std::size_t>(f.rows()));
  for (const auto& f : cycle_) r = std::max(r, static_cast<std::size_t>(f.rows()));
  return r;
}

bool operator==(const FiniteRankDiagram& a, const FiniteRankDiagram& b) {
  auto same = [](const std::vector<IncidenceMatrix>& x, const std::vector<IncidenceMatrix>& y) {
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i].rows() != y[i].rows() || x[i].cols() != y[i].cols() || x[i] != y[i]) return false;
    return true;
  };
  return a.root_ == b.root_ && same(a.prefix_, b.prefix_) && same(a.cycle_, b.cycle_);
}

ClopenSet ClopenSet::whole() {
  ClopenSet s;
  s.cyl_.push_back(CylinderSet{});
  return s;
}

ClopenSet ClopenSet::of(const CylinderSet& c) {
  ClopenSet s;
  s.level_ = c.level();
  s.cyl_.push_back(c);
  return s;
}

std::int64_t in_degree(const FiniteRankDiagram& d, std::size_t n, std::uint32_t vertex) {
  if (n == 1) return d.root_edges().at(vertex);
  return d.incidence(n - 1).row(vertex).sum();
}

std::uint32_t edge_source(const FiniteRankDiagram& d, std::size_t n, std::uint32_t vertex, std::uint32_t edge) {
  const auto& f = d.incidence(n);
  std::int64_t acc = 0;
  for (Eigen::Index w = 0; w < f.cols(); ++w) {
    acc += f(vertex, w);
    if (edge < acc) return static_cast<std::uint32_t>(w);
  }
  throw Error(ErrorKind::precondition, "edge index out of range");
}

std::vector<CylinderSet> children(const FiniteRankDiagram& d, const CylinderSet& c) {
  std::vector<CylinderSet> out;
  if (c.level() == 0) {
    const auto& r = d.root_edges();
    for (std::uint32_t v = 0; v < r.size(); ++v)
      for (std::int64_t e = 0; e < r[v]; ++e) out.push_back(CylinderSet{{Step{v, static_cast<std::uint32_t>(e)}}});
    return out;
  }
  const auto& f = d.incidence(c.level());
  const auto v = static_cast<Eigen::Index>(c.terminal_vertex());
  for (Eigen::Index u = 0; u < f.rows(); ++u) {
    if (f(u, v) == 0) continue;
    std::int64_t offset = 0;
    for (Eigen::Index w = 0; w < v; ++w) offset += f(u, w);
    for (std::int64_t e = 0; e < f(u, v); ++e) {
      CylinderSet child = c;
      child.path.push_back(Step{static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(offset + e)});
      out.push_back(std::move(child));
    }
  }
  return out;
}

bool is_prefix(const CylinderSet& prefix, const CylinderSet& c) {
  return prefix.level() <= c.level() && std::equal(prefix.path.begin(), prefix.path.end(), c.path.begin());
}

std::vector<Integer> path_counts(const FiniteRankDiagram& d, std::size_t level) {
  if (level == 0) return {Integer(1)};
  std::vector<Integer> h(d.root_edges().begin(), d.root_edges().end());
  for (std::size_t n = 1; n < level; ++n) {
    const auto& f = d.incidence(n);
    std::vector<Integer> next(static_cast<std::size_t>(f.rows()), Integer(0));
    for (Eigen::Index u = 0; u < f.rows(); ++u)
      for (Eigen::Index w = 0; w < f.cols(); ++w)
        if (f(u, w)) next[static_cast<std::size_t>(u)] += Integer(f(u, w)) * h[static_cast<std::size_t>(w)];
    h = std::move(next);
  }
  return h;
}

namespace {

void guard(const Integer& count, std::size_t cap, std::size_t level) {
  if (count > Integer(cap))
    throw Error(ErrorKind::enumeration_too_large, "level " + std::to_string(level) + " has " + to_string(count) +
                                                       " cylinders (cap " + std::to_string(cap) + ")");
}

// Number of level-`level` descendants of c.
Integer descendant_count(const FiniteRankDiagram& d, const CylinderSet& c, std::size_t level) {
  if (c.level() == 0) {
    Integer t = 0;
    for (const auto& x : path_counts(d, level)) t += x;
    return t;
  }
  std::vector<Integer> h(d.level_size(c.level()), Integer(0));
  h[c.terminal_vertex()] = 1;
  for (std::size_t n = c.level(); n < level; ++n) {
    const auto& f = d.incidence(n);
    std::vector<Integer> next(static_cast<std::size_t>(f.rows()), Integer(0));
    for (Eigen::Index u = 0; u < f.rows(); ++u)
      for (Eigen::Index w = 0; w < f.cols(); ++w)
        if (f(u, w)) next[static_cast<std::size_t>(u)] += Integer(f(u, w)) * h[static_cast<std::size_t>(w)];
    h = std::move(next);
  }
  Integer t = 0;
  for (const auto& x : h) t += x;
  return t;
}

void expand(const FiniteRankDiagram& d, const CylinderSet& c, std::size_t level, std::vector<CylinderSet>& out) {
  if (c.level() == level) {
    out.push_back(c);
    return;
  }
  for (const auto& ch : children(d, c)) expand(d, ch, level, out);
}

}  // namespace

std::vector<CylinderSet> cylinders_at_level(const FiniteRankDiagram& d, std::size_t level, std::size_t cap) {
  CylinderSet root;
  guard(descendant_count(d, root, level), cap, level);
  std::vector<CylinderSet> out;
  expand(d, root, level, out);
  return out;
}

ClopenSet lift(const FiniteRankDiagram& d, const ClopenSet& s, std::size_t level, std::size_t cap) {
  if (level < s.level()) throw Error(ErrorKind::precondition, "cannot lift a clopen set to a coarser level");
  if (level == s.level()) return s;
  Integer total = 0;
  for (const auto& c : s.cyl_) total += descendant_count(d, c, level);
  guard(total, cap, level);
  ClopenSet r;
  r.level_ = level;
  for (const auto& c : s.cyl_) expand(d, c, level, r.cyl_);
  // expansion of sorted distinct cylinders stays sorted and distinct
  return r;
}

ClopenSet clopen_normalize(const FiniteRankDiagram& d, const std::vector<CylinderSet>& cylinders, std::size_t cap) {
  ClopenSet r;
  if (cylinders.empty()) return r;
  std::size_t level = 0;
  for (const auto& c : cylinders) level = std::max(level, c.level());
  Integer total = 0;
  for (const auto& c : cylinders) total += descendant_count(d, c, level);
  guard(total, cap, level);
  r.level_ = level;
  for (const auto& c : cylinders) expand(d, c, level, r.cyl_);
  std::sort(r.cyl_.begin(), r.cyl_.end());
  r.cyl_.erase(std::unique(r.cyl_.begin(), r.cyl_.end()), r.cyl_.end());
  return r;
}

namespace {
template <typename Op>
ClopenSet combine(const FiniteRankDiagram& d, const ClopenSet& a, const ClopenSet& b, Op op) {
  // an empty operand has no meaningful level
  const std::size_t level = std::max(a.empty() ? 0 : a.level(), b.empty() ? 0 : b.level());
  const ClopenSet x = a.empty() ? a : lift(d, a, level), y = b.empty() ? b : lift(d, b, level);
  std::vector<CylinderSet> out;
  op(x.cylinders(), y.cylinders(), out);
  if (out.empty()) return ClopenSet{};
  return clopen_normalize(d, out);
}
}  // namespace

ClopenSet unite(const FiniteRankDiagram& d, const ClopenSet& a, const ClopenSet& b) {
  return combine(d, a, b, [](const auto& x, const auto& y, auto& out) {
    std::set_union(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
  });
}

ClopenSet intersect(const FiniteRankDiagram& d, const ClopenSet& a, const ClopenSet& b) {
  return combine(d, a, b, [](const auto& x, const auto& y, auto& out) {
    std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
  });
}

ClopenSet subtract(const FiniteRankDiagram& d, const ClopenSet& a, const ClopenSet& b) {
  return combine(d, a, b, [](const auto& x, const auto& y, auto& out) {
    std::set_difference(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
  });
}

bool disjoint(const FiniteRankDiagram& d, const ClopenSet& a, const ClopenSet& b) { return intersect(d, a, b).empty(); }
bool subset(const FiniteRankDiagram& d, const ClopenSet& a, const ClopenSet& b) { return subtract(d, a, b).empty(); }

// ---- classes ----

ClassDecomposition class_decomposition(const StationaryDiagram& d) {
  const std::size_t n = d.vertex_count();
  const auto& f = d.F();
  // v -> w in the digraph of A iff F(w, v) > 0
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (std::size_t s = 0; s < n; ++s) {
    std::queue<std::size_t> q;
    q.push(s);
    reach[s][s] = true;
    while (!q.empty()) {
      auto v = q.front();
      q.pop();
      for (std::size_t w = 0; w < n; ++w)
        if (f(static_cast<Eigen::Index>(w), static_cast<Eigen::Index>(v)) > 0 && !reach[s][w]) {
          reach[s][w] = true;
          q.push(w);
        }
    }
  }
  ClassDecomposition cd;
  cd.class_of.assign(n, n);
  for (std::size_t v = 0; v < n; ++v) {
    if (cd.class_of[v] != n) continue;
    std::vector<std::size_t> cls;
    for (std::size_t w = v; w < n; ++w)
      if (reach[v][w] && reach[w][v]) {
        cls.push_back(w);
        cd.class_of[w] = cd.classes.size();
      }
    cd.classes.push_back(std::move(cls));
  }
  const std::size_t k = cd.classes.size();
  cd.reaches.assign(k, std::vector<bool>(k, false));
  for (std::size_t b = 0; b < k; ++b)
    for (std::size_t a = 0; a < k; ++a) cd.reaches[b][a] = reach[cd.classes[b][0]][cd.classes[a][0]];
  return cd;
}

std::vector<std::size_t> ClassDecomposition::successors(const StationaryDiagram& d, std::size_t beta) const {
  std::vector<bool> mark(size(), false);
  const auto& f = d.F();
  for (auto v : classes[beta])
    for (std::size_t w = 0; w < d.vertex_count(); ++w)
      if (f(static_cast<Eigen::Index>(w), static_cast<Eigen::Index>(v)) > 0 && class_of[w] != beta) mark[class_of[w]] = true;
  std::vector<std::size_t> out;
  for (std::size_t a = 0; a < size(); ++a)
    if (mark[a]) out.push_back(a);
  return out;
}

std::vector<std::size_t> ClassDecomposition::topological_order() const {
  // number of classes a class reaches strictly decreases along arcs
  std::vector<std::size_t> order(size());
  std::iota(order.begin(), order.end(), 0);
  auto downstream = [&](std::size_t c) {
    std::size_t k = 0;
    for (std::size_t a = 0; a < size(); ++a) k += reaches[c][a] ? 1 : 0;
    return k;
  };
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return downstream(x) > downstream(y); });
  return order;
}

Matrix<Integer> class_block(const StationaryDiagram& d, const std::vector<std::size_t>& cls) {
  const auto k = static_cast<Eigen::Index>(cls.size());
  Matrix<Integer> a(k, k);
  const auto& f = d.F();
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j)
      a(i, j) = Integer(f(static_cast<Eigen::Index>(cls[static_cast<std::size_t>(j)]),
                          static_cast<Eigen::Index>(cls[static_cast<std::size_t>(i)])));
  return a;
}

bool is_trivial_class(const StationaryDiagram& d, const std::vector<std::size_t>& cls) {
  if (cls.size() > 1) return false;
  const auto v = static_cast<Eigen::Index>(cls[0]);
  return d.F()(v, v) == 0;
}

std::size_t class_period(const StationaryDiagram& d, const std::vector<std::size_t>& cls) {
  if (is_trivial_class(d, cls)) return 0;
  const auto a = class_block(d, cls);
  const std::size_t k = cls.size();
  std::vector<long> depth(k, -1);
  depth[0] = 0;
  std::queue<std::size_t> q;
  q.push(0);
  std::size_t g = 0;
  while (!q.empty()) {
    auto i = q.front();
    q.pop();
    for (std::size_t j = 0; j < k; ++j) {
      if (a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) == 0) continue;
      if (depth[j] < 0) {
        depth[j] = depth[i] + 1;
        q.push(j);
      } else {
        g = std::gcd(g, static_cast<std::size_t>(std::labs(depth[i] + 1 - depth[j])));
      }
    }
  }
  return g;
}

std::size_t minimal_component_count(const StationaryDiagram& d) {
  const auto cd = class_decomposition(d);
  std::size_t count = 0;
  for (std::size_t a = 0; a < cd.size(); ++a) {
    if (is_trivial_class(d, cd.classes[a])) continue;
    bool source = true;
    for (std::size_t b = 0; b < cd.size(); ++b)
      if (b != a && cd.reaches[b][a] && !is_trivial_class(d, cd.classes[b])) source = false;
    if (source) ++count;
  }
  return count;
}

StationaryDiagram telescope(const StationaryDiagram& d, unsigned k) {
  if (k == 0) throw Error(ErrorKind::precondition, "telescoping factor must be positive");
  Matrix<Integer> f = to_integer(d.F()), p = f;
  for (unsigned i = 1; i < k; ++i) p = p * f;
  return StationaryDiagram(to_incidence(p));
}

std::string condensation_dot(const StationaryDiagram& d, const std::vector<std::string>& class_labels) {
  const auto cd = class_decomposition(d);
  std::ostringstream os;
  os << "digraph condensation {\n  rankdir=TB;\n";
  for (std::size_t c = 0; c < cd.size(); ++c) {
    os << "  c" << c << " [label=\"C" << c << " {";
    for (std::size_t i = 0; i < cd.classes[c].size(); ++i) os << (i ? "," : "") << cd.classes[c][i];
    os << "}";
    if (c < class_labels.size() && !class_labels[c].empty()) os << "\\n" << class_labels[c];
    os << "\"];\n";
  }
  for (std::size_t c = 0; c < cd.size(); ++c)
    for (auto s : cd.successors(d, c)) os << "  c" << c << " -> c" << s << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace bratteli
