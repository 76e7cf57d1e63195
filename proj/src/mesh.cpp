#include "symfem/mesh.hpp"

#include <algorithm>
#include <set>

#include <fmt/format.h>

#include "symfem/errors.hpp"

namespace symfem {

SimplexMesh SimplexMesh::from_cells(std::vector<Point> points, std::vector<std::vector<int>> cells, int level) {
  if (points.empty() || cells.empty()) throw GeometryError("SimplexMesh: empty mesh");
  SimplexMesh m;
  m.dim_ = static_cast<int>(points.front().size());
  m.level_ = level;
  m.points_ = std::move(points);
  m.cells_ = std::move(cells);
  const int n = m.dim_;
  for (auto& c : m.cells_) {
    if (static_cast<int>(c.size()) != n + 1) throw GeometryError("SimplexMesh: cell with wrong vertex count");
    std::set<int> ids(c.begin(), c.end());
    if (static_cast<int>(ids.size()) != n + 1) throw GeometryError("SimplexMesh: repeated vertex id in cell");
    for (int v : c)
      if (v < 0 || v >= m.num_vertices()) throw GeometryError("SimplexMesh: vertex id out of range");
    std::vector<Point> pts;
    for (int v : c) pts.push_back(m.points_[static_cast<std::size_t>(v)]);
    const Simplex s(pts);
    if (s.det() < 0) std::swap(c[n - 1], c[n]);
  }

  std::map<std::vector<int>, int> facet_index;
  m.cell_facets_.resize(m.cells_.size());
  for (int c = 0; c < m.num_cells(); ++c) {
    const auto& cv = m.cells_[static_cast<std::size_t>(c)];
    auto& cf = m.cell_facets_[static_cast<std::size_t>(c)];
    cf.resize(static_cast<std::size_t>(n + 1));
    for (int i = 0; i <= n; ++i) {
      std::vector<int> key;
      for (int j = 0; j <= n; ++j)
        if (j != i) key.push_back(cv[static_cast<std::size_t>(j)]);
      std::sort(key.begin(), key.end());
      auto [it, inserted] = facet_index.emplace(key, m.num_facets());
      if (inserted) m.facets_.push_back(Facet{key, {}, {}});
      auto& f = m.facets_[static_cast<std::size_t>(it->second)];
      if (f.cells.size() == 2) throw GeometryError("SimplexMesh: facet shared by more than two cells");
      f.cells.push_back(c);
      cf[static_cast<std::size_t>(i)] = it->second;
    }
  }
  for (int f = 0; f < m.num_facets(); ++f) {
    auto& fc = m.facets_[static_cast<std::size_t>(f)];
    std::sort(fc.cells.begin(), fc.cells.end());
    const int c = fc.cells.front();
    const Simplex s = m.cell_simplex(c);
    fc.normal = s.outward_normal(m.opposite_local_vertex(c, f));
  }

  m.cell_edges_.resize(m.cells_.size());
  for (int c = 0; c < m.num_cells(); ++c) {
    const auto& cv = m.cells_[static_cast<std::size_t>(c)];
    for (const auto& pr : combinations(n + 1, 2)) {
      int a = cv[static_cast<std::size_t>(pr[0])];
      int b = cv[static_cast<std::size_t>(pr[1])];
      if (a > b) std::swap(a, b);
      auto [it, inserted] = m.edge_index_.emplace(std::make_pair(a, b), m.num_edges());
      if (inserted) m.edges_.push_back({a, b});
      m.cell_edges_[static_cast<std::size_t>(c)].push_back(it->second);
    }
  }
  return m;
}

Simplex SimplexMesh::cell_simplex(int c) const {
  std::vector<Point> pts;
  for (int v : cell(c)) pts.push_back(point(v));
  return Simplex(std::move(pts));
}

int SimplexMesh::opposite_local_vertex(int c, int f) const {
  const auto& cf = cell_facets_[static_cast<std::size_t>(c)];
  for (std::size_t i = 0; i < cf.size(); ++i)
    if (cf[i] == f) return static_cast<int>(i);
  throw InvalidArgument(fmt::format("facet {} is not a facet of cell {}", f, c));
}

int SimplexMesh::find_edge(int a, int b) const {
  if (a > b) std::swap(a, b);
  auto it = edge_index_.find({a, b});
  return it == edge_index_.end() ? -1 : it->second;
}

int SimplexMesh::facet_sign(int c, int f) const {
  const auto& fc = facet(f);
  if (fc.cells.front() == c) return 1;
  if (fc.cells.size() == 2 && fc.cells[1] == c) return -1;
  throw InvalidArgument(fmt::format("facet {} is not a facet of cell {}", f, c));
}

FacetGeometry SimplexMesh::facet_geometry(int f) const {
  const auto& fc = facet(f);
  std::vector<Point> pts;
  for (int v : fc.vertices) pts.push_back(point(v));
  const Simplex s(std::move(pts));
  FacetGeometry g;
  g.normal = fc.normal;
  g.tangents = s.tangent_basis();
  g.measure = s.measure();
  return g;
}

FacetGeometry facet_geometry(const Facet& facet, const SimplexMesh& mesh) {
  std::vector<Point> pts;
  for (int v : facet.vertices) pts.push_back(mesh.point(v));
  const Simplex s(std::move(pts));
  FacetGeometry g;
  g.tangents = s.tangent_basis();
  g.measure = s.measure();
  g.normal = facet.normal;
  return g;
}

void SimplexMesh::dump(std::ostream& os) const {
  for (const auto& p : points_) {
    for (int i = 0; i < dim_; ++i) os << (i ? " " : "") << fmt::format("{:.17g}", p[i]);
    os << '\n';
  }
  for (const auto& c : cells_) {
    for (std::size_t i = 0; i < c.size(); ++i) os << (i ? " " : "") << c[i];
    os << '\n';
  }
}

SimplexMesh generate_square_mesh(int level) {
  if (level < 1) throw InvalidArgument(fmt::format("generate_square_mesh: level must be >= 1, got {}", level));
  std::vector<Point> pts = {Eigen::Vector2d(0, 0), Eigen::Vector2d(1, 0), Eigen::Vector2d(1, 1), Eigen::Vector2d(0, 1)};
  std::vector<std::vector<int>> cells = {{0, 1, 3}, {1, 2, 3}};
  for (int l = 1; l < level; ++l) {
    std::map<std::pair<int, int>, int> mid;
    auto midpoint = [&](int a, int b) {
      const auto key = std::minmax(a, b);
      auto it = mid.find(key);
      if (it != mid.end()) return it->second;
      const int id = static_cast<int>(pts.size());
      pts.push_back(0.5 * (pts[static_cast<std::size_t>(a)] + pts[static_cast<std::size_t>(b)]));
      mid.emplace(key, id);
      return id;
    };
    std::vector<std::vector<int>> next;
    next.reserve(cells.size() * 4);
    for (const auto& c : cells) {
      const int a = c[0], b = c[1], d = c[2];
      const int ab = midpoint(a, b), bd = midpoint(b, d), da = midpoint(d, a);
      next.push_back({a, ab, da});
      next.push_back({ab, b, bd});
      next.push_back({da, bd, d});
      next.push_back({ab, bd, da});
    }
    cells = std::move(next);
  }
  return SimplexMesh::from_cells(std::move(pts), std::move(cells), level);
}

} // namespace symfem
