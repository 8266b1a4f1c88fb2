#include "cellmatch/generators.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include "cellmatch/error.hpp"

namespace cellmatch {
namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw invalid_input(what);
}

int param(const FamilySpec& spec, std::size_t count) {
  require(spec.params.size() == count,
          spec.family + " takes " + std::to_string(count) + " parameter(s)");
  return count ? spec.params.front() : 0;
}

std::vector<int> sequence(int from, int to) {
  std::vector<int> out(static_cast<std::size_t>(to - from));
  std::iota(out.begin(), out.end(), from);
  return out;
}

int max_vertex(const CellComplex& x) {
  int best = -1;
  for (CellIndex v : x.cells_of_dim(0)) best = std::max(best, x.vertices(v).front());
  return best;
}

/// Monotone lattice paths from (0,0) to (p,q), as step sequences (false = a, true = b).
void staircases(int p, int q, std::vector<bool>& path, std::vector<std::vector<bool>>& out) {
  if (p == 0 && q == 0) {
    out.push_back(path);
    return;
  }
  if (p > 0) {
    path.push_back(false);
    staircases(p - 1, q, path, out);
    path.pop_back();
  }
  if (q > 0) {
    path.push_back(true);
    staircases(p, q - 1, path, out);
    path.pop_back();
  }
}

}  // namespace

const std::vector<std::string>& family_names() {
  static const std::vector<std::string> names = {"circle", "simplex",    "sphere_boundary",
                                                 "torus7", "wedge",      "interval",
                                                 "grid_square", "product", "cone"};
  return names;
}

FamilySpec parse_family(const std::string& text) {
  FamilySpec spec;
  const auto colon = text.find(':');
  spec.family = text.substr(0, colon);
  if (colon != std::string::npos) {
    std::stringstream in(text.substr(colon + 1));
    std::string item;
    while (std::getline(in, item, ',')) {
      try {
        std::size_t used = 0;
        spec.params.push_back(std::stoi(item, &used));
        require(used == item.size(), "bad parameter \"" + item + "\"");
      } catch (const std::logic_error&) {
        throw invalid_input("bad parameter \"" + item + "\" in \"" + text + "\"");
      }
    }
  }
  require(std::find(family_names().begin(), family_names().end(), spec.family) !=
              family_names().end(),
          "unknown family \"" + spec.family + "\"");
  return spec;
}

std::string describe(const FamilySpec& spec) {
  std::string out = spec.family;
  for (std::size_t i = 0; i < spec.params.size(); ++i) {
    out += (i == 0 ? ":" : ",") + std::to_string(spec.params[i]);
  }
  if (!spec.factors.empty()) {
    out += "(";
    for (std::size_t i = 0; i < spec.factors.size(); ++i) {
      out += (i ? " x " : "") + describe(spec.factors[i]);
    }
    out += ")";
  }
  return out;
}

CellComplex circle(int k) {
  require(k >= 3, "circle needs k >= 3");
  std::vector<std::vector<int>> edges;
  for (int i = 0; i < k; ++i) edges.push_back({i, (i + 1) % k});
  return CellComplex::from_simplices(edges);
}

CellComplex simplex(int k) {
  require(k >= 0, "simplex needs k >= 0");
  return CellComplex::from_simplices({sequence(0, k + 1)});
}

CellComplex sphere_boundary(int k) {
  require(k >= 1, "sphere_boundary needs k >= 1");
  std::vector<std::vector<int>> facets;
  for (int skip = 0; skip <= k; ++skip) {
    std::vector<int> f;
    for (int v = 0; v <= k; ++v) {
      if (v != skip) f.push_back(v);
    }
    facets.push_back(f);
  }
  return CellComplex::from_simplices(facets);
}

CellComplex torus7() {
  std::vector<std::vector<int>> tris;
  for (int i = 0; i < 7; ++i) {
    tris.push_back({i, (i + 1) % 7, (i + 3) % 7});
    tris.push_back({i, (i + 2) % 7, (i + 3) % 7});
  }
  return CellComplex::from_simplices(tris);
}

CellComplex wedge() {
  return CellComplex::from_simplices({{0, 1, 2},
                                      {0, 1, 3},
                                      {0, 2, 3},
                                      {1, 2, 3},
                                      {0, 4},
                                      {4, 5},
                                      {0, 5},
                                      {0, 6},
                                      {6, 7},
                                      {0, 7}});
}

CellComplex interval(int k) {
  require(k >= 1, "interval needs k >= 1");
  std::vector<std::vector<int>> edges;
  std::map<int, Point> coords;
  for (int i = 0; i < k; ++i) edges.push_back({i, i + 1});
  for (int i = 0; i <= k; ++i) coords[i] = {Rational(i, k)};
  return CellComplex::from_simplices(edges).with_coordinates(std::move(coords));
}

CellComplex grid_square(int m) {
  require(m >= 1, "grid_square needs m >= 1");
  auto vertex = [m](int i, int j) { return j * (m + 1) + i; };
  std::vector<std::vector<int>> tris;
  std::map<int, Point> coords;
  for (int j = 0; j <= m; ++j) {
    for (int i = 0; i <= m; ++i) coords[vertex(i, j)] = {Rational(i, m), Rational(j, m)};
  }
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < m; ++i) {
      tris.push_back({vertex(i, j), vertex(i + 1, j), vertex(i + 1, j + 1)});
      tris.push_back({vertex(i, j), vertex(i, j + 1), vertex(i + 1, j + 1)});
    }
  }
  return CellComplex::from_simplices(tris).with_coordinates(std::move(coords));
}

CellComplex product(const CellComplex& a, const CellComplex& b) {
  require(a.is_simplicial() && b.is_simplicial(), "product needs simplicial factors");
  require(!a.empty() && !b.empty(), "product needs nonempty factors");
  const int width = max_vertex(b) + 1;
  auto vertex = [width](int x, int y) { return x * width + y; };

  std::vector<std::vector<int>> simplices;
  for (const auto& sa : a.maximal_simplices()) {
    for (const auto& sb : b.maximal_simplices()) {
      const int p = static_cast<int>(sa.size()) - 1, q = static_cast<int>(sb.size()) - 1;
      std::vector<bool> path;
      std::vector<std::vector<bool>> paths;
      staircases(p, q, path, paths);
      for (const auto& steps : paths) {
        std::size_t i = 0, j = 0;
        std::vector<int> s{vertex(sa[0], sb[0])};
        for (bool step : steps) {
          (step ? j : i) += 1;
          s.push_back(vertex(sa[i], sb[j]));
        }
        simplices.push_back(std::move(s));
      }
    }
  }
  CellComplex out = CellComplex::from_simplices(simplices);
  if (a.has_coordinates() && b.has_coordinates()) {
    std::map<int, Point> coords;
    for (const auto& [va, pa] : a.coordinates()) {
      for (const auto& [vb, pb] : b.coordinates()) {
        Point p = pa;
        p.insert(p.end(), pb.begin(), pb.end());
        coords[vertex(va, vb)] = std::move(p);
      }
    }
    out = out.with_coordinates(std::move(coords));
  }
  return out;
}

CellComplex cone(const CellComplex& base) {
  require(base.is_simplicial() && !base.empty(), "cone needs a nonempty simplicial complex");
  const int apex = max_vertex(base) + 1;
  std::vector<std::vector<int>> simplices;
  for (auto s : base.maximal_simplices()) {
    s.push_back(apex);
    simplices.push_back(std::move(s));
  }
  CellComplex out = CellComplex::from_simplices(simplices);
  if (base.has_coordinates()) {
    std::map<int, Point> coords;
    std::size_t dim = 0;
    for (const auto& [v, p] : base.coordinates()) {
      Point q = p;
      q.push_back(0);
      dim = q.size();
      coords[v] = std::move(q);
    }
    Point top(dim, Rational(0));
    top.back() = 1;
    coords[apex] = std::move(top);
    out = out.with_coordinates(std::move(coords));
  }
  return out;
}

CellComplex permute_vertices(const CellComplex& x, std::uint64_t seed) {
  require(x.is_simplicial(), "vertex permutation needs a simplicial complex");
  const int n = max_vertex(x) + 1;
  std::vector<int> perm = sequence(0, n);
  std::mt19937_64 rng(seed);
  for (int i = n - 1; i > 0; --i) {
    const auto j = static_cast<int>(rng() % static_cast<std::uint64_t>(i + 1));
    std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
  }
  std::vector<std::vector<int>> simplices;
  for (auto s : x.maximal_simplices()) {
    for (int& v : s) v = perm[static_cast<std::size_t>(v)];
    simplices.push_back(std::move(s));
  }
  CellComplex out = CellComplex::from_simplices(simplices);
  if (x.has_coordinates()) {
    std::map<int, Point> coords;
    for (const auto& [v, p] : x.coordinates()) coords[perm[static_cast<std::size_t>(v)]] = p;
    out = out.with_coordinates(std::move(coords));
  }
  if (!x.labels().empty()) {
    std::map<int, std::string> labels;
    for (const auto& [v, l] : x.labels()) labels[perm[static_cast<std::size_t>(v)]] = l;
    out = out.with_labels(std::move(labels));
  }
  return out;
}

CellComplex generate(const FamilySpec& spec) {
  CellComplex out;
  const std::string& f = spec.family;
  if (f == "product" || f == "cone") {
    const std::size_t need = f == "product" ? 2 : 1;
    require(spec.params.empty(), f + " takes no parameters");
    require(spec.factors.size() == need,
            f + " needs " + std::to_string(need) + " factor famil" + (need == 1 ? "y" : "ies"));
    out = f == "product" ? product(generate(spec.factors[0]), generate(spec.factors[1]))
                         : cone(generate(spec.factors[0]));
  } else {
    require(spec.factors.empty(), f + " takes no factor families");
    if (f == "circle") {
      out = circle(param(spec, 1));
    } else if (f == "simplex") {
      out = simplex(param(spec, 1));
    } else if (f == "sphere_boundary") {
      out = sphere_boundary(param(spec, 1));
    } else if (f == "torus7") {
      param(spec, 0);
      out = torus7();
    } else if (f == "wedge") {
      param(spec, 0);
      out = wedge();
    } else if (f == "interval") {
      out = interval(param(spec, 1));
    } else if (f == "grid_square") {
      out = grid_square(param(spec, 1));
    } else {
      throw invalid_input("unknown family \"" + f + "\"");
    }
  }
  if (spec.seed) out = permute_vertices(out, *spec.seed);
  return out;
}

}  // namespace cellmatch
