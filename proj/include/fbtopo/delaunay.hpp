#pragma once

// Incremental Bowyer-Watson Delaunay triangulation with recovery of
// prescribed boundary segments. Geometry is double precision; the cavity
// retriangulation carries a star-shape guard so that near-cocircular input
// (points sampled on a circle) cannot produce inverted fans.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "fbtopo/vec2.hpp"

namespace fbtopo {

class Delaunay {
 public:
  // Triangulates the given points. Indices into `pts` are preserved.
  explicit Delaunay(const std::vector<Vec2>& pts) : pts_(pts) {
    if (pts.size() < 3) throw std::invalid_argument("Delaunay: < 3 points");
    build();
  }

  const std::vector<Vec2>& points() const { return pts_; }

  // Live triangles not touching the super-triangle, CCW.
  std::vector<std::array<int, 3>> triangles() const {
    std::vector<std::array<int, 3>> out;
    const int ns = (int)pts_.size();
    for (size_t t = 0; t < tri_.size(); ++t) {
      if (!alive_[t]) continue;
      const auto& v = tri_[t];
      if (v[0] >= ns || v[1] >= ns || v[2] >= ns) continue;
      out.push_back(v);
    }
    return out;
  }

  // Ensures every (a,b) in `segments` appears as a triangulation edge,
  // re-triangulating the crossed region when it does not.
  void recover_segments(const std::vector<std::array<int, 2>>& segments) {
    for (const auto& s : segments) {
      for (int attempt = 0; attempt < 32 && !edge_exists(s[0], s[1]); ++attempt)
        insert_segment(s[0], s[1]);
      if (!edge_exists(s[0], s[1]))
        throw std::runtime_error("Delaunay: failed to recover segment");
    }
  }

  bool edge_exists(int a, int b) const {
    for (size_t t = 0; t < tri_.size(); ++t) {
      if (!alive_[t]) continue;
      for (int k = 0; k < 3; ++k) {
        const int u = tri_[t][k], v = tri_[t][(k + 1) % 3];
        if ((u == a && v == b) || (u == b && v == a)) return true;
      }
    }
    return false;
  }

 private:
  std::vector<Vec2> pts_;       // input points + 3 super vertices
  std::vector<std::array<int, 3>> tri_;
  std::vector<std::array<int, 3>> adj_;  // neighbor across edge k=(v[k+1],v[k+2])
  std::vector<char> alive_;
  int last_alive_ = 0;

  static double incircle(const Vec2& a, const Vec2& b, const Vec2& c,
                         const Vec2& p) {
    const double ax = a.x - p.x, ay = a.y - p.y;
    const double bx = b.x - p.x, by = b.y - p.y;
    const double cx = c.x - p.x, cy = c.y - p.y;
    const double a2 = ax * ax + ay * ay;
    const double b2 = bx * bx + by * by;
    const double c2 = cx * cx + cy * cy;
    return ax * (by * c2 - b2 * cy) - ay * (bx * c2 - b2 * cx) +
           a2 * (bx * cy - by * cx);
  }

  void build() {
    const int n = (int)pts_.size();
    double xmin = pts_[0].x, xmax = xmin, ymin = pts_[0].y, ymax = ymin;
    for (const auto& p : pts_) {
      xmin = std::min(xmin, p.x);
      xmax = std::max(xmax, p.x);
      ymin = std::min(ymin, p.y);
      ymax = std::max(ymax, p.y);
    }
    const double cx = 0.5 * (xmin + xmax), cy = 0.5 * (ymin + ymax);
    const double span = std::max({xmax - xmin, ymax - ymin, 1.0}) * 64.0;
    pts_.push_back(Vec2{cx - 2.0 * span, cy - span});
    pts_.push_back(Vec2{cx + 2.0 * span, cy - span});
    pts_.push_back(Vec2{cx, cy + 2.0 * span});
    tri_.push_back({n, n + 1, n + 2});
    adj_.push_back({-1, -1, -1});
    alive_.push_back(1);

    for (int i = 0; i < n; ++i) insert_point(i);
  }

  int locate(const Vec2& p) const {
    // walk from the most recent live triangle
    int t = last_alive_;
    if (t >= (int)tri_.size() || !alive_[t]) {
      t = -1;
      for (int i = (int)tri_.size() - 1; i >= 0; --i)
        if (alive_[i]) {
          t = i;
          break;
        }
    }
    for (int steps = 0; steps < (int)tri_.size() + 8; ++steps) {
      bool outside = false;
      int next = -1;
      for (int k = 0; k < 3; ++k) {
        const Vec2& a = pts_[tri_[t][(k + 1) % 3]];
        const Vec2& b = pts_[tri_[t][(k + 2) % 3]];
        if (signed_area2(a, b, p) < 0.0) {
          outside = true;
          next = adj_[t][k];
          break;
        }
      }
      if (!outside) return t;
      if (next < 0) break;  // walked off the hull
      t = next;
    }
    // fallback: exhaustive scan
    for (int i = 0; i < (int)tri_.size(); ++i)
      if (alive_[i] && inside(i, p)) return i;
    throw std::runtime_error("Delaunay: point location failed");
  }

  bool inside(int t, const Vec2& p) const {
    const double eps = -1e-12;
    for (int k = 0; k < 3; ++k) {
      const Vec2& a = pts_[tri_[t][(k + 1) % 3]];
      const Vec2& b = pts_[tri_[t][(k + 2) % 3]];
      if (signed_area2(a, b, p) < eps) return false;
    }
    return true;
  }

  void insert_point(int pi) {
    const Vec2& p = pts_[pi];
    const int seed = locate(p);

    // grow the cavity of circumcircle violations
    std::vector<int> bad;
    std::vector<char> in_bad(tri_.size(), 0);
    std::vector<int> stack{seed};
    in_bad[seed] = 1;
    while (!stack.empty()) {
      const int t = stack.back();
      stack.pop_back();
      bad.push_back(t);
      for (int k = 0; k < 3; ++k) {
        const int nb = adj_[t][k];
        if (nb < 0 || in_bad[nb]) continue;
        if (incircle(pts_[tri_[nb][0]], pts_[tri_[nb][1]], pts_[tri_[nb][2]],
                     p) > 0.0) {
          in_bad[nb] = 1;
          stack.push_back(nb);
        }
      }
    }

    // star-shape guard: drop cavity members whose boundary edge would form
    // a non-positive fan with p (roundoff on cocircular configurations)
    for (bool changed = true; changed;) {
      changed = false;
      for (int t : bad) {
        if (!in_bad[t]) continue;
        if (t == seed) continue;
        for (int k = 0; k < 3; ++k) {
          const int nb = adj_[t][k];
          if (nb >= 0 && in_bad[nb]) continue;
          const Vec2& a = pts_[tri_[t][(k + 1) % 3]];
          const Vec2& b = pts_[tri_[t][(k + 2) % 3]];
          if (signed_area2(a, b, p) <= 0.0) {
            in_bad[t] = 0;
            changed = true;
            break;
          }
        }
      }
    }

    // collect boundary edges (edge of bad triangle facing a good one)
    struct CavityEdge {
      int a, b, outside;
    };
    std::vector<CavityEdge> ring;
    for (int t : bad) {
      if (!in_bad[t]) continue;
      for (int k = 0; k < 3; ++k) {
        const int nb = adj_[t][k];
        if (nb >= 0 && in_bad[nb]) continue;
        ring.push_back({tri_[t][(k + 1) % 3], tri_[t][(k + 2) % 3], nb});
      }
    }
    for (int t : bad)
      if (in_bad[t]) alive_[t] = 0;

    // fan the ring to p
    std::vector<int> fresh;
    fresh.reserve(ring.size());
    for (const auto& e : ring) {
      tri_.push_back({pi, e.a, e.b});
      adj_.push_back({e.outside, -1, -1});
      alive_.push_back(1);
      const int nt = (int)tri_.size() - 1;
      if (e.outside >= 0) {
        // fix exactly the half-edge (b,a) of the outside triangle
        for (int k = 0; k < 3; ++k)
          if (tri_[e.outside][(k + 1) % 3] == e.b &&
              tri_[e.outside][(k + 2) % 3] == e.a)
            adj_[e.outside][k] = nt;
      }
      fresh.push_back(nt);
    }
    // stitch fan neighbors: new triangle (p, a, b): edge 1 = (b, p),
    // edge 2 = (p, a)
    for (int i : fresh)
      for (int j : fresh) {
        if (i == j) continue;
        if (tri_[i][2] == tri_[j][1]) adj_[i][1] = j;  // b_i == a_j
        if (tri_[i][1] == tri_[j][2]) adj_[i][2] = j;  // a_i == b_j
      }
    if (!fresh.empty()) last_alive_ = fresh.back();
  }

  // --- constrained segment insertion -------------------------------------

  static bool segments_cross(const Vec2& p1, const Vec2& p2, const Vec2& q1,
                             const Vec2& q2) {
    const double d1 = signed_area2(p1, p2, q1);
    const double d2 = signed_area2(p1, p2, q2);
    const double d3 = signed_area2(q1, q2, p1);
    const double d4 = signed_area2(q1, q2, p2);
    return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
  }

  void insert_segment(int a, int b) {
    // collect live triangles crossed by the open segment (a,b)
    std::vector<int> crossed;
    for (int t = 0; t < (int)tri_.size(); ++t) {
      if (!alive_[t]) continue;
      for (int k = 0; k < 3; ++k) {
        const int u = tri_[t][k], v = tri_[t][(k + 1) % 3];
        if (u == a || u == b || v == a || v == b) continue;
        if (segments_cross(pts_[a], pts_[b], pts_[u], pts_[v])) {
          crossed.push_back(t);
          break;
        }
      }
    }
    if (crossed.empty())
      throw std::runtime_error("Delaunay: segment recovery found no pipe");

    // polygon of the pipe boundary, split by the segment into two chains
    std::unordered_set<int> in_pipe(crossed.begin(), crossed.end());
    // gather boundary edges of the pipe
    std::vector<std::array<int, 2>> edges;
    for (int t : crossed)
      for (int k = 0; k < 3; ++k) {
        const int nb = adj_[t][k];
        if (nb >= 0 && in_pipe.count(nb)) continue;
        edges.push_back({tri_[t][(k + 1) % 3], tri_[t][(k + 2) % 3]});
      }
    // order edges into a loop
    std::vector<int> loop = chain_loop(edges);
    // split at a and b
    const auto ia = std::find(loop.begin(), loop.end(), a);
    const auto ib = std::find(loop.begin(), loop.end(), b);
    if (ia == loop.end() || ib == loop.end())
      throw std::runtime_error("Delaunay: pipe loop misses segment ends");
    std::vector<int> upper, lower;
    {
      size_t i = ia - loop.begin(), j = ib - loop.begin();
      for (size_t k = i;; k = (k + 1) % loop.size()) {
        upper.push_back(loop[k]);
        if (k == j) break;
      }
      for (size_t k = j;; k = (k + 1) % loop.size()) {
        lower.push_back(loop[k]);
        if (k == i) break;
      }
    }

    for (int t : crossed) alive_[t] = 0;
    std::vector<std::array<int, 3>> fill;
    triangulate_polygon(upper, fill);
    triangulate_polygon(lower, fill);
    for (const auto& tv : fill) {
      tri_.push_back(tv);
      adj_.push_back({-1, -1, -1});
      alive_.push_back(1);
    }
    rebuild_adjacency();
  }

  static std::vector<int> chain_loop(std::vector<std::array<int, 2>> edges) {
    std::vector<int> loop;
    if (edges.empty()) return loop;
    loop.push_back(edges[0][0]);
    loop.push_back(edges[0][1]);
    edges.erase(edges.begin());
    while (!edges.empty() && loop.front() != loop.back()) {
      bool found = false;
      for (size_t i = 0; i < edges.size(); ++i) {
        if (edges[i][0] == loop.back()) {
          loop.push_back(edges[i][1]);
          edges.erase(edges.begin() + i);
          found = true;
          break;
        }
        if (edges[i][1] == loop.back()) {
          loop.push_back(edges[i][0]);
          edges.erase(edges.begin() + i);
          found = true;
          break;
        }
      }
      if (!found) throw std::runtime_error("Delaunay: pipe boundary not a loop");
    }
    loop.pop_back();
    return loop;
  }

  // ear-style fill of a simple polygon chain (first..last fixed), preferring
  // the Delaunay vertex for each base edge
  void triangulate_polygon(const std::vector<int>& poly,
                           std::vector<std::array<int, 3>>& out) {
    if (poly.size() < 3) return;
    if (poly.size() == 3) {
      emit_ccw(poly[0], poly[1], poly[2], out);
      return;
    }
    const int a = poly.front(), b = poly.back();
    int best = -1;
    for (size_t i = 1; i + 1 < poly.size(); ++i) {
      if (best < 0) {
        best = (int)i;
        continue;
      }
      if (incircle_oriented(a, b, poly[best], poly[i]) > 0.0) best = (int)i;
    }
    emit_ccw(a, poly[best], b, out);
    std::vector<int> left(poly.begin(), poly.begin() + best + 1);
    std::vector<int> right(poly.begin() + best, poly.end());
    triangulate_polygon(left, out);
    triangulate_polygon(right, out);
  }

  double incircle_oriented(int a, int b, int c, int p) const {
    const double orient = signed_area2(pts_[a], pts_[b], pts_[c]);
    const double v = incircle(pts_[a], pts_[b], pts_[c], pts_[p]);
    return orient >= 0 ? v : -v;
  }

  void emit_ccw(int a, int b, int c, std::vector<std::array<int, 3>>& out) {
    if (signed_area2(pts_[a], pts_[b], pts_[c]) > 0.0)
      out.push_back({a, b, c});
    else
      out.push_back({a, c, b});
  }

  void rebuild_adjacency() {
    struct PairHash {
      size_t operator()(const std::pair<int, int>& p) const {
        return std::hash<int64_t>()(((int64_t)p.first << 32) ^ p.second);
      }
    };
    std::unordered_map<std::pair<int, int>, int, PairHash> half;
    for (int t = 0; t < (int)tri_.size(); ++t) {
      if (!alive_[t]) continue;
      adj_[t] = {-1, -1, -1};
    }
    for (int t = 0; t < (int)tri_.size(); ++t) {
      if (!alive_[t]) continue;
      for (int k = 0; k < 3; ++k) {
        const int u = tri_[t][(k + 1) % 3], v = tri_[t][(k + 2) % 3];
        const auto it = half.find({v, u});
        if (it != half.end()) {
          const int s = it->second;
          adj_[t][k] = s / 4;
          adj_[s / 4][s % 4] = t;
        } else {
          half[{u, v}] = 4 * t + k;
        }
      }
    }
  }
};

}  // namespace fbtopo
