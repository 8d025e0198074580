#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "fbtopo/vec2.hpp"

namespace fbtopo {

// Quadtree over axis-aligned disks (the RBF knot supports). Each disk is
// registered in every leaf whose box it intersects, so the leaf containing a
// query point holds a superset of all disks covering that point.
class Quadtree {
 public:
  Quadtree() = default;

  Quadtree(double xmin, double ymin, double xmax, double ymax,
           int leaf_capacity = 8, int max_depth = 12)
      : leaf_capacity_(leaf_capacity), max_depth_(max_depth) {
    nodes_.push_back(Node{xmin, ymin, xmax, ymax, {}, -1, 0});
  }

  void insert(int id, const Vec2& center, double radius) {
    insert_rec(0, id, center, radius);
  }

  // Indices stored in the leaf containing p (sorted); empty if p lies
  // outside the root box.
  std::vector<int> query(const Vec2& p) const {
    if (nodes_.empty()) return {};
    const Node* node = &nodes_[0];
    if (p.x < node->xmin || p.x > node->xmax || p.y < node->ymin ||
        p.y > node->ymax)
      return {};
    while (node->child >= 0) {
      const double mx = 0.5 * (node->xmin + node->xmax);
      const double my = 0.5 * (node->ymin + node->ymax);
      const int q = (p.x >= mx ? 1 : 0) | (p.y >= my ? 2 : 0);
      node = &nodes_[node->child + q];
    }
    std::vector<int> out = node->items;
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  struct Node {
    double xmin, ymin, xmax, ymax;
    std::vector<int> items;
    int child;  // index of first of four children, -1 for leaf
    int depth;
  };

  static bool box_intersects_disk(const Node& n, const Vec2& c, double r) {
    const double dx = c.x - std::clamp(c.x, n.xmin, n.xmax);
    const double dy = c.y - std::clamp(c.y, n.ymin, n.ymax);
    return dx * dx + dy * dy <= r * r;
  }

  void insert_rec(int ni, int id, const Vec2& c, double r) {
    if (!box_intersects_disk(nodes_[ni], c, r)) return;
    if (nodes_[ni].child < 0) {
      nodes_[ni].items.push_back(id);
      if ((int)nodes_[ni].items.size() > leaf_capacity_ &&
          nodes_[ni].depth < max_depth_)
        split(ni);
      return;
    }
    for (int q = 0; q < 4; ++q) insert_rec(nodes_[ni].child + q, id, c, r);
  }

  void split(int ni) {
    const int child = (int)nodes_.size();
    const Node n = nodes_[ni];  // copy: nodes_ reallocates below
    const double mx = 0.5 * (n.xmin + n.xmax);
    const double my = 0.5 * (n.ymin + n.ymax);
    nodes_.push_back(Node{n.xmin, n.ymin, mx, my, {}, -1, n.depth + 1});
    nodes_.push_back(Node{mx, n.ymin, n.xmax, my, {}, -1, n.depth + 1});
    nodes_.push_back(Node{n.xmin, my, mx, n.ymax, {}, -1, n.depth + 1});
    nodes_.push_back(Node{mx, my, n.xmax, n.ymax, {}, -1, n.depth + 1});
    nodes_[ni].child = child;
    nodes_[ni].items.clear();
    for (int id : n.items) {
      // re-register in children; radius lookup deferred to caller via
      // stored geometry
      for (int q = 0; q < 4; ++q)
        if (box_intersects_disk(nodes_[child + q], disk_center_[id],
                                disk_radius_[id]))
          nodes_[child + q].items.push_back(id);
    }
  }

 public:
  // Registration API: remembers geometry so splits can redistribute.
  void add_disk(int id, const Vec2& center, double radius) {
    if ((int)disk_center_.size() <= id) {
      disk_center_.resize(id + 1);
      disk_radius_.resize(id + 1, 0.0);
    }
    disk_center_[id] = center;
    disk_radius_[id] = radius;
    insert(id, center, radius);
  }

 private:
  std::vector<Node> nodes_;
  std::vector<Vec2> disk_center_;
  std::vector<double> disk_radius_;
  int leaf_capacity_ = 8;
  int max_depth_ = 12;
};

}  // namespace fbtopo
