#include "partcrf/superpixels.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>

namespace partcrf {
namespace {

constexpr int kNeighborRow[4] = {-1, 1, 0, 0};
constexpr int kNeighborCol[4] = {0, 0, -1, 1};
constexpr int kSlicIterations = 10;

}  // namespace

std::vector<std::vector<Index>> SuperpixelMap::member_lists() const {
  std::vector<std::vector<Index>> lists(static_cast<std::size_t>(count));
  for (int s = 0; s < count; ++s)
    lists[static_cast<std::size_t>(s)].reserve(static_cast<std::size_t>(sizes[s]));
  for (Index i = 0; i < assignment.size(); ++i)
    lists[static_cast<std::size_t>(assignment[i])].push_back(i);
  return lists;
}

bool is_connected_region(const GridShape& shape, const Eigen::VectorXi& assignment,
                         int id) {
  Index start = -1;
  Index total = 0;
  for (Index i = 0; i < assignment.size(); ++i) {
    if (assignment[i] == id) {
      if (start < 0) start = i;
      ++total;
    }
  }
  if (total == 0) return false;

  std::vector<char> seen(static_cast<std::size_t>(assignment.size()), 0);
  std::deque<Index> queue{start};
  seen[static_cast<std::size_t>(start)] = 1;
  Index reached = 0;
  while (!queue.empty()) {
    const Index i = queue.front();
    queue.pop_front();
    ++reached;
    const int r = shape.row(i), c = shape.col(i);
    for (int k = 0; k < 4; ++k) {
      const int nr = r + kNeighborRow[k], nc = c + kNeighborCol[k];
      if (!shape.contains(nr, nc)) continue;
      const Index j = shape.index(nr, nc);
      if (!seen[static_cast<std::size_t>(j)] && assignment[j] == id) {
        seen[static_cast<std::size_t>(j)] = 1;
        queue.push_back(j);
      }
    }
  }
  return reached == total;
}

SuperpixelMap make_superpixel_map(GridShape shape, Eigen::VectorXi assignment) {
  if (assignment.size() != shape.size())
    throw std::invalid_argument("make_superpixel_map: assignment length != grid size");
  if (shape.size() < 1) throw std::invalid_argument("make_superpixel_map: empty grid");

  const int count = assignment.maxCoeff() + 1;
  if (assignment.minCoeff() < 0)
    throw std::invalid_argument("make_superpixel_map: negative superpixel id");

  SuperpixelMap sp;
  sp.shape = shape;
  sp.count = count;
  sp.sizes = Eigen::VectorXi::Zero(count);
  sp.centroids.setZero(count, 2);
  for (Index i = 0; i < assignment.size(); ++i) {
    const int s = assignment[i];
    sp.sizes[s] += 1;
    sp.centroids(s, 0) += shape.row(i);
    sp.centroids(s, 1) += shape.col(i);
  }
  for (int s = 0; s < count; ++s) {
    if (sp.sizes[s] == 0)
      throw std::invalid_argument("make_superpixel_map: superpixel id " +
                                  std::to_string(s) + " is empty (ids must be dense)");
    sp.centroids.row(s) /= sp.sizes[s];
  }
  for (int s = 0; s < count; ++s) {
    if (!is_connected_region(shape, assignment, s))
      throw std::invalid_argument("make_superpixel_map: superpixel id " +
                                  std::to_string(s) + " is not 4-connected");
  }
  sp.assignment = std::move(assignment);
  return sp;
}

namespace {

struct SlicCenter {
  double row = 0, col = 0;
  Eigen::Vector3d color = Eigen::Vector3d::Zero();
};

// Connected components of equal-assignment regions, discovery-ordered by
// row-major scan. Returns per-pixel component id; fills sizes and the cluster
// id each component came from.
Eigen::VectorXi label_components(const GridShape& shape,
                                 const Eigen::VectorXi& assignment,
                                 std::vector<Index>& comp_size,
                                 std::vector<int>& comp_cluster) {
  const Index n = shape.size();
  Eigen::VectorXi comp = Eigen::VectorXi::Constant(n, -1);
  comp_size.clear();
  comp_cluster.clear();
  for (Index i = 0; i < n; ++i) {
    if (comp[i] >= 0) continue;
    const int id = static_cast<int>(comp_size.size());
    comp_size.push_back(0);
    comp_cluster.push_back(assignment[i]);
    std::deque<Index> queue{i};
    comp[i] = id;
    while (!queue.empty()) {
      const Index p = queue.front();
      queue.pop_front();
      ++comp_size[static_cast<std::size_t>(id)];
      const int r = shape.row(p), c = shape.col(p);
      for (int k = 0; k < 4; ++k) {
        const int nr = r + kNeighborRow[k], nc = c + kNeighborCol[k];
        if (!shape.contains(nr, nc)) continue;
        const Index q = shape.index(nr, nc);
        if (comp[q] < 0 && assignment[q] == assignment[p]) {
          comp[q] = id;
          queue.push_back(q);
        }
      }
    }
  }
  return comp;
}

int find_root(std::vector<int>& parent, int x) {
  while (parent[static_cast<std::size_t>(x)] != x) {
    parent[static_cast<std::size_t>(x)] =
        parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    x = parent[static_cast<std::size_t>(x)];
  }
  return x;
}

}  // namespace

SuperpixelMap generate_superpixels(const ImageGrid& image, int target_count,
                                   double compactness) {
  const GridShape shape = image.shape;
  const Index n = shape.size();
  if (n < 1) throw std::invalid_argument("generate_superpixels: empty image");
  if (target_count < 1)
    throw std::invalid_argument("generate_superpixels: target_count must be >= 1");
  if (target_count > n)
    throw std::invalid_argument("generate_superpixels: target_count " +
                                std::to_string(target_count) + " exceeds pixel count " +
                                std::to_string(n));
  if (!(compactness > 0))
    throw std::invalid_argument("generate_superpixels: compactness must be > 0");

  const double step = std::sqrt(static_cast<double>(n) / target_count);
  const int nx = std::clamp(static_cast<int>(std::lround(shape.width / step)), 1,
                            shape.width);
  const int ny = std::clamp(static_cast<int>(std::lround(shape.height / step)), 1,
                            shape.height);

  // Seeds on a regular grid; pixel coordinates run 0..W-1 so the seed lattice
  // is shifted by half a pixel to stay centred.
  std::vector<SlicCenter> centers(static_cast<std::size_t>(nx) * ny);
  for (int r = 0; r < ny; ++r) {
    for (int c = 0; c < nx; ++c) {
      SlicCenter& ctr = centers[static_cast<std::size_t>(r) * nx + c];
      ctr.row = (r + 0.5) * shape.height / ny - 0.5;
      ctr.col = (c + 0.5) * shape.width / nx - 0.5;
      const int pr = std::clamp(static_cast<int>(std::lround(ctr.row)), 0, shape.height - 1);
      const int pc = std::clamp(static_cast<int>(std::lround(ctr.col)), 0, shape.width - 1);
      ctr.color = image.colors.row(shape.index(pr, pc)).transpose();
    }
  }

  const double spatial_scale = compactness / step;
  const int window_r = std::max(1, static_cast<int>(std::ceil(static_cast<double>(shape.height) / ny)));
  const int window_c = std::max(1, static_cast<int>(std::ceil(static_cast<double>(shape.width) / nx)));

  Eigen::VectorXi assignment = Eigen::VectorXi::Constant(n, -1);
  Vector best_dist(n);

  for (int iter = 0; iter < kSlicIterations; ++iter) {
    best_dist.setConstant(std::numeric_limits<double>::infinity());
    Eigen::VectorXi previous = assignment;
    assignment.setConstant(-1);

    for (std::size_t s = 0; s < centers.size(); ++s) {
      const SlicCenter& ctr = centers[s];
      const int r0 = std::max(0, static_cast<int>(std::floor(ctr.row)) - window_r);
      const int r1 = std::min(shape.height - 1, static_cast<int>(std::ceil(ctr.row)) + window_r);
      const int c0 = std::max(0, static_cast<int>(std::floor(ctr.col)) - window_c);
      const int c1 = std::min(shape.width - 1, static_cast<int>(std::ceil(ctr.col)) + window_c);
      for (int r = r0; r <= r1; ++r) {
        for (int c = c0; c <= c1; ++c) {
          const Index i = shape.index(r, c);
          const double color_sq =
              (image.colors.row(i).transpose() - ctr.color).squaredNorm();
          const double spatial_sq =
              (r - ctr.row) * (r - ctr.row) + (c - ctr.col) * (c - ctr.col);
          const double d = color_sq + spatial_scale * spatial_scale * spatial_sq;
          // Strict < keeps the smallest center id on ties.
          if (d < best_dist[i]) {
            best_dist[i] = d;
            assignment[i] = static_cast<int>(s);
          }
        }
      }
    }

    // Pixels outside every search window fall back to a full scan.
    for (Index i = 0; i < n; ++i) {
      if (assignment[i] >= 0) continue;
      const int r = shape.row(i), c = shape.col(i);
      for (std::size_t s = 0; s < centers.size(); ++s) {
        const SlicCenter& ctr = centers[s];
        const double color_sq =
            (image.colors.row(i).transpose() - ctr.color).squaredNorm();
        const double spatial_sq =
            (r - ctr.row) * (r - ctr.row) + (c - ctr.col) * (c - ctr.col);
        const double d = color_sq + spatial_scale * spatial_scale * spatial_sq;
        if (d < best_dist[i]) {
          best_dist[i] = d;
          assignment[i] = static_cast<int>(s);
        }
      }
    }

    if (iter > 0 && (assignment.array() == previous.array()).all()) break;

    // Recenter; empty clusters keep their previous seed.
    std::vector<SlicCenter> next(centers.size());
    std::vector<Index> cluster_size(centers.size(), 0);
    for (Index i = 0; i < n; ++i) {
      const auto s = static_cast<std::size_t>(assignment[i]);
      next[s].row += shape.row(i);
      next[s].col += shape.col(i);
      next[s].color += image.colors.row(i).transpose();
      ++cluster_size[s];
    }
    for (std::size_t s = 0; s < centers.size(); ++s) {
      if (cluster_size[s] == 0) continue;
      next[s].row /= static_cast<double>(cluster_size[s]);
      next[s].col /= static_cast<double>(cluster_size[s]);
      next[s].color /= static_cast<double>(cluster_size[s]);
      centers[s] = next[s];
    }
  }

  // Connectivity enforcement: keep the largest component of every cluster,
  // merge each remaining fragment into an adjacent component.
  std::vector<Index> comp_size;
  std::vector<int> comp_cluster;
  Eigen::VectorXi comp = label_components(shape, assignment, comp_size, comp_cluster);
  const int num_comps = static_cast<int>(comp_size.size());

  std::vector<int> largest_of_cluster(centers.size(), -1);
  for (int k = 0; k < num_comps; ++k) {
    const auto cl = static_cast<std::size_t>(comp_cluster[static_cast<std::size_t>(k)]);
    const int cur = largest_of_cluster[cl];
    if (cur < 0 || comp_size[static_cast<std::size_t>(k)] > comp_size[static_cast<std::size_t>(cur)])
      largest_of_cluster[cl] = k;
  }

  std::vector<int> parent(static_cast<std::size_t>(num_comps));
  std::iota(parent.begin(), parent.end(), 0);
  for (int k = 0; k < num_comps; ++k) {
    if (largest_of_cluster[static_cast<std::size_t>(comp_cluster[static_cast<std::size_t>(k)])] == k)
      continue;  // core component survives as-is
    // Merge into the adjacent component with the smallest id.
    int target = -1;
    for (Index i = 0; i < n && target < 0; ++i) {
      if (comp[i] != k) continue;
      const int r = shape.row(i), c = shape.col(i);
      for (int q = 0; q < 4; ++q) {
        const int nr = r + kNeighborRow[q], nc = c + kNeighborCol[q];
        if (!shape.contains(nr, nc)) continue;
        const int other = comp[shape.index(nr, nc)];
        if (other != k && (target < 0 || other < target)) target = other;
      }
    }
    if (target >= 0 && find_root(parent, target) != find_root(parent, k))
      parent[static_cast<std::size_t>(find_root(parent, k))] = find_root(parent, target);
  }

  // Relabel roots densely in row-major first-occurrence order.
  std::vector<int> dense(static_cast<std::size_t>(num_comps), -1);
  int next_id = 0;
  Eigen::VectorXi final_assignment(n);
  for (Index i = 0; i < n; ++i) {
    const int root = find_root(parent, comp[i]);
    if (dense[static_cast<std::size_t>(root)] < 0) dense[static_cast<std::size_t>(root)] = next_id++;
    final_assignment[i] = dense[static_cast<std::size_t>(root)];
  }

  return make_superpixel_map(shape, std::move(final_assignment));
}

BoundaryClique boundary_clique(const SuperpixelMap& sp, int id) {
  if (id < 0 || id >= sp.count)
    throw std::invalid_argument("boundary_clique: invalid superpixel id " +
                                std::to_string(id));
  BoundaryClique clique;
  clique.superpixel_id = id;
  const GridShape& shape = sp.shape;
  for (Index i = 0; i < sp.assignment.size(); ++i) {
    if (sp.assignment[i] != id) continue;
    const int r = shape.row(i), c = shape.col(i);
    bool boundary = false;
    for (int k = 0; k < 4 && !boundary; ++k) {
      const int nr = r + kNeighborRow[k], nc = c + kNeighborCol[k];
      // The image border counts as outside.
      if (!shape.contains(nr, nc) || sp.assignment[shape.index(nr, nc)] != id)
        boundary = true;
    }
    if (boundary) clique.pixels.push_back(i);
  }
  return clique;
}

std::vector<BoundaryClique> all_boundary_cliques(const SuperpixelMap& sp) {
  std::vector<BoundaryClique> cliques;
  cliques.reserve(static_cast<std::size_t>(sp.count));
  for (int s = 0; s < sp.count; ++s) cliques.push_back(boundary_clique(sp, s));
  return cliques;
}

double centroid_distance(const SuperpixelMap& sp, int a, int b) {
  if (a < 0 || a >= sp.count || b < 0 || b >= sp.count)
    throw std::invalid_argument("centroid_distance: invalid superpixel id");
  return (sp.centroids.row(a) - sp.centroids.row(b)).norm();
}

double attachment_threshold(const SuperpixelMap& sp) {
  Eigen::VectorXi min_col = Eigen::VectorXi::Constant(sp.count, std::numeric_limits<int>::max());
  Eigen::VectorXi max_col = Eigen::VectorXi::Constant(sp.count, -1);
  for (Index i = 0; i < sp.assignment.size(); ++i) {
    const int s = sp.assignment[i];
    const int c = sp.shape.col(i);
    min_col[s] = std::min(min_col[s], c);
    max_col[s] = std::max(max_col[s], c);
  }
  double total = 0;
  for (int s = 0; s < sp.count; ++s) total += max_col[s] - min_col[s] + 1;
  return total / sp.count;
}

int majority_label(const std::vector<Index>& members, const LabelMap& labels,
                   int label_count) {
  Eigen::VectorXi counts = Eigen::VectorXi::Zero(label_count);
  for (const Index i : members) counts[labels.labels[i]] += 1;
  int best = 0;
  for (int l = 1; l < label_count; ++l)
    if (counts[l] > counts[best]) best = l;  // ties keep the smaller id
  return best;
}

Eigen::VectorXi majority_labels(const SuperpixelMap& sp, const LabelMap& labels,
                                int label_count) {
  Eigen::MatrixXi counts = Eigen::MatrixXi::Zero(sp.count, label_count);
  for (Index i = 0; i < sp.assignment.size(); ++i)
    counts(sp.assignment[i], labels.labels[i]) += 1;
  Eigen::VectorXi out(sp.count);
  for (int s = 0; s < sp.count; ++s) {
    int best = 0;
    for (int l = 1; l < label_count; ++l)
      if (counts(s, l) > counts(s, best)) best = l;
    out[s] = best;
  }
  return out;
}

}  // namespace partcrf
