#pragma once

#include <vector>

#include "partcrf/grid.hpp"

namespace partcrf {

// Partition of the grid into connected superpixels with dense ids 0..count-1.
struct SuperpixelMap {
  GridShape shape;
  Eigen::VectorXi assignment;                      // N, superpixel id per pixel
  int count = 0;                                   // S
  Eigen::Matrix<double, Eigen::Dynamic, 2> centroids;  // S x (row, col)
  Eigen::VectorXi sizes;                           // S

  std::vector<std::vector<Index>> member_lists() const;
};

// Member pixels of one superpixel that touch the outside (a 4-neighbour in
// another superpixel, or the image border). Pixel indices are ascending.
struct BoundaryClique {
  int superpixel_id = -1;
  std::vector<Index> pixels;
};

// Validates the partition invariants (dense ids, non-empty, 4-connected) and
// fills in centroids and sizes.
SuperpixelMap make_superpixel_map(GridShape shape, Eigen::VectorXi assignment);

// SLIC-style k-means over (color, scaled position) with seeds on a regular
// grid, followed by a connectivity-enforcement pass. No RNG anywhere, so the
// result is reproducible bit-for-bit.
SuperpixelMap generate_superpixels(const ImageGrid& image, int target_count,
                                   double compactness);

BoundaryClique boundary_clique(const SuperpixelMap& sp, int id);
std::vector<BoundaryClique> all_boundary_cliques(const SuperpixelMap& sp);

double centroid_distance(const SuperpixelMap& sp, int a, int b);

// Mean over superpixels of the horizontal extent (max col - min col + 1).
// This is the centroid-distance gate d used for attachment cliques.
double attachment_threshold(const SuperpixelMap& sp);

// Mode of the member pixels' labels; ties break toward the smaller label id.
int majority_label(const std::vector<Index>& members, const LabelMap& labels,
                   int label_count);
Eigen::VectorXi majority_labels(const SuperpixelMap& sp, const LabelMap& labels,
                                int label_count);

bool is_connected_region(const GridShape& shape, const Eigen::VectorXi& assignment,
                         int id);

}  // namespace partcrf
