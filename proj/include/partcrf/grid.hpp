#pragma once

#include <Eigen/Core>

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace partcrf {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;
using ColorMatrix = Eigen::Matrix<double, Eigen::Dynamic, 3>;

/// Thrown by normalize_rows when a row has no probability mass left.
class DegenerateRowError : public std::runtime_error {
 public:
  DegenerateRowError(Index pixel, const std::string& what)
      : std::runtime_error(what), pixel_(pixel) {}
  Index pixel() const { return pixel_; }

 private:
  Index pixel_;
};

// Dense label ids 0..count()-1, each with a unique display name.
class LabelSet {
 public:
  explicit LabelSet(std::vector<std::string> names);
  static LabelSet numbered(int count);  // names "0", "1", ...

  int count() const { return static_cast<int>(names_.size()); }
  const std::string& name(int id) const { return names_.at(static_cast<std::size_t>(id)); }
  const std::vector<std::string>& names() const { return names_; }
  int id(const std::string& name) const;  // -1 when unknown
  bool contains(int id) const { return id >= 0 && id < count(); }

 private:
  std::vector<std::string> names_;
};

// Rectangular pixel lattice. Flat pixel indices are row-major; cliques and
// all file formats reference these flat indices.
struct GridShape {
  int width = 0;
  int height = 0;

  Index size() const { return static_cast<Index>(width) * height; }
  Index index(int row, int col) const { return static_cast<Index>(row) * width + col; }
  int row(Index i) const { return static_cast<int>(i / width); }
  int col(Index i) const { return static_cast<int>(i % width); }
  bool contains(int row, int col) const {
    return row >= 0 && row < height && col >= 0 && col < width;
  }
  bool operator==(const GridShape&) const = default;
};

// RGB image on a grid; colors are N x 3 in [0, 255].
struct ImageGrid {
  GridShape shape;
  ColorMatrix colors;

  Index pixels() const { return colors.rows(); }
};

ImageGrid uniform_image(GridShape shape, double r, double g, double b);

// N x L energies from an upstream scorer (lower = better).
struct UnaryField {
  Matrix values;

  Index pixels() const { return values.rows(); }
  int labels() const { return static_cast<int>(values.cols()); }
};

// Factorized per-pixel categorical marginals; every row sums to 1.
struct MarginalField {
  Matrix q;

  Index pixels() const { return q.rows(); }
  int labels() const { return static_cast<int>(q.cols()); }
};

// Hard per-pixel labeling.
struct LabelMap {
  Eigen::VectorXi labels;

  Index pixels() const { return labels.size(); }
};

// Row-wise argmax; ties break toward the smaller column index so outputs are
// reproducible.
template <class Derived>
Eigen::VectorXi argmax_rows(const Eigen::MatrixBase<Derived>& m) {
  Eigen::VectorXi out(m.rows());
  for (Index i = 0; i < m.rows(); ++i) {
    Index best = 0;
    for (Index j = 1; j < m.cols(); ++j)
      if (m(i, j) > m(i, best)) best = j;
    out[i] = static_cast<int>(best);
  }
  return out;
}

LabelMap argmax_labeling(const MarginalField& q);

// Divides each row by its sum. A row whose sum is zero or non-finite raises
// DegenerateRowError carrying the pixel index.
MarginalField normalize_rows(const Matrix& raw);

// Row-wise softmax of the negated energies, computed in log space with a
// per-row max shift so large energies cannot overflow.
MarginalField exp_normalize(const Matrix& neg_energy);

double max_row_sum_error(const MarginalField& q);

}  // namespace partcrf
