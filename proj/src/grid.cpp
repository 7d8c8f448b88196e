#include "partcrf/grid.hpp"

#include <set>

namespace partcrf {

LabelSet::LabelSet(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.empty()) throw std::invalid_argument("LabelSet: needs at least one label");
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (n.empty()) throw std::invalid_argument("LabelSet: empty label name");
    if (!seen.insert(n).second)
      throw std::invalid_argument("LabelSet: duplicate label name '" + n + "'");
  }
}

LabelSet LabelSet::numbered(int count) {
  if (count < 1) throw std::invalid_argument("LabelSet: count must be >= 1");
  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) names.push_back(std::to_string(i));
  return LabelSet(std::move(names));
}

int LabelSet::id(const std::string& name) const {
  for (int i = 0; i < count(); ++i)
    if (names_[static_cast<std::size_t>(i)] == name) return i;
  return -1;
}

ImageGrid uniform_image(GridShape shape, double r, double g, double b) {
  ImageGrid img;
  img.shape = shape;
  img.colors.resize(shape.size(), 3);
  img.colors.col(0).setConstant(r);
  img.colors.col(1).setConstant(g);
  img.colors.col(2).setConstant(b);
  return img;
}

LabelMap argmax_labeling(const MarginalField& q) { return LabelMap{argmax_rows(q.q)}; }

MarginalField normalize_rows(const Matrix& raw) {
  MarginalField out;
  out.q.resize(raw.rows(), raw.cols());
  for (Index i = 0; i < raw.rows(); ++i) {
    const double sum = raw.row(i).sum();
    if (!(sum > 0.0) || !std::isfinite(sum))
      throw DegenerateRowError(
          i, "normalize_rows: degenerate row at pixel " + std::to_string(i) +
                 " (row sum " + std::to_string(sum) + ")");
    out.q.row(i) = raw.row(i) / sum;
  }
  return out;
}

MarginalField exp_normalize(const Matrix& neg_energy) {
  Matrix shifted = neg_energy.colwise() - neg_energy.rowwise().maxCoeff();
  return normalize_rows(shifted.array().exp().matrix());
}

double max_row_sum_error(const MarginalField& q) {
  return (q.q.rowwise().sum().array() - 1.0).abs().maxCoeff();
}

}  // namespace partcrf
