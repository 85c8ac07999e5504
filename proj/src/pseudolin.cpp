#include "harmfield/pseudolin.hpp"

#include <algorithm>
#include <cmath>

namespace harmfield {

Eigen::MatrixXd Frame::matrix() const {
  if (vectors.empty()) return {};
  Eigen::MatrixXd m(vectors.front().size(), size());
  for (int i = 0; i < size(); ++i) m.col(i) = vectors[i];
  return m;
}

double frame_residual(const Frame& frame, const Signature& s) {
  double worst = 0.0;
  for (int i = 0; i < frame.size(); ++i)
    for (int j = 0; j < frame.size(); ++j) {
      const double target = i == j ? frame.indicators[i] : 0.0;
      worst = std::max(worst, std::abs(inner(frame.vectors[i], frame.vectors[j], s) - target));
    }
  return worst;
}

Frame orthonormalize(const std::vector<Eigen::VectorXd>& basis, const Signature& s,
                     std::optional<int> rank, double null_threshold) {
  for (const auto& v : basis)
    if (v.size() != s.size()) throw DimensionMismatch("orthonormalize: vector length mismatch");

  const int wanted = rank.value_or(static_cast<int>(basis.size()));
  if (wanted > static_cast<int>(basis.size()))
    throw PreconditionError("orthonormalize: rank exceeds number of input vectors");

  std::vector<Eigen::VectorXd> pending = basis;
  Frame frame;
  while (frame.size() < wanted) {
    // Project every pending vector off the frame built so far.
    for (auto& v : pending)
      for (int k = 0; k < frame.size(); ++k)
        v -= frame.indicators[k] * inner(v, frame.vectors[k], s) * frame.vectors[k];

    auto best = pending.end();
    double best_q = 0.0;
    for (auto it = pending.begin(); it != pending.end(); ++it) {
      const double q = std::abs(quadratic_form(*it, s));
      if (q > best_q) {
        best_q = q;
        best = it;
      }
    }
    if (best == pending.end() || best_q < null_threshold)
      throw NullPivot("orthonormalize: remaining vectors span a degenerate subspace");

    const double q = quadratic_form(*best, s);
    frame.indicators.push_back(q > 0 ? 1 : -1);
    frame.vectors.push_back(*best / std::sqrt(std::abs(q)));
    pending.erase(best);
  }
  return frame;
}

}  // namespace harmfield
