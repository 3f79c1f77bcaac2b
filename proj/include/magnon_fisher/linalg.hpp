#pragma once

#include <Eigen/Dense>

namespace magnon {

using Mat2 = Eigen::Matrix2d;
using Vec2 = Eigen::Vector2d;
using Mat6 = Eigen::Matrix<double, 6, 6>;
using Vec6 = Eigen::Matrix<double, 6, 1>;

/// The three bosonic modes, in quadrature order (Q_a1, P_a1, Q_a2, P_a2, Q_m, P_m).
enum class Mode { a1 = 0, a2 = 1, m = 2 };

inline int quadrature_offset(Mode mode) { return 2 * static_cast<int>(mode); }

}  // namespace magnon
