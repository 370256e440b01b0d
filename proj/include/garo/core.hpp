#ifndef GARO_CORE_HPP
#define GARO_CORE_HPP

#include <Eigen/Dense>
#include <limits>

namespace garo {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Repo-wide numerical tolerances. Downstream tests quote these values.
inline constexpr double kTolFeas = 1e-8;
inline constexpr double kTolObj = 1e-7;
inline constexpr double kBreakpointMergeTol = 1e-9;

} // namespace garo

#endif
