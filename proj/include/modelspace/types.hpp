#pragma once

#include <complex>

#include <Eigen/Dense>

namespace modelspace {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

}  // namespace modelspace
