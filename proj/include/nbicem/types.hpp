#pragma once

#include <Eigen/Dense>
#include <complex>
#include <random>

namespace nbicem {

using cxd = std::complex<double>;
using VecXc = Eigen::VectorXcd;
using MatXc = Eigen::MatrixXcd;
using VecXd = Eigen::VectorXd;

// All stochastic operations take an explicit engine; nothing in the library
// owns hidden random state.
using Rng = std::mt19937_64;

}  // namespace nbicem
