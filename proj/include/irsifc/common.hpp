// irsifc - beamforming and rate-region toolkit for IRS-aided MISO interference channels
// Copyright (C) 2026 the irsifc authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace irsifc {

using cplx = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;
using Vec2 = Eigen::Vector2d;

inline constexpr double kAlgebraTol = 1e-12;     // exact-identity checks
inline constexpr double kConstraintTol = 1e-6;   // profile/constraint slack
inline constexpr double kPi = 3.141592653589793238462643383279502884;

inline constexpr const char* kVersion = "0.1.0";

/// Thrown on malformed inputs (bad dimensions, invalid geometry, bad files).
struct InvalidInput : std::runtime_error {
    explicit InvalidInput(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when a file cannot be opened, read, written or parsed.
struct IoError : InvalidInput {
    explicit IoError(const std::string& what) : InvalidInput(what) {}
};

/// Thrown when an operation hits a degenerate instance (e.g. zero effective channel).
struct DegenerateInstance : std::runtime_error {
    explicit DegenerateInstance(const std::string& what) : std::runtime_error(what) {}
};

// log2(2^x - 1) helpers. exp2m1 keeps precision for small exponents.
inline double exp2m1(double x) { return std::expm1(x * 0.6931471805599453094172321214581766); }

}  // namespace irsifc
