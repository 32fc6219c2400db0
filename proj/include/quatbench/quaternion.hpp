// Copyright 2026 The quatbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Quaternion algebra and conversion to rotation matrices.
//
// Components are stored as (w, x, y, z) with w the scalar part, following the
// Hamilton convention i^2 = j^2 = k^2 = ijk = -1. All functions are pure and
// templated on the scalar type; the rest of the library uses double.

#pragma once

#include <cmath>
#include <concepts>

#include <Eigen/Core>

#include "quatbench/error.hpp"

namespace quatbench {

template <std::floating_point Scalar>
using Vector3 = Eigen::Matrix<Scalar, 3, 1>;

template <std::floating_point Scalar>
using RotationMatrix3 = Eigen::Matrix<Scalar, 3, 3, Eigen::RowMajor>;

using Vector3d = Vector3<double>;
using RotationMatrix3d = RotationMatrix3<double>;

// Tolerances used by the algebra and conversion invariants.
inline constexpr double kAlgebraTolerance = 1e-12;
inline constexpr double kConversionTolerance = 1e-9;

template <std::floating_point Scalar>
struct Quaternion {
  Scalar w{0};
  Scalar x{0};
  Scalar y{0};
  Scalar z{0};

  static constexpr Quaternion identity() { return {Scalar(1), Scalar(0), Scalar(0), Scalar(0)}; }

  // Pure quaternion (0, v).
  static Quaternion pure(const Vector3<Scalar>& v) { return {Scalar(0), v.x(), v.y(), v.z()}; }

  Vector3<Scalar> vec() const { return {x, y, z}; }

  Eigen::Matrix<Scalar, 4, 1> coeffs() const { return {w, x, y, z}; }

  bool is_finite() const {
    return std::isfinite(w) && std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
  }

  friend constexpr bool operator==(const Quaternion&, const Quaternion&) = default;
};

using Quaterniond = Quaternion<double>;

template <std::floating_point Scalar>
constexpr Quaternion<Scalar> add(const Quaternion<Scalar>& p, const Quaternion<Scalar>& q) {
  return {p.w + q.w, p.x + q.x, p.y + q.y, p.z + q.z};
}

template <std::floating_point Scalar>
constexpr Quaternion<Scalar> scale(Scalar a, const Quaternion<Scalar>& q) {
  return {a * q.w, a * q.x, a * q.y, a * q.z};
}

// Hamilton product. Not commutative: i*j = k but j*i = -k.
template <std::floating_point Scalar>
constexpr Quaternion<Scalar> hamilton_product(const Quaternion<Scalar>& p,
                                              const Quaternion<Scalar>& q) {
  return {
      p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
      p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
      p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
      p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w,
  };
}

template <std::floating_point Scalar>
constexpr Quaternion<Scalar> conjugate(const Quaternion<Scalar>& q) {
  return {q.w, -q.x, -q.y, -q.z};
}

template <std::floating_point Scalar>
Scalar squared_norm(const Quaternion<Scalar>& q) {
  return q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z;
}

template <std::floating_point Scalar>
Scalar norm(const Quaternion<Scalar>& q) {
  return std::sqrt(squared_norm(q));
}

// Throws Error(ZeroNorm) for the zero quaternion.
template <std::floating_point Scalar>
Quaternion<Scalar> normalized(const Quaternion<Scalar>& q) {
  const Scalar n = norm(q);
  if (!(n > Scalar(0))) {
    throw Error(Errc::ZeroNorm, "cannot normalize a zero quaternion");
  }
  return {q.w / n, q.x / n, q.y / n, q.z / n};
}

template <std::floating_point Scalar>
Quaternion<Scalar> inverse(const Quaternion<Scalar>& q) {
  const Scalar n2 = squared_norm(q);
  if (!(n2 > Scalar(0))) {
    throw Error(Errc::ZeroNorm, "zero quaternion has no inverse");
  }
  const Quaternion<Scalar> c = conjugate(q);
  return {c.w / n2, c.x / n2, c.y / n2, c.z / n2};
}

template <std::floating_point Scalar>
Scalar imag_dot(const Quaternion<Scalar>& p, const Quaternion<Scalar>& q) {
  return p.vec().dot(q.vec());
}

template <std::floating_point Scalar>
Vector3<Scalar> imag_cross(const Quaternion<Scalar>& p, const Quaternion<Scalar>& q) {
  return p.vec().cross(q.vec());
}

// Rotation matrix of q, built as the sum of three terms:
//   (w^2 - |v|^2) I  +  2w [v]x  +  2 v v^T
// The input is normalized first, so any nonzero q yields an orthogonal
// matrix and q, a*q (a > 0) and -q all map to the same rotation.
template <std::floating_point Scalar>
RotationMatrix3<Scalar> to_rotation_matrix(const Quaternion<Scalar>& q) {
  const Quaternion<Scalar> u = normalized(q);
  const Vector3<Scalar> v = u.vec();

  RotationMatrix3<Scalar> skew;
  skew << Scalar(0), -v.z(), v.y(),
          v.z(), Scalar(0), -v.x(),
          -v.y(), v.x(), Scalar(0);

  const Scalar diag = u.w * u.w - v.squaredNorm();
  return diag * RotationMatrix3<Scalar>::Identity() + Scalar(2) * u.w * skew +
         Scalar(2) * v * v.transpose();
}

// q (0, v) q^-1. The scalar part of the result vanishes up to rounding.
template <std::floating_point Scalar>
Quaternion<Scalar> sandwich_product(const Quaternion<Scalar>& q, const Vector3<Scalar>& v) {
  const Quaternion<Scalar> q_inv = inverse(q);
  return hamilton_product(hamilton_product(q, Quaternion<Scalar>::pure(v)), q_inv);
}

// Rotates v with the sandwich product. Independent of to_rotation_matrix,
// which makes it a useful cross-check.
template <std::floating_point Scalar>
Vector3<Scalar> rotate(const Quaternion<Scalar>& q, const Vector3<Scalar>& v) {
  return sandwich_product(q, v).vec();
}

template <std::floating_point Scalar>
constexpr Quaternion<Scalar> operator+(const Quaternion<Scalar>& p, const Quaternion<Scalar>& q) {
  return add(p, q);
}

template <std::floating_point Scalar>
constexpr Quaternion<Scalar> operator*(const Quaternion<Scalar>& p, const Quaternion<Scalar>& q) {
  return hamilton_product(p, q);
}

template <std::floating_point Scalar>
constexpr Quaternion<Scalar> operator*(Scalar a, const Quaternion<Scalar>& q) {
  return scale(a, q);
}

template <std::floating_point Scalar>
constexpr Quaternion<Scalar> operator-(const Quaternion<Scalar>& q) {
  return {-q.w, -q.x, -q.y, -q.z};
}

}  // namespace quatbench
