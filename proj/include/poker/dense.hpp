#pragma once

/**
 * Dense Eigen containers over the exact scalar. Everything downstream
 * (paytables, LP tableaus, strategies) is a Matrix/Vector of Rational.
 */

#include <Eigen/Core>

#include "poker/rational.hpp"

namespace Eigen {

template <>
struct NumTraits<poker::Rational> : GenericNumTraits<poker::Rational> {
  typedef poker::Rational Real;
  typedef poker::Rational NonInteger;
  typedef poker::Rational Nested;
  typedef poker::Rational Literal;

  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }

  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 64,
    MulCost = 64,
  };
};

}  // namespace Eigen

namespace poker {

template <class Scalar>
using Vec = Eigen::Vector<Scalar, Eigen::Dynamic>;
template <class Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using RatVec = Vec<Rational>;
using RatMat = Mat<Rational>;

inline RatVec rat_vec(std::initializer_list<Rational> xs) {
  RatVec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (const auto& x : xs) v[i++] = x;
  return v;
}

}  // namespace poker
