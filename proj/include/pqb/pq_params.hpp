#pragma once

#include <stdexcept>

#include "pqb/rational.hpp"

namespace pqb {

/// Parameter pair with 0 < q < p <= 1. The scalar type selects the
/// arithmetic mode: Rational for exact work, double for experiments.
template <class Scalar>
struct PQParams {
  Scalar p;
  Scalar q;

  PQParams(Scalar p_in, Scalar q_in) : p(std::move(p_in)), q(std::move(q_in)) {
    if (!(q > Scalar(0)) || !(q < p) || !(p <= Scalar(1)))
      throw std::invalid_argument("PQParams: parameters must satisfy 0 < q < p <= 1");
  }
};

using PQParamsF = PQParams<double>;
using PQParamsR = PQParams<Rational>;

}  // namespace pqb
