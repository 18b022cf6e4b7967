#pragma once

#include "calat/coefficients.hpp"
#include "calat/matrix.hpp"

namespace calat {

/// Transition matrices at a site. Frames are transported by right
/// multiplication: F(m+1,n) = F(m,n) A(m,n), F(m,n+1) = F(m,n) B(m,n).
/// det A = c*alpha, det B = b*gamma; first columns are e2 resp. e3, which is
/// exactly the frame-chaining property.
template <class S>
struct TransitionPair {
  Matrix3<S> A, B;
};

template <class S>
TransitionPair<S> transition_matrices(const CoefficientSet<S>& s) {
  using T = scalar_traits<S>;
  S zero = T::from_int(0);
  S one = T::from_int(1);
  S d = s.d();

  Matrix3<S> A;
  A.m = {{{zero, S(s.beta * d - s.alpha), d},
          {one, S(one + s.alpha + s.b * s.beta - s.beta), s.b},
          {zero, S(s.c * s.beta), s.c}}};

  Matrix3<S> B;
  B.m = {{{zero, d, S(s.delta * d - s.gamma)},
          {zero, s.b, S(s.b * s.delta)},
          {one, s.c, S(one + s.gamma + s.c * s.delta - s.delta)}}};

  return {A, B};
}

} // namespace calat
