#pragma once

#include <array>
#include <cmath>

#include "qgeo/errors.hpp"

namespace qgeo {

// Element of U^{3x3} (unit upper-triangular 3x3 matrices), stored by its
// three free entries. Determinant is identically 1.
template <class T>
struct UpperTriT {
  T a12{}, a13{}, a23{};

  std::array<std::array<T, 3>, 3> to_matrix() const {
    return {{{T(1), a12, a13}, {T(0), T(1), a23}, {T(0), T(0), T(1)}}};
  }
};

// Coefficients on the X, Y, Z basis of the Heisenberg algebra,
// [X, Y] = Z and all other basis brackets zero.
template <class T>
struct LieVectorT {
  T cx{}, cy{}, cz{};
};

// Exponential coordinates on the group.
template <class T>
struct HeisenbergPointT {
  T x{}, y{}, z{};
};

using UpperUnitriangular = UpperTriT<double>;
using LieVector = LieVectorT<double>;
using HeisenbergPoint = HeisenbergPointT<double>;

// The embedding S(x): all three free entries equal to x.
template <class T>
UpperTriT<T> embed(T x) {
  return {x, x, x};
}

// Ordinary matrix product restricted to the three free entries.
template <class T>
UpperTriT<T> multiply(const UpperTriT<T>& a, const UpperTriT<T>& b) {
  return {a.a12 + b.a12, (a.a13 + b.a13) + a.a12 * b.a23, a.a23 + b.a23};
}

template <class T>
UpperTriT<T> matrix_inverse(const UpperTriT<T>& a) {
  return {-a.a12, -a.a13 + a.a12 * a.a23, -a.a23};
}

// |(x+y) - (x + y + xy)| = |xy|: the gap between the secondary-diagonal
// entries of S(x)S(y) and the corner term, witnessing that S is not a
// homomorphism.
template <class T>
T embedding_defect(T x, T y) {
  using std::abs;
  return abs(x * y);
}

template <class T>
LieVectorT<T> bracket(const LieVectorT<T>& u, const LieVectorT<T>& v) {
  return {T(0), T(0), u.cx * v.cy - v.cx * u.cy};
}

// exp(M) = I + M + M^2/2 exactly (M^3 = 0 for strictly upper M).
template <class T>
UpperTriT<T> exp_map(const LieVectorT<T>& u) {
  return {u.cx, u.cz + u.cx * u.cy / T(2), u.cy};
}

// log(A) = N - N^2/2 with N = A - I, exact inverse of exp_map.
template <class T>
LieVectorT<T> log_map(const UpperTriT<T>& a) {
  return {a.a12, a.a23, a.a13 - a.a12 * a.a23 / T(2)};
}

// Group law in exponential coordinates (symmetric BCH convention:
// z-increment (x y' - y x')/2).
template <class T>
HeisenbergPointT<T> group_law(const HeisenbergPointT<T>& g,
                              const HeisenbergPointT<T>& h) {
  return {g.x + h.x, g.y + h.y,
          g.z + h.z + (g.x * h.y - g.y * h.x) / T(2)};
}

template <class T>
HeisenbergPointT<T> inverse(const HeisenbergPointT<T>& g) {
  return {-g.x, -g.y, -g.z};
}

template <class T>
LieVectorT<T> to_lie(const HeisenbergPointT<T>& g) {
  return {g.x, g.y, g.z};
}

template <class T>
HeisenbergPointT<T> to_point(const LieVectorT<T>& u) {
  return {u.cx, u.cy, u.cz};
}

}  // namespace qgeo
