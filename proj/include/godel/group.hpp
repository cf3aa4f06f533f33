#ifndef GODEL_GROUP_HPP
#define GODEL_GROUP_HPP

#include <array>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>

// The isometry group G = R x G2 x R of the Goedel universe as a matrix Lie
// group. The (x0, x1, x2) part lives in the 4x4 upper triangular model
//
//   | e^{-x1} 0 0 x2 |
//   |    0    1 0 x1 |
//   |    0    0 1 x0 |
//   |    0    0 0  1 |
//
// and the central factor x3 is carried as a plain additive coordinate.

namespace godel {

template <typename Scalar>
using Vector4 = Eigen::Matrix<Scalar, 4, 1>;
template <typename Scalar>
using Matrix4 = Eigen::Matrix<Scalar, 4, 4>;

template <typename Scalar>
class GroupElement {
 public:
  GroupElement() : x_(Vector4<Scalar>::Zero()) {}
  GroupElement(Scalar x0, Scalar x1, Scalar x2, Scalar x3) : x_(x0, x1, x2, x3) {}
  explicit GroupElement(const Vector4<Scalar>& x) : x_(x) {}

  static GroupElement Identity() { return GroupElement(); }

  Scalar x0() const { return x_[0]; }
  Scalar x1() const { return x_[1]; }
  Scalar x2() const { return x_[2]; }
  Scalar x3() const { return x_[3]; }
  Scalar operator[](int i) const { return x_[i]; }

  const Vector4<Scalar>& coords() const { return x_; }

  bool isFinite() const { return x_.allFinite(); }

  template <typename Other>
  GroupElement<Other> cast() const {
    return GroupElement<Other>(x_.template cast<Other>());
  }

 private:
  Vector4<Scalar> x_;
};

using GroupElementd = GroupElement<double>;

/// Basis in which an algebra vector's components are expressed. The natural
/// basis is (e0, e1, e2, e3) = coordinate fields at the unit; the orthonormal
/// one replaces e2 by e2' = sqrt2 (e0 - e2).
enum class Frame { natural, orthonormal };

template <typename Scalar>
struct AlgebraVector {
  Frame frame = Frame::natural;
  Vector4<Scalar> c = Vector4<Scalar>::Zero();

  AlgebraVector() = default;
  AlgebraVector(Frame f, const Vector4<Scalar>& comps) : frame(f), c(comps) {}
  AlgebraVector(Frame f, Scalar c0, Scalar c1, Scalar c2, Scalar c3)
      : frame(f), c(c0, c1, c2, c3) {}

  static AlgebraVector basis(Frame f, int i) {
    return AlgebraVector(f, Vector4<Scalar>::Unit(i));
  }

  Scalar operator[](int i) const { return c[i]; }
};

using AlgebraVectord = AlgebraVector<double>;

template <typename Scalar>
AlgebraVector<Scalar> to_natural(const AlgebraVector<Scalar>& v) {
  if (v.frame == Frame::natural) return v;
  const Scalar s2 = std::numbers::sqrt2_v<Scalar>;
  const auto& w = v.c;
  return {Frame::natural, w[0] + s2 * w[2], w[1], -s2 * w[2], w[3]};
}

template <typename Scalar>
AlgebraVector<Scalar> to_orthonormal(const AlgebraVector<Scalar>& v) {
  if (v.frame == Frame::orthonormal) return v;
  const Scalar s2 = std::numbers::sqrt2_v<Scalar>;
  const auto& n = v.c;
  return {Frame::orthonormal, n[0] + n[2], n[1], -n[2] / s2, n[3]};
}

template <typename Scalar>
AlgebraVector<Scalar> in_frame(const AlgebraVector<Scalar>& v, Frame f) {
  return f == Frame::natural ? to_natural(v) : to_orthonormal(v);
}

template <typename Scalar>
GroupElement<Scalar> compose(const GroupElement<Scalar>& g,
                             const GroupElement<Scalar>& h) {
  using std::exp;
  return {g.x0() + h.x0(), g.x1() + h.x1(), g.x2() + exp(-g.x1()) * h.x2(),
          g.x3() + h.x3()};
}

template <typename Scalar>
GroupElement<Scalar> inverse(const GroupElement<Scalar>& g) {
  using std::exp;
  return {-g.x0(), -g.x1(), -g.x2() * exp(g.x1()), -g.x3()};
}

/// 4x4 image of the (x0, x1, x2) part. x3 is not represented.
template <typename Scalar>
Matrix4<Scalar> to_matrix(const GroupElement<Scalar>& g) {
  using std::exp;
  Matrix4<Scalar> m = Matrix4<Scalar>::Identity();
  m(0, 0) = exp(-g.x1());
  m(0, 3) = g.x2();
  m(1, 3) = g.x1();
  m(2, 3) = g.x0();
  return m;
}

/// Inverse of to_matrix on the (x0, x1, x2) part; x3 is supplied separately.
template <typename Scalar>
GroupElement<Scalar> from_matrix(const Matrix4<Scalar>& m, Scalar x3 = Scalar(0)) {
  return {m(2, 3), m(1, 3), m(0, 3), x3};
}

/// 4x4 image of an algebra vector (its e3 component is dropped).
template <typename Scalar>
Matrix4<Scalar> algebra_matrix(const AlgebraVector<Scalar>& v) {
  const auto n = to_natural(v).c;
  Matrix4<Scalar> m = Matrix4<Scalar>::Zero();
  m(2, 3) = n[0];
  m(0, 0) = -n[1];
  m(1, 3) = n[1];
  m(0, 3) = n[2];
  return m;
}

/// Lie bracket. The result is expressed in the frame of v; w is converted.
/// In the natural basis the only non-zero bracket is [e1, e2] = -e2.
template <typename Scalar>
AlgebraVector<Scalar> bracket(const AlgebraVector<Scalar>& v,
                              const AlgebraVector<Scalar>& w) {
  const auto a = to_natural(v).c;
  const auto b = to_natural(w).c;
  AlgebraVector<Scalar> r(Frame::natural, Scalar(0), Scalar(0),
                          -(a[1] * b[2] - a[2] * b[1]), Scalar(0));
  return in_frame(r, v.frame);
}

/// C^k_{ij} over the orthonormal frame (e0, e1, e2', e3), indexed [k][i][j].
template <typename Scalar = double>
std::array<std::array<std::array<Scalar, 4>, 4>, 4> structure_constants() {
  std::array<std::array<std::array<Scalar, 4>, 4>, 4> c{};
  const Scalar s2 = std::numbers::sqrt2_v<Scalar>;
  c[0][1][2] = s2;
  c[0][2][1] = -s2;
  c[2][1][2] = Scalar(-1);
  c[2][2][1] = Scalar(1);
  return c;
}

namespace detail {

// (1 - e^{-c}) / c, continuous at c = 0.
template <typename Scalar>
Scalar one_minus_exp_neg_over(Scalar c) {
  using std::abs;
  using std::expm1;
  if (abs(c) < Scalar(1e-5)) {
    return Scalar(1) - c / Scalar(2) + c * c / Scalar(6) - c * c * c / Scalar(24);
  }
  return -expm1(-c) / c;
}

}  // namespace detail

template <typename Scalar>
GroupElement<Scalar> exp(const AlgebraVector<Scalar>& v) {
  const auto n = to_natural(v).c;
  return {n[0], n[1], n[2] * detail::one_minus_exp_neg_over(n[1]), n[3]};
}

/// Coordinate velocity of dl_g(v), i.e. the rates (dx0, dx1, dx2, dx3) of a
/// curve through g whose left-trivialized velocity is v.
template <typename Scalar>
Vector4<Scalar> left_translate_tangent(const GroupElement<Scalar>& g,
                                       const AlgebraVector<Scalar>& v) {
  using std::exp;
  const auto n = to_natural(v).c;
  return {n[0], n[1], exp(-g.x1()) * n[2], n[3]};
}

}  // namespace godel

#endif  // GODEL_GROUP_HPP
