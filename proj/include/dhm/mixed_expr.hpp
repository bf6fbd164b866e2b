#pragma once

#include <functional>
#include <memory>
#include <string>

#include "dhm/rational.hpp"

namespace dhm {

namespace detail {
struct ExprNode;
}

/// Immutable expression in (z, zbar) built from rational functions of z,
/// conjugated rational functions, named jet-valued leaves (metric factors,
/// test bumps) and the operations + - * / pow log exp conj. Evaluation returns
/// an exact second-order Wirtinger jet.
class MixedExpr {
 public:
  using JetFn = std::function<ComplexJet2(cplx)>;

  /// The zero expression.
  MixedExpr();

  static MixedExpr constant(cplx c);
  static MixedExpr z();
  static MixedExpr zbar();
  /// f(z)
  static MixedExpr holomorphic(RationalFunction f);
  /// conj(f(z))
  static MixedExpr antiholomorphic(RationalFunction f);
  static MixedExpr function(std::string name, JetFn fn);

  ComplexJet2 eval(cplx z) const;
  cplx value(cplx z) const { return eval(z).value; }

  /// Structurally zero (built from the zero constant).
  bool is_zero() const;
  std::string to_string() const;

  friend MixedExpr operator+(const MixedExpr& a, const MixedExpr& b);
  friend MixedExpr operator-(const MixedExpr& a, const MixedExpr& b);
  friend MixedExpr operator*(const MixedExpr& a, const MixedExpr& b);
  friend MixedExpr operator/(const MixedExpr& a, const MixedExpr& b);
  friend MixedExpr operator*(cplx s, const MixedExpr& a);
  friend MixedExpr operator-(const MixedExpr& a);

  friend MixedExpr pow(const MixedExpr& a, double p);
  friend MixedExpr log(const MixedExpr& a);
  friend MixedExpr exp(const MixedExpr& a);
  friend MixedExpr conj(const MixedExpr& a);
  /// t -> a(1/t), with the Wirtinger chain rule applied to the jet.
  friend MixedExpr compose_inversion(const MixedExpr& a);

 private:
  explicit MixedExpr(std::shared_ptr<const detail::ExprNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const detail::ExprNode> node_;
};

/// Evaluates a mixed expression (jet_mixed_eval).
inline ComplexJet2 jet_mixed_eval(const MixedExpr& e, cplx z) { return e.eval(z); }

}  // namespace dhm
