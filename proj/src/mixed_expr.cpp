#include "dhm/mixed_expr.hpp"

#include <sstream>

#include "dhm/errors.hpp"

namespace dhm {
namespace detail {

struct ExprNode {
  virtual ~ExprNode() = default;
  virtual ComplexJet2 eval(cplx z) const = 0;
  virtual std::string str() const = 0;
  virtual bool is_zero() const { return false; }
  virtual bool is_constant() const { return false; }
  virtual cplx constant_value() const { return {}; }
};

namespace {

std::string cplx_str(cplx c) {
  std::ostringstream os;
  os.precision(12);
  if (c.imag() == 0.0)
    os << c.real();
  else
    os << "(" << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)";
  return os.str();
}

struct ConstNode final : ExprNode {
  cplx c;
  explicit ConstNode(cplx v) : c(v) {}
  ComplexJet2 eval(cplx) const override { return ComplexJet2::constant(c); }
  std::string str() const override { return cplx_str(c); }
  bool is_zero() const override { return c == cplx{}; }
  bool is_constant() const override { return true; }
  cplx constant_value() const override { return c; }
};

struct HoloNode final : ExprNode {
  RationalFunction f;
  explicit HoloNode(RationalFunction r) : f(std::move(r)) {}
  ComplexJet2 eval(cplx z) const override { return f.jet(z); }
  std::string str() const override { return "[" + f.to_string() + "]"; }
};

struct AntiNode final : ExprNode {
  RationalFunction f;
  explicit AntiNode(RationalFunction r) : f(std::move(r)) {}
  ComplexJet2 eval(cplx z) const override { return conj(f.jet(z)); }
  std::string str() const override { return "conj[" + f.to_string() + "]"; }
};

struct FnNode final : ExprNode {
  std::string name;
  MixedExpr::JetFn fn;
  FnNode(std::string n, MixedExpr::JetFn f) : name(std::move(n)), fn(std::move(f)) {}
  ComplexJet2 eval(cplx z) const override { return fn(z); }
  std::string str() const override { return name; }
};

enum class BinOp { Add, Sub, Mul, Div };

struct BinNode final : ExprNode {
  BinOp op;
  std::shared_ptr<const ExprNode> a, b;
  BinNode(BinOp o, std::shared_ptr<const ExprNode> x, std::shared_ptr<const ExprNode> y)
      : op(o), a(std::move(x)), b(std::move(y)) {}
  ComplexJet2 eval(cplx z) const override {
    const ComplexJet2 x = a->eval(z);
    const ComplexJet2 y = b->eval(z);
    switch (op) {
      case BinOp::Add: return x + y;
      case BinOp::Sub: return x - y;
      case BinOp::Mul: return x * y;
      case BinOp::Div: return x / y;
    }
    return {};
  }
  std::string str() const override {
    static constexpr const char* sym[] = {" + ", " - ", "*", "/"};
    return "(" + a->str() + sym[static_cast<int>(op)] + b->str() + ")";
  }
};

enum class UnOp { Pow, Log, Exp, Conj, Inversion };

struct UnNode final : ExprNode {
  UnOp op;
  double p = 0.0;
  std::shared_ptr<const ExprNode> a;
  UnNode(UnOp o, std::shared_ptr<const ExprNode> x, double power = 0.0) : op(o), p(power), a(std::move(x)) {}
  ComplexJet2 eval(cplx z) const override {
    switch (op) {
      case UnOp::Pow: return pow(a->eval(z), p);
      case UnOp::Log: return log(a->eval(z));
      case UnOp::Exp: return exp(a->eval(z));
      case UnOp::Conj: return conj(a->eval(z));
      case UnOp::Inversion: {
        if (z == cplx{}) throw Error(ErrorKind::OriginHasNoImage, "inversion at t = 0");
        return pullback_inversion(a->eval(1.0 / z), z);
      }
    }
    return {};
  }
  std::string str() const override {
    switch (op) {
      case UnOp::Pow: {
        std::ostringstream os;
        os << "pow(" << a->str() << ", " << p << ")";
        return os.str();
      }
      case UnOp::Log: return "log(" + a->str() + ")";
      case UnOp::Exp: return "exp(" + a->str() + ")";
      case UnOp::Conj: return "conj(" + a->str() + ")";
      case UnOp::Inversion: return "(" + a->str() + ")@(1/z)";
    }
    return {};
  }
};

}  // namespace
}  // namespace detail

using detail::BinNode;
using detail::BinOp;
using detail::UnNode;
using detail::UnOp;

MixedExpr::MixedExpr() : node_(std::make_shared<detail::ConstNode>(cplx{})) {}

MixedExpr MixedExpr::constant(cplx c) { return MixedExpr(std::make_shared<detail::ConstNode>(c)); }
MixedExpr MixedExpr::z() { return holomorphic(RationalFunction::identity()); }
MixedExpr MixedExpr::zbar() { return antiholomorphic(RationalFunction::identity()); }

MixedExpr MixedExpr::holomorphic(RationalFunction f) {
  if (f.is_constant()) return constant(f.numerator().coeff(0));
  return MixedExpr(std::make_shared<detail::HoloNode>(std::move(f)));
}

MixedExpr MixedExpr::antiholomorphic(RationalFunction f) {
  if (f.is_constant()) return constant(std::conj(f.numerator().coeff(0)));
  return MixedExpr(std::make_shared<detail::AntiNode>(std::move(f)));
}

MixedExpr MixedExpr::function(std::string name, JetFn fn) {
  return MixedExpr(std::make_shared<detail::FnNode>(std::move(name), std::move(fn)));
}

ComplexJet2 MixedExpr::eval(cplx z) const { return node_->eval(z); }
bool MixedExpr::is_zero() const { return node_->is_zero(); }
std::string MixedExpr::to_string() const { return node_->str(); }

MixedExpr operator+(const MixedExpr& a, const MixedExpr& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.node_->is_constant() && b.node_->is_constant())
    return MixedExpr::constant(a.node_->constant_value() + b.node_->constant_value());
  return MixedExpr(std::make_shared<BinNode>(BinOp::Add, a.node_, b.node_));
}

MixedExpr operator-(const MixedExpr& a, const MixedExpr& b) {
  if (b.is_zero()) return a;
  if (a.is_zero()) return -b;
  return MixedExpr(std::make_shared<BinNode>(BinOp::Sub, a.node_, b.node_));
}

MixedExpr operator*(const MixedExpr& a, const MixedExpr& b) {
  if (a.is_zero() || b.is_zero()) return MixedExpr();
  if (a.node_->is_constant() && a.node_->constant_value() == cplx{1.0}) return b;
  if (b.node_->is_constant() && b.node_->constant_value() == cplx{1.0}) return a;
  if (a.node_->is_constant() && b.node_->is_constant())
    return MixedExpr::constant(a.node_->constant_value() * b.node_->constant_value());
  return MixedExpr(std::make_shared<BinNode>(BinOp::Mul, a.node_, b.node_));
}

MixedExpr operator/(const MixedExpr& a, const MixedExpr& b) {
  if (b.is_zero()) throw Error(ErrorKind::IdenticallyZero, "division by the zero expression");
  if (a.is_zero()) return MixedExpr();
  return MixedExpr(std::make_shared<BinNode>(BinOp::Div, a.node_, b.node_));
}

MixedExpr operator*(cplx s, const MixedExpr& a) { return MixedExpr::constant(s) * a; }
MixedExpr operator-(const MixedExpr& a) { return cplx{-1.0} * a; }

MixedExpr pow(const MixedExpr& a, double p) {
  if (p == 1.0) return a;
  return MixedExpr(std::make_shared<UnNode>(UnOp::Pow, a.node_, p));
}
MixedExpr log(const MixedExpr& a) { return MixedExpr(std::make_shared<UnNode>(UnOp::Log, a.node_)); }
MixedExpr exp(const MixedExpr& a) { return MixedExpr(std::make_shared<UnNode>(UnOp::Exp, a.node_)); }
MixedExpr conj(const MixedExpr& a) {
  if (a.node_->is_constant()) return MixedExpr::constant(std::conj(a.node_->constant_value()));
  return MixedExpr(std::make_shared<UnNode>(UnOp::Conj, a.node_));
}
MixedExpr compose_inversion(const MixedExpr& a) {
  if (a.node_->is_constant()) return a;
  return MixedExpr(std::make_shared<UnNode>(UnOp::Inversion, a.node_));
}

}  // namespace dhm
