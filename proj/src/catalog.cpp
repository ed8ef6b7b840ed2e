#include "crfolio/catalog.hpp"

#include <cctype>
#include <cmath>
#include <memory>
#include <sstream>

namespace crfolio {

namespace {

// ---- expression language -------------------------------------------------

using Env = std::array<double, 4>;  // x1 y1 x2 y2

struct Node {
  virtual ~Node() = default;
  virtual cx eval(const Env& e) const = 0;
};
using NodeP = std::shared_ptr<Node>;

struct ConstNode : Node {
  cx v;
  explicit ConstNode(cx c) : v(c) {}
  cx eval(const Env&) const override { return v; }
};
struct VarNode : Node {
  int idx;
  explicit VarNode(int i) : idx(i) {}
  cx eval(const Env& e) const override { return cx(e[idx]); }
};
struct BinNode : Node {
  char op;
  NodeP a, b;
  BinNode(char o, NodeP x, NodeP y) : op(o), a(std::move(x)), b(std::move(y)) {}
  cx eval(const Env& e) const override {
    cx u = a->eval(e), v = b->eval(e);
    switch (op) {
      case '+': return u + v;
      case '-': return u - v;
      case '*': return u * v;
      case '/': return u / v;
      default: {  // '^'
        if (std::abs(v.imag()) < 1e-14 &&
            std::abs(v.real() - std::round(v.real())) < 1e-14)
          return std::pow(u, int(std::lround(v.real())));
        return std::pow(u, v);
      }
    }
  }
};
struct NegNode : Node {
  NodeP a;
  explicit NegNode(NodeP x) : a(std::move(x)) {}
  cx eval(const Env& e) const override { return -a->eval(e); }
};
struct FunNode : Node {
  int fn;  // 0 sin 1 cos 2 exp 3 sqrt 4 abs
  NodeP a;
  FunNode(int f, NodeP x) : fn(f), a(std::move(x)) {}
  cx eval(const Env& e) const override {
    cx u = a->eval(e);
    switch (fn) {
      case 0: return std::sin(u);
      case 1: return std::cos(u);
      case 2: return std::exp(u);
      case 3: return std::sqrt(u);
      default: return cx(std::abs(u));
    }
  }
};

class Parser {
 public:
  Parser(std::string s, int arity) : s_(std::move(s)), arity_(arity) {}
  NodeP parse() {
    NodeP n = expr();
    skip();
    if (pos_ != s_.size())
      throw ConfigError("expression parse error at position " +
                        std::to_string(pos_));
    return n;
  }

 private:
  std::string s_;
  size_t pos_ = 0;
  int arity_;

  void skip() {
    while (pos_ < s_.size() && std::isspace((unsigned char)s_[pos_])) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  NodeP expr() {
    NodeP n = term();
    for (;;) {
      if (eat('+'))
        n = std::make_shared<BinNode>('+', n, term());
      else if (eat('-'))
        n = std::make_shared<BinNode>('-', n, term());
      else
        return n;
    }
  }
  NodeP term() {
    NodeP n = unary();
    for (;;) {
      if (eat('*'))
        n = std::make_shared<BinNode>('*', n, unary());
      else if (eat('/'))
        n = std::make_shared<BinNode>('/', n, unary());
      else
        return n;
    }
  }
  NodeP unary() {
    if (eat('-')) return std::make_shared<NegNode>(unary());
    if (eat('+')) return unary();
    return power();
  }
  NodeP power() {
    NodeP n = atom();
    if (eat('^')) return std::make_shared<BinNode>('^', n, unary());
    return n;
  }
  NodeP atom() {
    skip();
    if (pos_ >= s_.size()) throw ConfigError("unexpected end of expression");
    char c = s_[pos_];
    if (std::isdigit((unsigned char)c) || c == '.') {
      size_t used = 0;
      double v = std::stod(s_.substr(pos_), &used);
      pos_ += used;
      return std::make_shared<ConstNode>(cx(v));
    }
    if (c == '(') {
      ++pos_;
      NodeP n = expr();
      if (!eat(')')) throw ConfigError("missing ')' in expression");
      return n;
    }
    if (std::isalpha((unsigned char)c)) {
      size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum((unsigned char)s_[pos_]) || s_[pos_] == '_'))
        ++pos_;
      std::string id = s_.substr(start, pos_ - start);
      if (id == "i") return std::make_shared<ConstNode>(cx(0.0, 1.0));
      if (id == "pi") return std::make_shared<ConstNode>(cx(kPi));
      if (id == "x" || id == "x1") return std::make_shared<VarNode>(0);
      if (id == "y" || id == "y1") return std::make_shared<VarNode>(1);
      if (id == "x2" || id == "y2") {
        if (arity_ < 2)
          throw ConfigError("variable " + id +
                            " used in a one-variable expression");
        return std::make_shared<VarNode>(id == "x2" ? 2 : 3);
      }
      static const char* fns[] = {"sin", "cos", "exp", "sqrt", "abs"};
      for (int k = 0; k < 5; ++k)
        if (id == fns[k]) {
          if (!eat('(')) throw ConfigError("expected '(' after " + id);
          NodeP a = expr();
          if (!eat(')')) throw ConfigError("missing ')' after " + id);
          return std::make_shared<FunNode>(k, a);
        }
      throw ConfigError("unknown identifier '" + id + "' in expression");
    }
    throw ConfigError(std::string("unexpected character '") + c +
                      "' in expression");
  }
};

Env env_of(const std::vector<cx>& z) {
  Env e{0, 0, 0, 0};
  for (size_t j = 0; j < z.size() && j < 2; ++j) {
    e[2 * j] = z[j].real();
    e[2 * j + 1] = z[j].imag();
  }
  return e;
}

BoundaryFunction wrap_fd_derivatives(BoundaryFunction f) {
  // Wirtinger derivatives from central differences in the real coordinates
  auto val = f.value;
  f.dz = [val](const std::vector<cx>& z, int j) {
    const double h = 1e-5;
    std::vector<cx> a = z, b = z, c = z, d = z;
    a[j] += h;
    b[j] -= h;
    c[j] += cx(0, h);
    d[j] -= cx(0, h);
    cx fx = (val(a) - val(b)) / (2 * h), fy = (val(c) - val(d)) / (2 * h);
    return 0.5 * (fx - cx(0, 1) * fy);
  };
  f.dzbar = [val](const std::vector<cx>& z, int j) {
    const double h = 1e-5;
    std::vector<cx> a = z, b = z, c = z, d = z;
    a[j] += h;
    b[j] -= h;
    c[j] += cx(0, h);
    d[j] -= cx(0, h);
    cx fx = (val(a) - val(b)) / (2 * h), fy = (val(c) - val(d)) / (2 * h);
    return 0.5 * (fx + cx(0, 1) * fy);
  };
  f.symbolic_derivatives = false;
  return f;
}

cx zero_fn(const std::vector<cx>&, int) { return cx(0.0); }

}  // namespace

BoundaryFunction make_function(const std::string& spec, int arity) {
  if (arity != 1 && arity != 2)
    throw ConfigError("boundary function arity must be 1 or 2");
  BoundaryFunction f;
  f.name = spec;
  f.arity = arity;
  f.symbolic_derivatives = true;

  if (spec == "z_sq") {
    f.smoothness_note = "holomorphic polynomial";
    f.value = [](const std::vector<cx>& z) { return z[0] * z[0]; };
    f.dz = [](const std::vector<cx>& z, int j) {
      return j == 0 ? 2.0 * z[0] : cx(0.0);
    };
    f.dzbar = zero_fn;
    return f;
  }
  if (spec == "z_cube") {
    f.smoothness_note = "holomorphic polynomial";
    f.value = [](const std::vector<cx>& z) { return z[0] * z[0] * z[0]; };
    f.dz = [](const std::vector<cx>& z, int j) {
      return j == 0 ? 3.0 * z[0] * z[0] : cx(0.0);
    };
    f.dzbar = zero_fn;
    return f;
  }
  if (spec == "zbar") {
    f.smoothness_note = "anti-holomorphic";
    f.value = [](const std::vector<cx>& z) { return std::conj(z[0]); };
    f.dz = zero_fn;
    f.dzbar = [](const std::vector<cx>&, int j) {
      return j == 0 ? cx(1.0) : cx(0.0);
    };
    return f;
  }
  if (spec == "const") {
    f.smoothness_note = "constant";
    f.value = [](const std::vector<cx>&) { return cx(1.0); };
    f.dz = zero_fn;
    f.dzbar = zero_fn;
    return f;
  }
  if (spec == "abs_z1_sq") {
    f.smoothness_note = "real-analytic, |z1|^2";
    f.value = [](const std::vector<cx>& z) { return cx(std::norm(z[0])); };
    f.dz = [](const std::vector<cx>& z, int j) {
      return j == 0 ? std::conj(z[0]) : cx(0.0);
    };
    f.dzbar = [](const std::vector<cx>& z, int j) {
      return j == 0 ? z[0] : cx(0.0);
    };
    return f;
  }
  if (spec.rfind("globevnik_", 0) == 0) {
    int n = 0;
    try {
      n = std::stoi(spec.substr(10));
    } catch (...) {
      throw ConfigError("bad integer in function spec '" + spec + "'");
    }
    if (n < 1) throw ConfigError("power in '" + spec + "' must be >= 1");
    f.smoothness_note = "z^" + std::to_string(n) + "/zbar, smooth off 0";
    f.value = [n](const std::vector<cx>& z) {
      return std::pow(z[0], n) / std::conj(z[0]);
    };
    f.dz = [n](const std::vector<cx>& z, int j) {
      return j == 0 ? double(n) * std::pow(z[0], n - 1) / std::conj(z[0])
                    : cx(0.0);
    };
    f.dzbar = [n](const std::vector<cx>& z, int j) {
      return j == 0
                 ? -std::pow(z[0], n) / (std::conj(z[0]) * std::conj(z[0]))
                 : cx(0.0);
    };
    return f;
  }
  if (spec.rfind("expr:", 0) == 0) {
    NodeP ast = Parser(spec.substr(5), arity).parse();
    f.smoothness_note = "user expression";
    f.value = [ast](const std::vector<cx>& z) { return ast->eval(env_of(z)); };
    return wrap_fd_derivatives(std::move(f));
  }
  throw ConfigError("unknown boundary function '" + spec + "'");
}

Hypersurface make_surface(const std::string& spec) {
  Hypersurface s;
  s.name = spec;
  if (spec == "sphere") {
    s.rho = [](const std::array<cx, 2>& z) {
      return std::norm(z[0]) + std::norm(z[1]) - 1.0;
    };
    s.drho = [](const std::array<cx, 2>& z, int j) { return std::conj(z[j]); };
    s.dbar_rho = [](const std::array<cx, 2>& z, int j) { return z[j]; };
    return s;
  }
  if (spec.rfind("quadric:", 0) == 0) {
    std::array<double, 7> c{};
    std::stringstream ss(spec.substr(8));
    std::string tok;
    size_t k = 0;
    while (std::getline(ss, tok, ',') && k < 7) c[k++] = std::stod(tok);
    if (k != 7)
      throw ConfigError("quadric surface needs 7 comma-separated reals");
    s.rho = [c](const std::array<cx, 2>& z) {
      return c[0] * std::norm(z[0]) + c[1] * std::norm(z[1]) +
             c[2] * z[0].real() + c[3] * z[0].imag() + c[4] * z[1].real() +
             c[5] * z[1].imag() + c[6];
    };
    // Re z = (z + zbar)/2, Im z = (z - zbar)/(2i)
    s.drho = [c](const std::array<cx, 2>& z, int j) {
      double a = j == 0 ? c[0] : c[1];
      double br = j == 0 ? c[2] : c[4], bi = j == 0 ? c[3] : c[5];
      return a * std::conj(z[j]) + cx(br / 2, -bi / 2);
    };
    s.dbar_rho = [c](const std::array<cx, 2>& z, int j) {
      double a = j == 0 ? c[0] : c[1];
      double br = j == 0 ? c[2] : c[4], bi = j == 0 ? c[3] : c[5];
      return a * z[j] + cx(br / 2, bi / 2);
    };
    return s;
  }
  throw ConfigError("unknown surface '" + spec + "'");
}

std::string list_catalog() {
  std::ostringstream os;
  os << "families:\n"
     << "  custom            user-supplied per-node Taylor coefficients\n"
     << "  hopf_discs        discs through 0 with boundaries covering the "
        "unit sphere\n"
     << "  rotating_circles  circles of radius r with centers on |z| = R\n"
     << "  tangent_lines     complex-line slices of a ball tangent to an "
        "inner sphere\n"
     << "  translated_circles circles of fixed radius with centers on a "
        "path\n"
     << "functions:\n"
     << "  abs_z1_sq         |z1|^2\n"
     << "  const             1\n"
     << "  expr:<text>       expression in x, y (and x2, y2)\n"
     << "  globevnik_<n>     z^n / zbar, the rotating-circle "
        "counterexample trace\n"
     << "  z_cube            z^3\n"
     << "  z_sq              z^2\n"
     << "  zbar              conjugate of z\n"
     << "surfaces:\n"
     << "  quadric:<7 reals> a1|z1|^2 + a2|z2|^2 + linear terms + const\n"
     << "  sphere            |z1|^2 + |z2|^2 - 1\n";
  return os.str();
}

}  // namespace crfolio
