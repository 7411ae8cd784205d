#include "ddsim/expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <memory>
#include <numbers>
#include <vector>

namespace ddsim {

namespace {

using cd = std::complex<double>;

constexpr int max_nesting = 200;

struct Node {
    enum class Kind { Number, Name, Add, Sub, Mul, Div, Pow, Neg, Call };

    Kind kind;
    std::size_t pos;
    double number = 0.0;
    std::string name;
    std::vector<std::unique_ptr<Node>> args;
};

using NodePtr = std::unique_ptr<Node>;

NodePtr make(Node::Kind kind, std::size_t pos) {
    auto n = std::make_unique<Node>();
    n->kind = kind;
    n->pos = pos;
    return n;
}

NodePtr make_binary(Node::Kind kind, std::size_t pos, NodePtr lhs, NodePtr rhs) {
    auto n = make(kind, pos);
    n->args.push_back(std::move(lhs));
    n->args.push_back(std::move(rhs));
    return n;
}

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    NodePtr parse() {
        NodePtr root = expression();
        skip_space();
        if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
        return root;
    }

private:
    NodePtr expression() {
        enter();
        NodePtr lhs = term();
        for (;;) {
            skip_space();
            if (peek() != '+' && peek() != '-') break;
            const char op = text_[pos_];
            const std::size_t at = pos_++;
            lhs = make_binary(op == '+' ? Node::Kind::Add : Node::Kind::Sub, at, std::move(lhs), term());
        }
        --depth_;
        return lhs;
    }

    NodePtr term() {
        NodePtr lhs = unary();
        for (;;) {
            skip_space();
            if (peek() != '*' && peek() != '/') break;
            const char op = text_[pos_];
            const std::size_t at = pos_++;
            lhs = make_binary(op == '*' ? Node::Kind::Mul : Node::Kind::Div, at, std::move(lhs), unary());
        }
        return lhs;
    }

    NodePtr unary() {
        skip_space();
        if (peek() == '-' || peek() == '+') {
            enter();
            const char op = text_[pos_];
            const std::size_t at = pos_++;
            NodePtr operand = unary();
            --depth_;
            if (op == '+') return operand;
            auto n = make(Node::Kind::Neg, at);
            n->args.push_back(std::move(operand));
            return n;
        }
        return power();
    }

    NodePtr power() {
        NodePtr base = primary();
        skip_space();
        if (peek() == '^') {
            const std::size_t at = pos_++;
            enter();
            NodePtr exponent = unary();
            --depth_;
            return make_binary(Node::Kind::Pow, at, std::move(base), std::move(exponent));
        }
        return base;
    }

    NodePtr primary() {
        skip_space();
        const char c = peek();
        if (c == '(') {
            ++pos_;
            NodePtr inner = expression();
            expect(')');
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            std::string ident(text_.substr(start, pos_ - start));
            skip_space();
            if (peek() == '(') {
                ++pos_;
                auto call = make(Node::Kind::Call, start);
                call->name = std::move(ident);
                call->args.push_back(expression());
                skip_space();
                if (peek() == ',') fail("functions take a single argument");
                expect(')');
                return call;
            }
            auto n = make(Node::Kind::Name, start);
            n->name = std::move(ident);
            return n;
        }
        if (pos_ >= text_.size()) fail("unexpected end of expression");
        fail("unexpected character '" + std::string(1, c) + "'");
    }

    NodePtr number() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
            ++pos_;
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t p = pos_ + 1;
            if (p < text_.size() && (text_[p] == '+' || text_[p] == '-')) ++p;
            if (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) {
                pos_ = p;
                while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            }
        }
        double value = 0.0;
        const auto res = std::from_chars(text_.data() + start, text_.data() + pos_, value);
        if (res.ec != std::errc() || res.ptr != text_.data() + pos_) {
            pos_ = start;
            fail("malformed number");
        }
        auto n = make(Node::Kind::Number, start);
        n->number = value;
        return n;
    }

    void enter() {
        if (++depth_ > max_nesting) fail("expression nested too deeply");
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    void expect(char c) {
        skip_space();
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    [[noreturn]] void fail(const std::string& message) const { throw ExpressionError(message, pos_); }

    std::string_view text_;
    std::size_t pos_ = 0;
    int depth_ = 0;
};

bool is_function(std::string_view name) { return name == "sin" || name == "cos" || name == "exp"; }

// ---------------------------------------------------------------------------
// Lowering

// a_x kx + a_y ky + c; momentum appears only linearly outside sin/cos/exp.
struct Linear {
    cd ax{0}, ay{0}, c{0};
    bool is_constant() const { return ax == cd(0) && ay == cd(0); }
};

struct Value {
    bool is_linear = true;
    Linear lin;
    FourierSeries series;

    static Value constant(cd c) {
        Value v;
        v.lin.c = c;
        return v;
    }
    static Value from_series(FourierSeries s) {
        Value v;
        v.is_linear = false;
        v.series = std::move(s);
        return v;
    }
};

bool near_integer(double x, int& out) {
    const double r = std::round(x);
    if (std::abs(x - r) > 1e-9 || std::abs(r) > 1e6) return false;
    out = static_cast<int>(r);
    return true;
}

class Lowerer {
public:
    explicit Lowerer(const ParamMap& params) : params_(params) {}

    FourierSeries lower(const Node& root) {
        Value v = eval(root);
        return as_series(v, root.pos);
    }

private:
    FourierSeries as_series(const Value& v, std::size_t pos) const {
        if (!v.is_linear) return v.series;
        if (!v.lin.is_constant())
            throw ExpressionError("momentum may only appear inside sin, cos or exp", pos);
        return FourierSeries::constant(v.lin.c);
    }

    Value eval(const Node& n) {
        switch (n.kind) {
        case Node::Kind::Number: return Value::constant(n.number);
        case Node::Kind::Name: return name(n);
        case Node::Kind::Neg: return scale(eval(*n.args[0]), -1.0);
        case Node::Kind::Add: return add(eval(*n.args[0]), eval(*n.args[1]), 1.0, n.pos);
        case Node::Kind::Sub: return add(eval(*n.args[0]), eval(*n.args[1]), -1.0, n.pos);
        case Node::Kind::Mul: return mul(eval(*n.args[0]), eval(*n.args[1]), n.pos);
        case Node::Kind::Div: {
            Value den = eval(*n.args[1]);
            if (!den.is_linear || !den.lin.is_constant())
                throw ExpressionError("division by a momentum-dependent factor", n.pos);
            if (std::abs(den.lin.c) == 0.0) throw ExpressionError("division by zero", n.pos);
            return scale(eval(*n.args[0]), 1.0 / den.lin.c);
        }
        case Node::Kind::Pow: return pow(n);
        case Node::Kind::Call: return call(n);
        }
        throw ExpressionError("internal: unknown node", n.pos);
    }

    Value name(const Node& n) const {
        if (n.name == "i") return Value::constant(cd(0, 1));
        if (n.name == "pi") return Value::constant(std::numbers::pi);
        if (n.name == "kx" || n.name == "ky") {
            Value v;
            (n.name == "kx" ? v.lin.ax : v.lin.ay) = 1.0;
            return v;
        }
        if (is_function(n.name)) throw ExpressionError("function '" + n.name + "' needs an argument", n.pos);
        const auto it = params_.find(n.name);
        if (it == params_.end()) throw ExpressionError("unknown parameter '" + n.name + "'", n.pos);
        return Value::constant(it->second);
    }

    static Value scale(Value v, cd s) {
        if (v.is_linear) {
            v.lin.ax *= s;
            v.lin.ay *= s;
            v.lin.c *= s;
        } else {
            v.series *= s;
        }
        return v;
    }

    Value add(const Value& a, const Value& b, double sign, std::size_t pos) const {
        if (a.is_linear && b.is_linear) {
            Value v;
            v.lin = {a.lin.ax + sign * b.lin.ax, a.lin.ay + sign * b.lin.ay, a.lin.c + sign * b.lin.c};
            return v;
        }
        return Value::from_series(as_series(a, pos) + as_series(b, pos) * sign);
    }

    Value mul(const Value& a, const Value& b, std::size_t pos) const {
        if (a.is_linear && a.lin.is_constant()) return scale(b, a.lin.c);
        if (b.is_linear && b.lin.is_constant()) return scale(a, b.lin.c);
        return Value::from_series(as_series(a, pos) * as_series(b, pos));
    }

    Value pow(const Node& n) {
        Value exponent = eval(*n.args[1]);
        int e = 0;
        if (!exponent.is_linear || !exponent.lin.is_constant() || exponent.lin.c.imag() != 0.0 ||
            !near_integer(exponent.lin.c.real(), e) || e < 0 || e > 64)
            throw ExpressionError("exponent must be a non-negative integer constant", n.pos);
        Value base = eval(*n.args[0]);
        if (base.is_linear && base.lin.is_constant()) return Value::constant(std::pow(base.lin.c, e));
        FourierSeries b = as_series(base, n.pos);
        FourierSeries result = FourierSeries::constant(1.0);
        for (int j = 0; j < e; ++j) result = result * b;
        return Value::from_series(std::move(result));
    }

    Value call(const Node& n) {
        if (!is_function(n.name))
            throw ExpressionError("'" + n.name + "' is not allowed: entries must be trigonometric polynomials",
                                  n.pos);
        Value arg = eval(*n.args[0]);
        if (!arg.is_linear)
            throw ExpressionError("argument of " + n.name + " must be linear in kx, ky", n.args[0]->pos);
        const Linear& lin = arg.lin;
        int lx = 0, ly = 0;
        if (n.name == "exp") {
            // exp(i*(lx kx + ly ky) + c)
            if (lin.ax.real() != 0.0 || lin.ay.real() != 0.0 || !near_integer(lin.ax.imag(), lx) ||
                !near_integer(lin.ay.imag(), ly))
                throw ExpressionError("exp argument must be i times an integer combination of kx, ky",
                                      n.args[0]->pos);
            return Value::from_series(FourierSeries::harmonic({lx, ly}, std::exp(lin.c)));
        }
        if (lin.ax.imag() != 0.0 || lin.ay.imag() != 0.0 || !near_integer(lin.ax.real(), lx) ||
            !near_integer(lin.ay.real(), ly))
            throw ExpressionError(n.name + " argument must be an integer combination of kx, ky",
                                  n.args[0]->pos);
        const cd plus = std::exp(cd(0, 1) * lin.c);
        const cd minus = std::exp(cd(0, -1) * lin.c);
        FourierSeries fwd = FourierSeries::harmonic({lx, ly}, 1.0);
        FourierSeries bwd = FourierSeries::harmonic({-lx, -ly}, 1.0);
        if (n.name == "cos") return Value::from_series(fwd * (0.5 * plus) + bwd * (0.5 * minus));
        return Value::from_series(fwd * (plus / cd(0, 2)) + bwd * (-minus / cd(0, 2)));
    }

    const ParamMap& params_;
};

// ---------------------------------------------------------------------------
// Direct evaluation

class Evaluator {
public:
    Evaluator(const ParamMap& params, const Eigen::Vector2d& k) : params_(params), k_(k) {}

    cd eval(const Node& n) const {
        switch (n.kind) {
        case Node::Kind::Number: return n.number;
        case Node::Kind::Name:
            if (n.name == "i") return cd(0, 1);
            if (n.name == "pi") return std::numbers::pi;
            if (n.name == "kx") return k_.x();
            if (n.name == "ky") return k_.y();
            if (auto it = params_.find(n.name); it != params_.end()) return it->second;
            throw ExpressionError("unknown parameter '" + n.name + "'", n.pos);
        case Node::Kind::Neg: return -eval(*n.args[0]);
        case Node::Kind::Add: return eval(*n.args[0]) + eval(*n.args[1]);
        case Node::Kind::Sub: return eval(*n.args[0]) - eval(*n.args[1]);
        case Node::Kind::Mul: return eval(*n.args[0]) * eval(*n.args[1]);
        case Node::Kind::Div: return eval(*n.args[0]) / eval(*n.args[1]);
        case Node::Kind::Pow: {
            const cd e = eval(*n.args[1]);
            int p = 0;
            if (e.imag() == 0.0 && near_integer(e.real(), p) && p >= 0) {
                cd r = 1.0;
                const cd b = eval(*n.args[0]);
                for (int j = 0; j < p; ++j) r *= b;
                return r;
            }
            return std::pow(eval(*n.args[0]), e);
        }
        case Node::Kind::Call: {
            const cd a = eval(*n.args[0]);
            if (n.name == "sin") return std::sin(a);
            if (n.name == "cos") return std::cos(a);
            if (n.name == "exp") return std::exp(a);
            throw ExpressionError("unknown function '" + n.name + "'", n.pos);
        }
        }
        return 0.0;
    }

private:
    const ParamMap& params_;
    Eigen::Vector2d k_;
};

void collect_names(const Node& n, std::set<std::string>& out) {
    if (n.kind == Node::Kind::Name && !is_reserved_name(n.name)) out.insert(n.name);
    for (const auto& a : n.args) collect_names(*a, out);
}

} // namespace

bool is_reserved_name(std::string_view name) {
    return name == "kx" || name == "ky" || name == "i" || name == "pi" || is_function(name);
}

FourierSeries lower_expression(std::string_view expr, const ParamMap& params) {
    const NodePtr root = Parser(expr).parse();
    return Lowerer(params).lower(*root);
}

std::complex<double> evaluate_expression(std::string_view expr, const ParamMap& params,
                                         const Eigen::Vector2d& k) {
    const NodePtr root = Parser(expr).parse();
    return Evaluator(params, k).eval(*root);
}

std::set<std::string> referenced_parameters(std::string_view expr) {
    const NodePtr root = Parser(expr).parse();
    std::set<std::string> names;
    collect_names(*root, names);
    return names;
}

} // namespace ddsim
