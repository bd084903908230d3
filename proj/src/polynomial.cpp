#include "expander/polynomial.hpp"

#include <cctype>
#include <vector>

namespace expander {

struct Polynomial::Node {
    enum class Kind { constant, variable, negate, add, sub, mul, div, pow } kind;
    BigInt value;
    unsigned index = 0;    // variable index (0-based) or exponent
    std::shared_ptr<const Node> a, b;
};

namespace {

using Node = Polynomial::Node;
using NodePtr = std::shared_ptr<const Node>;

NodePtr make(Node::Kind kind, NodePtr a = nullptr, NodePtr b = nullptr)
{
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}

class Parser {
public:
    explicit Parser(std::string text) : s_(normalize(std::move(text))) {}

    NodePtr parse(unsigned& arity)
    {
        auto n = expr();
        skip();
        if (pos_ != s_.size())
            fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        arity = arity_;
        return n;
    }

private:
    static std::string normalize(std::string t)
    {
        const std::pair<std::string, char> subs[] = {{"\xE2\x88\x92", '-'}, {"\xC2\xB7", '*'}, {"\xE2\x8B\x85", '*'}};
        for (const auto& [from, to] : subs)
            for (auto p = t.find(from); p != std::string::npos; p = t.find(from))
                t.replace(p, from.size(), 1, to);
        return t;
    }

    [[noreturn]] void fail(const std::string& what) const
    {
        throw PreconditionError("polynomial parse error at column " + std::to_string(pos_ + 1) + ": " + what);
    }

    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    bool eat(char c)
    {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    NodePtr expr()
    {
        auto n = term();
        for (;;) {
            if (eat('+'))
                n = make(Node::Kind::add, n, term());
            else if (eat('-'))
                n = make(Node::Kind::sub, n, term());
            else
                return n;
        }
    }

    NodePtr term()
    {
        auto n = unary();
        for (;;) {
            if (eat('*'))
                n = make(Node::Kind::mul, n, unary());
            else if (eat('/'))
                n = make(Node::Kind::div, n, unary());
            else
                return n;
        }
    }

    NodePtr unary()
    {
        if (eat('-'))
            return make(Node::Kind::negate, unary());
        if (eat('+'))
            return unary();
        return power();
    }

    NodePtr power()
    {
        auto base = atom();
        if (!eat('^'))
            return base;
        skip();
        const auto start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        if (start == pos_)
            fail("exponent must be a non-negative integer literal");
        if (pos_ - start > 4)
            fail("exponent too large");
        auto n = make(Node::Kind::pow, base);
        const_cast<Node&>(*n).index = static_cast<unsigned>(std::stoul(s_.substr(start, pos_ - start)));
        return n;
    }

    NodePtr atom()
    {
        skip();
        if (pos_ >= s_.size())
            fail("unexpected end of input");
        if (eat('(')) {
            auto n = expr();
            if (!eat(')'))
                fail("expected ')'");
            return n;
        }
        const char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            const auto start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                ++pos_;
            auto n = make(Node::Kind::constant);
            const_cast<Node&>(*n).value = BigInt(s_.substr(start, pos_ - start));
            return n;
        }
        if (c == 'x') {
            ++pos_;
            const auto start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                ++pos_;
            unsigned idx = 1;
            if (pos_ > start) {
                if (pos_ - start > 3)
                    fail("variable index too large");
                idx = static_cast<unsigned>(std::stoul(s_.substr(start, pos_ - start)));
                if (idx == 0)
                    fail("variables are numbered from x1");
            }
            arity_ = std::max(arity_, idx);
            auto n = make(Node::Kind::variable);
            const_cast<Node&>(*n).index = idx - 1;
            return n;
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    std::string s_;
    std::size_t pos_ = 0;
    unsigned arity_ = 0;
};

BigInt eval(const Node& n, std::span<const BigInt> x)
{
    switch (n.kind) {
    case Node::Kind::constant:
        return n.value;
    case Node::Kind::variable:
        return x[n.index];
    case Node::Kind::negate:
        return -eval(*n.a, x);
    case Node::Kind::add:
        return eval(*n.a, x) + eval(*n.b, x);
    case Node::Kind::sub:
        return eval(*n.a, x) - eval(*n.b, x);
    case Node::Kind::mul:
        return eval(*n.a, x) * eval(*n.b, x);
    case Node::Kind::div: {
        const BigInt num = eval(*n.a, x), den = eval(*n.b, x);
        if (den == 0)
            throw NonIntegralError("division by zero at (" + format_vector(ZVector(x.begin(), x.end())) + ")",
                                   ZVector(x.begin(), x.end()));
        if (num % den != 0)
            throw NonIntegralError("non-integral value " + num.str() + "/" + den.str() + " at (" +
                                       format_vector(ZVector(x.begin(), x.end())) + ")",
                                   ZVector(x.begin(), x.end()));
        return num / den;
    }
    case Node::Kind::pow:
        return pow(eval(*n.a, x), n.index);
    }
    return 0;
}

} // namespace

Polynomial Polynomial::parse(const std::string& text)
{
    Polynomial p;
    p.text_ = text;
    p.root_ = Parser(text).parse(p.arity_);
    return p;
}

BigInt Polynomial::operator()(std::span<const BigInt> x) const
{
    if (x.size() < arity_)
        throw PreconditionError("polynomial uses x" + std::to_string(arity_) + " but the point has " +
                                std::to_string(x.size()) + " coordinates");
    return eval(*root_, x);
}

BigInt Polynomial::at(const BigInt& x) const
{
    const BigInt pt[1] = {x};
    return (*this)(std::span<const BigInt>(pt, 1));
}

} // namespace expander
