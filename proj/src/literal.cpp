#include "starlab/literal.hpp"

#include "starlab/error.hpp"

#include <cctype>
#include <optional>

namespace starlab {

namespace detail {

void append_term(std::string &out, const Scalar &c, const std::string &body)
{
    if (c.is_zero()) {
        return;
    }
    const bool first = out.empty();
    bool negative = false;
    std::string mag;
    if (c.is_real()) {
        negative = sgn(c.re()) < 0;
        const Rational a = abs(c.re());
        if (a == 1 && !body.empty()) {
            mag.clear();
        } else {
            mag = rational_to_string(a);
        }
    } else if (sgn(c.re()) == 0) {
        negative = sgn(c.im()) < 0;
        mag = rational_to_string(abs(c.im())) + "i";
    } else {
        mag = c.to_string();
    }
    if (first) {
        out += negative ? "-" : "";
    } else {
        out += negative ? " - " : " + ";
    }
    if (mag.empty()) {
        out += body;
    } else if (body.empty()) {
        out += mag;
    } else {
        out += mag + "*" + body;
    }
}

} // namespace detail

std::string monomial_to_string(const Space &space, const Monomial &m)
{
    std::string s;
    for (std::size_t k = 0; k < m.size(); ++k) {
        if (m[k] == 0) {
            continue;
        }
        if (!s.empty()) {
            s += "*";
        }
        s += var_name(space, static_cast<int>(k));
        if (m[k] > 1) {
            s += "^" + std::to_string(m[k]);
        }
    }
    return s.empty() ? "1" : s;
}

namespace {

std::string body_for(const Space &space, const Monomial &m, int lambda_power)
{
    std::string b;
    if (total_degree(m) > 0) {
        b = monomial_to_string(space, m);
    }
    if (lambda_power > 0) {
        if (!b.empty()) {
            b += "*";
        }
        b += "l";
        if (lambda_power > 1) {
            b += "^" + std::to_string(lambda_power);
        }
    }
    return b;
}

} // namespace

std::string to_string(const Poly &p)
{
    std::string out;
    for (const auto &[m, c] : p.terms()) {
        detail::append_term(out, c, body_for(p.space(), m, 0));
    }
    return out.empty() ? "0" : out;
}

std::string to_string(const SeriesPoly &f)
{
    std::string out;
    for (int r = 0; r <= f.order(); ++r) {
        for (const auto &[m, c] : f[r].terms()) {
            detail::append_term(out, c, body_for(f[r].space(), m, r));
        }
    }
    return out.empty() ? "0" : out;
}

std::string to_string(const ScalarSeries &s)
{
    std::string out;
    for (int r = 0; r <= s.order(); ++r) {
        detail::append_term(out, s[r], body_for(Space{Chart::complex, 0}, Monomial{}, r));
    }
    return out.empty() ? "0" : out;
}

namespace {

struct Token {
    enum class Kind { number, name, op, end } kind = Kind::end;
    Rational value;
    bool imaginary = false;
    std::string text;
    char op = 0;
    std::size_t pos = 0;
};

class Lexer {
public:
    explicit Lexer(std::string_view s) : s_(s) {}

    Token next()
    {
        skip_ws();
        Token t;
        t.pos = i_;
        if (i_ >= s_.size()) {
            return t;
        }
        const char c = s_[i_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            t.kind = Token::Kind::number;
            const std::string num = digits();
            std::string den = "1";
            if (i_ + 1 < s_.size() && s_[i_] == '/' && std::isdigit(static_cast<unsigned char>(s_[i_ + 1]))) {
                ++i_;
                den = digits();
            }
            if (den.find_first_not_of('0') == std::string::npos) {
                throw ParseError("zero denominator in literal", t.pos);
            }
            t.value = Rational(mpz_class(num), mpz_class(den));
            t.value.canonicalize();
            if (i_ < s_.size() && s_[i_] == 'i' && !name_char_at(i_ + 1)) {
                t.imaginary = true;
                ++i_;
            }
            return t;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            t.kind = Token::Kind::name;
            while (name_char_at(i_)) {
                t.text += s_[i_++];
            }
            return t;
        }
        if (std::string_view("+-*/^()").find(c) != std::string_view::npos) {
            t.kind = Token::Kind::op;
            t.op = c;
            ++i_;
            return t;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", i_);
    }

    // Exponents are plain integers ("z^2/3" is z^2 divided by 3).
    int next_integer()
    {
        skip_ws();
        const std::size_t start = i_;
        if (i_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[i_]))) {
            throw ParseError("expected integer exponent", i_);
        }
        const std::string d = digits();
        if (d.size() > 4) {
            throw ParseError("exponent too large", start);
        }
        return std::stoi(d);
    }

private:
    void skip_ws()
    {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) {
            ++i_;
        }
    }
    bool name_char_at(std::size_t k) const
    {
        return k < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[k])) || s_[k] == '_');
    }
    std::string digits()
    {
        std::string d;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
            d += s_[i_++];
        }
        return d;
    }

    std::string_view s_;
    std::size_t i_ = 0;
};

class Parser {
public:
    Parser(std::string_view text, const Space &space, int order, bool allow_lambda)
        : lex_(text), space_(space), order_(order), allow_lambda_(allow_lambda)
    {
        advance();
    }

    SeriesPoly parse()
    {
        SeriesPoly v = expr();
        if (tok_.kind != Token::Kind::end) {
            throw ParseError("unexpected trailing input", tok_.pos);
        }
        return v;
    }

private:
    void advance() { tok_ = lex_.next(); }
    bool is_op(char c) const { return tok_.kind == Token::Kind::op && tok_.op == c; }

    SeriesPoly constant(const Scalar &c) const
    {
        return series_poly(order_, Poly::constant(space_, c));
    }

    SeriesPoly expr()
    {
        SeriesPoly acc = zero_series_poly(order_, space_);
        bool negate = false;
        if (is_op('+') || is_op('-')) {
            negate = is_op('-');
            advance();
        }
        SeriesPoly t = term();
        acc = negate ? acc - t : acc + t;
        while (is_op('+') || is_op('-')) {
            const bool minus = is_op('-');
            advance();
            t = term();
            acc = minus ? acc - t : acc + t;
        }
        return acc;
    }

    SeriesPoly term()
    {
        SeriesPoly acc = factor();
        while (is_op('*') || is_op('/')) {
            const bool divide = is_op('/');
            const std::size_t pos = tok_.pos;
            advance();
            SeriesPoly rhs = factor();
            if (divide) {
                acc = scale(acc, invert_constant(rhs, pos));
            } else {
                acc = acc * rhs;
            }
        }
        return acc;
    }

    ScalarSeries invert_constant(const SeriesPoly &d, std::size_t pos) const
    {
        ScalarSeries s(order_, Scalar());
        for (int r = 0; r <= order_; ++r) {
            if (d[r].total_degree() > 0) {
                throw ParseError("division by a non-constant expression", pos);
            }
            s[r] = d[r].eval_origin();
        }
        if (s[0].is_zero()) {
            throw ParseError("division by a series with vanishing constant term", pos);
        }
        return inverse(s);
    }

    SeriesPoly factor()
    {
        if (is_op('-')) {
            advance();
            return -factor();
        }
        SeriesPoly base = atom();
        if (is_op('^')) {
            const int e = lex_.next_integer();
            advance();
            SeriesPoly out = constant(Scalar(1));
            for (int k = 0; k < e; ++k) {
                out = out * base;
            }
            return out;
        }
        return base;
    }

    SeriesPoly atom()
    {
        const Token t = tok_;
        switch (t.kind) {
        case Token::Kind::number: {
            advance();
            return constant(t.imaginary ? Scalar(0, t.value) : Scalar(t.value));
        }
        case Token::Kind::name: {
            advance();
            return name(t);
        }
        case Token::Kind::op:
            if (t.op == '(') {
                advance();
                SeriesPoly v = expr();
                if (!is_op(')')) {
                    throw ParseError("expected ')'", tok_.pos);
                }
                advance();
                return v;
            }
            throw ParseError(std::string("unexpected '") + t.op + "'", t.pos);
        case Token::Kind::end:
            throw ParseError("unexpected end of input", t.pos);
        }
        throw ParseError("unreachable", t.pos);
    }

    SeriesPoly name(const Token &t) const
    {
        if (t.text == "l") {
            if (!allow_lambda_) {
                throw ParseError("the formal parameter l is not allowed here", t.pos);
            }
            SeriesPoly s = zero_series_poly(order_, space_);
            if (order_ >= 1) {
                s[1] = Poly::constant(space_, Scalar(1));
            }
            return s;
        }
        if (t.text == "i") {
            return constant(Scalar::i());
        }
        const Var v = resolve(t);
        return series_poly(order_, Poly::variable(space_, v));
    }

    Var resolve(const Token &t) const
    {
        std::size_t split = t.text.find_first_of("0123456789");
        const std::string prefix = t.text.substr(0, split);
        int index = 1;
        if (split != std::string::npos) {
            const std::string idx = t.text.substr(split);
            if (idx.find_first_not_of("0123456789") != std::string::npos || idx.size() > 6) {
                throw ParseError("bad variable name '" + t.text + "'", t.pos);
            }
            index = std::stoi(idx);
        } else if (space_.n != 1) {
            throw ParseError("variable '" + t.text + "' needs an index when n != 1", t.pos);
        }
        std::optional<Sort> sort;
        if (prefix == "z") {
            sort = Sort::z;
        } else if (prefix == "zb") {
            sort = Sort::zb;
        } else if (prefix == "q") {
            sort = Sort::q;
        } else if (prefix == "p") {
            sort = Sort::p;
        } else if (prefix == "a") {
            sort = Sort::a;
        } else if (prefix == "b") {
            sort = Sort::b;
        }
        if (!sort) {
            throw ParseError("unknown name '" + t.text + "'", t.pos);
        }
        const Var v{*sort, index};
        try {
            (void)slot_of(space_, v);
        } catch (const ChartMismatch &) {
            throw ParseError("variable '" + t.text + "' does not exist on " + to_string(space_), t.pos);
        }
        return v;
    }

    Lexer lex_;
    Token tok_;
    Space space_;
    int order_;
    bool allow_lambda_;
};

} // namespace

SeriesPoly parse_series_poly(std::string_view text, const Space &space, int order)
{
    return Parser(text, space, order, true).parse();
}

Poly parse_poly(std::string_view text, const Space &space)
{
    return Parser(text, space, 0, false).parse()[0];
}

ScalarSeries parse_series(std::string_view text, int order)
{
    const SeriesPoly f = Parser(text, Space{Chart::complex, 0}, order, true).parse();
    return eval_origin(f);
}

Scalar parse_scalar(std::string_view text)
{
    return parse_poly(text, Space{Chart::complex, 0}).eval_origin();
}

Monomial parse_monomial(std::string_view text, const Space &space)
{
    const Poly p = parse_poly(text, space);
    if (p.terms().size() != 1 || !(p.terms().begin()->second == Scalar(1))) {
        throw ParseError("'" + std::string(text) + "' is not a monomial", 0);
    }
    return p.terms().begin()->first;
}

} // namespace starlab
