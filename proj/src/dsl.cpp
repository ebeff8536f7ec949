#include "solnscope/dsl.hpp"

#include <cctype>

#include "solnscope/errors.hpp"

namespace solnscope {

namespace {

class Parser {
public:
    Parser(const std::string& s, std::size_t n, int line, int col) : s_(s), n_(n), line_(line), col_(col) {}

    FuncExpr expr() {
        FuncExpr f = FuncExpr::linear(QVec(n_, Q(0)));
        bool only_norm1 = true;
        std::size_t nterms = 0;
        do {
            ws();
            term(f, only_norm1);
            ++nterms;
            ws();
        } while (eat('+'));
        ws();
        if (pos_ < s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        if (only_norm1 && nterms == 1) f.norm1 = true;
        return f;
    }

    Q rational() {
        bool minus = eat('-');
        Q num = digits();
        Q q = num;
        if (eat('/')) {
            std::size_t dpos = pos_;
            Q den = digits();
            if (den == 0) fail_at(dpos, "zero denominator");
            q = num / den;
        }
        return minus ? Q(-q) : q;
    }

    void end() {
        ws();
        if (pos_ < s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    }

private:
    [[noreturn]] void fail_at(std::size_t p, const std::string& msg) const {
        throw ParseError(msg, line_, col_ + static_cast<int>(p));
    }
    [[noreturn]] void fail(const std::string& msg) const { fail_at(pos_, msg); }

    void ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool peek(char c) {
        ws();
        return pos_ < s_.size() && s_[pos_] == c;
    }
    bool eat(char c) {
        if (!peek(c)) return false;
        ++pos_;
        return true;
    }
    void expect(char c) {
        if (!eat(c)) fail(std::string("expected '") + c + "'");
    }
    bool digit_next() {
        ws();
        return pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]));
    }
    Q digits() {
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected a number");
        return Q(s_.substr(start, pos_ - start));
    }
    std::string ident() {
        ws();
        std::size_t start = pos_;
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
        if (start == pos_) fail("expected a name");
        return s_.substr(start, pos_ - start);
    }
    bool ident_next() {
        ws();
        return pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_');
    }

    std::size_t var() {
        ws();
        std::size_t at = pos_;
        std::string id = ident();
        if (id.size() < 2 || id[0] != 'x') fail_at(at, "expected a variable x1..x" + std::to_string(n_));
        for (std::size_t k = 1; k < id.size(); ++k)
            if (!std::isdigit(static_cast<unsigned char>(id[k]))) fail_at(at, "expected a variable x1..x" + std::to_string(n_));
        std::size_t k = std::stoul(id.substr(1));
        if (k < 1 || k > n_)
            throw DimensionError("line " + std::to_string(line_) + ", column " + std::to_string(col_ + static_cast<int>(at)) + ": variable " + id +
                                 " outside R^" + std::to_string(n_));
        return k - 1;
    }

    // signed sum of weighted variables and constants
    void affine(QVec& w, Q& c) {
        w.assign(n_, Q(0));
        c = 0;
        bool first = true;
        for (;;) {
            ws();
            Q sign = 1;
            if (eat('-'))
                sign = -1;
            else if (!first && !eat('+'))
                break;
            else if (first)
                eat('+');
            first = false;
            if (digit_next()) {
                Q q = rational();
                if (eat('*') || ident_next()) {
                    w[var()] += sign * q;
                } else {
                    c += sign * q;
                }
            } else {
                w[var()] += sign;
            }
        }
    }

    void term(FuncExpr& f, bool& only_norm1) {
        Q lambda = 1;
        if (digit_next()) {
            std::size_t at = pos_;
            lambda = rational();
            if (lambda <= 0) fail_at(at, "weights must be positive");
            expect('*');
        }
        std::size_t at = pos_;
        std::string name = ident();
        ws();
        std::size_t paren = pos_;
        expect('(');
        auto add = [&](Atom a) {
            a.lambda = lambda;
            f.add(a);
        };
        if (name != "norm1" || lambda != 1) only_norm1 = false;
        if (name == "lin") {
            QVec c;
            if (!peek(')')) {
                do c.push_back(rational());
                while (eat(','));
            }
            if (c.size() != n_)
                throw DimensionError("line " + std::to_string(line_) + ", column " + std::to_string(col_ + static_cast<int>(at)) + ": lin has " +
                                     std::to_string(c.size()) + " coefficients, expected " + std::to_string(n_));
            for (std::size_t k = 0; k < n_; ++k) f.lin[k] += lambda * c[k];
        } else if (name == "abs") {
            add(atom_abs(n_, var()));
        } else if (name == "norm1") {
            for (std::size_t k = 0; k < n_; ++k) add(atom_abs(n_, k));
        } else if (name == "exp" || name == "neglog") {
            QVec w;
            Q c;
            std::size_t apos = pos_;
            affine(w, c);
            if (is_zero(w)) fail_at(apos, "argument must depend on x");
            add(name == "exp" ? atom_exp(w, c) : atom_neglog(w, c));
        } else if (name == "hinge") {
            ws();
            if (s_.compare(pos_, 4, "abs(") == 0) {
                ident();
                expect('(');
                std::size_t i = var();
                expect(')');
                Q c = 0;
                if (eat('-')) {
                    std::size_t cpos = pos_;
                    c = rational();
                    if (c < 0) fail_at(cpos, "offset must be nonnegative");
                }
                add(atom_hinge_abs(n_, i, c));
            } else {
                QVec w;
                Q c;
                std::size_t apos = pos_;
                affine(w, c);
                if (is_zero(w)) fail_at(apos, "argument must depend on x");
                add(atom_hinge(w, c));
            }
        } else if (name == "hinge_expdiff" || name == "ind_hyperbola") {
            std::size_t i = var();
            expect(',');
            std::size_t j = var();
            if (i == j) fail("the two variables must differ");
            add(name == "hinge_expdiff" ? atom_hinge_expdiff(n_, i, j) : atom_ind_hyperbola(n_, i, j));
        } else if (name == "quadshift") {
            std::size_t i = var();
            expect(',');
            add(atom_quadshift(n_, i, rational()));
        } else {
            throw UnknownAtom("line " + std::to_string(line_) + ", column " + std::to_string(col_ + static_cast<int>(at)) + ": unknown atom '" +
                              name + "'");
        }
        if (!eat(')')) {
            if (pos_ >= s_.size()) fail_at(paren, "unclosed parenthesis");
            fail("expected ')'");
        }
    }

    const std::string& s_;
    std::size_t n_;
    int line_, col_;
    std::size_t pos_ = 0;
};

}  // namespace

FuncExpr parse_function(const std::string& text, std::size_t n, int line, int column) {
    Parser p(text, n, line, column);
    return p.expr();
}

Q parse_rational(const std::string& text, int line, int column) {
    Parser p(text, 0, line, column);
    Q q = p.rational();
    p.end();
    return q;
}

}  // namespace solnscope
