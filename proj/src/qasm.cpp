#include <cctype>
#include <cmath>
#include <string>
#include <vector>

#include "laymat/circuit.hpp"

namespace laymat {

namespace {

enum class Tok { Id, Int, Real, String, Symbol, Arrow, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    double value = 0.0;
    int line = 1;
    int col = 1;
};

class Lexer {
public:
    explicit Lexer(const std::string& src) : src_(src) { advance(); }

    const Token& peek() const { return tok_; }

    Token next() {
        Token t = tok_;
        advance();
        return t;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg, tok_.line, tok_.col);
    }

private:
    void advance() {
        skip_space_and_comments();
        tok_.line = line_;
        tok_.col = col_;
        if (pos_ >= src_.size()) {
            tok_.kind = Tok::End;
            tok_.text.clear();
            return;
        }
        char c = src_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                bump();
            tok_.kind = Tok::Id;
            tok_.text = src_.substr(start, pos_ - start);
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '.' && pos_ + 1 < src_.size() &&
             std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
            size_t start = pos_;
            bool is_real = false;
            while (pos_ < src_.size()) {
                char d = src_[pos_];
                if (std::isdigit(static_cast<unsigned char>(d))) {
                    bump();
                } else if (d == '.') {
                    is_real = true;
                    bump();
                } else if (d == 'e' || d == 'E') {
                    is_real = true;
                    bump();
                    if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) bump();
                } else {
                    break;
                }
            }
            tok_.text = src_.substr(start, pos_ - start);
            tok_.kind = is_real ? Tok::Real : Tok::Int;
            tok_.value = std::stod(tok_.text);
            return;
        }
        if (c == '"') {
            bump();
            size_t start = pos_;
            while (pos_ < src_.size() && src_[pos_] != '"') bump();
            if (pos_ >= src_.size()) throw ParseError("unterminated string", line_, col_);
            tok_.kind = Tok::String;
            tok_.text = src_.substr(start, pos_ - start);
            bump();
            return;
        }
        if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
            bump();
            bump();
            tok_.kind = Tok::Arrow;
            tok_.text = "->";
            return;
        }
        if (std::string("()[]{},;+-*/").find(c) != std::string::npos) {
            tok_.kind = Tok::Symbol;
            tok_.text = std::string(1, c);
            bump();
            return;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", line_, col_);
    }

    void skip_space_and_comments() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                bump();
            } else if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
                while (pos_ < src_.size() && src_[pos_] != '\n') bump();
            } else {
                break;
            }
        }
    }

    void bump() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    const std::string& src_;
    size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    Token tok_;
};

class Parser {
public:
    Parser(const std::string& src, const GateRegistry& registry)
        : lex_(src), registry_(registry) {}

    QuantumCircuit parse() {
        if (lex_.peek().kind == Tok::Id && lex_.peek().text == "OPENQASM") {
            lex_.next();
            expect_number("version");
            expect_symbol(";");
        }
        while (lex_.peek().kind != Tok::End) statement();
        return std::move(circuit_);
    }

private:
    struct Register {
        int offset;
        int size;
    };

    void statement() {
        Token t = lex_.peek();
        if (t.kind != Tok::Id) lex_.fail("expected statement");
        if (t.text == "include") {
            // accepted and ignored; routed circuits from common toolchains carry it
            lex_.next();
            if (lex_.peek().kind != Tok::String) lex_.fail("expected include path string");
            lex_.next();
            expect_symbol(";");
        } else if (t.text == "qreg") {
            declare_register(qregs_, circuit_.num_qubits);
        } else if (t.text == "creg") {
            declare_register(cregs_, circuit_.num_clbits);
        } else if (t.text == "measure") {
            lex_.next();
            int q = resolve(qregs_, "qubit");
            if (lex_.peek().kind != Tok::Arrow) lex_.fail("expected '->' in measure");
            lex_.next();
            int c = resolve(cregs_, "clbit");
            expect_symbol(";");
            circuit_.add_measure(q, c);
        } else if (t.text == "reset") {
            lex_.next();
            int q = resolve(qregs_, "qubit");
            expect_symbol(";");
            circuit_.add_reset(q);
        } else if (t.text == "barrier") {
            lex_.next();
            std::vector<int> qs;
            qs.push_back(resolve(qregs_, "qubit"));
            while (is_symbol(",")) {
                lex_.next();
                qs.push_back(resolve(qregs_, "qubit"));
            }
            expect_symbol(";");
            circuit_.add_barrier(std::move(qs));
        } else if (t.text == "if" || t.text == "gate" || t.text == "opaque") {
            lex_.fail("'" + t.text + "' is not supported in this QASM subset");
        } else {
            gate_application();
        }
    }

    void declare_register(std::map<std::string, Register>& regs, int& total) {
        lex_.next();
        if (lex_.peek().kind != Tok::Id) lex_.fail("expected register name");
        std::string name = lex_.next().text;
        if (regs.count(name)) lex_.fail("register '" + name + "' redeclared");
        expect_symbol("[");
        if (lex_.peek().kind != Tok::Int) lex_.fail("expected register size");
        int size = static_cast<int>(lex_.next().value);
        if (size <= 0) lex_.fail("register size must be positive");
        expect_symbol("]");
        expect_symbol(";");
        regs[name] = {total, size};
        total += size;
    }

    int resolve(const std::map<std::string, Register>& regs, const char* what) {
        if (lex_.peek().kind != Tok::Id) lex_.fail(std::string("expected ") + what + " reference");
        Token name = lex_.next();
        auto it = regs.find(name.text);
        if (it == regs.end())
            throw ParseError("undeclared register '" + name.text + "'", name.line, name.col);
        expect_symbol("[");
        if (lex_.peek().kind != Tok::Int) lex_.fail("expected index");
        Token idx = lex_.next();
        int i = static_cast<int>(idx.value);
        if (i < 0 || i >= it->second.size)
            throw ParseError("index " + std::to_string(i) + " out of range for register '" +
                                 name.text + "' of size " + std::to_string(it->second.size),
                             idx.line, idx.col);
        expect_symbol("]");
        return it->second.offset + i;
    }

    void gate_application() {
        Token name = lex_.next();
        if (!registry_.contains(name.text))
            throw ParseError("unknown gate name '" + name.text + "'", name.line, name.col);
        std::vector<double> params;
        if (is_symbol("(")) {
            lex_.next();
            params.push_back(expr());
            while (is_symbol(",")) {
                lex_.next();
                params.push_back(expr());
            }
            expect_symbol(")");
        }
        std::vector<int> qs;
        qs.push_back(resolve(qregs_, "qubit"));
        while (is_symbol(",")) {
            lex_.next();
            qs.push_back(resolve(qregs_, "qubit"));
        }
        expect_symbol(";");
        const int arity = registry_.arity(name.text);
        if (static_cast<int>(qs.size()) != arity)
            throw ParseError("gate '" + name.text + "' expects " + std::to_string(arity) +
                                 " qubit(s), got " + std::to_string(qs.size()),
                             name.line, name.col);
        if (qs.size() == 2 && qs[0] == qs[1])
            throw ParseError("duplicate qubit in gate '" + name.text + "'", name.line, name.col);
        circuit_.add_gate(name.text, std::move(qs), std::move(params), registry_);
    }

    // params allow +,-,*,/ over literals and pi, e.g. "pi/2", "-3*pi/4"
    double expr() {
        double v = term();
        while (is_symbol("+") || is_symbol("-")) {
            bool minus = lex_.next().text == "-";
            double rhs = term();
            v = minus ? v - rhs : v + rhs;
        }
        return v;
    }

    double term() {
        double v = unary();
        while (is_symbol("*") || is_symbol("/")) {
            bool div = lex_.next().text == "/";
            double rhs = unary();
            v = div ? v / rhs : v * rhs;
        }
        return v;
    }

    double unary() {
        if (is_symbol("-")) {
            lex_.next();
            return -unary();
        }
        if (is_symbol("+")) {
            lex_.next();
            return unary();
        }
        Token t = lex_.peek();
        if (t.kind == Tok::Int || t.kind == Tok::Real) {
            lex_.next();
            return t.value;
        }
        if (t.kind == Tok::Id && t.text == "pi") {
            lex_.next();
            return M_PI;
        }
        if (is_symbol("(")) {
            lex_.next();
            double v = expr();
            expect_symbol(")");
            return v;
        }
        lex_.fail("expected parameter expression");
    }

    bool is_symbol(const char* s) const {
        return lex_.peek().kind == Tok::Symbol && lex_.peek().text == s;
    }

    void expect_symbol(const char* s) {
        if (!is_symbol(s)) lex_.fail(std::string("expected '") + s + "'");
        lex_.next();
    }

    void expect_number(const char* what) {
        if (lex_.peek().kind != Tok::Int && lex_.peek().kind != Tok::Real)
            lex_.fail(std::string("expected ") + what);
        lex_.next();
    }

    Lexer lex_;
    const GateRegistry& registry_;
    QuantumCircuit circuit_;
    std::map<std::string, Register> qregs_;
    std::map<std::string, Register> cregs_;
};

}  // namespace

QuantumCircuit parse_circuit(const std::string& text, const GateRegistry& registry) {
    Parser p(text, registry);
    QuantumCircuit c = p.parse();
    validate_circuit(c, registry);
    return c;
}

}  // namespace laymat
