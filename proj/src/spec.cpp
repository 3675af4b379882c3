#include "qadm/spec.hpp"

#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace qadm {

std::string_view cmp_name(CmpOp op) {
    switch (op) {
    case CmpOp::Lt: return "<";
    case CmpOp::Le: return "<=";
    case CmpOp::Gt: return ">";
    case CmpOp::Ge: return ">=";
    default: return "=";
    }
}

namespace {

struct Token {
    enum Kind { Word, Number, String, Sym, End } kind;
    std::string text;
    int line;
};

std::vector<Token> tokenize(std::string_view s) {
    std::vector<Token> out;
    int line = 1;
    std::size_t i = 0;
    while (i < s.size()) {
        char c = s[i];
        if (c == '\n') {
            ++line, ++i;
        } else if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
        } else if (c == '#') {
            while (i < s.size() && s[i] != '\n') ++i;
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
            out.push_back({Token::Word, std::string(s.substr(i, j - i)), line});
            i = j;
        } else if (std::isdigit(static_cast<unsigned char>(c)) || (c == '-' && i + 1 < s.size() && std::isdigit(static_cast<unsigned char>(s[i + 1])))) {
            std::size_t j = i + 1;
            while (j < s.size() && (std::isdigit(static_cast<unsigned char>(s[j])) || s[j] == '/')) ++j;
            out.push_back({Token::Number, std::string(s.substr(i, j - i)), line});
            i = j;
        } else if (c == '"') {
            std::size_t j = s.find('"', i + 1);
            if (j == std::string_view::npos) throw ParseError(line, "unterminated string");
            out.push_back({Token::String, std::string(s.substr(i + 1, j - i - 1)), line});
            i = j + 1;
        } else {
            static const char* two[] = {"&&", "||", "<=", ">="};
            std::string sym(1, c);
            for (auto t : two)
                if (s.substr(i, 2) == t) sym = t;
            if (sym.size() == 1 && std::string("()!<>=").find(c) == std::string::npos)
                throw ParseError(line, std::string("unexpected character '") + c + "'");
            out.push_back({Token::Sym, sym, line});
            i += sym.size();
        }
    }
    out.push_back({Token::End, "", line});
    return out;
}

struct Parser {
    const Game& g;
    const std::string& base;
    std::vector<Token> toks;
    std::size_t pos = 0;
    PayoffSpec spec;

    const Token& peek() const { return toks[pos]; }
    bool accept(const std::string& sym) {
        if (peek().kind == Token::Sym && peek().text == sym) return ++pos, true;
        return false;
    }
    void expect(const std::string& sym) {
        if (!accept(sym)) throw ParseError(peek().line, "expected '" + sym + "'");
    }

    SpecNode expr() {
        SpecNode n = conj();
        while (accept("||")) n = combine(SpecNode::Or, std::move(n), conj());
        return n;
    }
    SpecNode conj() {
        SpecNode n = unary();
        while (accept("&&")) n = combine(SpecNode::And, std::move(n), unary());
        return n;
    }
    static SpecNode combine(SpecNode::Kind k, SpecNode a, SpecNode b) {
        SpecNode n;
        n.kind = k;
        n.kids.push_back(std::move(a));
        n.kids.push_back(std::move(b));
        return n;
    }
    SpecNode unary() {
        if (accept("!")) {
            SpecNode n;
            n.kind = SpecNode::Not;
            n.kids.push_back(unary());
            return n;
        }
        if (accept("(")) {
            SpecNode n = expr();
            expect(")");
            return n;
        }
        const Token t = peek();
        if (t.kind != Token::Word) throw ParseError(t.line, "expected an atom");
        ++pos;
        SpecNode n;
        if (t.text == "true") return n;
        if (t.text == "false") {
            n.kind = SpecNode::False;
            return n;
        }
        if (t.text == "automaton") {
            if (peek().kind != Token::String) throw ParseError(peek().line, "expected a quoted file name");
            std::string file = toks[pos++].text;
            std::filesystem::path p(file);
            if (p.is_relative()) p = std::filesystem::path(base) / p;
            try {
                spec.automata.push_back(load_automaton(g, p.string()));
            } catch (const Error& e) {
                throw ParseError(t.line, "automaton " + file + ": " + e.what());
            }
            spec.paths.push_back(file);
            n.kind = SpecNode::Automaton;
            n.automaton = static_cast<int>(spec.automata.size()) - 1;
            return n;
        }
        if (t.text != "payoff") throw ParseError(t.line, "unknown atom " + t.text);
        expect("(");
        if (peek().kind != Token::Number) throw ParseError(peek().line, "expected a player number");
        try {
            n.player = std::stoi(toks[pos++].text);
        } catch (const std::exception&) {
            throw ParseError(t.line, "bad player number");
        }
        if (n.player < 1 || n.player > g.players())
            throw ParseError(t.line, "player " + std::to_string(n.player) + " out of range");
        expect(")");
        const Token op = peek();
        if (op.kind != Token::Sym) throw ParseError(op.line, "expected a comparison");
        ++pos;
        if (op.text == "<") n.op = CmpOp::Lt;
        else if (op.text == "<=") n.op = CmpOp::Le;
        else if (op.text == ">") n.op = CmpOp::Gt;
        else if (op.text == ">=") n.op = CmpOp::Ge;
        else if (op.text == "=") n.op = CmpOp::Eq;
        else throw ParseError(op.line, "expected a comparison");
        if (peek().kind != Token::Number) throw ParseError(peek().line, "expected a rational");
        try {
            n.q = Rational::parse(toks[pos++].text);
        } catch (const std::exception& e) {
            throw ParseError(op.line, e.what());
        }
        n.kind = SpecNode::Atom;
        return n;
    }
};

void print(std::ostream& o, const PayoffSpec& s, const SpecNode& n) {
    switch (n.kind) {
    case SpecNode::True: o << "true"; break;
    case SpecNode::False: o << "false"; break;
    case SpecNode::Atom: o << "payoff(" << n.player << ") " << cmp_name(n.op) << " " << n.q; break;
    case SpecNode::Automaton: o << "automaton \"" << s.paths[n.automaton] << "\""; break;
    case SpecNode::Not: o << "!"; print(o, s, n.kids[0]); break;
    default:
        o << "(";
        print(o, s, n.kids[0]);
        o << (n.kind == SpecNode::And ? " && " : " || ");
        print(o, s, n.kids[1]);
        o << ")";
    }
}

bool eval(const Game& g, const PayoffSpec& s, const SpecNode& n, const Lasso& l) {
    switch (n.kind) {
    case SpecNode::True: return true;
    case SpecNode::False: return false;
    case SpecNode::Atom: {
        Rational x = payoff_of_lasso(g.measure(), g, n.player, l);
        switch (n.op) {
        case CmpOp::Lt: return x < n.q;
        case CmpOp::Le: return x <= n.q;
        case CmpOp::Gt: return x > n.q;
        case CmpOp::Ge: return x >= n.q;
        default: return x == n.q;
        }
    }
    case SpecNode::Automaton: return accepts(s.automata[n.automaton], l);
    case SpecNode::Not: return !eval(g, s, n.kids[0], l);
    case SpecNode::And: return eval(g, s, n.kids[0], l) && eval(g, s, n.kids[1], l);
    default: return eval(g, s, n.kids[0], l) || eval(g, s, n.kids[1], l);
    }
}

} // namespace

PayoffSpec parse_payoff_spec(const Game& g, std::string_view text, const std::string& base_dir) {
    Parser p{g, base_dir, tokenize(text), 0, {}};
    if (p.peek().kind == Token::End) throw ParseError(0, "empty specification");
    p.spec.root = p.expr();
    if (p.peek().kind != Token::End) throw ParseError(p.peek().line, "unexpected '" + p.peek().text + "'");
    return std::move(p.spec);
}

PayoffSpec load_payoff_spec(const Game& g, const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error("cannot read " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_payoff_spec(g, ss.str(), std::filesystem::path(path).parent_path().string());
}

std::string spec_str(const PayoffSpec& s) {
    std::ostringstream o;
    print(o, s, s.root);
    return o.str();
}

bool eval_spec_on_lasso(const Game& g, const PayoffSpec& s, const Lasso& l) {
    check_lasso(g, l);
    return eval(g, s, s.root, l);
}

EdgeAutomaton payoff_atom_automaton(const Game& g, int player, const Rational& q, bool strict) {
    const Measure m = g.measure();
    if (is_mean_payoff(m)) throw UnsupportedMeasure("mean-payoff atoms are not omega-regular");
    auto good = [&](int e) { return strict ? g.weight(e, player) > q : g.weight(e, player) >= q; };
    EdgeAutomaton a;
    const std::string tag = std::string(strict ? "gt" : "ge");
    // state 0 is initial; state 1 records the event relevant to the measure
    switch (m) {
    case Measure::Sup: {
        a.add_state("wait_" + tag, 1);
        a.add_state("seen_" + tag, 2);
        for (int e = 0; e < static_cast<int>(g.edges().size()); ++e) {
            auto& ed = g.edge(e);
            a.add_transition(0, ed.src, ed.dst, good(e) ? 1 : 0);
            a.add_transition(1, ed.src, ed.dst, 1);
        }
        break;
    }
    case Measure::Inf: {
        a.add_state("safe_" + tag, 0);
        a.add_state("broken_" + tag, 1);
        for (int e = 0; e < static_cast<int>(g.edges().size()); ++e) {
            auto& ed = g.edge(e);
            a.add_transition(0, ed.src, ed.dst, good(e) ? 0 : 1);
            a.add_transition(1, ed.src, ed.dst, 1);
        }
        break;
    }
    default: {
        const bool sup = m == Measure::LimSup;
        a.add_state("low_" + tag, 1);
        a.add_state("high_" + tag, sup ? 2 : 0);
        for (int e = 0; e < static_cast<int>(g.edges().size()); ++e)
            for (int s = 0; s < 2; ++s) a.add_transition(s, g.edge(e).src, g.edge(e).dst, good(e) ? 1 : 0);
        break;
    }
    }
    return a;
}

} // namespace qadm
