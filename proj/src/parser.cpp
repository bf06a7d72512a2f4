// ============================================================================
// parser.cpp: lexer, recursive-descent parser and printer for model files
// ============================================================================

#include "pta/parser.hpp"

#include "pta/error.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

namespace pta {

namespace {

enum class Tok { Ident, Int, Symbol, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    std::size_t line = 1;
    std::size_t column = 1;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '\'';
}

std::vector<Token> lex(std::string_view src) {
    std::vector<Token> out;
    std::size_t line = 1, col = 1, i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    static const char* const kSymbols[] = {"->", "&&", "<=", ">=", "==", "<", ">", ";", "{",
                                           "}",  "(",  ")",  ",",  "!",  "?"};
    while (i < src.size()) {
        char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
            while (i < src.size() && src[i] != '\n') advance(1);
            continue;
        }
        Token t;
        t.line = line;
        t.column = col;
        if (ident_start(c)) {
            std::size_t j = i;
            while (j < src.size() && ident_char(src[j])) ++j;
            t.kind = Tok::Ident;
            t.text = std::string(src.substr(i, j - i));
            advance(j - i);
            out.push_back(std::move(t));
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            t.kind = Tok::Int;
            t.text = std::string(src.substr(i, j - i));
            advance(j - i);
            out.push_back(std::move(t));
            continue;
        }
        bool matched = false;
        for (const char* sym : kSymbols) {
            std::string_view s(sym);
            if (src.substr(i, s.size()) == s) {
                t.kind = Tok::Symbol;
                t.text = std::string(s);
                advance(s.size());
                out.push_back(std::move(t));
                matched = true;
                break;
            }
        }
        if (!matched) {
            throw ParseError(std::string("unexpected character '") + c + "'", line, col);
        }
    }
    Token end;
    end.line = line;
    end.column = col;
    out.push_back(end);
    return out;
}

struct PendingTransition {
    Token source, target;
    Transition transition;
};

class Parser {
public:
    explicit Parser(std::string_view text) : tokens_(lex(text)) {}

    Network parse() {
        while (peek().kind == Tok::Ident &&
               (peek().text == "clocks" || peek().text == "params" || peek().text == "channels")) {
            parse_declaration();
        }
        while (peek().kind != Tok::End) {
            expect_keyword("automaton");
            net_.automata.push_back(parse_automaton());
        }
        if (net_.automata.empty()) {
            throw ParseError("expected at least one automaton", peek().line, peek().column);
        }
        return std::move(net_);
    }

private:
    const Token& peek() const { return tokens_[pos_]; }
    const Token& next() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }

    [[noreturn]] void fail(const std::string& msg, const Token& at) const {
        throw ParseError(msg, at.line, at.column);
    }

    bool accept_symbol(std::string_view s) {
        if (peek().kind == Tok::Symbol && peek().text == s) {
            next();
            return true;
        }
        return false;
    }

    void expect_symbol(std::string_view s) {
        if (!accept_symbol(s)) {
            fail("expected '" + std::string(s) + "' but found '" + describe(peek()) + "'", peek());
        }
    }

    void expect_keyword(std::string_view kw) {
        if (peek().kind != Tok::Ident || peek().text != kw) {
            fail("expected '" + std::string(kw) + "' but found '" + describe(peek()) + "'", peek());
        }
        next();
    }

    Token expect_ident(std::string_view what) {
        if (peek().kind != Tok::Ident) {
            fail("expected " + std::string(what) + " but found '" + describe(peek()) + "'", peek());
        }
        return next();
    }

    static std::string describe(const Token& t) { return t.kind == Tok::End ? "end of input" : t.text; }

    void parse_declaration() {
        Token kw = next();
        while (peek().kind == Tok::Ident) {
            Token id = next();
            auto add = [&](std::vector<std::string>& table) {
                if (std::find(table.begin(), table.end(), id.text) != table.end()) {
                    fail("duplicate declaration of '" + id.text + "'", id);
                }
                table.push_back(id.text);
            };
            if (declared(id.text)) fail("name '" + id.text + "' is already declared", id);
            if (kw.text == "clocks") {
                add(net_.clocks);
            } else if (kw.text == "params") {
                add(net_.params);
            } else {
                net_.channels.insert(id.text);
            }
            accept_symbol(",");
        }
        expect_symbol(";");
    }

    bool declared(const std::string& name) const {
        return std::find(net_.clocks.begin(), net_.clocks.end(), name) != net_.clocks.end() ||
               std::find(net_.params.begin(), net_.params.end(), name) != net_.params.end() ||
               net_.channels.count(name);
    }

    std::optional<std::size_t> lookup(const std::vector<std::string>& table, const std::string& n) const {
        auto it = std::find(table.begin(), table.end(), n);
        if (it == table.end()) return std::nullopt;
        return static_cast<std::size_t>(it - table.begin());
    }

    Relation parse_relation() {
        const Token& t = peek();
        if (t.kind == Tok::Symbol) {
            static const std::map<std::string, Relation> rels = {{"<", Relation::Less},
                                                                 {"<=", Relation::LessEq},
                                                                 {"==", Relation::Equal},
                                                                 {">=", Relation::GreaterEq},
                                                                 {">", Relation::Greater}};
            if (auto it = rels.find(t.text); it != rels.end()) {
                next();
                return it->second;
            }
        }
        fail("expected a relation (< <= == >= >) but found '" + describe(t) + "'", t);
    }

    Constraint parse_constraint() {
        Token clock = expect_ident("a clock");
        auto cid = lookup(net_.clocks, clock.text);
        if (!cid) {
            if (lookup(net_.params, clock.text)) {
                fail("parameter '" + clock.text + "' on the left of a constraint; expected a clock", clock);
            }
            fail("undeclared clock '" + clock.text + "'", clock);
        }
        Relation rel = parse_relation();
        const Token& rhs = peek();
        if (rhs.kind == Tok::Int) {
            next();
            std::int64_t v = 0;
            try {
                v = std::stoll(rhs.text);
            } catch (const std::exception&) {
                fail("constant '" + rhs.text + "' out of range", rhs);
            }
            return Constraint{*cid, rel, Bound::constant(v)};
        }
        if (rhs.kind == Tok::Ident) {
            next();
            if (auto pid = lookup(net_.params, rhs.text)) {
                return Constraint{*cid, rel, Bound::parameter(*pid)};
            }
            if (lookup(net_.clocks, rhs.text)) {
                fail("diagonal constraint '" + clock.text + " " + std::string(to_string(rel)) + " " +
                         rhs.text + "' is not supported",
                     rhs);
            }
            fail("undeclared parameter '" + rhs.text + "'", rhs);
        }
        fail("expected an integer or a parameter but found '" + describe(rhs) + "'", rhs);
    }

    Guard parse_guard() {
        expect_symbol("(");
        Guard g;
        if (peek().kind == Tok::Ident && peek().text == "true") {
            next();
        } else {
            g.add(parse_constraint());
            while (accept_symbol("&&")) g.add(parse_constraint());
        }
        expect_symbol(")");
        return g;
    }

    Pta parse_automaton() {
        Pta a;
        a.name = expect_ident("an automaton name").text;
        a.clocks = net_.clocks;
        a.params = net_.params;
        expect_symbol("{");
        std::optional<LocationId> initial;
        std::vector<PendingTransition> pending;
        while (!accept_symbol("}")) {
            Token kw = expect_ident("'location' or 'trans'");
            if (kw.text == "location") {
                Token name = expect_ident("a location name");
                if (a.find_location(name.text)) fail("duplicate location '" + name.text + "'", name);
                Location loc;
                loc.name = name.text;
                while (!accept_symbol(";")) {
                    Token attr = expect_ident("a location attribute");
                    if (attr.text == "init") {
                        if (initial) fail("second initial location '" + name.text + "'", attr);
                        initial = a.locations.size();
                    } else if (attr.text == "accepting") {
                        loc.accepting = true;
                    } else if (attr.text == "invariant") {
                        Token at = peek();
                        Guard inv = parse_guard();
                        for (const auto& c : inv.constraints) {
                            if (!is_upper_bound(c.rel)) {
                                fail("invariant uses lower-bound relation '" +
                                         std::string(to_string(c.rel)) + "'; only < and <= are allowed",
                                     at);
                            }
                        }
                        loc.invariant = conjoin(loc.invariant, inv);
                    } else {
                        fail("unknown location attribute '" + attr.text + "'", attr);
                    }
                }
                a.locations.push_back(std::move(loc));
            } else if (kw.text == "trans") {
                PendingTransition p;
                p.source = expect_ident("a source location");
                expect_symbol("->");
                p.target = expect_ident("a target location");
                while (!accept_symbol(";")) {
                    Token clause = expect_ident("'when', 'sync' or 'reset'");
                    if (clause.text == "when") {
                        p.transition.guard = conjoin(p.transition.guard, parse_guard());
                    } else if (clause.text == "sync") {
                        Token label = expect_ident("an action or channel");
                        p.transition.action = label.text;
                        if (accept_symbol("!")) {
                            p.transition.sync = Sync::Send;
                        } else if (accept_symbol("?")) {
                            p.transition.sync = Sync::Receive;
                        }
                        bool is_channel = net_.channels.count(label.text) > 0;
                        if (p.transition.sync != Sync::None && !is_channel) {
                            fail("undeclared channel '" + label.text + "'", label);
                        }
                        if (p.transition.sync == Sync::None && is_channel) {
                            fail("channel '" + label.text + "' needs '!' or '?'", label);
                        }
                    } else if (clause.text == "reset") {
                        expect_symbol("{");
                        while (!accept_symbol("}")) {
                            Token x = expect_ident("a clock");
                            auto cid = lookup(net_.clocks, x.text);
                            if (!cid) fail("undeclared clock '" + x.text + "'", x);
                            p.transition.resets.push_back(*cid);
                            accept_symbol(",");
                        }
                        std::sort(p.transition.resets.begin(), p.transition.resets.end());
                        p.transition.resets.erase(
                            std::unique(p.transition.resets.begin(), p.transition.resets.end()),
                            p.transition.resets.end());
                    } else {
                        fail("unknown transition clause '" + clause.text + "'", clause);
                    }
                }
                pending.push_back(std::move(p));
            } else {
                fail("expected 'location' or 'trans' but found '" + kw.text + "'", kw);
            }
        }
        if (a.locations.empty()) fail("automaton '" + a.name + "' declares no locations", peek());
        a.initial = initial.value_or(0);
        if (!initial) {
            throw ParseError("automaton '" + a.name + "' has no initial location", peek().line,
                             peek().column);
        }
        for (auto& p : pending) {
            auto s = a.find_location(p.source.text);
            if (!s) fail("undeclared location '" + p.source.text + "'", p.source);
            auto t = a.find_location(p.target.text);
            if (!t) fail("undeclared location '" + p.target.text + "'", p.target);
            p.transition.source = *s;
            p.transition.target = *t;
            a.transitions.push_back(std::move(p.transition));
        }
        return a;
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    Network net_;
};

void write_guard(std::ostream& os, const Guard& g, const Pta& a) {
    os << "(" << to_string(g, a) << ")";
}

void write_automaton(std::ostream& os, const Pta& a) {
    os << "automaton " << a.name << " {\n";
    for (LocationId l = 0; l < a.locations.size(); ++l) {
        const auto& loc = a.locations[l];
        os << "  location " << loc.name;
        if (l == a.initial) os << " init";
        if (loc.accepting) os << " accepting";
        if (!loc.invariant.is_true()) {
            os << " invariant ";
            write_guard(os, loc.invariant, a);
        }
        os << ";\n";
    }
    for (const auto& t : a.transitions) {
        os << "  trans " << a.locations[t.source].name << " -> " << a.locations[t.target].name;
        if (!t.guard.is_true()) {
            os << " when ";
            write_guard(os, t.guard, a);
        }
        if (t.action != "tau" || t.sync != Sync::None) {
            os << " sync " << t.action;
            if (t.sync == Sync::Send) os << "!";
            if (t.sync == Sync::Receive) os << "?";
        }
        if (!t.resets.empty()) {
            os << " reset {";
            for (std::size_t i = 0; i < t.resets.size(); ++i) {
                os << (i ? ", " : "") << a.clocks[t.resets[i]];
            }
            os << "}";
        }
        os << ";\n";
    }
    os << "}\n";
}

void write_names(std::ostream& os, const char* kw, const auto& names) {
    if (names.empty()) return;
    os << kw;
    for (const auto& n : names) os << " " << n;
    os << ";\n";
}

}  // namespace

Network parse_network(std::string_view text) { return Parser(text).parse(); }

Pta flatten(const Network& net, const ProductOptions& options) {
    return product(net.automata, net.channels, options);
}

Pta parse_pta(std::string_view text, const ProductOptions& options) {
    return flatten(parse_network(text), options);
}

std::string to_text(const Network& net) {
    std::ostringstream os;
    write_names(os, "clocks", net.clocks);
    write_names(os, "params", net.params);
    write_names(os, "channels", net.channels);
    for (const auto& a : net.automata) {
        os << "\n";
        write_automaton(os, a);
    }
    return os.str();
}

std::string to_text(const Pta& a) {
    Network net;
    net.clocks = a.clocks;
    net.params = a.params;
    for (const auto& t : a.transitions) {
        if (t.sync != Sync::None) net.channels.insert(t.action);
    }
    net.automata.push_back(a);
    return to_text(net);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace pta
