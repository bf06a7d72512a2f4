// ============================================================================
// minsky.cpp: Minsky machine parser, interpreter and gadget encodings
// ============================================================================

#include "pta/minsky.hpp"

#include "pta/error.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <tuple>

namespace pta {

void validate(const MinskyMachine& m) {
    const std::size_t n = m.size();
    if (n == 0) throw ModelError("machine has no instructions");
    for (std::size_t i = 1; i <= n; ++i) {
        const Instruction& ins = m.at(i);
        const std::string where = "instruction " + std::to_string(i);
        if ((ins.kind == Instruction::Kind::Halt) != (i == n)) {
            throw ModelError(i == n ? where + ": the last instruction must be halt"
                                    : where + ": halt is only allowed as the last instruction");
        }
        if (ins.kind == Instruction::Kind::Halt) continue;
        if (ins.counter != 1 && ins.counter != 2) throw ModelError(where + ": counter must be c1 or c2");
        if (ins.next < 1 || ins.next > n) throw ModelError(where + ": goto target out of range");
        if (ins.kind == Instruction::Kind::TestDec && (ins.zero < 1 || ins.zero > n)) {
            throw ModelError(where + ": zero-branch target out of range");
        }
    }
}

// ============================================================================
// Parsing
// ============================================================================

namespace {

struct Word {
    std::string text;
    std::size_t column;
};

std::vector<Word> split_line(std::string_view line) {
    std::vector<Word> out;
    std::size_t i = 0;
    while (i < line.size()) {
        char c = line[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
        } else if (c == ':' || c == '=') {
            out.push_back(Word{std::string(1, c), i + 1});
            ++i;
        } else {
            std::size_t j = i;
            while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])) && line[j] != ':' &&
                   line[j] != '=') {
                ++j;
            }
            out.push_back(Word{std::string(line.substr(i, j - i)), i + 1});
            i = j;
        }
    }
    return out;
}

class LineParser {
public:
    LineParser(std::vector<Word> words, std::size_t line, std::size_t end_column)
        : words_(std::move(words)), line_(line), end_column_(end_column) {}

    const Word& next(const char* what) {
        if (pos_ >= words_.size()) throw ParseError(std::string("expected ") + what, line_, end_column_);
        return words_[pos_++];
    }

    void expect(const std::string& text) {
        const Word& w = next(("'" + text + "'").c_str());
        if (w.text != text) throw ParseError("expected '" + text + "', found '" + w.text + "'", line_, w.column);
    }

    std::size_t number(const char* what) {
        const Word& w = next(what);
        if (w.text.empty() || !std::all_of(w.text.begin(), w.text.end(), ::isdigit) || w.text.size() > 9) {
            throw ParseError(std::string("expected ") + what + ", found '" + w.text + "'", line_, w.column);
        }
        return static_cast<std::size_t>(std::stoul(w.text));
    }

    int counter() {
        const Word& w = next("counter c1 or c2");
        if (w.text == "c1") return 1;
        if (w.text == "c2") return 2;
        throw ParseError("expected counter c1 or c2, found '" + w.text + "'", line_, w.column);
    }

    void finish() {
        if (pos_ < words_.size()) {
            throw ParseError("unexpected '" + words_[pos_].text + "'", line_, words_[pos_].column);
        }
    }

private:
    std::vector<Word> words_;
    std::size_t pos_ = 0;
    std::size_t line_;
    std::size_t end_column_;
};

}  // namespace

MinskyMachine parse_minsky(std::string_view text) {
    MinskyMachine m;
    std::size_t line_no = 0;
    std::vector<std::size_t> lines;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        for (const char* marker : {"#", "//"}) {
            auto cut = line.find(marker);
            if (cut != std::string::npos) line.erase(cut);
        }
        auto words = split_line(line);
        if (words.empty()) continue;
        LineParser p(std::move(words), line_no, line.size() + 1);
        std::size_t label = p.number("instruction label");
        if (label != m.size() + 1) {
            throw ParseError("expected label " + std::to_string(m.size() + 1) + ", found " + std::to_string(label),
                             line_no, 1);
        }
        p.expect(":");
        Instruction ins;
        const Word& op = p.next("inc, if or halt");
        if (op.text == "inc") {
            ins.kind = Instruction::Kind::Inc;
            ins.counter = p.counter();
            p.expect("goto");
            ins.next = p.number("goto target");
        } else if (op.text == "if") {
            ins.kind = Instruction::Kind::TestDec;
            ins.counter = p.counter();
            p.expect("=");
            p.expect("0");
            p.expect("goto");
            ins.zero = p.number("goto target");
            p.expect("else");
            p.expect("dec");
            p.expect("goto");
            ins.next = p.number("goto target");
        } else if (op.text == "halt") {
            ins.kind = Instruction::Kind::Halt;
        } else {
            throw ParseError("expected inc, if or halt, found '" + op.text + "'", line_no, op.column);
        }
        p.finish();
        m.instructions.push_back(ins);
        lines.push_back(line_no);
    }
    // Report semantic errors at the offending instruction.
    for (std::size_t i = 0; i < m.size(); ++i) {
        const Instruction& probe = m.instructions[i];
        auto in_range = [&](std::size_t t) { return t >= 1 && t <= m.size(); };
        std::string where = "instruction " + std::to_string(i + 1);
        if (probe.kind != Instruction::Kind::Halt && (!in_range(probe.next) ||
                                                     (probe.kind == Instruction::Kind::TestDec && !in_range(probe.zero)))) {
            throw ParseError(where + ": goto target out of range", lines[i], 1);
        }
        if (probe.kind == Instruction::Kind::Halt && i + 1 != m.size()) {
            throw ParseError(where + ": halt is only allowed as the last instruction", lines[i], 1);
        }
    }
    try {
        validate(m);
    } catch (const ModelError& e) {
        throw ParseError(e.what(), lines.empty() ? 1 : lines.back(), 1);
    }
    return m;
}

std::string to_text(const MinskyMachine& m) {
    std::ostringstream os;
    for (std::size_t i = 1; i <= m.size(); ++i) {
        const Instruction& ins = m.at(i);
        os << i << ": ";
        switch (ins.kind) {
            case Instruction::Kind::Inc: os << "inc c" << ins.counter << " goto " << ins.next; break;
            case Instruction::Kind::TestDec:
                os << "if c" << ins.counter << "=0 goto " << ins.zero << " else dec goto " << ins.next;
                break;
            case Instruction::Kind::Halt: os << "halt"; break;
        }
        os << "\n";
    }
    return os.str();
}

// ============================================================================
// Interpreter
// ============================================================================

MinskyOutcome interpret(const MinskyMachine& m, std::size_t max_steps) {
    validate(m);
    MinskyOutcome out;
    std::size_t pc = 1;
    std::int64_t v[3] = {0, 0, 0};
    std::set<std::tuple<std::size_t, std::int64_t, std::int64_t>> seen;
    seen.emplace(pc, 0, 0);
    while (true) {
        const Instruction& ins = m.at(pc);
        if (ins.kind == Instruction::Kind::Halt) {
            out.halted = true;
            return out;
        }
        if (out.steps == max_steps) return out;
        if (ins.kind == Instruction::Kind::Inc) {
            ++v[ins.counter];
            pc = ins.next;
        } else if (v[ins.counter] == 0) {
            pc = ins.zero;
        } else {
            --v[ins.counter];
            pc = ins.next;
        }
        ++out.steps;
        out.max_sum = std::max(out.max_sum, v[1] + v[2]);
        out.max_counter = std::max({out.max_counter, v[1], v[2]});
        if (!out.cycled && !seen.emplace(pc, v[1], v[2]).second) {
            out.cycled = true;
            return out;
        }
    }
}

// ============================================================================
// Encodings
// ============================================================================

std::string minsky_location(std::size_t label, int part) {
    std::string name = "l" + std::to_string(label);
    return part == 0 ? name : name + "_" + std::to_string(part);
}

namespace {

constexpr ClockId kX1 = 0, kX2 = 1, kZ = 2;
constexpr ParamId kP = 0;

Constraint eq(ClockId x, Bound b) { return Constraint{x, Relation::Equal, b}; }

class Encoder {
public:
    explicit Encoder(const MinskyMachine& m) : m_(m) {
        validate(m);
        a_.name = "Minsky";
        a_.clocks = {"x1", "x2", "z"};
        a_.params = {"p"};
        for (std::size_t i = 1; i <= m.size(); ++i) add_location(minsky_location(i));
        for (std::size_t i = 1; i < m.size(); ++i) {
            for (int part = 1; part <= 6; ++part) add_location(minsky_location(i, part));
        }
        a_.initial = 0;
        for (std::size_t i = 1; i < m.size(); ++i) {
            const Instruction& ins = m.at(i);
            if (ins.kind == Instruction::Kind::Inc) {
                increment(i, ins);
            } else {
                decrement(i, ins);
            }
        }
    }

    Pta reach() {
        a_.locations[loc(m_.size())].accepting = true;
        return a_;
    }

    Pta safe() {
        LocationId acc = add_location("lacc");
        a_.locations[acc].accepting = true;
        std::set<std::pair<std::size_t, int>> done;
        for (std::size_t i = 1; i < m_.size(); ++i) {
            const Instruction& ins = m_.at(i);
            if (ins.kind != Instruction::Kind::Inc || !done.emplace(ins.next, ins.counter).second) continue;
            ClockId xr = ins.counter == 1 ? kX1 : kX2;
            edge(loc(ins.next), acc, {eq(kZ, Bound::constant(0)), eq(xr, Bound::parameter(kP))}, {});
        }
        return a_;
    }

private:
    LocationId add_location(std::string name) {
        a_.locations.push_back(Location{std::move(name), {}, false});
        return a_.locations.size() - 1;
    }

    LocationId loc(std::size_t label, int part = 0) const { return *a_.find_location(minsky_location(label, part)); }

    void edge(LocationId from, LocationId to, std::vector<Constraint> guard, std::vector<ClockId> resets) {
        Transition t;
        t.source = from;
        t.target = to;
        for (const auto& c : guard) t.guard.add(c);
        std::sort(resets.begin(), resets.end());
        t.resets = std::move(resets);
        a_.transitions.push_back(std::move(t));
    }

    // Counter-2 gadgets swap the roles of x1 and x2.
    void increment(std::size_t i, const Instruction& ins) {
        const ClockId xa = ins.counter == 1 ? kX1 : kX2;
        const ClockId xb = ins.counter == 1 ? kX2 : kX1;
        const Bound p = Bound::parameter(kP), one = Bound::constant(1);
        edge(loc(i), loc(i, 1), {eq(kZ, one)}, {kZ});
        edge(loc(i, 1), loc(i, 2), {eq(xa, p)}, {xa});
        edge(loc(i, 2), loc(i, 3), {eq(xb, p)}, {xb});
        edge(loc(i, 3), loc(i, 4), {eq(xb, one)}, {xb});
        edge(loc(i, 4), loc(ins.next), {eq(kZ, p)}, {kZ});
        edge(loc(i, 1), loc(i, 5), {eq(xb, p)}, {xb});
        edge(loc(i, 5), loc(i, 6), {eq(xb, one)}, {xb});
        edge(loc(i, 6), loc(i, 4), {eq(xa, p)}, {xa});
    }

    void decrement(std::size_t i, const Instruction& ins) {
        const ClockId xa = ins.counter == 1 ? kX1 : kX2;
        const ClockId xb = ins.counter == 1 ? kX2 : kX1;
        const Bound p = Bound::parameter(kP), zero = Bound::constant(0), one = Bound::constant(1);
        edge(loc(i), loc(ins.zero), {eq(xa, zero)}, {});
        edge(loc(i), loc(i, 1), {eq(kZ, zero), Constraint{xa, Relation::Greater, zero}}, {});
        edge(loc(i, 1), loc(i, 2), {eq(xa, p)}, {xa});
        edge(loc(i, 2), loc(i, 3), {eq(xa, one)}, {xa});
        edge(loc(i, 3), loc(i, 4), {eq(xb, p)}, {xb});
        edge(loc(i, 4), loc(ins.next), {eq(kZ, p)}, {kZ});
        edge(loc(i, 1), loc(i, 5), {eq(xb, p)}, {xb});
        edge(loc(i, 5), loc(i, 6), {eq(xa, p)}, {xa});
        edge(loc(i, 6), loc(i, 4), {eq(xa, one)}, {xa});
    }

    const MinskyMachine& m_;
    Pta a_;
};

}  // namespace

Pta encode_reach(const MinskyMachine& m) { return Encoder(m).reach(); }

Pta encode_safe(const MinskyMachine& m) { return Encoder(m).safe(); }

}  // namespace pta
