// ============================================================================
// pta/minsky.hpp: two-counter Minsky machines and their PTA encodings
// ============================================================================
//
// Source format, one instruction per line, labels 1..n in order:
//
//   1: inc c1 goto 2
//   2: if c1=0 goto 4 else dec goto 3
//   3: halt
//
// The last instruction must be `halt` and it is the only one. `#` and `//`
// start comments.
//
// The encodings use clocks x1, x2, z and one parameter p. Location l<i>
// stands for instruction i; each non-halt instruction adds l<i>_1 .. l<i>_6.
// When z = 0 in l<i>, x1 and x2 hold the counter values.
//
// ============================================================================

#ifndef PTA_MINSKY_HPP
#define PTA_MINSKY_HPP

#include "pta/model.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace pta {

struct Instruction {
    enum class Kind : std::uint8_t { Inc, TestDec, Halt };
    Kind kind = Kind::Halt;
    int counter = 1;        // 1 or 2
    std::size_t next = 0;   // j: after the increment / decrement (1-based)
    std::size_t zero = 0;   // k: when the counter is zero (TestDec only)

    friend bool operator==(const Instruction&, const Instruction&) = default;
};

struct MinskyMachine {
    std::vector<Instruction> instructions;  // instructions[i - 1] has label i

    std::size_t size() const { return instructions.size(); }
    const Instruction& at(std::size_t label) const { return instructions.at(label - 1); }

    friend bool operator==(const MinskyMachine&, const MinskyMachine&) = default;
};

/// Throws ModelError unless targets are in range and only the last
/// instruction halts.
void validate(const MinskyMachine& m);

/// Throws ParseError with line and column.
MinskyMachine parse_minsky(std::string_view text);
std::string to_text(const MinskyMachine& m);

struct MinskyOutcome {
    bool halted = false;
    std::size_t steps = 0;
    /// max over visited configurations of v1 + v2, and of max(v1, v2)
    std::int64_t max_sum = 0;
    std::int64_t max_counter = 0;
    /// Not halted and some configuration was visited twice: the computation
    /// loops forever with bounded counters.
    bool cycled = false;
};

/// Runs from (1, 0, 0) for at most `max_steps` steps.
MinskyOutcome interpret(const MinskyMachine& m, std::size_t max_steps);

/// Increment and test-and-decrement gadgets; l1 initial, l<n> the only
/// accepting location.
Pta encode_reach(const MinskyMachine& m);

/// encode_reach plus l<j> -> lacc guarded z=0 && x_r=p after every increment
/// of counter r targeting j; lacc is the only accepting location.
Pta encode_safe(const MinskyMachine& m);

/// Name of the gadget location `part` (0 = l<i>, 1..6 = l<i>_part).
std::string minsky_location(std::size_t label, int part = 0);

}  // namespace pta

#endif  // PTA_MINSKY_HPP
