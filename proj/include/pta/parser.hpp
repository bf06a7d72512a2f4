// ============================================================================
// pta/parser.hpp: textual model format
// ============================================================================
//
//   clocks x y x1;
//   params p1 p2;
//   channels wakeup1 result1;
//
//   automaton Controller {
//     location l1 init invariant (x<2 && y<=20);
//     location fail accepting;
//     trans l1 -> l2 when (x<2) sync wakeup1! reset {x};
//   }
//
// Whitespace-insensitive, `//` comments. Guards are `&&` conjunctions of
// `clock rel bound` with rel one of < <= == >= > and bound an integer or a
// declared parameter. `sync c!` / `sync c?` synchronise on a declared channel;
// `sync a` labels a local action. Transitions without `sync` are labelled tau.
//
// ============================================================================

#ifndef PTA_PARSER_HPP
#define PTA_PARSER_HPP

#include "pta/model.hpp"

#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace pta {

struct Network {
    std::vector<std::string> clocks;
    std::vector<std::string> params;
    std::set<std::string> channels;
    std::vector<Pta> automata;
};

/// Parses a model file. Throws ParseError with line/column on failure.
Network parse_network(std::string_view text);

/// Parses a model file and flattens it with the handshake product.
Pta parse_pta(std::string_view text, const ProductOptions& options = {});

/// Flattens an already parsed network.
Pta flatten(const Network& net, const ProductOptions& options = {});

/// Renders a network in the model format; parse_network(to_text(n)) == n.
std::string to_text(const Network& net);

/// Renders a single automaton as a one-component network.
std::string to_text(const Pta& a);

/// Reads a whole file; throws Error if it cannot be opened.
std::string read_file(const std::string& path);

}  // namespace pta

#endif  // PTA_PARSER_HPP
