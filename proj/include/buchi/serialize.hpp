// JSON and DOT exchange formats. Automata serialize as {base, tracks, states,
// initial, finals, transitions: [[from, [d0..d_{r-1}], to]...]} with
// transitions ordered by state then symbol; codecs as a tag tree;
// interpretations as one object bundling the four automata with the codec.
#pragma once

#include "buchi/automaton.hpp"
#include "buchi/interp.hpp"
#include "buchi/numeral.hpp"

#include "json.hpp"

#include <string>

namespace buchi {

using Json = nlohmann::ordered_json;

Json to_json(const Dfa& a);
/// Throws std::invalid_argument on schema violations (missing fields, digits
/// or states out of range, duplicate transitions).
Dfa dfa_from_json(const Json& j);

/// Graphviz rendering: one node per state, doublecircle finals, one edge per
/// (from, to) pair labeled with its symbols.
std::string to_dot(const Dfa& a);

Json to_json(const Codec& codec);
Codec codec_from_json(const Json& j);

Json to_json(const Interpretation& interp);
Interpretation interpretation_from_json(const Json& j);

}  // namespace buchi
