#include "buchi/serialize.hpp"

#include <sstream>
#include <stdexcept>
#include <string>

namespace buchi {

namespace {

int get_int(const Json& j, const char* key, int lo, int hi) {
    if (!j.is_object() || !j.contains(key) || !j.at(key).is_number_integer())
        throw std::invalid_argument(std::string("expected an integer field '") + key + "'");
    const int64_t v = j.at(key).get<int64_t>();
    if (v < lo || v > hi)
        throw std::invalid_argument(std::string("field '") + key + "' must lie in [" +
                                    std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return static_cast<int>(v);
}

const Json& get_array(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key) || !j.at(key).is_array())
        throw std::invalid_argument(std::string("expected an array field '") + key + "'");
    return j.at(key);
}

}  // namespace

Json to_json(const Dfa& a) {
    Json j;
    j["base"] = a.radix;
    j["tracks"] = a.tracks;
    j["states"] = a.num_states();
    j["initial"] = a.initial;
    Json finals = Json::array();
    for (int q = 0; q < a.num_states(); ++q)
        if (a.is_final(q)) finals.push_back(q);
    j["finals"] = std::move(finals);
    Json transitions = Json::array();
    for (int q = 0; q < a.num_states(); ++q)
        for (int64_t s = 0; s < a.symbol_count(); ++s) {
            const int32_t to = a.next(q, s);
            if (to < 0) continue;
            transitions.push_back(Json::array({q, unpack_symbol(s, a.radix, a.tracks), to}));
        }
    j["transitions"] = std::move(transitions);
    return j;
}

Dfa dfa_from_json(const Json& j) {
    const int base = get_int(j, "base", 2, 1024);
    const int tracks = get_int(j, "tracks", 0, 16);
    if (pow_int(base, tracks) > (int64_t(1) << 24))
        throw std::invalid_argument("alphabet too large");
    const int states = get_int(j, "states", 1, 1 << 22);
    const int initial = get_int(j, "initial", 0, states - 1);
    Dfa a(Base(base), tracks, states, initial);

    for (const Json& f : get_array(j, "finals")) {
        if (!f.is_number_integer() || f.get<int64_t>() < 0 || f.get<int64_t>() >= states)
            throw std::invalid_argument("final state out of range");
        a.finals[f.get<int>()] = true;
    }

    for (const Json& t : get_array(j, "transitions")) {
        if (!t.is_array() || t.size() != 3 || !t[0].is_number_integer() || !t[1].is_array() ||
            !t[2].is_number_integer())
            throw std::invalid_argument("each transition must be [from, [digits...], to]");
        const int64_t from = t[0].get<int64_t>(), to = t[2].get<int64_t>();
        if (from < 0 || from >= states || to < 0 || to >= states)
            throw std::invalid_argument("transition endpoint out of range");
        if (static_cast<int>(t[1].size()) != tracks)
            throw std::invalid_argument("transition symbol must list one digit per track");
        std::vector<int> digits;
        for (const Json& d : t[1]) {
            if (!d.is_number_integer() || d.get<int64_t>() < 0 || d.get<int64_t>() >= base)
                throw std::invalid_argument("digit out of range");
            digits.push_back(d.get<int>());
        }
        const int64_t sym = pack_symbol(digits, base);
        if (a.next(static_cast<int>(from), sym) >= 0)
            throw std::invalid_argument("duplicate transition from state " +
                                        std::to_string(from));
        a.set_transition(static_cast<int>(from), sym, static_cast<int>(to));
    }
    return a;
}

std::string to_dot(const Dfa& a) {
    std::ostringstream os;
    os << "digraph automaton {\n  rankdir=LR;\n  node [shape=circle];\n"
       << "  start [shape=point, label=\"\"];\n  start -> q" << a.initial << ";\n";
    for (int q = 0; q < a.num_states(); ++q)
        if (a.is_final(q)) os << "  q" << q << " [shape=doublecircle];\n";
    for (int q = 0; q < a.num_states(); ++q) {
        std::vector<std::string> labels(a.num_states());
        for (int64_t s = 0; s < a.symbol_count(); ++s) {
            const int32_t to = a.next(q, s);
            if (to < 0) continue;
            std::string sym;
            const std::vector<int> digits = unpack_symbol(s, a.radix, a.tracks);
            for (std::size_t i = 0; i < digits.size(); ++i) {
                if (i) sym += ',';
                sym += std::to_string(digits[i]);
            }
            if (digits.empty()) sym = "()";
            if (!labels[to].empty()) labels[to] += " | ";
            labels[to] += sym;
        }
        for (int to = 0; to < a.num_states(); ++to)
            if (!labels[to].empty())
                os << "  q" << q << " -> q" << to << " [label=\"" << labels[to] << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

Json to_json(const Codec& codec) {
    Json j;
    switch (codec.kind()) {
        case Codec::Kind::Interleave:
            j["kind"] = "interleave";
            j["m"] = codec.width();
            j["base"] = codec.base().radix();
            break;
        case Codec::Kind::PairGroup:
            j["kind"] = "pairgroup";
            j["base"] = codec.base().radix();
            break;
        case Codec::Kind::DigitAvoid:
            j["kind"] = "digitavoid";
            j["base"] = codec.base().radix();
            break;
        case Codec::Kind::Compose: {
            if (codec.parts().empty()) {
                j["kind"] = "identity";
                break;
            }
            j["kind"] = "compose";
            Json parts = Json::array();
            for (const Codec& part : codec.parts()) parts.push_back(to_json(part));
            j["parts"] = std::move(parts);
            break;
        }
    }
    return j;
}

Codec codec_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
        throw std::invalid_argument("codec document needs a string field 'kind'");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "identity") return Codec::identity();
    if (kind == "interleave")
        return Codec::interleave(get_int(j, "m", 1, 64), Base(get_int(j, "base", 2, 1024)));
    if (kind == "pairgroup") return Codec::pair_group(Base(get_int(j, "base", 2, 1024)));
    if (kind == "digitavoid") return Codec::digit_avoid(Base(get_int(j, "base", 2, 1024)));
    if (kind == "compose") {
        std::vector<Codec> parts;
        for (const Json& p : get_array(j, "parts")) parts.push_back(codec_from_json(p));
        return Codec::compose(std::move(parts));
    }
    throw std::invalid_argument("unknown codec kind '" + kind + "'");
}

Json to_json(const Interpretation& interp) {
    Json j;
    j["source_base"] = interp.source_base.radix();
    j["target_base"] = interp.target_base.radix();
    j["dimension"] = interp.dimension;
    j["codec"] = to_json(interp.codec);
    j["domain"] = to_json(interp.domain);
    j["equality"] = to_json(interp.equality);
    j["addition"] = to_json(interp.addition);
    j["valuation"] = to_json(interp.valuation);
    return j;
}

Interpretation interpretation_from_json(const Json& j) {
    if (!j.is_object()) throw std::invalid_argument("interpretation must be a JSON object");
    for (const char* key : {"codec", "domain", "equality", "addition", "valuation"})
        if (!j.contains(key))
            throw std::invalid_argument(std::string("interpretation needs a field '") + key +
                                        "'");
    Interpretation interp{Base(get_int(j, "source_base", 2, 1024)),
                          Base(get_int(j, "target_base", 2, 1024)),
                          get_int(j, "dimension", 1, 64),
                          dfa_from_json(j.at("domain")),
                          dfa_from_json(j.at("equality")),
                          dfa_from_json(j.at("addition")),
                          dfa_from_json(j.at("valuation")),
                          codec_from_json(j.at("codec"))};
    return interp;
}

}  // namespace buchi
