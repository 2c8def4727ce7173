#include "bca/format.hpp"

#include <algorithm>
#include <sstream>

namespace bca {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

struct Parser {
    CounterMachine m;
    bool saw_alphabet = false, saw_counters = false, saw_states = false, saw_initial = false;
    bool saw_acceptance = false;
    int line_no = 0;

    [[noreturn]] void fail(const std::string& msg) const { throw FormatError(line_no, msg); }

    StateId state(const std::string& name) const {
        auto id = m.state_index(name);
        if (!id) throw FormatError(line_no, "unknown state: " + name);
        return *id;
    }
    SymbolId symbol(const std::string& name) const {
        auto id = m.symbol_index(name);
        if (!id) throw FormatError(line_no, "unknown symbol: " + name);
        return *id;
    }

    void transition(const std::vector<std::string>& tok) {
        // trans <src> <sym> guards <g>... deltas <d>... [copies <dst><-<src>...] -> <tgt>
        const int k = m.counter_count();
        if (!saw_states || !saw_counters) fail("trans before states/counters");
        size_t i = 1;
        auto need = [&](const char* what) -> const std::string& {
            if (i >= tok.size()) fail(std::string("missing ") + what);
            return tok[i++];
        };
        Transition t;
        t.source = state(need("source state"));
        t.letter = symbol(need("letter"));
        if (need("'guards'") != "guards") fail("expected 'guards'");
        for (int c = 0; c < k; ++c) {
            const std::string& g = need("guard token");
            if (g == "any")
                t.guards.push_back(Guard::Any);
            else if (g == "zero" || g == "pos") {
                if (m.counter_kinds[static_cast<size_t>(c)] == CounterKind::Blind)
                    fail("guard token on a blind counter");
                t.guards.push_back(g == "zero" ? Guard::Zero : Guard::Positive);
            } else
                fail("bad guard token: " + g);
        }
        if (need("'deltas'") != "deltas") fail("expected 'deltas'");
        for (int c = 0; c < k; ++c) {
            const std::string& d = need("delta token");
            if (d == "-1")
                t.deltas.push_back(-1);
            else if (d == "0")
                t.deltas.push_back(0);
            else if (d == "+1" || d == "1")
                t.deltas.push_back(1);
            else
                fail("bad delta token: " + d);
        }
        if (i < tok.size() && tok[i] == "copies") {
            ++i;
            while (i < tok.size() && tok[i] != "->") {
                const std::string& c = tok[i++];
                auto arrow = c.find("<-");
                if (arrow == std::string::npos) fail("bad copy token: " + c);
                try {
                    int dst = std::stoi(c.substr(0, arrow));
                    int src = std::stoi(c.substr(arrow + 2));
                    if (dst < 1 || dst > k || src < 1 || src > k) fail("copy counter out of range");
                    t.copies.emplace_back(dst - 1, src - 1);
                } catch (const FormatError&) {
                    throw;
                } catch (...) {
                    fail("bad copy token: " + c);
                }
            }
        }
        if (need("'->'") != "->") fail("expected '->'");
        t.target = state(need("target state"));
        if (i != tok.size()) fail("trailing tokens after transition");
        m.transitions.push_back(std::move(t));
    }

    void line(const std::vector<std::string>& tok) {
        const std::string& kw = tok[0];
        if (kw == "machine") {
            if (tok.size() != 2) fail("machine takes exactly one name");
            m.name = tok[1];
        } else if (kw == "alphabet") {
            if (tok.size() < 2) fail("empty alphabet");
            m.alphabet.assign(tok.begin() + 1, tok.end());
            saw_alphabet = true;
        } else if (kw == "counters") {
            for (size_t i = 1; i < tok.size(); ++i) {
                if (tok[i] == "blind")
                    m.counter_kinds.push_back(CounterKind::Blind);
                else if (tok[i] == "testable")
                    m.counter_kinds.push_back(CounterKind::Testable);
                else
                    fail("bad counter kind: " + tok[i]);
            }
            if (m.counter_kinds.empty()) fail("machine needs at least one counter");
            saw_counters = true;
        } else if (kw == "copying") {
            if (tok.size() != 2 || (tok[1] != "on" && tok[1] != "off")) fail("copying on|off");
            m.copy_capable = tok[1] == "on";
        } else if (kw == "states") {
            if (tok.size() < 2) fail("no states listed");
            m.states.assign(tok.begin() + 1, tok.end());
            saw_states = true;
        } else if (kw == "initial") {
            if (tok.size() != 2) fail("initial takes exactly one state");
            if (!saw_states) fail("initial before states");
            m.initial = state(tok[1]);
            saw_initial = true;
        } else if (kw == "accepting") {
            if (!saw_states) fail("accepting before states");
            std::vector<StateId> acc;
            for (size_t i = 1; i < tok.size(); ++i) acc.push_back(state(tok[i]));
            m.acceptance = Acceptance::make_buchi(std::move(acc));
            saw_acceptance = true;
        } else if (kw == "muller") {
            if (!saw_states) fail("muller before states");
            std::vector<std::vector<StateId>> family;
            size_t i = 1;
            while (i < tok.size()) {
                if (tok[i] != "{") fail("expected '{' in muller family");
                ++i;
                std::vector<StateId> set;
                while (i < tok.size() && tok[i] != "}") set.push_back(state(tok[i++]));
                if (i == tok.size()) fail("unterminated muller set");
                ++i;
                family.push_back(std::move(set));
            }
            m.acceptance = Acceptance::make_muller(std::move(family));
            saw_acceptance = true;
        } else if (kw == "trans") {
            transition(tok);
        } else {
            fail("unknown directive: " + kw);
        }
    }
};

}  // namespace

CounterMachine parse_machine(const std::string& text) {
    Parser p;
    std::istringstream in(text);
    std::string raw;
    while (std::getline(in, raw)) {
        ++p.line_no;
        auto tok = tokenize(raw);
        if (tok.empty() || tok[0] == "//") continue;
        p.line(tok);
    }
    ++p.line_no;
    if (!p.saw_alphabet) p.fail("missing alphabet");
    if (!p.saw_counters) p.fail("missing counters");
    if (!p.saw_states) p.fail("missing states");
    if (!p.saw_initial) p.fail("missing initial");
    if (!p.saw_acceptance) p.fail("missing accepting or muller");
    return std::move(p.m);
}

std::string serialize_machine(const CounterMachine& m) {
    std::ostringstream out;
    out << "machine " << (m.name.empty() ? "unnamed" : m.name) << "\n";
    out << "alphabet";
    for (const std::string& s : m.alphabet) out << " " << s;
    out << "\n";
    out << "counters";
    for (CounterKind kind : m.counter_kinds)
        out << " " << (kind == CounterKind::Blind ? "blind" : "testable");
    out << "\n";
    if (m.copy_capable) out << "copying on\n";
    out << "states";
    for (const std::string& s : m.states) out << " " << s;
    out << "\n";
    out << "initial " << m.states[static_cast<size_t>(m.initial)] << "\n";
    if (m.acceptance.kind == Acceptance::Kind::Buchi) {
        out << "accepting";
        for (StateId q : m.acceptance.buchi) out << " " << m.states[static_cast<size_t>(q)];
        out << "\n";
    } else {
        out << "muller";
        for (const auto& set : m.acceptance.muller) {
            out << " {";
            for (StateId q : set) out << " " << m.states[static_cast<size_t>(q)];
            out << " }";
        }
        out << "\n";
    }
    for (const Transition& t : m.transitions) {
        out << "trans " << m.states[static_cast<size_t>(t.source)] << " "
            << m.alphabet[static_cast<size_t>(t.letter)] << " guards";
        for (Guard g : t.guards)
            out << " " << (g == Guard::Any ? "any" : (g == Guard::Zero ? "zero" : "pos"));
        out << " deltas";
        for (int d : t.deltas) out << " " << (d > 0 ? "+1" : (d < 0 ? "-1" : "0"));
        if (!t.copies.empty()) {
            out << " copies";
            auto copies = t.copies;
            std::sort(copies.begin(), copies.end());
            for (auto [dst, src] : copies) out << " " << dst + 1 << "<-" << src + 1;
        }
        out << " -> " << m.states[static_cast<size_t>(t.target)] << "\n";
    }
    return out.str();
}

std::vector<SymbolId> parse_word(const CounterMachine& machine, const std::string& text) {
    const bool single = std::all_of(machine.alphabet.begin(), machine.alphabet.end(),
                                    [](const std::string& s) { return s.size() == 1; });
    std::vector<SymbolId> out;
    if (single) {
        for (char c : text) {
            if (c == ' ' || c == '\t') continue;
            auto id = machine.symbol_index(std::string(1, c));
            if (!id) throw PreconditionError(std::string("unknown symbol: ") + c);
            out.push_back(*id);
        }
    } else {
        for (const std::string& tok : tokenize(text)) out.push_back(machine.require_symbol(tok));
    }
    return out;
}

}  // namespace bca
