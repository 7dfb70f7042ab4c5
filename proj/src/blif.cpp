#include "minifab/blif.hpp"

#include "minifab/arch.hpp"

#include <algorithm>
#include <sstream>

namespace minifab {

int LogicNetlist::net_id(const std::string &n) const {
    auto it = net_ids.find(n);
    return it == net_ids.end() ? -1 : it->second;
}

bool LogicNetlist::is_clock_net(const std::string &n) const {
    return std::find(clocks.begin(), clocks.end(), n) != clocks.end();
}

const Lut *LogicNetlist::find_lut(const std::string &output) const {
    for (const Lut &l : luts)
        if (l.output == output)
            return &l;
    return nullptr;
}

const Latch *LogicNetlist::find_latch(const std::string &output) const {
    for (const Latch &l : latches)
        if (l.output == output)
            return &l;
    return nullptr;
}

uint64_t expand_cover(const std::vector<CoverCube> &cubes, int arity) {
    if (arity < 0 || arity > 6)
        throw Error("cover arity out of range");
    uint64_t table = 0;
    for (int entry = 0; entry < kLutEntries; entry++) {
        for (const CoverCube &cube : cubes) {
            bool match = true;
            for (int j = 0; j < arity; j++) {
                char lit = cube.literals[j];
                int bit = (entry >> j) & 1;
                if ((lit == '0' && bit != 0) || (lit == '1' && bit != 1)) {
                    match = false;
                    break;
                }
            }
            if (match) {
                table |= 1ull << entry;
                break;
            }
        }
    }
    return table;
}

namespace {

// Physical lines joined on '\' continuations, '#' comments stripped.
struct LogicalLine {
    std::string text;
    int lineno;
};

std::vector<LogicalLine> logical_lines(const std::string &text) {
    std::vector<LogicalLine> out;
    std::vector<std::string> raw = split_on(text, '\n');
    for (size_t i = 0; i < raw.size(); i++) {
        int start_line = (int)i + 1;
        std::string acc;
        while (true) {
            std::string line = raw[i];
            auto hash = line.find('#');
            if (hash != std::string::npos)
                line = line.substr(0, hash);
            line = trim(line);
            bool cont = !line.empty() && line.back() == '\\';
            if (cont)
                line = trim(line.substr(0, line.size() - 1));
            if (!acc.empty() && !line.empty())
                acc += " ";
            acc += line;
            if (!cont || i + 1 >= raw.size())
                break;
            i++;
        }
        if (!acc.empty())
            out.push_back(LogicalLine{acc, start_line});
    }
    return out;
}

struct PendingNames {
    std::vector<std::string> signals; // inputs then output
    std::vector<CoverCube> cubes;
    int lineno = 0;
};

} // namespace

LogicNetlist parse_blif(const std::string &text) {
    LogicNetlist nl;
    bool in_model = false, ended = false;
    std::optional<PendingNames> pending;

    auto intern = [&](const std::string &name) {
        auto it = nl.net_ids.find(name);
        if (it != nl.net_ids.end())
            return it->second;
        int id = (int)nl.nets.size();
        nl.net_ids.emplace(name, id);
        nl.nets.push_back(NetInfo{name, NetDriverKind::None, -1});
        return id;
    };

    auto set_driver = [&](const std::string &name, NetDriverKind kind, int index, int lineno) {
        NetInfo &ni = nl.nets[intern(name)];
        if (ni.driver != NetDriverKind::None)
            throw ParseError("multiple drivers on net '" + name + "'", lineno);
        ni.driver = kind;
        ni.driver_index = index;
    };

    auto flush_names = [&]() {
        if (!pending)
            return;
        int arity = (int)pending->signals.size() - 1;
        if (arity > 6)
            throw ParseError(".names with more than 6 inputs", pending->lineno);
        Lut lut;
        lut.output = pending->signals.back();
        lut.inputs.assign(pending->signals.begin(), pending->signals.end() - 1);
        for (size_t i = 0; i < lut.inputs.size(); i++)
            for (size_t j = i + 1; j < lut.inputs.size(); j++)
                if (lut.inputs[i] == lut.inputs[j])
                    throw ParseError("duplicate .names input '" + lut.inputs[i] + "'",
                                     pending->lineno);
        lut.table = expand_cover(pending->cubes, arity);
        set_driver(lut.output, NetDriverKind::LutOutput, (int)nl.luts.size(), pending->lineno);
        for (const std::string &in : lut.inputs)
            intern(in);
        nl.luts.push_back(std::move(lut));
        pending.reset();
    };

    for (const LogicalLine &ll : logical_lines(text)) {
        std::vector<std::string> tok = split_ws(ll.text);
        if (tok.empty())
            continue;
        const std::string &head = tok[0];

        if (head[0] != '.') {
            // cover row of the open .names
            if (!pending)
                throw ParseError("cover row outside .names", ll.lineno);
            int arity = (int)pending->signals.size() - 1;
            std::string lits, out;
            if (arity == 0) {
                if (tok.size() != 1)
                    throw ParseError("constant cover row must be a single output literal",
                                     ll.lineno);
                out = tok[0];
            } else {
                if (tok.size() != 2)
                    throw ParseError("cover row must be <input-literals> <output>", ll.lineno);
                lits = tok[0];
                out = tok[1];
            }
            if ((int)lits.size() != arity)
                throw ParseError("cover row has " + std::to_string(lits.size()) +
                                     " literals, expected " + std::to_string(arity),
                                 ll.lineno);
            for (char c : lits)
                if (c != '0' && c != '1' && c != '-')
                    throw ParseError(std::string("bad cover literal '") + c + "'", ll.lineno);
            if (out == "0")
                throw ParseError("off-set covers are not supported", ll.lineno);
            if (out != "1")
                throw ParseError("cover output literal must be 1", ll.lineno);
            pending->cubes.push_back(CoverCube{lits});
            continue;
        }

        if (ended)
            throw ParseError("directive after .end", ll.lineno);
        if (head != ".model" && !in_model)
            throw ParseError("directive before .model", ll.lineno);
        flush_names();

        if (head == ".model") {
            if (in_model)
                throw ParseError("only a single .model is supported", ll.lineno);
            if (tok.size() != 2)
                throw ParseError(".model requires a name", ll.lineno);
            nl.name = tok[1];
            in_model = true;
        } else if (head == ".inputs") {
            for (size_t i = 1; i < tok.size(); i++) {
                if (std::find(nl.inputs.begin(), nl.inputs.end(), tok[i]) != nl.inputs.end())
                    throw ParseError("duplicate input '" + tok[i] + "'", ll.lineno);
                nl.inputs.push_back(tok[i]);
                set_driver(tok[i], NetDriverKind::PrimaryInput, (int)nl.inputs.size() - 1,
                           ll.lineno);
            }
        } else if (head == ".outputs") {
            for (size_t i = 1; i < tok.size(); i++) {
                if (std::find(nl.outputs.begin(), nl.outputs.end(), tok[i]) != nl.outputs.end())
                    throw ParseError("duplicate output '" + tok[i] + "'", ll.lineno);
                nl.outputs.push_back(tok[i]);
                intern(tok[i]);
            }
        } else if (head == ".names") {
            if (tok.size() < 2)
                throw ParseError(".names requires at least an output", ll.lineno);
            pending = PendingNames{};
            pending->signals.assign(tok.begin() + 1, tok.end());
            pending->lineno = ll.lineno;
        } else if (head == ".latch") {
            // .latch <data> <output> [re <clock>] [<init>]
            Latch latch;
            size_t n = tok.size();
            if (n < 3)
                throw ParseError(".latch requires data and output nets", ll.lineno);
            latch.data = tok[1];
            latch.output = tok[2];
            size_t i = 3;
            if (i < n && (tok[i] == "re" || tok[i] == "fe" || tok[i] == "ah" || tok[i] == "al" ||
                          tok[i] == "as")) {
                if (tok[i] != "re")
                    throw ParseError("only rising-edge latches are supported", ll.lineno);
                if (i + 1 >= n)
                    throw ParseError(".latch re requires a clock net", ll.lineno);
                latch.clock = tok[i + 1];
                i += 2;
            }
            if (i < n) {
                if (tok[i] == "0")
                    latch.init = 0;
                else if (tok[i] == "1")
                    latch.init = 1;
                else
                    throw ParseError("latch init value must be 0 or 1", ll.lineno);
                i++;
            }
            if (i != n)
                throw ParseError("trailing tokens on .latch", ll.lineno);
            set_driver(latch.output, NetDriverKind::LatchOutput, (int)nl.latches.size(),
                       ll.lineno);
            intern(latch.data);
            if (!latch.clock.empty()) {
                intern(latch.clock);
                if (!nl.is_clock_net(latch.clock))
                    nl.clocks.push_back(latch.clock);
            }
            nl.latches.push_back(std::move(latch));
        } else if (head == ".end") {
            ended = true;
        } else {
            throw ParseError("unknown directive " + head, ll.lineno);
        }
    }
    flush_names();
    if (!in_model)
        throw ParseError("missing .model");
    if (!ended)
        throw ParseError("missing .end");

    // Clock nets ride the dedicated global network; they may not double as logic.
    for (const std::string &clk : nl.clocks) {
        const NetInfo &ni = nl.nets[nl.net_id(clk)];
        if (ni.driver != NetDriverKind::None)
            throw ParseError("clock net '" + clk + "' may not be driven by logic or ports; "
                             "the clock uses the dedicated global network");
        for (const Lut &l : nl.luts)
            for (const std::string &in : l.inputs)
                if (in == clk)
                    throw ParseError("clock net '" + clk + "' used as LUT input");
        for (const Latch &l : nl.latches)
            if (l.data == clk)
                throw ParseError("clock net '" + clk + "' used as latch data");
    }

    // Driver completeness for everything that is not a clock.
    for (const NetInfo &ni : nl.nets) {
        if (nl.is_clock_net(ni.name))
            continue;
        if (ni.driver == NetDriverKind::None)
            throw ParseError("net '" + ni.name + "' has no driver");
    }
    for (const std::string &out : nl.outputs)
        if (nl.is_clock_net(out))
            throw ParseError("clock net '" + out + "' may not be a primary output");
    return nl;
}

std::string print_blif(const LogicNetlist &nl) {
    std::ostringstream ss;
    ss << ".model " << nl.name << "\n";
    ss << ".inputs";
    for (const std::string &i : nl.inputs)
        ss << " " << i;
    ss << "\n.outputs";
    for (const std::string &o : nl.outputs)
        ss << " " << o;
    ss << "\n";
    for (const Lut &lut : nl.luts) {
        ss << ".names";
        for (const std::string &in : lut.inputs)
            ss << " " << in;
        ss << " " << lut.output << "\n";
        int arity = (int)lut.inputs.size();
        for (int entry = 0; entry < (1 << arity); entry++) {
            if (!lut_eval(lut.table, entry))
                continue;
            for (int j = 0; j < arity; j++)
                ss << (((entry >> j) & 1) ? '1' : '0');
            ss << (arity ? " 1\n" : "1\n");
        }
    }
    for (const Latch &l : nl.latches) {
        ss << ".latch " << l.data << " " << l.output;
        if (!l.clock.empty())
            ss << " re " << l.clock;
        ss << " " << l.init << "\n";
    }
    ss << ".end\n";
    return ss.str();
}

} // namespace minifab
