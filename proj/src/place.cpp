#include "minifab/place.hpp"

#include <set>
#include <sstream>

namespace minifab {

const Placement::Entry *Placement::find(const std::string &name) const {
    for (const Entry &e : entries)
        if (e.name == name)
            return &e;
    return nullptr;
}

Placement parse_place(const std::string &text) {
    Placement place;
    bool have_header = false;
    std::set<std::pair<int, int>> sites;
    std::set<std::string> names;
    int lineno = 0;
    for (const std::string &raw : split_on(text, '\n')) {
        lineno++;
        std::string line = trim(raw);
        if (line.empty() || line[0] == '#')
            continue;
        if (!have_header) {
            std::vector<std::string> tok = split_ws(line);
            // Array size: <R> x <C> logic blocks
            if (tok.size() != 7 || tok[0] != "Array" || tok[1] != "size:" || tok[3] != "x" ||
                tok[5] != "logic" || tok[6] != "blocks")
                throw ParseError("expected 'Array size: <R> x <C> logic blocks'", lineno);
            place.declared_rows = std::stoi(tok[2]);
            place.declared_cols = std::stoi(tok[4]);
            if (place.declared_rows != kGridRows || place.declared_cols != kGridCols)
                throw ParseError("array size " + tok[2] + "x" + tok[4] +
                                     " does not match the 19x19 fabric",
                                 lineno);
            have_header = true;
            continue;
        }
        std::vector<std::string> tok = split_ws(line);
        if (tok.size() != 5 || tok[4].empty() || tok[4][0] != '#')
            throw ParseError("expected '<name> <x> <y> <sub> #<n>'", lineno);
        Placement::Entry e;
        e.name = tok[0];
        try {
            e.x = std::stoi(tok[1]);
            e.y = std::stoi(tok[2]);
            e.subblock = std::stoi(tok[3]);
        } catch (const std::exception &) {
            throw ParseError("bad coordinate", lineno);
        }
        if (e.x < 0 || e.x >= kGridCols || e.y < 0 || e.y >= kGridRows)
            throw ParseError("coordinate outside 0-18", lineno);
        if (e.subblock != 0)
            throw ParseError("subblock must be 0", lineno);
        if (!sites.insert({e.x, e.y}).second)
            throw ParseError("duplicate site (" + tok[1] + "," + tok[2] + ")", lineno);
        if (!names.insert(e.name).second)
            throw ParseError("block '" + e.name + "' placed twice", lineno);
        place.entries.push_back(std::move(e));
    }
    if (!have_header)
        throw ParseError("missing 'Array size' header");
    return place;
}

std::string print_place(const Placement &place) {
    std::ostringstream ss;
    ss << "Array size: " << place.declared_rows << " x " << place.declared_cols
       << " logic blocks\n";
    int idx = 0;
    for (const Placement::Entry &e : place.entries)
        ss << e.name << " " << e.x << " " << e.y << " " << e.subblock << " #" << idx++ << "\n";
    return ss.str();
}

void validate_placement(const Placement &place, const PackedNetlist &packed,
                        const LogicNetlist &netlist) {
    std::set<std::string> expected;
    for (const PackedBlock &b : packed.blocks)
        expected.insert(b.name);
    for (const std::string &in : netlist.inputs)
        expected.insert(in);
    for (const std::string &out : netlist.outputs)
        expected.insert(kOutPadPrefix + out);

    std::set<std::string> placed;
    for (const Placement::Entry &e : place.entries) {
        if (!expected.count(e.name))
            throw Error("placement names unknown block '" + e.name + "'");
        placed.insert(e.name);
        bool is_pad = packed.find_block(e.name) == nullptr;
        if (is_pad) {
            if (!is_io_site(e.y, e.x))
                throw Error("pad '" + e.name + "' placed at (" + std::to_string(e.x) + "," +
                            std::to_string(e.y) + "), not a GPIO site");
        } else {
            if (!is_clb_site(e.y, e.x))
                throw Error("block '" + e.name + "' placed at (" + std::to_string(e.x) + "," +
                            std::to_string(e.y) + "), not a CLB site");
        }
    }
    for (const std::string &name : expected)
        if (!placed.count(name))
            throw Error("unplaced block '" + name + "'");
}

} // namespace minifab
