#include "kratzer/shell/files.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>

#include "kratzer/errors.hpp"

namespace kratzer::shell {
namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

double parse_double(const std::string& text, const std::string& what, int line) {
    double v = 0.0;
    const char* first = text.data();
    const char* last = first + text.size();
    if (!text.empty() && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || !std::isfinite(v))
        throw ParseError(what + ": expected a number, got '" + text + "'", line);
    return v;
}

int parse_int(const std::string& text, const std::string& what, int line) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size())
        throw ParseError(what + ": expected an integer, got '" + text + "'", line);
    return v;
}

struct Section {
    Molecule mol;
    int line = 0;
    std::set<std::string> seen;
    bool touched = false;
};

void finish(Section& s, std::vector<Molecule>& out) {
    if (!s.touched) return;
    for (const char* key : {"De_cm1", "re_angstrom", "mu_amu"}) {
        if (!s.seen.count(key))
            throw ParseError("section '" + s.mol.name + "' is missing required key " + key, s.line);
    }
    if (!(s.mol.De > 0.0)) throw ParseError("De_cm1 must be positive", s.line);
    if (!(s.mol.re > 0.0)) throw ParseError("re_angstrom must be positive", s.line);
    if (!(s.mol.mu > 0.0)) throw ParseError("mu_amu must be positive", s.line);
    out.push_back(s.mol);
}

}  // namespace

std::vector<Molecule> parse_molecules(std::istream& in) {
    std::vector<Molecule> out;
    std::set<std::string> section_names;
    Section cur;
    cur.line = 1;
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const auto hash = raw.find('#');
        const std::string line = trim(std::string_view(raw).substr(0, hash));
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') throw ParseError("unterminated section header", lineno);
            const std::string name = trim(std::string_view(line).substr(1, line.size() - 2));
            if (name.empty()) throw ParseError("empty section name", lineno);
            if (!section_names.insert(name).second) throw ParseError("duplicate section [" + name + "]", lineno);
            finish(cur, out);
            cur = Section{};
            cur.mol.name = name;
            cur.line = lineno;
            cur.touched = true;
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError("expected key = value", lineno);
        const std::string key = trim(std::string_view(line).substr(0, eq));
        const std::string value = trim(std::string_view(line).substr(eq + 1));
        if (key.empty()) throw ParseError("missing key before '='", lineno);
        if (value.empty()) throw ParseError("missing value for " + key, lineno);
        if (!cur.seen.insert(key).second) throw ParseError("duplicate key " + key, lineno);
        if (!cur.touched) cur.line = lineno;
        cur.touched = true;

        if (key == "name")
            cur.mol.name = value;
        else if (key == "De_cm1")
            cur.mol.De = parse_double(value, key, lineno);
        else if (key == "re_angstrom")
            cur.mol.re = parse_double(value, key, lineno);
        else if (key == "mu_amu")
            cur.mol.mu = parse_double(value, key, lineno);
        else if (key == "zpe_exp_cm1")
            cur.mol.zpe_exp = parse_double(value, key, lineno);
        else
            throw ParseError("unknown key " + key, lineno);
    }
    finish(cur, out);
    if (out.empty()) throw ParseError("no molecule defined", 0);
    return out;
}

Molecule select_molecule(const std::vector<Molecule>& mols, const std::optional<std::string>& section) {
    if (!section) {
        if (mols.size() != 1)
            throw ParseError("file defines " + std::to_string(mols.size()) + " molecules; choose one by name", 0);
        return mols.front();
    }
    for (const auto& m : mols)
        if (m.name == *section) return m;
    throw ParseError("no molecule named '" + *section + "'", 0);
}

Molecule load_molecule(const std::string& path, const std::optional<std::string>& section) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path, 0);
    try {
        return select_molecule(parse_molecules(in), section);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what(), 0);
    }
}

std::vector<LevelObservation> parse_levels(std::istream& in) {
    std::string raw;
    int lineno = 0;
    char delim = ',';
    bool have_header = false;
    bool weighted = false;
    std::vector<LevelObservation> out;
    std::map<std::pair<int, int>, int> seen;

    while (std::getline(in, raw)) {
        ++lineno;
        const std::string line = trim(raw);
        if (line.empty() || line.front() == '#') continue;

        if (!have_header) {
            delim = line.find('\t') != std::string::npos ? '\t' : ',';
            std::vector<std::string> cols;
            std::size_t start = 0;
            for (;;) {
                const auto pos = line.find(delim, start);
                cols.push_back(trim(std::string_view(line).substr(start, pos - start)));
                if (pos == std::string::npos) break;
                start = pos + 1;
            }
            const bool base = cols.size() >= 3 && cols[0] == "n" && cols[1] == "l" && cols[2] == "E_cm1";
            if (!base || cols.size() > 4 || (cols.size() == 4 && cols[3] != "weight"))
                throw ParseError("header must be n,l,E_cm1[,weight]", lineno);
            weighted = cols.size() == 4;
            have_header = true;
            continue;
        }

        std::vector<std::string> cells;
        std::size_t start = 0;
        for (;;) {
            const auto pos = line.find(delim, start);
            cells.push_back(trim(std::string_view(line).substr(start, pos - start)));
            if (pos == std::string::npos) break;
            start = pos + 1;
        }
        const std::size_t want = weighted ? 4 : 3;
        if (cells.size() != want)
            throw ParseError("expected " + std::to_string(want) + " columns, got " + std::to_string(cells.size()),
                             lineno);
        LevelObservation lv;
        lv.n = parse_int(cells[0], "n", lineno);
        lv.l = parse_int(cells[1], "l", lineno);
        if (lv.n < 0 || lv.l < 0) throw ParseError("n and l must be non-negative", lineno);
        lv.E_cm1 = parse_double(cells[2], "E_cm1", lineno);
        if (weighted) {
            lv.weight = parse_double(cells[3], "weight", lineno);
            if (!(lv.weight > 0.0)) throw ParseError("weight must be positive", lineno);
        }
        const auto [it, fresh] = seen.emplace(std::pair{lv.n, lv.l}, lineno);
        if (!fresh)
            throw ParseError("duplicate (n, l) = (" + std::to_string(lv.n) + ", " + std::to_string(lv.l)
                                 + "), first on line " + std::to_string(it->second),
                             lineno);
        out.push_back(lv);
    }
    if (!have_header) throw ParseError("missing header n,l,E_cm1[,weight]", 0);
    return out;
}

std::vector<LevelObservation> load_levels(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path, 0);
    try {
        return parse_levels(in);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what(), 0);
    }
}

void write_levels(std::ostream& out, const std::vector<LevelObservation>& levels) {
    bool weighted = false;
    for (const auto& lv : levels) weighted = weighted || lv.weight != 1.0;
    out << (weighted ? "n,l,E_cm1,weight\n" : "n,l,E_cm1\n");
    char buf[64];
    for (const auto& lv : levels) {
        std::snprintf(buf, sizeof buf, "%.17g", lv.E_cm1);
        out << lv.n << ',' << lv.l << ',' << buf;
        if (weighted) {
            std::snprintf(buf, sizeof buf, "%.17g", lv.weight);
            out << ',' << buf;
        }
        out << '\n';
    }
}

}  // namespace kratzer::shell
