#include "kratzer/shell/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace kratzer::shell {

json quantity(double value, std::string_view unit) {
    json j;
    if (std::isfinite(value))
        j["value"] = value;
    else
        j["value"] = nullptr;
    j["unit"] = std::string(unit);
    return j;
}

json count(long value) {
    json j;
    j["value"] = value;
    j["unit"] = "count";
    return j;
}

json dimensionless(double value) { return quantity(value, "1"); }

json energy(double joules, EnergyUnit u) { return quantity(energy_from_si(joules, u), unit_symbol(u)); }

json molecule_json(const Molecule& mol) {
    json j;
    j["name"] = mol.name;
    j["De"] = quantity(mol.De, "cm-1");
    j["re"] = quantity(mol.re, "angstrom");
    j["mu"] = quantity(mol.mu, "amu");
    if (mol.zpe_exp) j["zpe_exp"] = quantity(*mol.zpe_exp, "cm-1");
    return j;
}

json make_report(std::string_view command) {
    json j;
    j["schema"] = std::string(schema_id);
    j["command"] = std::string(command);
    return j;
}

std::string dump(const json& report) { return report.dump(2) + "\n"; }

Table::Table(std::vector<std::string> header) { rows_.push_back(std::move(header)); }

void Table::add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

std::string Table::str() const {
    std::vector<std::size_t> width;
    for (const auto& row : rows_) {
        if (width.size() < row.size()) width.resize(row.size(), 0);
        for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
    }
    std::ostringstream os;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        for (std::size_t i = 0; i < rows_[r].size(); ++i) {
            if (i) os << "  ";
            os << std::string(width[i] - rows_[r][i].size(), ' ') << rows_[r][i];
        }
        os << '\n';
        if (r == 0) {
            std::size_t total = 0;
            for (std::size_t i = 0; i < width.size(); ++i) total += width[i] + (i ? 2 : 0);
            os << std::string(total, '-') << '\n';
        }
    }
    return os.str();
}

std::string fmt(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

}  // namespace kratzer::shell
