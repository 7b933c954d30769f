#pragma once

#include "json.hpp"
#include <string>
#include <string_view>
#include <vector>

#include "kratzer/physmodel.hpp"

namespace kratzer::shell {

using json = nlohmann::ordered_json;

inline constexpr std::string_view schema_id = "kratzer-report/1";
inline constexpr std::string_view beta_unit = "kg^-2 m^-2 s^2";

/// {"value": v, "unit": unit}; non-finite values become null.
json quantity(double value, std::string_view unit);
json count(long value);
json dimensionless(double value);

/// Energy given in joules, rendered in `u`.
json energy(double joules, EnergyUnit u);

json molecule_json(const Molecule& mol);

/// Fresh report with the schema tag and command name.
json make_report(std::string_view command);

/// Two-space indented JSON with a trailing newline.
std::string dump(const json& report);

/// Plain-text table with right-aligned columns.
class Table {
public:
    explicit Table(std::vector<std::string> header);
    void add(std::vector<std::string> row);
    std::string str() const;

private:
    std::vector<std::vector<std::string>> rows_;
};

/// %.*g formatting.
std::string fmt(double v, int digits = 10);

}  // namespace kratzer::shell
