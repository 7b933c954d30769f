#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "kratzer/errors.hpp"
#include "kratzer/physmodel.hpp"
#include "kratzer/shell/report.hpp"
#include "kratzer/shell/verify.hpp"

namespace kratzer::shell {

/// Bad flag combination or missing input; exit code 2.
class UsageError : public Error {
public:
    using Error::Error;
};

enum class OutputFormat { table, json, both };

struct OutputOptions {
    OutputFormat format = OutputFormat::table;
    std::optional<std::string> out;  // JSON report path
};

struct SpectrumOptions {
    std::string molecule_file;
    std::optional<std::string> section;
    std::optional<double> beta;        // SI
    std::optional<double> min_length;  // angstrom
    int nmax = 2;
    int lmax = 2;
    EnergyUnit units = EnergyUnit::wavenumber;
    bool expansion = false;
    bool decompose = false;
    std::optional<std::string> levels_out;
};

struct BoundOptions {
    std::string molecule_file;
    std::optional<std::string> section;
};

struct FitOptionsCli {
    std::string levels_file;
    double mu_amu = 0.0;
    std::string init;  // "De_cm1,re_A,beta_SI"
};

struct VerifyOptionsCli {
    GridPreset preset = GridPreset::small;
    std::optional<double> tol;
};

/// Each command returns the report and sets `exit_code` (0 ok, 1 failure).
json cmd_spectrum(const SpectrumOptions& o, std::string& table, int& exit_code);
json cmd_bound(const BoundOptions& o, std::string& table, int& exit_code);
json cmd_fit(const FitOptionsCli& o, std::string& table, int& exit_code);
json cmd_verify(const VerifyOptionsCli& o, std::string& table, int& exit_code);

/// Full command line entry point; exit codes 0 success, 1 computation
/// failure, 2 usage or parse error.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace kratzer::shell
