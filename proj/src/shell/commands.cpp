#include "kratzer/shell/commands.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "kratzer/estimate.hpp"
#include "kratzer/shell/files.hpp"
#include "kratzer/spectrum.hpp"

namespace kratzer::shell {
namespace {

double wavenumbers(double joules) { return joules / units().wavenumber_to_joule; }

std::vector<double> parse_triplet(const std::string& text) {
    std::vector<double> v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            v.push_back(std::stod(item, &used));
            if (used != item.size()) throw UsageError("");
        } catch (const std::exception&) {
            throw UsageError("--init expects De_cm1,re_angstrom,beta, got '" + text + "'");
        }
    }
    if (v.size() != 3) throw UsageError("--init expects three comma-separated numbers, got '" + text + "'");
    return v;
}

int emit(const json& rep, const std::string& table, const OutputOptions& oo, std::ostream& out, std::ostream& err) {
    if (oo.format != OutputFormat::json) out << table;
    if (oo.format != OutputFormat::table) out << dump(rep);
    if (oo.out) {
        std::ofstream f(*oo.out);
        f << dump(rep);
        if (!f) {
            err << "error: cannot write " << *oo.out << '\n';
            return 1;
        }
    }
    return 0;
}

}  // namespace

json cmd_spectrum(const SpectrumOptions& o, std::string& table, int& exit_code) {
    if (o.beta && o.min_length) throw UsageError("--beta and --min-length are mutually exclusive");
    if (o.nmax < 0 || o.lmax < 0) throw UsageError("--nmax and --lmax must be non-negative");
    const Molecule mol = load_molecule(o.molecule_file, o.section);

    double beta = 0.0;
    if (o.beta) {
        if (!(*o.beta >= 0.0)) throw UsageError("--beta must be non-negative");
        beta = *o.beta;
    } else if (o.min_length) {
        if (!(*o.min_length >= 0.0)) throw UsageError("--min-length must be non-negative");
        beta = beta_from_minimal_length(length_to_si(*o.min_length, LengthUnit::angstrom));
    }

    const EnergyUnit u = o.units;
    const std::string us(unit_symbol(u));
    json rep = make_report("spectrum");
    rep["molecule"] = molecule_json(mol);
    rep["deformation"] = {{"beta", quantity(beta, beta_unit)},
                          {"min_length", quantity(length_from_si(minimal_length(Deformation::minimal(beta)),
                                                                 LengthUnit::angstrom),
                                                  "angstrom")}};
    const double gamma = gamma_of(mol);
    rep["gamma"] = dimensionless(gamma);
    rep["energy_unit"] = us;

    std::vector<std::string> header{"n", "l", "lambda", "E0 [" + us + "]", "dE [" + us + "]", "E [" + us + "]"};
    if (o.expansion) header.insert(header.end(), {"E_exp [" + us + "]", "E_exp-E [" + us + "]"});
    Table tab(header);

    json levels = json::array();
    json failures = json::array();
    std::vector<LevelObservation> written;
    for (int l = 0; l <= o.lmax; ++l) {
        for (int n = 0; n <= o.nmax; ++n) {
            const QuantumNumbers qn{n, l};
            json lv;
            lv["n"] = count(n);
            lv["l"] = count(l);
            try {
                const EnergyLevel e = energy_deformed(mol, beta, qn);
                const double lam = lambda_of(gamma, l);
                lv["lambda"] = dimensionless(lam);
                lv["E0"] = energy(e.e0, u);
                lv["dE"] = energy(e.de, u);
                lv["E"] = energy(e.e, u);
                lv["E_plus_De"] = energy(e.e + mol.De_si(), u);
                lv["perturbative_warning"] = e.perturbative_warning;
                std::vector<std::string> row{std::to_string(n), std::to_string(l), fmt(lam),
                                             fmt(energy_from_si(e.e0, u), 12), fmt(energy_from_si(e.de, u)),
                                             fmt(energy_from_si(e.e, u), 12)};
                if (o.expansion) {
                    const double ex = energy_expansion(mol, beta, qn);
                    lv["E_expansion"] = energy(ex, u);
                    lv["expansion_minus_exact"] = energy(ex - e.e, u);
                    row.push_back(fmt(energy_from_si(ex, u), 12));
                    row.push_back(fmt(energy_from_si(ex - e.e, u), 4));
                }
                if (o.decompose) {
                    json terms = json::array();
                    for (const auto& t : term_decomposition(mol, beta, qn)) {
                        terms.push_back({{"kind", std::string(term_name(t.kind))},
                                         {"order", count(t.order)},
                                         {"value", energy(t.value, u)}});
                    }
                    lv["terms"] = terms;
                }
                tab.add(row);
                levels.push_back(lv);
                written.push_back({n, l, wavenumbers(e.e), 1.0});
            } catch (const Error& ex) {
                lv["error"] = ex.what();
                failures.push_back(lv);
                tab.add({std::to_string(n), std::to_string(l), "-", "error: " + std::string(ex.what())});
                exit_code = 1;
            }
        }
    }
    rep["levels"] = levels;
    if (!failures.empty()) rep["failed_levels"] = failures;

    std::ostringstream os;
    os << mol.name << ": gamma = " << fmt(gamma) << ", beta = " << fmt(beta) << " " << beta_unit << "\n";
    os << tab.str();
    if (o.decompose) {
        os << "\nterm decomposition [" << us << "]\n";
        for (const auto& lv : levels) {
            os << "n=" << lv["n"]["value"] << " l=" << lv["l"]["value"] << ":";
            for (const auto& t : lv["terms"])
                os << "  " << t["kind"].get<std::string>() << "(" << t["order"]["value"] << ")="
                   << fmt(t["value"]["value"].get<double>(), 8);
            os << '\n';
        }
    }
    table = os.str();

    if (o.levels_out) {
        std::ofstream f(*o.levels_out);
        write_levels(f, written);
        if (!f) throw Error("cannot write " + *o.levels_out);
    }
    return rep;
}

json cmd_bound(const BoundOptions& o, std::string& table, int& exit_code) {
    const Molecule mol = load_molecule(o.molecule_file, o.section);
    if (!mol.zpe_exp) throw UsageError("molecule file has no zpe_exp_cm1; the bound needs the measured zero-point energy");
    json rep = make_report("bound");
    rep["molecule"] = molecule_json(mol);
    rep["assumption"] = "upper bound under full-attribution assumption";
    const double g0 = zpe_theoretical(mol, 0.0);
    rep["zpe_theory_beta0"] = quantity(g0, "cm-1");
    rep["zpe_exp"] = quantity(*mol.zpe_exp, "cm-1");

    std::ostringstream os;
    os << mol.name << "\n";
    os << "G(beta=0)       = " << fmt(g0, 10) << " cm-1\n";
    os << "G_exp           = " << fmt(*mol.zpe_exp, 10) << " cm-1\n";
    try {
        const BoundResult b = beta_upper_bound(mol);
        rep["delta"] = quantity(b.delta_cm1, "cm-1");
        rep["delta_eV"] = quantity(energy_from_si(b.delta_cm1 * units().wavenumber_to_joule, EnergyUnit::electronvolt), "eV");
        rep["beta_max"] = quantity(b.beta_max, beta_unit);
        rep["min_length_max"] = quantity(b.min_length_max_A, "angstrom");
        os << "delta           = " << fmt(b.delta_cm1, 8) << " cm-1\n";
        os << "beta_max        = " << fmt(b.beta_max, 8) << " " << beta_unit << "\n";
        os << "DeltaX_min <    = " << fmt(b.min_length_max_A, 8) << " angstrom (upper bound under full-attribution assumption)\n";
        exit_code = 0;
    } catch (const NoPositiveGap& e) {
        rep["delta"] = quantity(e.delta(), "cm-1");
        rep["error"] = e.what();
        os << "error: " << e.what() << '\n';
        exit_code = 1;
    }
    table = os.str();
    return rep;
}

json cmd_fit(const FitOptionsCli& o, std::string& table, int& exit_code) {
    if (!(o.mu_amu > 0.0)) throw UsageError("--mu must be positive");
    const std::vector<double> init = parse_triplet(o.init);
    if (!(init[0] > 0.0) || !(init[1] > 0.0) || !(init[2] >= 0.0))
        throw UsageError("--init needs De > 0, re > 0, beta >= 0");
    const std::vector<LevelObservation> levels = load_levels(o.levels_file);
    if (levels.size() < 4)
        throw UsageError("fit needs at least 4 levels for 3 parameters, got " + std::to_string(levels.size()));

    const FitResult r = fit_parameters(levels, o.mu_amu, {init[0], init[1], init[2]});
    json rep = make_report("fit");
    rep["mu"] = quantity(o.mu_amu, "amu");
    rep["init"] = {{"De", quantity(init[0], "cm-1")}, {"re", quantity(init[1], "angstrom")},
                   {"beta", quantity(init[2], beta_unit)}};
    rep["result"] = {
        {"De", quantity(r.De, "cm-1")},
        {"re", quantity(r.re, "angstrom")},
        {"beta", quantity(r.beta, beta_unit)},
        {"min_length", quantity(length_from_si(minimal_length(Deformation::minimal(r.beta)), LengthUnit::angstrom),
                                "angstrom")},
        {"rss", quantity(r.rss, "cm-2")},
        {"iterations", count(r.iterations)},
        {"evaluations", count(r.evaluations)},
        {"converged", r.converged},
    };

    Molecule mol;
    mol.De = r.De;
    mol.re = r.re;
    mol.mu = o.mu_amu;
    Table tab({"n", "l", "E_obs [cm-1]", "E_fit [cm-1]", "residual [cm-1]"});
    json res = json::array();
    for (const auto& lv : levels) {
        const double e = wavenumbers(energy_deformed(mol, r.beta, {lv.n, lv.l}).e);
        res.push_back({{"n", count(lv.n)}, {"l", count(lv.l)}, {"E_obs", quantity(lv.E_cm1, "cm-1")},
                       {"E_fit", quantity(e, "cm-1")}, {"residual", quantity(e - lv.E_cm1, "cm-1")},
                       {"weight", dimensionless(lv.weight)}});
        tab.add({std::to_string(lv.n), std::to_string(lv.l), fmt(lv.E_cm1, 12), fmt(e, 12), fmt(e - lv.E_cm1, 4)});
    }
    rep["residuals"] = res;

    std::ostringstream os;
    os << "De = " << fmt(r.De, 12) << " cm-1, re = " << fmt(r.re, 12) << " angstrom, beta = " << fmt(r.beta, 8)
       << " " << beta_unit << "\n";
    os << "rss = " << fmt(r.rss, 6) << " cm-2 after " << r.iterations << " iterations ("
       << (r.converged ? "converged" : "NOT converged") << ")\n";
    os << tab.str();
    table = os.str();
    exit_code = r.converged ? 0 : 1;
    return rep;
}

json cmd_verify(const VerifyOptionsCli& o, std::string& table, int& exit_code) {
    if (o.tol && !(*o.tol > 0.0)) throw UsageError("--tol must be positive");
    const auto checks = run_verify(o.preset, o.tol);
    json rep = make_report("verify");
    rep["grid_preset"] = o.preset == GridPreset::paper ? "paper" : "small";
    json arr = json::array();
    Table tab({"check", "worst", "tolerance", "cases", "status", "worst case"});
    bool all = true;
    const CheckResult* offender = nullptr;
    for (const auto& c : checks) {
        arr.push_back({{"name", c.name},
                       {"worst", dimensionless(c.worst)},
                       {"tolerance", dimensionless(c.tolerance)},
                       {"cases", count(c.cases)},
                       {"passed", c.passed},
                       {"worst_case", c.worst_case}});
        tab.add({c.name, fmt(c.worst, 3), fmt(c.tolerance, 3), std::to_string(c.cases), c.passed ? "PASS" : "FAIL",
                 c.worst_case});
        if (!c.passed) {
            all = false;
            if (!offender || c.worst / c.tolerance > offender->worst / offender->tolerance) offender = &c;
        }
    }
    rep["checks"] = arr;
    rep["passed"] = all;
    std::string text = tab.str();
    if (offender) {
        rep["worst_offender"] = offender->name;
        text += "worst offender: " + offender->name + " (" + offender->worst_case + ")\n";
    }
    table = text;
    exit_code = all ? 0 : 1;
    return rep;
}

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Kratzer molecules with a minimal length: spectra, bounds, fits and self-checks"};
    app.name("kratzer");
    app.require_subcommand(1);

    OutputOptions oo;
    std::string format = "table";
    std::string outpath;
    auto add_output = [&](CLI::App* sub) {
        sub->add_option("--format", format, "table, json or both")
            ->check(CLI::IsMember({"table", "json", "both"}))
            ->capture_default_str();
        sub->add_option("--out", outpath, "write the JSON report to this file");
    };

    SpectrumOptions so;
    double beta = 0.0, min_length = 0.0;
    std::string unit = "cm-1";
    std::string levels_out, section;
    auto* sp = app.add_subcommand("spectrum", "energy levels of a molecule");
    sp->add_option("file", so.molecule_file, "molecule file")->required();
    sp->add_option("--molecule", section, "section name in the molecule file");
    auto* ob = sp->add_option("--beta", beta, "deformation parameter in SI units (expert)");
    auto* om = sp->add_option("--min-length", min_length, "minimal length in angstrom");
    ob->excludes(om);
    sp->add_option("--nmax", so.nmax, "largest vibrational number")->capture_default_str();
    sp->add_option("--lmax", so.lmax, "largest rotational number")->capture_default_str();
    sp->add_option("--units", unit, "cm-1, eV, J or hartree")
        ->check(CLI::IsMember({"cm-1", "eV", "J", "hartree"}))
        ->capture_default_str();
    sp->add_flag("--expansion", so.expansion, "add the large-gamma expansion column");
    sp->add_flag("--decompose", so.decompose, "list the expansion terms per level");
    sp->add_option("--levels-out", levels_out, "write n,l,E_cm1 rows for the fit command");
    add_output(sp);

    BoundOptions bo;
    auto* bd = app.add_subcommand("bound", "minimal-length upper bound from the zero-point energy");
    bd->add_option("file", bo.molecule_file, "molecule file with zpe_exp_cm1")->required();
    bd->add_option("--molecule", section, "section name in the molecule file");
    add_output(bd);

    FitOptionsCli fo;
    auto* ft = app.add_subcommand("fit", "fit De, re and beta to observed levels");
    ft->add_option("levels", fo.levels_file, "levels file")->required();
    ft->add_option("--mu", fo.mu_amu, "reduced mass in amu")->required();
    ft->add_option("--init", fo.init, "initial De_cm1,re_angstrom,beta_SI")->required();
    add_output(ft);

    VerifyOptionsCli vo;
    std::string preset = "small";
    double tol = 0.0;
    auto* vf = app.add_subcommand("verify", "run the built-in consistency checks");
    vf->add_option("--grid-preset", preset, "small or paper")
        ->check(CLI::IsMember({"small", "paper"}))
        ->capture_default_str();
    auto* ot = vf->add_option("--tol", tol, "override every check tolerance");
    add_output(vf);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    oo.format = format == "json" ? OutputFormat::json : format == "both" ? OutputFormat::both : OutputFormat::table;
    if (!outpath.empty()) oo.out = outpath;

    try {
        json rep;
        std::string table;
        int code = 0;
        if (sp->parsed()) {
            if (ob->count()) so.beta = beta;
            if (om->count()) so.min_length = min_length;
            if (!section.empty()) so.section = section;
            if (!levels_out.empty()) so.levels_out = levels_out;
            so.units = *parse_energy_unit(unit);
            rep = cmd_spectrum(so, table, code);
        } else if (bd->parsed()) {
            if (!section.empty()) bo.section = section;
            rep = cmd_bound(bo, table, code);
        } else if (ft->parsed()) {
            rep = cmd_fit(fo, table, code);
        } else {
            vo.preset = preset == "paper" ? GridPreset::paper : GridPreset::small;
            if (ot->count()) vo.tol = tol;
            rep = cmd_verify(vo, table, code);
        }
        const int io = emit(rep, table, oo, out, err);
        return code != 0 ? code : io;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace kratzer::shell
