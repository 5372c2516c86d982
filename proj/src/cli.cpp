#include "majorbound/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "majorbound/bounds.hpp"
#include "majorbound/detail/format.hpp"
#include "majorbound/entropy.hpp"
#include "majorbound/error.hpp"
#include "majorbound/gibbs.hpp"
#include "majorbound/majorization.hpp"
#include "majorbound/oracle.hpp"
#include "majorbound/spectrum.hpp"
#include "majorbound/tolerance.hpp"

namespace majorbound::cli {

namespace {

// A spectrum source is a file path, an inline comma list, or a family form
// ("gibbs N=<x>" / "geometric q=<x>").
Spectrum load_spectrum(const std::string& source) {
    std::error_code ec;
    if (std::filesystem::is_regular_file(source, ec)) {
        std::ifstream in(source);
        std::ostringstream text;
        text << in.rdbuf();
        return parse_spectrum(text.str());
    }
    return parse_spectrum(source);
}

std::string case_tag(const ExtremalCase& c) {
    switch (c.kind) {
        case ExtremalCase::Kind::identity: return "identity";
        case ExtremalCase::Kind::tail_lump: return "tail-lump";
        case ExtremalCase::Kind::min_shift: return "min-shift";
        case ExtremalCase::Kind::tail_cut: return "tail-cut:" + std::to_string(c.cutoff);
    }
    return {};
}

void write_text(const std::string& path, const std::string& body, std::ostream& out) {
    if (path.empty()) {
        out << body;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) fail(Errc::parse_error, "cannot open output file '" + path + "'");
    file << body;
}

struct VerifyOptions {
    std::string spectrum;
    std::size_t m = 0;
    double eps = 0.0;
    std::string functional = "vn";
    std::string set = "tset";
    std::string mode = "grid";
    SearchBudget budget;
    bool json = false;
    std::string output;
};

int run_parsed(CLI::App& app, std::ostream& out) {
    if (auto* bound = app.get_subcommand("bound"); bound->parsed()) {
        const Spectrum s = load_spectrum(bound->get_option("--spectrum")->as<std::string>());
        const EntropyFunctional f = EntropyFunctional::parse(bound->get_option("--f")->as<std::string>());
        const BoundResult r = gap_bound(f, s, bound->get_option("--m")->as<std::size_t>(),
                                        bound->get_option("--eps")->as<double>());
        out << "value = " << detail::g12(r.value) << "\n";
        out << "case = " << case_tag(r.branch) << "\n";
        out << "extremal = " << serialize_inline(r.extremal.sorted()) << "\n";
        return 0;
    }
    if (auto* rank_cmd = app.get_subcommand("rank"); rank_cmd->parsed()) {
        const Spectrum s = load_spectrum(rank_cmd->get_option("--spectrum")->as<std::string>());
        const std::size_t r = majorization_rank_bound(s, rank_cmd->get_option("--eps")->as<double>());
        if (r == kInfiniteRank) {
            out << "inf\n";
        } else {
            out << r << "\n";
        }
        return 0;
    }
    if (auto* figure = app.get_subcommand("figure"); figure->parsed()) {
        const std::string which_name = figure->get_option("which")->as<std::string>();
        FigureId which;
        if (which_name == "fig1") {
            which = FigureId::fig1;
        } else if (which_name == "fig2") {
            which = FigureId::fig2;
        } else if (which_name == "fig3") {
            which = FigureId::fig3;
        } else {
            fail(Errc::parse_error, "unknown figure '" + which_name + "'");
        }
        EpsGrid grid = EpsGrid::default_for(which);
        if (figure->count("--points")) grid.points = figure->get_option("--points")->as<std::size_t>();
        if (figure->count("--eps-min")) grid.min = figure->get_option("--eps-min")->as<double>();
        if (figure->count("--eps-max")) grid.max = figure->get_option("--eps-max")->as<double>();
        write_text(figure->get_option("--output")->as<std::string>(), to_csv(figure_data(which, grid)), out);
        return 0;
    }
    if (auto* verify = app.get_subcommand("verify"); verify->parsed()) {
        const Spectrum s = load_spectrum(verify->get_option("--spectrum")->as<std::string>());
        const std::size_t m = verify->get_option("--m")->as<std::size_t>();
        const double eps = verify->get_option("--eps")->as<double>();
        const EntropyFunctional f = EntropyFunctional::parse(verify->get_option("--f")->as<std::string>());
        const std::string set_name = verify->get_option("--set")->as<std::string>();
        const std::string mode_name = verify->get_option("--mode")->as<std::string>();

        SearchBudget budget;
        if (mode_name == "grid") {
            budget.mode = SearchBudget::Mode::grid;
        } else if (mode_name == "random") {
            budget.mode = SearchBudget::Mode::random;
        } else if (mode_name == "refine") {
            budget.mode = SearchBudget::Mode::refine;
        } else {
            fail(Errc::parse_error, "unknown mode '" + mode_name + "'");
        }
        budget.resolution = verify->get_option("--resolution")->as<std::size_t>();
        budget.samples = verify->get_option("--samples")->as<std::size_t>();
        budget.seed = verify->get_option("--seed")->as<std::uint64_t>();
        budget.refine_passes = verify->get_option("--passes")->as<std::size_t>();
        budget.max_support = verify->get_option("--max-support")->as<std::size_t>();

        ConstraintSet set;
        if (set_name == "tset") {
            set = ConstraintSet::tset;
        } else if (set_name == "pset") {
            set = ConstraintSet::pset;
        } else {
            fail(Errc::parse_error, "unknown set '" + set_name + "'");
        }

        VerificationReport gap_report = worst_gap(f, s, m, eps, budget, set);
        VerificationReport dom_report = verify_dominance(s, m, eps, budget);
        for (auto& check : dom_report.checks) gap_report.checks.push_back(std::move(check));
        gap_report.candidates_tested += dom_report.candidates_tested;

        std::string body;
        if (verify->get_option("--json")->as<bool>()) {
            body = gap_report.to_json() + "\n";
        } else {
            body = gap_report.summary() + "\n";
        }
        write_text(verify->get_option("--output")->as<std::string>(), body, out);
        return gap_report.passed() ? 0 : 1;
    }
    fail(Errc::parse_error, "no subcommand given (expected bound, rank, figure or verify)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        if (const char* tol = std::getenv("MAJORBOUND_TOL")) {
            char* end = nullptr;
            const double tau = std::strtod(tol, &end);
            if (end == tol || *end != '\0') fail(Errc::parse_error, "MAJORBOUND_TOL is not a number");
            set_global_tolerance(tau);
        }

        CLI::App app{"majorization-constrained entropy bounds"};
        app.require_subcommand(1);

        auto* bound = app.add_subcommand("bound", "entropy gap bound for a spectrum");
        bound->add_option("--spectrum", "spectrum source (file, inline list, gibbs N=<x>)")->required();
        bound->add_option("--f", "entropy functional: vn | renyi:<a> | tsallis:<a>")->default_val("vn");
        bound->add_option("--m", "matched prefix length")->required();
        bound->add_option("--eps", "trace-distance budget in [0,1]")->required();

        auto* rank_cmd = app.add_subcommand("rank", "majorization-rank bound");
        rank_cmd->add_option("--spectrum", "spectrum source")->required();
        rank_cmd->add_option("--eps", "relative entropy-loss budget")->required();

        auto* figure = app.add_subcommand("figure", "emit figure data as CSV");
        figure->add_option("which", "fig1 | fig2 | fig3")->required();
        figure->add_option("--points", "grid point count");
        figure->add_option("--eps-min", "smallest eps");
        figure->add_option("--eps-max", "largest eps");
        figure->add_option("--output", "output path (stdout when omitted)")->default_val("");

        auto* verify = app.add_subcommand("verify", "search-based verification of the bound");
        verify->add_option("--spectrum", "spectrum source")->required();
        verify->add_option("--m", "matched prefix length")->required();
        verify->add_option("--eps", "trace-distance budget")->required();
        verify->add_option("--f", "entropy functional")->default_val("vn");
        verify->add_option("--set", "tset | pset")->default_val("tset");
        verify->add_option("--mode", "grid | random | refine")->default_val("grid");
        verify->add_option("--resolution", "grid steps")->default_val("100");
        verify->add_option("--samples", "random draw count")->default_val("10000");
        verify->add_option("--seed", "search seed")->default_val("1");
        verify->add_option("--passes", "refinement passes")->default_val("3");
        verify->add_option("--max-support", "candidate support window")->default_val("12");
        verify->add_flag("--json", "emit the full report as JSON");
        verify->add_option("--output", "output path (stdout when omitted)")->default_val("");

        std::vector<std::string> argv_storage;
        argv_storage.reserve(args.size() + 1);
        argv_storage.push_back("majorbound");
        argv_storage.insert(argv_storage.end(), args.begin(), args.end());
        std::vector<const char*> argv;
        for (const auto& a : argv_storage) argv.push_back(a.c_str());

        try {
            app.parse(static_cast<int>(argv.size()), argv.data());
        } catch (const CLI::CallForHelp& help) {
            out << app.help();
            return 0;
        } catch (const CLI::ParseError& pe) {
            err << "error: " << pe.what() << "\n";
            return 2;
        }
        return run_parsed(app, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace majorbound::cli
