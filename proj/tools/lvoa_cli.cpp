#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "lvoa/parallel.hpp"
#include "lvoa/report.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct RunConfig {
    int n = 2;
    int l = 2;
    std::string comp = "1,1";
    std::string cutoff = "4";
    std::size_t max_states = lvoa::kDefaultMaxStates;
    int threads = 0;
    std::string out;
    std::string format = "json";
    std::uint64_t seed = 1;
    std::size_t sample_limit = 200000;
    int check_weight = 4;
    std::string which = "prime-omega";
    bool corrupt = false;
};

// Fills every option not given on the command line from a JSON config;
// keys match the long flag names with '-' or '_'.
void apply_config(const std::string& path, CLI::App& app, RunConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw lvoa::UsageError("cannot read config file " + path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw lvoa::UsageError(std::string("config file is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw lvoa::UsageError("config file must hold a JSON object");
    auto given = [&](const std::string& flag) {
        for (const auto* sub : app.get_subcommands())
            if (sub->count("--" + flag) > 0) return true;
        return false;
    };
    auto lookup = [&](const std::string& flag) -> const nlohmann::json* {
        std::string alt = flag;
        for (auto& c : alt)
            if (c == '-') c = '_';
        if (j.contains(flag)) return &j[flag];
        if (j.contains(alt)) return &j[alt];
        return nullptr;
    };
    auto set = [&](const std::string& flag, auto& field) {
        const nlohmann::json* v = lookup(flag);
        if (!v || given(flag)) return;
        try {
            field = v->get<std::decay_t<decltype(field)>>();
        } catch (const nlohmann::json::exception&) {
            throw lvoa::UsageError("config key '" + flag + "' has the wrong type");
        }
    };
    set("n", cfg.n);
    set("l", cfg.l);
    set("comp", cfg.comp);
    set("max-states", cfg.max_states);
    set("threads", cfg.threads);
    set("out", cfg.out);
    set("format", cfg.format);
    set("seed", cfg.seed);
    set("sample-limit", cfg.sample_limit);
    set("check-weight", cfg.check_weight);
    set("which", cfg.which);
    set("corrupt", cfg.corrupt);
    if (const nlohmann::json* v = lookup("cutoff"); v && !given("cutoff"))
        cfg.cutoff = v->is_string() ? v->get<std::string>() : v->dump();
}

void emit(const lvoa::Report& report, const RunConfig& cfg) {
    const std::string text = cfg.format == "csv" ? lvoa::to_csv(report.body) : report.body.dump(2) + "\n";
    if (cfg.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(cfg.out);
    if (!out) throw lvoa::UsageError("cannot write " + cfg.out);
    out << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact truncated verification of lattice vertex algebra cosets and level-rank duality"};
    app.require_subcommand(1);
    RunConfig cfg;
    std::string config_path;

    auto add_common = [&](CLI::App* sub, bool pair, bool cutoff) {
        if (pair) {
            sub->add_option("--n", cfg.n, "rank parameter n");
            sub->add_option("--l", cfg.l, "level parameter l");
        }
        if (cutoff) sub->add_option("--cutoff", cfg.cutoff, "weight cutoff (rational)");
        sub->add_option("--max-states", cfg.max_states, "basis state guard");
        sub->add_option("--threads", cfg.threads, "worker threads (0 = runtime default)");
        sub->add_option("--out", cfg.out, "report file (default stdout)");
        sub->add_option("--format", cfg.format, "report format")->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--seed", cfg.seed, "seed for sampled checks");
        sub->add_option("--config", config_path, "JSON config with the same keys");
    };

    auto* info = app.add_subcommand("lattice-info", "lattice data of A_{n-1}^{xl}, K and N");
    add_common(info, true, false);
    auto* vir = app.add_subcommand("virasoro", "Virasoro check of a named conformal-vector family");
    add_common(vir, true, false);
    vir->add_option("--which", cfg.which, "family")
        ->check(CLI::IsMember({"prime-omega", "omega-tilde", "omega", "u", "lattice", "sugawara", "coset"}));
    vir->add_option("--check-weight", cfg.check_weight, "bracket check weight");
    auto* dual = app.add_subcommand("duality", "coset against parafermion graded dimensions");
    add_common(dual, true, true);
    auto* levi = app.add_subcommand("levi-duality", "tensor coset against relative parafermion");
    add_common(levi, false, true);
    levi->add_option("--n", cfg.n, "rank parameter n");
    levi->add_option("--comp", cfg.comp, "composition of l, e.g. 1,2");
    auto* maps = app.add_subcommand("map-check", "tau homomorphism and W(0) image check");
    add_common(maps, true, true);
    maps->add_option("--sample-limit", cfg.sample_limit, "pairs checked before sampling");
    maps->add_flag("--corrupt", cfg.corrupt, "negative control with corrupted signs");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e) == 0 ? kExitPass : kExitUsage;
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (!config_path.empty()) apply_config(config_path, app, cfg);
        if (cfg.format != "json" && cfg.format != "csv") throw lvoa::UsageError("format must be json or csv");
        if (cfg.max_states == 0) throw lvoa::UsageError("max-states must be positive");
        if (cfg.threads < 0) throw lvoa::UsageError("threads must be nonnegative");
        lvoa::set_thread_count(cfg.threads);
        lvoa::RunOptions opts;
        opts.max_states = cfg.max_states;
        opts.seed = cfg.seed;
        opts.sample_limit = cfg.sample_limit;
        opts.check_weight = cfg.check_weight;
        auto cutoff = [&] {
            try {
                return lvoa::Rational::parse(cfg.cutoff);
            } catch (const std::exception&) {
                throw lvoa::UsageError("cannot parse cutoff '" + cfg.cutoff + "'");
            }
        };

        lvoa::Report report;
        if (app.got_subcommand(info)) {
            report = lvoa::cmd_lattice_info(cfg.n, cfg.l);
        } else if (app.got_subcommand(vir)) {
            report = lvoa::cmd_virasoro(cfg.n, cfg.l, cfg.which, opts);
        } else if (app.got_subcommand(dual)) {
            report = lvoa::cmd_duality(cfg.n, cfg.l, cutoff(), opts);
        } else if (app.got_subcommand(levi)) {
            lvoa::Composition comp{{1}};
            try {
                comp = lvoa::Composition::parse(cfg.comp);
            } catch (const std::invalid_argument& e) {
                throw lvoa::UsageError(e.what());
            }
            report = lvoa::cmd_levi_duality(comp, cfg.n, cutoff(), opts);
        } else {
            report = lvoa::cmd_map_check(cfg.n, cfg.l, cutoff(), cfg.corrupt, opts);
        }
        emit(report, cfg);
        return report.pass() ? kExitPass : kExitFail;
    } catch (const lvoa::UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const lvoa::GuardError& e) {
        std::cerr << "guard exceeded: " << e.what() << "\n";
        return kExitUsage;
    } catch (const lvoa::CapacityError& e) {
        std::cerr << "guard exceeded: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
