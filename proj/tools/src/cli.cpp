#include "repalign/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <ostream>

#include <CLI11.hpp>

#include "repalign/bridge.hpp"
#include "repalign/constructions.hpp"
#include "repalign/errors.hpp"
#include "repalign/json_io.hpp"
#include "repalign/report.hpp"

namespace repalign::cli {

std::uint64_t resolve_default_seed() {
    const char* env = std::getenv("REPAIR_ALIGN_SEED");
    if (env == nullptr || *env == '\0') return default_seed;
    try {
        std::size_t used = 0;
        const auto value = std::stoull(env, &used);
        if (used != std::string(env).size()) throw std::invalid_argument(env);
        return value;
    } catch (const std::exception&) {
        throw FormatError(std::string("REPAIR_ALIGN_SEED must be an unsigned integer, got '") + env + "'");
    }
}

namespace {

constexpr const char* synopsis =
    "usage: repalign <gen|check|repair|sdof|map|bounds|verify|rate> <subcommand> [files] [options]\n";

struct Globals {
    std::string format = "json";
    std::size_t jobs = 1;
    std::uint64_t budget = 100'000'000;
    std::uint64_t seed = default_seed;
    std::string output;
};

struct ViolationExit {};

Domain float_view(const Domain& d) {
    if (d.is_prime_field()) throw PreconditionError("rates need a rational or float instance, not " + d.to_string());
    return d.kind() == DomainKind::floating ? d : Domain::floating();
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Globals g;
    try {
        g.seed = resolve_default_seed();
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    CLI::App app{"Repair alignment and compound wiretap toolkit", "repalign"};
    app.fallthrough();
    app.require_subcommand(1);
    app.add_option("--format", g.format, "Report format")->check(CLI::IsMember({"json", "table"}));
    app.add_option("--jobs", g.jobs, "Worker threads for searches")->check(CLI::PositiveNumber);
    app.add_option("--budget", g.budget, "Candidate cap for exhaustive searches");
    app.add_option("--seed", g.seed, "Seed for randomized commands");
    app.add_option("-o,--output", g.output, "Write the produced artifact here");

    std::function<void()> action;
    auto format = [&] { return parse_report_format(g.format); };
    auto emit = [&](const Json& report) { out << render_report(report, format()); };
    // Search and construction commands write the artifact to -o, otherwise
    // they embed it in the report.
    auto place = [&](Json& report, const char* key, const Json& artifact) {
        if (g.output.empty()) {
            report[key] = artifact;
        } else {
            write_json_file(g.output, artifact);
            report["written"] = g.output;
        }
    };
    auto search_options = [&] { return SearchOptions{g.budget, g.jobs, false}; };

    // gen
    auto* gen = app.add_subcommand("gen", "Generate random codes and channels")->require_subcommand(1);
    struct {
        std::size_t n = 0, k = 0, beta = 1, attempts = 64;
        std::string field = "rational";
        bool diagonal = false;
    } gc;
    auto* gen_code = gen->add_subcommand("code", "Random systematic MDS code");
    gen_code->add_option("--n", gc.n, "Nodes")->required();
    gen_code->add_option("--k", gc.k, "Systematic nodes")->required();
    gen_code->add_option("--beta", gc.beta, "Subpacketization");
    gen_code->add_option("--field", gc.field, "gf:<p> | rational");
    gen_code->add_flag("--diagonal", gc.diagonal, "Diagonal coding blocks");
    gen_code->add_option("--max-attempts", gc.attempts, "Resampling cap");
    gen_code->callback([&] {
        action = [&] {
            GenerationOptions opts;
            opts.max_attempts = gc.attempts;
            opts.jobs = g.jobs;
            const auto domain = Domain::parse(gc.field);
            const auto code = gc.diagonal ? generate_diagonal_code(gc.n, gc.k, gc.beta, domain, g.seed, opts)
                                          : generate_random_code(gc.n, gc.k, gc.beta, domain, g.seed, opts);
            if (g.output.empty()) {
                out << dump(to_json(code));
                return;
            }
            write_json_file(g.output, to_json(code));
            Json r;
            r["artifact"] = "code";
            r["n"] = code.n();
            r["k"] = code.k();
            r["beta"] = code.beta();
            r["domain"] = code.domain().to_string();
            r["seed"] = g.seed;
            r["written"] = g.output;
            emit(r);
        };
    });

    struct {
        std::size_t L = 0, N = 1, K = 2;
        std::string field = "rational", structure = "generic";
    } gch;
    auto* gen_channel = gen->add_subcommand("channel", "Random compound wiretap channel");
    gen_channel->add_option("--L", gch.L, "Users")->required();
    gen_channel->add_option("--N", gch.N, "Symbols per user");
    gen_channel->add_option("--K", gch.K, "1 + eavesdroppers");
    gen_channel->add_option("--field", gch.field, "gf:<p> | rational | float:<tau>");
    gen_channel->add_option("--structure", gch.structure, "generic | diagonal");
    gen_channel->callback([&] {
        action = [&] {
            const auto chan = generate_random_channel(gch.L, gch.N, gch.K, Domain::parse(gch.field), g.seed,
                                                      parse_structure(gch.structure));
            if (g.output.empty()) {
                out << dump(to_json(chan));
                return;
            }
            write_json_file(g.output, to_json(chan));
            Json r;
            r["artifact"] = "channel";
            r["L"] = chan.L();
            r["N"] = chan.N();
            r["K"] = chan.K();
            r["structure"] = to_string(chan.structure());
            r["domain"] = chan.domain().to_string();
            r["seed"] = g.seed;
            r["written"] = g.output;
            emit(r);
        };
    });

    // check
    auto* check = app.add_subcommand("check", "Code checks")->require_subcommand(1);
    std::string check_file;
    bool check_fatal = false;
    auto* check_mds = check->add_subcommand("mds", "Exhaustive MDS check");
    check_mds->add_option("code", check_file, "Code JSON")->required();
    check_mds->add_flag("--fail-on-violation", check_fatal, "Exit 1 when the code is not MDS");
    check_mds->callback([&] {
        action = [&] {
            const auto code = code_from_json(read_json_file(check_file));
            Json r;
            r["n"] = code.n();
            r["k"] = code.k();
            r["beta"] = code.beta();
            r["is_mds"] = is_mds(code, g.jobs);
            emit(r);
            if (check_fatal && !r["is_mds"].get<bool>()) throw ViolationExit{};
        };
    });

    // repair
    auto* repair = app.add_subcommand("repair", "Repair strategies")->require_subcommand(1);
    struct {
        std::string code, strategy, method;
        std::size_t node = 1, delta = 0;
        std::uint64_t trials = 0;
        bool exhaustive = false;
    } rp;
    auto* repair_eval = repair->add_subcommand("eval", "Evaluate a strategy");
    repair_eval->add_option("code", rp.code, "Code JSON")->required();
    repair_eval->add_option("strategy", rp.strategy, "Strategy JSON")->required();
    repair_eval->callback([&] {
        action = [&] {
            const auto code = code_from_json(read_json_file(rp.code));
            const auto strategy = strategy_from_json(read_json_file(rp.strategy));
            emit(to_json(evaluate_repair(code, strategy)));
        };
    });

    auto* repair_search = repair->add_subcommand("search", "Optimal repair search");
    repair_search->add_option("code", rp.code, "Code JSON")->required();
    repair_search->add_option("--node", rp.node, "Failed systematic node (1-based)");
    auto* exhaustive_flag = repair_search->add_flag("--exhaustive", rp.exhaustive, "Exhaustive over GF(p) (default)");
    repair_search->add_option("--trials", rp.trials, "Randomized search with this many trials")
        ->excludes(exhaustive_flag);
    repair_search->callback([&] {
        action = [&] {
            const auto code = code_from_json(read_json_file(rp.code));
            RepairSearchMode mode = ExhaustiveSearch{};
            if (rp.trials > 0) mode = RandomizedSearch{rp.trials, g.seed};
            const auto result = search_optimal_repair(code, rp.node, mode, search_options());
            Json r;
            r["mode"] = rp.trials > 0 ? "randomized" : "exhaustive";
            r["candidates"] = result.candidates;
            r["feasible_candidates"] = result.feasible_candidates;
            r["report"] = to_json(result.report);
            place(r, "strategy", to_json(result.strategy));
            emit(r);
        };
    });

    auto* repair_construct = repair->add_subcommand("construct", "Alignment constructions");
    repair_construct->add_option("code", rp.code, "Code JSON")->required();
    repair_construct->add_option("--node", rp.node, "Failed systematic node (1-based)");
    repair_construct->add_option("--method", rp.method, "inverse | symbol-extension")
        ->required()
        ->check(CLI::IsMember({"inverse", "symbol-extension"}));
    repair_construct->add_option("--delta", rp.delta, "Symbol-extension parameter");
    repair_construct->callback([&] {
        action = [&] {
            const auto code = code_from_json(read_json_file(rp.code));
            if (rp.method == "symbol-extension" && rp.delta == 0) {
                throw PreconditionError("--delta is required for symbol-extension");
            }
            const auto strategy = rp.method == "inverse" ? inverse_alignment_repair(code, rp.node, g.seed)
                                                         : symbol_extension_repair(code, rp.node, rp.delta, g.seed);
            Json r;
            r["construction"] = rp.method;
            r["report"] = to_json(evaluate_repair(code, strategy));
            place(r, "strategy", to_json(strategy));
            emit(r);
        };
    });

    // sdof
    auto* sdof_cmd = app.add_subcommand("sdof", "Secure degrees of freedom")->require_subcommand(1);
    struct {
        std::string chan, beam, method;
        std::size_t delta = 0;
    } sd;
    auto* sdof_eval = sdof_cmd->add_subcommand("eval", "Evaluate a beamforming set");
    sdof_eval->add_option("channel", sd.chan, "Channel JSON")->required();
    sdof_eval->add_option("beamforming", sd.beam, "Beamforming JSON")->required();
    sdof_eval->callback([&] {
        action = [&] {
            const auto chan = channel_from_json(read_json_file(sd.chan));
            const auto v = beamforming_from_json(read_json_file(sd.beam));
            emit(to_json(sdof(chan, v)));
        };
    });

    auto* sdof_search = sdof_cmd->add_subcommand("search", "Optimal beamforming search");
    sdof_search->add_option("channel", sd.chan, "Channel JSON")->required();
    sdof_search->callback([&] {
        action = [&] {
            const auto chan = channel_from_json(read_json_file(sd.chan));
            const auto result = search_optimal_beamforming(chan, search_options());
            Json r;
            r["candidates"] = result.candidates;
            r["feasible_candidates"] = result.feasible_candidates;
            r["report"] = to_json(result.report);
            place(r, "beamforming", to_json(result.set));
            emit(r);
        };
    });

    auto* sdof_construct = sdof_cmd->add_subcommand("construct", "Alignment constructions");
    sdof_construct->add_option("channel", sd.chan, "Channel JSON")->required();
    sdof_construct->add_option("--method", sd.method, "inverse | symbol-extension")
        ->required()
        ->check(CLI::IsMember({"inverse", "symbol-extension"}));
    sdof_construct->add_option("--delta", sd.delta, "Symbol-extension parameter");
    sdof_construct->callback([&] {
        action = [&] {
            const auto chan = channel_from_json(read_json_file(sd.chan));
            if (sd.method == "symbol-extension" && sd.delta == 0) {
                throw PreconditionError("--delta is required for symbol-extension");
            }
            const auto v = sd.method == "inverse" ? inverse_alignment_beamforming(chan, g.seed)
                                                  : symbol_extension_beamforming(chan, sd.delta, g.seed);
            Json r;
            r["construction"] = sd.method;
            r["report"] = to_json(sdof(chan, v));
            if (sd.method == "symbol-extension") {
                r["eq13_guarantee"] = rational_to_string(eq13_guarantee(chan.L(), chan.K(), sd.delta));
            }
            place(r, "beamforming", to_json(v));
            emit(r);
        };
    });

    // map
    auto* map = app.add_subcommand("map", "Code <-> channel mappings")->require_subcommand(1);
    struct {
        std::string file;
        std::size_t node = 1;
        bool fatal = false;
    } mp;
    auto* map_c2ch = map->add_subcommand("code-to-channel", "H = P_i A");
    map_c2ch->add_option("code", mp.file, "Code JSON")->required();
    map_c2ch->add_option("--node", mp.node, "Failed systematic node (1-based)");
    map_c2ch->callback([&] {
        action = [&] {
            const auto mapped = code_to_channel(code_from_json(read_json_file(mp.file)), mp.node);
            Json r;
            r["mapping"] = to_json(mapped.record);
            place(r, "channel", to_json(mapped.channel));
            emit(r);
        };
    });
    auto* map_ch2c = map->add_subcommand("channel-to-code", "A = H");
    map_ch2c->add_option("channel", mp.file, "Channel JSON")->required();
    map_ch2c->add_flag("--fail-on-violation", mp.fatal, "Exit 1 when the mapped code is not MDS");
    map_ch2c->callback([&] {
        action = [&] {
            const auto mapped = channel_to_code(channel_from_json(read_json_file(mp.file)), g.jobs);
            Json r;
            r["mapping"] = to_json(mapped.record);
            place(r, "code", to_json(mapped.code));
            emit(r);
            if (mp.fatal && !mapped.record.is_mds.value_or(false)) throw ViolationExit{};
        };
    });

    // bounds
    auto* bounds = app.add_subcommand("bounds", "Closed-form bounds")->require_subcommand(1);
    struct {
        std::size_t k = 0, K = 0, L = 0, delta = 0;
        std::string overhead, eta;
    } bd;
    auto* lemma3 = bounds->add_subcommand("lemma3", "S-DoF range from a repair overhead");
    lemma3->add_option("--k", bd.k, "Systematic nodes")->required();
    lemma3->add_option("--overhead", bd.overhead, "Repair overhead as num/den")->required();
    lemma3->callback([&] {
        action = [&] {
            Json r = to_json(lemma3_bounds(bd.k, rational_from_string(bd.overhead)));
            emit(r);
        };
    });
    auto* lemma5 = bounds->add_subcommand("lemma5", "Repair overhead range from an S-DoF");
    lemma5->add_option("--K", bd.K, "1 + eavesdroppers")->required();
    lemma5->add_option("--eta", bd.eta, "S-DoF as num/den")->required();
    lemma5->callback([&] { action = [&] { emit(to_json(lemma5_bounds(bd.K, rational_from_string(bd.eta)))); }; });
    auto* eq13 = bounds->add_subcommand("eq13", "Symbol-extension S-DoF guarantee");
    eq13->add_option("--L", bd.L, "Users")->required();
    eq13->add_option("--K", bd.K, "1 + eavesdroppers")->required();
    eq13->add_option("--delta", bd.delta, "Extension parameter")->required();
    eq13->callback([&] {
        action = [&] {
            Json r;
            r["guarantee"] = rational_to_string(eq13_guarantee(bd.L, bd.K, bd.delta));
            r["outer_bound"] = rational_to_string(outer_bound(bd.L));
            emit(r);
        };
    });

    // verify
    auto* verify = app.add_subcommand("verify", "Equivalence checks by double exhaustive search")->require_subcommand(1);
    struct {
        std::string file;
        std::size_t node = 1;
    } vf;
    auto* theorem1 = verify->add_subcommand("theorem1", "Repair problem vs. mapped beamforming problem");
    theorem1->add_option("code", vf.file, "Code JSON over GF(p)")->required();
    theorem1->add_option("--node", vf.node, "Failed systematic node (1-based)");
    theorem1->callback([&] {
        action = [&] {
            emit(to_json(verify_theorem1(code_from_json(read_json_file(vf.file)), vf.node, search_options())));
        };
    });
    auto* theorem2 = verify->add_subcommand("theorem2", "Beamforming problem vs. mapped repair problem");
    theorem2->add_option("channel", vf.file, "Channel JSON over GF(p)")->required();
    theorem2->callback([&] {
        action = [&] { emit(to_json(verify_theorem2(channel_from_json(read_json_file(vf.file)), search_options()))); };
    });

    // rate
    auto* rate = app.add_subcommand("rate", "Finite-SNR secrecy rates")->require_subcommand(1);
    struct {
        std::string chan, beam;
        double power = 1e6, noise = 1.0;
        std::size_t points = 6;
    } rt;
    auto load_rate_inputs = [&] {
        const auto chan = channel_from_json(read_json_file(rt.chan));
        const auto v = beamforming_from_json(read_json_file(rt.beam));
        const Domain target = float_view(chan.domain());
        std::vector<Matrix> mats;
        for (const auto& m : v.mats()) mats.push_back(m.convert_to(target));
        return std::pair{chan.convert_to(target), std::move(mats)};
    };
    auto* rate_eval = rate->add_subcommand("eval", "Secrecy rate at one power");
    rate_eval->add_option("channel", rt.chan, "Channel JSON")->required();
    rate_eval->add_option("beamforming", rt.beam, "Beamforming JSON")->required();
    rate_eval->add_option("--power", rt.power, "Transmit power P")->check(CLI::PositiveNumber);
    rate_eval->add_option("--noise", rt.noise, "Noise variance sigma2")->check(CLI::PositiveNumber);
    rate_eval->callback([&] {
        action = [&] {
            const auto [chan, v] = load_rate_inputs();
            Json r;
            r["power"] = rt.power;
            r["noise"] = rt.noise;
            r["rate_bits"] = secrecy_rate(chan, v, rt.power, rt.noise);
            if (rt.power > rt.noise) {
                r["empirical_dof"] = empirical_dof(chan, v, rt.power, rt.noise);
            } else {
                r["empirical_dof"] = nullptr;
            }
            emit(r);
        };
    });
    auto* rate_sweep = rate->add_subcommand("sweep", "Geometric power ladder up to --power");
    rate_sweep->add_option("channel", rt.chan, "Channel JSON")->required();
    rate_sweep->add_option("beamforming", rt.beam, "Beamforming JSON")->required();
    rate_sweep->add_option("--power", rt.power, "Largest transmit power P")->check(CLI::PositiveNumber);
    rate_sweep->add_option("--noise", rt.noise, "Noise variance sigma2")->check(CLI::PositiveNumber);
    rate_sweep->add_option("--points", rt.points, "Ladder length")->check(CLI::PositiveNumber);
    rate_sweep->callback([&] {
        action = [&] {
            if (!(rt.power > rt.noise)) throw PreconditionError("sweep needs --power > --noise");
            const auto [chan, v] = load_rate_inputs();
            Json r;
            r["noise"] = rt.noise;
            Json rows = Json::array();
            const double top = std::log10(rt.power / rt.noise);
            for (std::size_t j = 1; j <= rt.points; ++j) {
                const double p = rt.noise * std::pow(10.0, top * static_cast<double>(j) / static_cast<double>(rt.points));
                Json row;
                row["power"] = p;
                row["rate_bits"] = secrecy_rate(chan, v, p, rt.noise);
                row["empirical_dof"] = empirical_dof(chan, v, p, rt.noise);
                rows.push_back(std::move(row));
            }
            r["points"] = std::move(rows);
            emit(r);
        };
    });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        err << synopsis;
        return 2;
    }

    try {
        action();
        return 0;
    } catch (const ViolationExit&) {
        return 1;
    } catch (const PreconditionError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const nlohmann::json::exception& e) {
        err << "error: malformed input: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

} // namespace repalign::cli
