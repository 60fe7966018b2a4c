#include "cli.hpp"

#include "fusionkz/serialize.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <optional>
#include <ostream>

namespace fusionkz::cli {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Config {
    std::string command;
    std::string suite;
    std::string algebra;
    long level = -1;
    std::string weights;
    std::optional<long> bits;
    std::size_t order = 0;
    std::size_t max_order = 4096;
    std::string z0 = "1/2";
    double tolerance = 1e-20;
    std::string out;
    std::string format;
    bool parallel = false;
};

struct Resolved {
    RootDatumPtr datum;
    std::vector<Weight> weights;
    AssociatorParams params;
    std::string format;
};

std::vector<std::string> split(const std::string &s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

long parse_long(const std::string &s, const std::string &what) {
    try {
        std::size_t used = 0;
        const long v = std::stol(s, &used);
        if (used == s.size())
            return v;
    } catch (const std::exception &) {
    }
    throw UsageError("invalid " + what + " '" + s + "'");
}

std::vector<Weight> parse_weights(const std::string &text, const RootDatum &d, long level) {
    std::vector<Weight> out;
    if (text.empty())
        return out;
    const auto admissible = admissible_weights(d, level);
    for (const auto &item : split(text, ',')) {
        Weight w;
        for (const auto &coord : split(item, '_'))
            w.push_back(parse_long(coord, "weight coordinate"));
        if (w.size() != d.rank)
            throw UsageError("weight '" + item + "' needs " + std::to_string(d.rank) +
                             " coordinates");
        if (std::find(admissible.begin(), admissible.end(), w) == admissible.end())
            throw UsageError("weight '" + item + "' is not admissible at level " +
                             std::to_string(level));
        out.push_back(std::move(w));
    }
    return out;
}

mpfr_prec_t resolve_bits(const std::optional<long> &flag) {
    long bits = 128;
    if (flag) {
        bits = *flag;
    } else if (const char *env = std::getenv("FUSIONKZ_BITS")) {
        bits = parse_long(env, "FUSIONKZ_BITS value");
    }
    if (bits < 53)
        throw UsageError("precision must be at least 53 bits");
    return static_cast<mpfr_prec_t>(bits);
}

Resolved resolve(const Config &cfg) {
    Resolved r;
    if (cfg.level < 0)
        throw UsageError("level must be non-negative");
    try {
        r.datum = build_root_datum(cfg.algebra);
    } catch (const UnsupportedAlgebra &e) {
        throw UsageError(e.what());
    }
    r.weights = parse_weights(cfg.weights, *r.datum, cfg.level);
    r.params.bits = resolve_bits(cfg.bits);
    try {
        r.params.z0 = parse_rational(cfg.z0);
    } catch (const std::exception &) {
        throw UsageError("invalid z0 '" + cfg.z0 + "'");
    }
    if (r.params.z0 <= 0 || r.params.z0 >= 1)
        throw UsageError("z0 must lie strictly between 0 and 1");
    if (!(cfg.tolerance > 0))
        throw UsageError("tolerance must be positive");
    r.params.tolerance = cfg.tolerance;
    r.params.order = cfg.order;
    r.params.max_order = cfg.max_order;
    r.params.exec = cfg.parallel ? Execution::parallel : Execution::serial;
    r.format = cfg.format;
    if (r.format.empty())
        r.format = cfg.out.size() > 4 && cfg.out.substr(cfg.out.size() - 4) == ".csv" ? "csv"
                                                                                        : "json";
    return r;
}

Json config_json(const Config &cfg, const Resolved &r) {
    Json weights = Json::array();
    for (const auto &w : r.weights)
        weights.push_back(weight_label(w));
    return {{"command", cfg.command},
            {"suite", cfg.suite},
            {"algebra", r.datum->label()},
            {"level", cfg.level},
            {"weights", std::move(weights)},
            {"precision_bits", r.params.bits},
            {"order", cfg.order == 0 ? Json("adaptive") : Json(cfg.order)},
            {"max_order", cfg.max_order},
            {"z0", to_string(r.params.z0)},
            {"tolerance", r.params.tolerance}};
}

void emit(const Config &cfg, const std::string &content) {
    if (!cfg.out.empty())
        write_atomic(cfg.out, content);
}

GModulePtr module_for(const Resolved &r, const Weight &w) {
    return std::make_shared<const GModule>(irreducible(r.datum, w));
}

int cmd_fusion_table(const Config &cfg, std::ostream &out) {
    const Resolved r = resolve(cfg);
    if (r.format != "csv" && r.format != "json")
        throw UsageError("unknown format '" + r.format + "'");
    const FusionTable table = fusion_table(r.datum, cfg.level, r.params.exec);
    std::optional<bool> match;
    if (r.datum->series == "A" && r.datum->rank == 1) {
        match = true;
        for (std::size_t i = 0; i < table.weights.size(); ++i)
            for (std::size_t k = 0; k < table.weights.size(); ++k) {
                std::map<Weight, std::size_t> expected;
                for (long nu : sl2_fusion_oracle(cfg.level, table.weights[i][0],
                                                 table.weights[k][0]))
                    expected[{nu}] = 1;
                if (expected != table.entries[i][k])
                    match = false;
            }
    }
    if (r.format == "csv") {
        emit(cfg, fusion_table_csv(table));
    } else {
        Json j = {{"config", config_json(cfg, r)}, {"table", to_json(table)}};
        if (match)
            j["oracle_match"] = *match;
        emit(cfg, dump(j));
    }
    out << "fusion-table " << r.datum->label() << " level " << cfg.level << ": "
        << table.weights.size() << "x" << table.weights.size();
    if (match)
        out << ", oracle-match=" << (*match ? "true" : "false");
    out << "\n";
    return match.value_or(true) ? success : verification_failure;
}

int cmd_associator(const Config &cfg, std::ostream &out) {
    const Resolved r = resolve(cfg);
    if (r.format != "json")
        throw UsageError("associator output is JSON only");
    if (r.weights.size() != 3)
        throw UsageError("associator needs exactly three weights");
    const auto q = evaluate_associator_on_quotients(module_for(r, r.weights[0]),
                                                    module_for(r, r.weights[1]),
                                                    module_for(r, r.weights[2]), cfg.level,
                                                    r.params);
    const bool ok = q.report.passed();
    Json j = to_json(q);
    j["config"] = config_json(cfg, r);
    j["passed"] = ok;
    emit(cfg, dump(j));
    const auto &rep = q.report;
    out << "associator " << r.datum->label() << " level " << cfg.level << ": dim "
        << rep.tensor_dim << ", kernels " << rep.source_kernel_dim << "/"
        << rep.target_kernel_dim << ", order " << q.assoc.order << ", tail "
        << q.assoc.tail_bound.to_string(4) << ", transport "
        << rep.transport_residual.to_string(4) << ", equivariance "
        << max(rep.equivariance_residual, rep.phi_equivariance_residual).to_string(4)
        << (ok ? ", passed" : ", FAILED") << "\n";
    return ok ? success : verification_failure;
}

int cmd_verify(const Config &cfg, std::ostream &out) {
    const Resolved r = resolve(cfg);
    if (r.format != "json")
        throw UsageError("verify output is JSON only");
    const bool all = cfg.suite == "all";
    if (cfg.suite == "pentagon" && r.weights.size() != 4)
        throw UsageError("the pentagon suite needs exactly four weights");
    if (cfg.suite == "oracle" && r.weights.size() != 3)
        throw UsageError("the oracle suite needs exactly three weights");
    if (all && !r.weights.empty() && r.weights.size() != 3 && r.weights.size() != 4)
        throw UsageError("the full suite takes three or four weights");

    Json suites = Json::object();
    bool ok = true;
    if (all || cfg.suite == "unit") {
        const auto rep = unit_suite(r.datum, cfg.level);
        ok = ok && rep.passed();
        suites["unit"] = to_json(rep);
        out << "unit: " << rep.checks.size() << " checks" << (rep.passed() ? ", passed" : ", FAILED")
            << "\n";
    }
    if (cfg.suite == "oracle" || (all && r.weights.size() >= 3)) {
        const auto rep = oracle_suite(module_for(r, r.weights[0]), module_for(r, r.weights[1]),
                                      module_for(r, r.weights[2]), cfg.level, r.params);
        ok = ok && rep.passed();
        suites["oracle"] = to_json(rep);
        for (const auto &c : rep.checks)
            out << "oracle: " << c.name << ", residual " << c.residual.to_string(4)
                << (c.passed ? ", passed" : ", FAILED") << "\n";
    }
    if (cfg.suite == "pentagon" || (all && r.weights.size() == 4)) {
        const auto rep =
            verify_pentagon(module_for(r, r.weights[0]), module_for(r, r.weights[1]),
                            module_for(r, r.weights[2]), module_for(r, r.weights[3]), cfg.level,
                            r.params);
        ok = ok && rep.passed();
        suites["pentagon"] = to_json(rep);
        out << "pentagon: quotient dim " << rep.quotient_dims[0] << ", residual "
            << rep.residual.to_string(4) << (rep.passed() ? ", passed" : ", FAILED") << "\n";
    }
    emit(cfg, dump({{"config", config_json(cfg, r)}, {"suites", suites}, {"passed", ok}}));
    return ok ? success : verification_failure;
}

void add_common(CLI::App *sub, Config &cfg, bool needs_weights) {
    sub->add_option("--algebra", cfg.algebra, "Algebra label such as A1 or A2")->required();
    sub->add_option("--level", cfg.level, "Level (non-negative integer)")->required();
    auto *w = sub->add_option("--weights", cfg.weights,
                              "Weights separated by commas, coordinates by '_' (e.g. 1_0,0_1)");
    if (needs_weights)
        w->required();
    sub->add_option("--bits", cfg.bits, "Mantissa bits (default 128 or FUSIONKZ_BITS)");
    sub->add_option("--order", cfg.order, "Series truncation order (0 = adaptive)");
    sub->add_option("--max-order", cfg.max_order, "Largest order tried by adaptive doubling");
    sub->add_option("--z0", cfg.z0, "Evaluation point p/q in (0, 1)");
    sub->add_option("--tolerance", cfg.tolerance, "Verification tolerance");
    sub->add_option("--out", cfg.out, "Output file, written atomically");
    sub->add_option("--format", cfg.format, "json or csv (default from --out)");
    sub->add_flag("--parallel", cfg.parallel, "Use the OpenMP kernels");
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Fusion products and KZ associators of level-l modules", "fusionkz"};
    app.require_subcommand(1);
    Config cfg;
    auto *table = app.add_subcommand("fusion-table", "Fusion rules of the admissible irreducibles");
    add_common(table, cfg, false);
    auto *assoc = app.add_subcommand("associator", "Associator on fusion quotients");
    add_common(assoc, cfg, true);
    auto *verify = app.add_subcommand("verify", "Run a verification suite");
    verify->add_option("suite", cfg.suite, "pentagon, unit, oracle or all")
        ->required()
        ->check(CLI::IsMember({"pentagon", "unit", "oracle", "all"}));
    add_common(verify, cfg, false);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::Success &e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n";
        return usage_error;
    }

    try {
        if (table->parsed()) {
            cfg.command = "fusion-table";
            return cmd_fusion_table(cfg, out);
        }
        if (assoc->parsed()) {
            cfg.command = "associator";
            return cmd_associator(cfg, out);
        }
        cfg.command = "verify";
        return cmd_verify(cfg, out);
    } catch (const UsageError &e) {
        err << "error: " << e.what() << "\n";
        return usage_error;
    } catch (const PrecisionExhausted &e) {
        err << "error: " << e.what() << "\n";
        return precision_exhausted;
    } catch (const VerificationFailure &e) {
        err << "error: " << e.what() << "\n";
        return verification_failure;
    } catch (const NotInCategory &e) {
        err << "error: " << e.what() << "\n";
        return usage_error;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return verification_failure;
    }
}

} // namespace fusionkz::cli
