// Command-line front end: analyze a triple, or run the example corpus.
#include "sharing/corpus.hpp"
#include "sharing/report.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>

using namespace sharing;

namespace {

enum Exit { kOk = 0, kFails = 1, kUndecided = 2, kUsage = 3 };

int status_code(GlobalStatus s) {
    switch (s) {
    case GlobalStatus::Shares:
        return kOk;
    case GlobalStatus::Fails:
        return kFails;
    case GlobalStatus::Undecided:
        return kUndecided;
    }
    return kUndecided;
}

int worst(int a, int b) {
    if (a == kFails || b == kFails) return kFails;
    return std::max(a, b);
}

std::vector<std::string> split_commas(const std::string &s) {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char ch : s) {
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        if (ch == ',' && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

void write_json(const std::string &path, const nlohmann::ordered_json &j) {
    if (path.empty()) return;
    if (path == "-") {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << "\n";
}

struct AnalyzeArgs {
    std::string f, g, alpha;
    std::string region = "-7,7,-1,1";
    std::string sense = "vanishing";
    std::string weight = "inf";
    std::string mobius;
    bool transfer = false;
    long precision = 256;
    std::string json;
};

int run_analyze(const AnalyzeArgs &a) {
    Expr f, g, alpha;
    Region region;
    SharingMode mode;
    std::optional<Mobius> mobius;
    try {
        f = parse(a.f);
        g = parse(a.g);
        alpha = parse(a.alpha);
        region = Region::parse(a.region);
        mode = SharingMode::parse(a.sense + "/" + a.weight);
        if (!a.mobius.empty()) {
            auto parts = split_commas(a.mobius);
            if (parts.size() != 4) throw std::invalid_argument("--mobius needs four coefficients a,b,c,d");
            mobius = Mobius(parse(parts[0]), parse(parts[1]), parse(parts[2]), parse(parts[3]));
        }
    } catch (const ParseError &e) {
        std::cerr << "parse error at offset " << e.offset << ": " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    if (a.precision < 64) {
        std::cerr << "error: --precision must be at least 64\n";
        return kUsage;
    }
    AnalysisOptions options{PrecisionSchedule::for_working(a.precision)};
    try {
        TripleAnalysis analysis = analyze_triple(Triple(f, g, alpha), region, options);
        SharingReport report = report_for(analysis, mode);
        std::cout << format_report(report);
        int code = status_code(report.status);
        nlohmann::ordered_json j;
        j["report"] = to_json(report);
        if (mobius) {
            Triple mapped(apply_mobius(*mobius, f), apply_mobius(*mobius, g), apply_mobius(*mobius, alpha));
            SharingMode value_mode{Sense::Value, mode.weight};
            SharingReport before = report_for(analysis, value_mode);
            SharingReport after = report_for(analyze_triple(mapped, region, options), value_mode);
            MobiusCheck m = compare_under_mobius(before, after);
            std::cout << "mobius " << mobius->to_string() << ": " << to_string(m.outcome) << " (" << m.details << ")\n";
            j["mobius"] = to_json(m);
            code = worst(code, m.outcome == MobiusCheck::Outcome::Consistent ? kOk
                               : m.outcome == MobiusCheck::Outcome::Violation ? kFails
                                                                                : kUndecided);
        }
        if (a.transfer) {
            if (alpha.is_rational(0)) throw ExprError("alpha vanishes identically");
            TransferCheck t = transfer_from(analysis, analyze_triple(quotient_triple(f, g, alpha), region, options), mode);
            std::cout << "transfer " << mode.to_string() << ": " << to_string(t.outcome);
            for (const auto &w : t.witnesses) std::cout << " " << w.to_string();
            std::cout << "\n";
            j["transfer"] = to_json(t);
            code = worst(code, t.outcome == TransferCheck::Outcome::TransferFails ? kFails
                               : t.outcome == TransferCheck::Outcome::Undecided   ? kUndecided
                                                                                  : kOk);
        }
        write_json(a.json, j);
        return code;
    } catch (const ExprError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception &e) {
        std::cerr << "undecided: " << e.what() << "\n";
        return kUndecided;
    }
}

int run_corpus_cmd(long precision, const std::string &json) {
    AnalysisOptions options{PrecisionSchedule::for_working(precision)};
    std::vector<CorpusRow> rows = run_corpus(options);
    int code = kOk;
    for (const CorpusRow &r : rows) {
        std::cout << to_string(r.result) << "  " << r.entry << "  " << r.check << "  [" << r.observed << "]\n";
        if (r.result == CheckResult::Fail) code = kFails;
        if (r.result == CheckResult::Undecided) code = worst(code, kUndecided);
    }
    write_json(json, to_json(rows));
    return code;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Check value sharing of meromorphic function triples"};
    app.require_subcommand(1);

    AnalyzeArgs args;
    auto *analyze = app.add_subcommand("analyze", "analyze one triple (f, g, alpha)");
    analyze->add_option("--f", args.f, "first function of z")->required();
    analyze->add_option("--g", args.g, "second function of z")->required();
    analyze->add_option("--alpha", args.alpha, "shared small function")->required();
    analyze->add_option("--region", args.region, "re_min,re_max,im_min,im_max")->capture_default_str();
    analyze->add_option("--sense", args.sense, "vanishing or value")
        ->check(CLI::IsMember({"vanishing", "value"}))
        ->capture_default_str();
    analyze->add_option("--weight", args.weight, "0, 1, 2, ... or inf")->capture_default_str();
    analyze->add_option("--mobius", args.mobius, "also compare under w -> (a w + b)/(c w + d), given as a,b,c,d");
    analyze->add_flag("--transfer", args.transfer, "also check the quotient triple (f/alpha, g/alpha, 1)");
    analyze->add_option("--precision", args.precision, "working precision in bits")->capture_default_str();
    analyze->add_option("--json", args.json, "write a JSON report to this path ('-' for stdout)");

    long corpus_precision = 256;
    std::string corpus_json;
    auto *corpus_cmd = app.add_subcommand("corpus", "run the example corpus");
    corpus_cmd->add_option("--precision", corpus_precision, "working precision in bits")->capture_default_str();
    corpus_cmd->add_option("--json", corpus_json, "write the results as JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kUsage;
    }
    try {
        if (*analyze) return run_analyze(args);
        return run_corpus_cmd(corpus_precision, corpus_json);
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
}
