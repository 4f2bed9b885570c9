#pragma once

#include "sharing/verdict.hpp"

#include <string>
#include <vector>

namespace sharing {

/// Which triple a check runs on, derived from the entry's (f, g, alpha).
enum class Variant {
    Base,           // (f, g, alpha)
    Inverted,       // (1/f, 1/g, 1/alpha)
    Quotient,       // (f/alpha, g/alpha, 1)
    AlphaMultiple,  // (m f, m g, m) with the entry's multiplier m
};
const char *to_string(Variant v);

struct CorpusCheck {
    enum class Kind { Sharing, Transfer, Order };
    Kind kind = Kind::Sharing;
    Variant variant = Variant::Base;
    SharingMode mode;
    GlobalStatus expected_status = GlobalStatus::Shares;
    TransferCheck::Outcome expected_transfer = TransferCheck::Outcome::TransferHolds;
    /// Constant expressions, e.g. "0" or "-2*pi".
    std::vector<std::string> expected_witnesses;
    /// Order checks: expression, point, expected LocalOrder::to_string().
    std::string expression, point, expected_order;

    std::string describe() const;
};

struct CorpusEntry {
    std::string id;
    std::string f, g, alpha;
    std::string multiplier;
    Region region;
    std::vector<CorpusCheck> checks;
};

/// The eleven examples with the verdicts they assert.
std::vector<CorpusEntry> corpus();

enum class CheckResult { Pass, Fail, Undecided };
const char *to_string(CheckResult r);

struct CorpusRow {
    std::string entry;
    std::string check;
    CheckResult result = CheckResult::Undecided;
    std::string observed;
};

Triple variant_triple(const CorpusEntry &e, Variant v);

/// Runs every check of one entry; each variant triple is analysed once.
std::vector<CorpusRow> run_entry(const CorpusEntry &e, const AnalysisOptions &options = {});
std::vector<CorpusRow> run_corpus(const AnalysisOptions &options = {});

}  // namespace sharing
