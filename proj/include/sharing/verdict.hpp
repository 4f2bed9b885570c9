#pragma once

#include "sharing/local.hpp"
#include "sharing/region.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sharing {

enum class GlobalStatus { Shares, Fails, Undecided };
const char *to_string(GlobalStatus s);

struct AnalysisOptions {
    PrecisionSchedule schedule;
};

struct Diagnostics {
    mpfr_prec_t working_precision = 0;
    /// Highest precision the root refinement needed.
    mpfr_prec_t refinement_precision = 0;
    int cells = 0;
    int boundary_shifts = 0;
    /// Region after boundary shifts.
    Region searched;
};

/// Candidate points of a triple with their classifications; mode independent.
struct TripleAnalysis {
    Region region;
    std::vector<Candidate> candidates;
    std::vector<PointClassification> classifications;
    Diagnostics diagnostics;
};

TripleAnalysis analyze_triple(const Triple &t, const Region &r, const AnalysisOptions &options = {});

struct PointReport {
    PointClassification classification;
    int multiplicity = 0;
    LocalVerdict verdict = LocalVerdict::Undecided;
};

struct SharingReport {
    SharingMode mode;
    Region region;
    std::vector<PointReport> points;
    GlobalStatus status = GlobalStatus::Undecided;
    /// NotShared points when status is Fails.
    std::vector<SymConst> witnesses;
    /// Undecided points.
    std::vector<SymConst> problems;
    Diagnostics diagnostics;
};

SharingReport report_for(const TripleAnalysis &a, const SharingMode &mode);

/// Throws the region errors (BoundaryEvent, SubdivisionBudgetExceeded,
/// IdenticallyVanishing, ResidualTooLarge).
SharingReport check_sharing(const Expr &f, const Expr &g, const Expr &alpha, const Region &r,
                            const SharingMode &mode, const AnalysisOptions &options = {});

/// Exact points compare structurally; approximate ones by distance < 10^-20.
bool same_point(const SymConst &a, const SymConst &b);
bool same_point_set(const std::vector<SymConst> &a, const std::vector<SymConst> &b);

struct MobiusCheck {
    enum class Outcome { Consistent, Violation, Undecided };
    Outcome outcome = Outcome::Undecided;
    std::string details;
    std::optional<int> weight;
};
const char *to_string(MobiusCheck::Outcome o);

/// Compares two Value-sense reports (before and after the map).
MobiusCheck compare_under_mobius(const SharingReport &before, const SharingReport &after);

MobiusCheck verify_mobius_invariance(const Expr &f, const Expr &g, const Expr &alpha, const Mobius &m,
                                     const Region &r, std::optional<int> weight,
                                     const AnalysisOptions &options = {});
/// Same check for several weights, sharing the two triple analyses.
std::vector<MobiusCheck> verify_mobius_invariance(const Expr &f, const Expr &g, const Expr &alpha,
                                                  const Mobius &m, const Region &r,
                                                  const std::vector<std::optional<int>> &weights,
                                                  const AnalysisOptions &options = {});

struct TransferCheck {
    enum class Outcome { TransferHolds, TransferFails, PreconditionFails, Undecided };
    Outcome outcome = Outcome::Undecided;
    SharingReport premise;
    /// Sharing of (f/alpha, g/alpha, 1); present when the premise holds.
    std::optional<SharingReport> conclusion;
    std::vector<SymConst> witnesses;
};
const char *to_string(TransferCheck::Outcome o);

/// The triple (f/alpha, g/alpha, 1).
Triple quotient_triple(const Expr &f, const Expr &g, const Expr &alpha);

TransferCheck verify_quotient_transfer(const Expr &f, const Expr &g, const Expr &alpha, const Region &r,
                                       const SharingMode &mode, const AnalysisOptions &options = {});
/// Transfer check from precomputed analyses of the triple and its quotient.
TransferCheck transfer_from(const TripleAnalysis &triple, const TripleAnalysis &quotient,
                            const SharingMode &mode);

}  // namespace sharing
