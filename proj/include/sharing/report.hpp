#pragma once

#include "sharing/corpus.hpp"
#include "sharing/verdict.hpp"

#include "json.hpp"

namespace sharing {

/// Machine-readable forms. Deterministic: no timings, stable key order.
nlohmann::ordered_json to_json(const SharingReport &r);
nlohmann::ordered_json to_json(const MobiusCheck &m);
nlohmann::ordered_json to_json(const TransferCheck &t);
nlohmann::ordered_json to_json(const std::vector<CorpusRow> &rows);

/// Plain-text table for the terminal.
std::string format_report(const SharingReport &r);

}  // namespace sharing
