#include "sharing/report.hpp"

#include <sstream>

namespace sharing {

namespace {

using nlohmann::ordered_json;

ordered_json point_json(const SymConst &p) {
    ordered_json j;
    j["value"] = p.to_string();
    j["approx"] = approximate_string(p, 20);
    return j;
}

ordered_json points_json(const std::vector<SymConst> &v) {
    ordered_json a = ordered_json::array();
    for (const auto &p : v) a.push_back(point_json(p));
    return a;
}

ordered_json region_json(const Region &r) {
    return ordered_json::array({rational_to_string(r.re_min), rational_to_string(r.re_max),
                                rational_to_string(r.im_min), rational_to_string(r.im_max)});
}

ordered_json order_json(const std::optional<int> &o) {
    if (!o) return nullptr;
    return *o;
}

}  // namespace

ordered_json to_json(const SharingReport &r) {
    ordered_json j;
    j["mode"] = {{"sense", to_string(r.mode.sense)}, {"weight", weight_string(r.mode.weight)}};
    j["region"] = region_json(r.region);
    ordered_json pts = ordered_json::array();
    for (const PointReport &p : r.points) {
        const PointClassification &c = p.classification;
        ordered_json e;
        e["point"] = point_json(c.point);
        e["point"]["snapped"] = c.snapped;
        e["multiplicity"] = p.multiplicity;
        ordered_json o;
        o["alpha"] = c.ord_alpha.to_string();
        o["f_minus_alpha"] = c.ord_f_minus_alpha.to_string();
        o["g_minus_alpha"] = c.ord_g_minus_alpha.to_string();
        if (c.ord_recip_f) o["recip_f_minus"] = c.ord_recip_f->to_string();
        if (c.ord_recip_g) o["recip_g_minus"] = c.ord_recip_g->to_string();
        o["contact_f"] = order_json(contact_order(c, r.mode.sense, true));
        o["contact_g"] = order_json(contact_order(c, r.mode.sense, false));
        e["orders"] = o;
        e["values"] = {{"f", c.value_f}, {"g", c.value_g}, {"alpha", c.value_alpha}};
        e["verdict"] = to_string(p.verdict);
        pts.push_back(e);
    }
    j["points"] = pts;
    j["global"] = {{"status", to_string(r.status)},
                   {"witnesses", points_json(r.witnesses)},
                   {"undecided", points_json(r.problems)}};
    j["diagnostics"] = {{"working_precision", r.diagnostics.working_precision},
                        {"refinement_precision", r.diagnostics.refinement_precision},
                        {"cells", r.diagnostics.cells},
                        {"boundary_shifts", r.diagnostics.boundary_shifts},
                        {"searched_region", region_json(r.diagnostics.searched)}};
    return j;
}

ordered_json to_json(const MobiusCheck &m) {
    return {{"weight", weight_string(m.weight)}, {"outcome", to_string(m.outcome)}, {"details", m.details}};
}

ordered_json to_json(const TransferCheck &t) {
    ordered_json j;
    j["outcome"] = to_string(t.outcome);
    j["premise"] = to_json(t.premise);
    j["conclusion"] = t.conclusion ? to_json(*t.conclusion) : ordered_json(nullptr);
    j["witnesses"] = points_json(t.witnesses);
    return j;
}

ordered_json to_json(const std::vector<CorpusRow> &rows) {
    ordered_json a = ordered_json::array();
    for (const CorpusRow &r : rows)
        a.push_back({{"entry", r.entry}, {"check", r.check}, {"result", to_string(r.result)}, {"observed", r.observed}});
    return a;
}

std::string format_report(const SharingReport &r) {
    const ordered_json j = to_json(r);
    std::ostringstream os;
    os << "mode " << j["mode"]["sense"].get<std::string>() << "/" << j["mode"]["weight"].get<std::string>()
       << ", region [" << j["region"][0].get<std::string>() << ", " << j["region"][1].get<std::string>() << "] x ["
       << j["region"][2].get<std::string>() << ", " << j["region"][3].get<std::string>() << "]\n";
    for (const auto &p : j["points"]) {
        os << "  z0 = " << p["point"]["value"].get<std::string>();
        if (!p["point"]["snapped"].get<bool>()) os << " (approx)";
        const auto &o = p["orders"];
        os << "  alpha " << o["alpha"].get<std::string>() << ", f-alpha " << o["f_minus_alpha"].get<std::string>()
           << ", g-alpha " << o["g_minus_alpha"].get<std::string>();
        if (o.contains("recip_f_minus")) os << ", 1/f-1/alpha " << o["recip_f_minus"].get<std::string>();
        if (o.contains("recip_g_minus")) os << ", 1/g-1/alpha " << o["recip_g_minus"].get<std::string>();
        os << "  -> " << p["verdict"].get<std::string>() << "\n";
    }
    const auto &g = j["global"];
    os << "status: " << g["status"].get<std::string>();
    if (!g["witnesses"].empty()) {
        os << " at";
        for (const auto &w : g["witnesses"]) os << " " << w["value"].get<std::string>();
    }
    if (!g["undecided"].empty()) {
        os << " (undecided at";
        for (const auto &w : g["undecided"]) os << " " << w["value"].get<std::string>();
        os << ")";
    }
    os << "\n";
    return os.str();
}

}  // namespace sharing
