#include "calclab/report.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace calclab {

bool Report::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

std::string report_to_json(const Report& r) {
    nlohmann::ordered_json j;
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : r.checks) {
        nlohmann::ordered_json jc;
        jc["name"] = c.name;
        jc["anchor"] = c.anchor;
        jc["constant"] = c.constant;
        jc["threshold"] = c.threshold;
        jc["pass"] = c.pass;
        jc["runtime_sec"] = c.runtime_sec;
        jc["note"] = c.note;
        j["checks"].push_back(std::move(jc));
    }
    nlohmann::ordered_json meta;
    meta["suite"] = r.suite;
    meta["scenario"] = nlohmann::ordered_json::parse(r.scenario.to_json());
    meta["backend"] = r.backend;
    meta["total_runtime_sec"] = r.total_runtime_sec;
    j["meta"] = std::move(meta);
    return j.dump(2) + "\n";
}

Report report_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    Report r;
    for (const auto& jc : j.at("checks")) {
        Check c;
        c.name = jc.at("name").get<std::string>();
        c.anchor = jc.at("anchor").get<std::string>();
        c.constant = jc.at("constant").get<double>();
        c.threshold = jc.at("threshold").get<double>();
        c.pass = jc.at("pass").get<bool>();
        c.runtime_sec = jc.at("runtime_sec").get<double>();
        c.note = jc.at("note").get<std::string>();
        r.checks.push_back(std::move(c));
    }
    const auto& meta = j.at("meta");
    r.suite = meta.at("suite").get<std::string>();
    r.scenario = Scenario::from_json(meta.at("scenario").dump());
    r.backend = meta.at("backend").get<std::string>();
    r.total_runtime_sec = meta.at("total_runtime_sec").get<double>();
    return r;
}

std::string report_to_csv(const Report& r) {
    std::ostringstream os;
    os << "name,anchor,constant,threshold,pass,runtime_sec\n";
    for (const auto& c : r.checks) {
        os << '"' << c.name << "\",\"" << c.anchor << "\"," << nlohmann::json(c.constant).dump()
           << ',' << nlohmann::json(c.threshold).dump() << ',' << (c.pass ? "true" : "false")
           << ',' << nlohmann::json(c.runtime_sec).dump() << '\n';
    }
    return os.str();
}

void emit_report(const Report& r, const std::string& format, const std::string& path) {
    std::string body;
    if (format == "json")
        body = report_to_json(r);
    else if (format == "csv")
        body = report_to_csv(r);
    else
        throw UsageError("unknown report format '" + format + "' (use json or csv)");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write report to '" + path + "'");
    out << body;
    if (!out) throw std::runtime_error("failed writing report to '" + path + "'");
}

}  // namespace calclab
