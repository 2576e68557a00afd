#include "calclab/scenario.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace calclab {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : text) {
        if (ch == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    if (!cur.empty()) parts.push_back(cur);
    return parts;
}

std::string join_doubles(const std::vector<double>& v) {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ",";
        os << nlohmann::json(v[i]).dump();
    }
    return os.str();
}

std::vector<double> parse_doubles(const std::string& text) {
    std::vector<double> out;
    for (const auto& p : split(text, ','))
        if (!p.empty()) out.push_back(std::stod(p));
    return out;
}

}  // namespace

std::string WeightSpec::to_string() const {
    std::ostringstream os;
    if (kind == Kind::Constant) {
        os << "constant:c=" << nlohmann::json(c).dump();
    } else {
        os << "power:a=" << nlohmann::json(a).dump() << ":x0=" << nlohmann::json(x0).dump();
    }
    return os.str();
}

WeightSpec WeightSpec::parse(const std::string& text) {
    WeightSpec spec;
    auto parts = split(text, ':');
    if (parts.empty()) throw UsageError("empty weight spec");
    if (parts[0] == "constant")
        spec.kind = Kind::Constant;
    else if (parts[0] == "power")
        spec.kind = Kind::Power;
    else
        throw UsageError("unknown weight tag '" + parts[0] + "' (use constant or power)");
    for (std::size_t i = 1; i < parts.size(); ++i) {
        auto kv = split(parts[i], '=');
        if (kv.size() != 2) throw UsageError("bad weight parameter '" + parts[i] + "'");
        double val = std::stod(kv[1]);
        if (kv[0] == "c")
            spec.c = val;
        else if (kv[0] == "a")
            spec.a = val;
        else if (kv[0] == "x0")
            spec.x0 = val;
        else
            throw UsageError("unknown weight parameter '" + kv[0] + "'");
    }
    return spec;
}

std::vector<double> Scenario::beta_or_default() const {
    if (!beta.empty()) return beta;
    std::vector<double> b(static_cast<std::size_t>(m) + 1, 0.0);
    b.back() = 1.0;
    return b;
}

SearchMode parse_search_mode(const std::string& name) {
    if (name == "dyadic") return SearchMode::Dyadic;
    if (name == "dyadic-only") return SearchMode::DyadicOnly;
    if (name == "exhaustive") return SearchMode::Exhaustive;
    throw UsageError("unknown search mode '" + name + "'");
}

std::string search_mode_name(SearchMode mode) {
    switch (mode) {
        case SearchMode::DyadicOnly: return "dyadic-only";
        case SearchMode::Dyadic: return "dyadic";
        case SearchMode::Exhaustive: return "exhaustive";
    }
    return "dyadic";
}

std::string Scenario::to_json() const {
    nlohmann::ordered_json j;
    j["suite"] = suite;
    j["m"] = m;
    j["n"] = n_cells;
    j["x_min"] = x_min;
    j["x_max"] = x_max;
    j["kappa"] = kappa;
    j["s"] = s;
    j["gamma"] = gamma;
    j["beta"] = join_doubles(beta);
    std::ostringstream ws;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (i) ws << ";";
        ws << weights[i].to_string();
    }
    j["weights"] = ws.str();
    j["exponents"] = join_doubles(exponents);
    j["seed"] = seed;
    j["samples"] = samples;
    j["search"] = search_mode_name(search);
    return j.dump(2);
}

Scenario Scenario::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("config is not valid JSON: ") + e.what());
    }
    Scenario sc;
    if (j.contains("suite")) sc.suite = j["suite"].get<std::string>();
    if (j.contains("m")) sc.m = j["m"].get<int>();
    if (j.contains("n")) sc.n_cells = j["n"].get<std::size_t>();
    if (j.contains("x_min")) sc.x_min = j["x_min"].get<double>();
    if (j.contains("x_max")) sc.x_max = j["x_max"].get<double>();
    if (j.contains("kappa")) sc.kappa = j["kappa"].get<int>();
    if (j.contains("s")) sc.s = j["s"].get<double>();
    if (j.contains("gamma")) sc.gamma = j["gamma"].get<double>();
    if (j.contains("beta")) sc.beta = parse_doubles(j["beta"].get<std::string>());
    if (j.contains("weights"))
        for (const auto& w : split(j["weights"].get<std::string>(), ';'))
            if (!w.empty()) sc.weights.push_back(WeightSpec::parse(w));
    if (j.contains("exponents")) sc.exponents = parse_doubles(j["exponents"].get<std::string>());
    if (j.contains("seed")) sc.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("samples")) sc.samples = j["samples"].get<int>();
    if (j.contains("search")) sc.search = parse_search_mode(j["search"].get<std::string>());
    return sc;
}

Scenario Scenario::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_json(buf.str());
}

}  // namespace calclab
