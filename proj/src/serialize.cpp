#include "chacon/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace chacon {

Json triadic_to_json(const TriadicRational& t) {
    return Json{{"num", t.numerator().str()}, {"exp", t.exponent()}};
}

TriadicRational triadic_from_json(const Json& j) {
    if (j.is_string()) return TriadicRational::parse(j.get<std::string>());
    return TriadicRational(BigInt(j.at("num").get<std::string>()), j.at("exp").get<int>());
}

std::string tail_name(TailPolicy tail) {
    switch (tail) {
        case TailPolicy::AllCentral: return "central";
        case TailPolicy::RepeatPrefix: return "repeat";
        case TailPolicy::Truncated: return "none";
    }
    throw std::logic_error("unknown tail policy");
}

TailPolicy tail_from_name(const std::string& name) {
    if (name == "central") return TailPolicy::AllCentral;
    if (name == "repeat") return TailPolicy::RepeatPrefix;
    if (name == "none") return TailPolicy::Truncated;
    throw std::invalid_argument("unknown tail policy '" + name + "'");
}

std::string cert_name(CertStatus status) {
    switch (status) {
        case CertStatus::Certified: return "certified";
        case CertStatus::Refuted: return "refuted";
        case CertStatus::Unknown: return "unknown";
    }
    throw std::logic_error("unknown certification status");
}

std::string kind_name(MeasureKind kind) {
    switch (kind) {
        case MeasureKind::GraphJoining: return "graph-joining";
        case MeasureKind::WeirdConservative: return "weird-conservative";
        case MeasureKind::WeirdDissipative: return "weird-dissipative";
    }
    throw std::logic_error("unknown measure kind");
}

Json family_to_json(const ConsistentFamily& f) {
    Json taus = Json::array();
    for (const auto& tau : f.taus) taus.push_back(tau);
    return Json{{"n0", f.n0},
                {"offsets", f.initial.offsets},
                {"taus", taus},
                {"tail", tail_name(f.tail)}};
}

ConsistentFamily family_from_json(const Json& j) {
    ConsistentFamily f;
    f.n0 = j.at("n0").get<int>();
    f.initial.depth = f.n0;
    f.initial.offsets = j.at("offsets").get<std::vector<std::int64_t>>();
    for (const auto& tau : j.at("taus")) f.taus.push_back(tau.get<Tau>());
    f.tail = tail_from_name(j.value("tail", "central"));
    return f;
}

BoxTensor tensor_from_csv(const std::string& text, int d) {
    BoxTensor t;
    t.d = d;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> fields;
        std::istringstream ls(line);
        std::string field;
        while (std::getline(ls, field, ',')) fields.push_back(field);
        if (fields.empty()) continue;
        if (static_cast<int>(fields.size()) != d + 1 && static_cast<int>(fields.size()) != d + 2)
            throw std::invalid_argument("tensor row needs d levels plus a value: " + line);
        std::vector<std::int64_t> key;
        for (int i = 0; i < d; ++i) key.push_back(std::stoll(fields[i]));
        Rational v;
        if (static_cast<int>(fields.size()) == d + 2) {
            // triadic pair encoding (num, exp)
            v = to_rational(TriadicRational(BigInt(fields[d]), std::stoi(fields[d + 1])));
        } else {
            v = parse_rational(fields[d]);
        }
        if (v != 0) t.values[key] = v;
    }
    return t;
}

std::string tensor_to_csv(const BoxTensor& t) {
    std::string out;
    for (const auto& [key, v] : t.values) {
        for (auto l : key) out += std::to_string(l) + ",";
        out += rational_string(v) + "\n";
    }
    return out;
}

void atomic_write(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp);
        out << content;
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("cannot rename " + tmp + " to " + path);
}

} // namespace chacon
