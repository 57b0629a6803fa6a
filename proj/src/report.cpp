#include "cmc/report.hpp"

#include <json.hpp>

namespace cmc {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json vec3_json(const Vec3& v) { return ordered_json::array({v.x, v.y, v.z}); }

ordered_json cvec3_json(const CVec3& v) {
    return ordered_json{{"re", vec3_json(v.real())}, {"im", vec3_json(v.imag())}};
}

}  // namespace

std::string fnv1a_hex(const std::string& data) {
    uint64_t hash = 14695981039346656037ull;
    for (unsigned char c : data) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    char buf[17];
    snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

std::string RunReport::to_json() const {
    ordered_json j;
    j["tool_version"] = kToolVersion;
    j["command"] = command;
    j["input_digest"] = input_digest;
    ordered_json periods_json = ordered_json::array();
    for (const PeriodReport& p : periods) {
        ordered_json pj;
        pj["cycle"] = p.cycle;
        if (p.force) pj["force"] = vec3_json(*p.force);
        if (p.torque) pj["torque"] = vec3_json(*p.torque);
        if (p.torque_origin) pj["torque_origin"] = vec3_json(*p.torque_origin);
        if (p.phi_period) pj["phi_period"] = cvec3_json(*p.phi_period);
        pj["error_estimate"] = p.error_estimate;
        pj["methods"] = p.methods;
        periods_json.push_back(pj);
    }
    j["periods"] = periods_json;
    ordered_json verdicts_json = ordered_json::object();
    for (const auto& [key, value] : verdicts) verdicts_json[key] = value;
    j["verdicts"] = verdicts_json;
    ordered_json quantities_json = ordered_json::object();
    for (const auto& [key, value] : quantities) quantities_json[key] = value;
    j["quantities"] = quantities_json;
    j["wall_ms"] = wall_ms;
    return j.dump(2) + "\n";
}

namespace {

complex parse_complex(const ordered_json& j) {
    if (j.is_number()) return complex(j.get<double>(), 0.0);
    return complex(j.at(0).get<double>(), j.size() > 1 ? j.at(1).get<double>() : 0.0);
}

RationalFn parse_rational(const ordered_json& j) {
    if (j.contains("roots")) {
        std::vector<std::pair<complex, int>> factors;
        for (const auto& r : j.at("roots")) {
            factors.push_back({complex(r.at(0).get<double>(), r.at(1).get<double>()),
                               r.size() > 2 ? r.at(2).get<int>() : 1});
        }
        const complex scale = j.contains("scale") ? parse_complex(j.at("scale")) : complex(1.0);
        return RationalFn::from_factors(std::move(factors), scale);
    }
    auto parse_poly = [](const ordered_json& arr) {
        std::vector<complex> coeffs;
        for (const auto& c : arr) coeffs.push_back(parse_complex(c));
        return Poly(std::move(coeffs));
    };
    Poly num = j.contains("num") ? parse_poly(j.at("num")) : Poly::constant(1.0);
    Poly den = j.contains("den") ? parse_poly(j.at("den")) : Poly::constant(1.0);
    return RationalFn(std::move(num), std::move(den));
}

}  // namespace

WeierstrassSpecFile parse_weierstrass_spec(const std::string& json_text) {
    const ordered_json j = ordered_json::parse(json_text);
    WeierstrassSpecFile spec;
    spec.data.gauss_projection = parse_rational(j.at("g"));
    spec.data.height_density = parse_rational(j.at("dh"));
    if (j.contains("punctures")) {
        for (const auto& p : j.at("punctures")) {
            spec.data.punctures.push_back(parse_complex(p));
        }
    }
    if (j.contains("clearance")) spec.data.clearance = j.at("clearance").get<double>();
    int index = 0;
    if (j.contains("cycles")) {
        for (const auto& c : j.at("cycles")) {
            const complex center = parse_complex(c.at("center"));
            const double radius = c.at("radius").get<double>();
            const int turns = c.contains("turns") ? c.at("turns").get<int>() : 1;
            const std::string label =
                c.contains("label") ? c.at("label").get<std::string>()
                                    : "cycle-" + std::to_string(index);
            spec.cycles.push_back({label, ComplexPath::circle(center, radius, turns)});
            ++index;
        }
    }
    return spec;
}

}  // namespace cmc
