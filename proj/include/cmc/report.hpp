#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cmc/vec3.hpp"
#include "cmc/weierstrass.hpp"

namespace cmc {

inline constexpr const char* kToolVersion = "0.1.0";

// Per-cycle results: force/torque periods and, for Weierstrass inputs, the
// complex periods of Phi.
struct PeriodReport {
    std::string cycle;
    std::optional<Vec3> force;
    std::optional<Vec3> torque;
    std::optional<Vec3> torque_origin;
    std::optional<CVec3> phi_period;
    double error_estimate = 0;
    std::vector<std::string> methods;
};

struct RunReport {
    std::string command;
    std::string input_digest;
    std::vector<PeriodReport> periods;
    std::vector<std::pair<std::string, std::string>> verdicts;  // ordered
    std::vector<std::pair<std::string, double>> quantities;     // named scalars
    double wall_ms = 0;

    // Deterministic except for the wall_ms field.
    std::string to_json() const;
};

std::string fnv1a_hex(const std::string& data);

// Weierstrass spec-file ingestion. Schema:
//   { "g": {"roots": [[re,im,mult],...], "scale": [re,im]} | {"num": [...], "den": [...]},
//     "dh": same shape,
//     "punctures": [[re,im],...],
//     "cycles": [{"center":[re,im], "radius": r, "turns": n, "label": "..."}] }
struct WeierstrassSpecFile {
    WeierstrassData data;
    std::vector<NamedComplexCycle> cycles;
};
WeierstrassSpecFile parse_weierstrass_spec(const std::string& json_text);

}  // namespace cmc
