#pragma once

#include <complex>
#include <string>

#include <json.hpp>

#include "qeuler/characters.hpp"
#include "qeuler/q_euler.hpp"

namespace qeuler {

using Json = nlohmann::ordered_json;

inline Json cyc_to_json(const Cyc& c) {
    Json j;
    j["m"] = c.conductor();
    Json coeffs = Json::array();
    for (const Rat& r : c.coeffs()) coeffs.push_back(rat_to_string(r));
    j["coeffs"] = coeffs;
    return j;
}

/// "p/q" for rational values, the {"m", "coeffs"} object otherwise.
inline Json scalar_to_json(const Cyc& c) {
    if (c.is_rational()) return rat_to_string(c.rat_value());
    return cyc_to_json(c);
}

inline std::string scalar_to_string(const Cyc& c) {
    if (c.is_rational()) return rat_to_string(c.rat_value());
    return cyc_to_json(c).dump();
}

inline Json char_to_json(const DirichletChar& chi) {
    Json j;
    j["d"] = chi.modulus();
    j["label"] = chi.label();
    j["order"] = chi.order();
    j["real"] = chi.is_real();
    Json vals = Json::array();
    for (const Cyc& v : chi.values()) vals.push_back(scalar_to_json(v));
    j["values"] = vals;
    return j;
}

inline Json params_to_json(const QEulerParams& p) {
    Json j;
    j["n"] = p.n;
    j["h"] = p.h;
    j["k"] = p.k;
    j["d"] = p.d();
    j["chi"] = p.chi.label();
    j["x"] = p.x;
    j["q"] = rat_to_string(p.q);
    return j;
}

}  // namespace qeuler
