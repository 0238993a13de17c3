#pragma once

#include <string>

#include "carsym/actions.hpp"
#include "carsym/states.hpp"
#include "json.hpp"

namespace carsym {

nlohmann::ordered_json complex_json(Complex c);

// {"shift": l, "skipped": [...]}
nlohmann::ordered_json spreading_json(const SpreadingMap& f);
SpreadingMap spreading_from_json(const nlohmann::json& j);

// {"first_offset": dyadic, "pieces": [{"breakpoint": d, "slope": d, "offset": d}, ...]}
// The leading unbounded piece has slope 1; each listed piece starts at its
// breakpoint. Dyadics are "p" or "p/q" strings.
nlohmann::ordered_json pl_json(const PLDyadicMap& m);
PLDyadicMap pl_from_json(const nlohmann::json& j);

// {"window": [...], "rows": [[...]]}
nlohmann::ordered_json orthogonal_json(const OrthogonalWindowMatrix& o);
OrthogonalWindowMatrix orthogonal_from_json(const nlohmann::json& j);

// State descriptors: {"type":"product","mu":..}, {"type":"toeplitz","q":{..}},
// {"type":"mixture","parts":[[w,{..}],..]}, {"type":"pullback","n":..,"base":{..}},
// {"type":"window","window":[..],"rows":[[..]],"default_diag":..}.
// Unknown keys are rejected.
StatePtr state_from_json(const nlohmann::json& j);
StatePtr state_from_descriptor(const std::string& text);  // JSON, shorthand, or file path

}  // namespace carsym
