#pragma once

#include <variant>

#include <json.hpp>

#include "heis/heisenberg.hpp"
#include "heis/product.hpp"
#include "heis/profinite.hpp"
#include "heis/solenoid.hpp"

namespace heis::io {

using json = nlohmann::json;

// Scalars travel as decimal strings; rationals as "p/q".
json residue_to_json(const Residue& a);
Residue residue_from_json(const json& j);

json product_to_json(const ProductElement& x);
ProductElement product_from_json(const json& j);

// Points carry a ring descriptor: {"type": "integer" | "rational" |
// "residue" (+"modulus") | "radic" (+"r", "L")}.
json point_to_json(const HeisenbergPoint<Int>& g);
json point_to_json(const HeisenbergPoint<Rat>& g);
json point_to_json(const HeisenbergPoint<Residue>& g);
json point_to_json(const HeisenbergPoint<RAdicInt>& g);

// A point over whichever ring the JSON declares.
using AnyPoint =
    std::variant<HeisenbergPoint<Int>, HeisenbergPoint<Rat>,
                 HeisenbergPoint<Residue>, HeisenbergPoint<RAdicInt>>;

AnyPoint point_from_json(const json& j);
json point_to_json(const AnyPoint& g);

HeisenbergPoint<Int> int_point_from_json(const json& j);
HeisenbergPoint<Rat> rat_point_from_json(const json& j);

json tower_to_json(const profinite::TowerPoint& w);
profinite::TowerPoint tower_from_json(const json& j);

json adic_point_from(const profinite::AdicPoint& p); // alias of point_to_json
profinite::AdicPoint adic_point_from_json(const json& j);

// Solenoid points carry a "lattice" discriminator ("standard"/"dilated").
json solenoid_to_json(const solenoid::Point& p);
solenoid::Point solenoid_from_json(const json& j);
json solenoid_to_json(const solenoid::DilatedPoint& p);

// Either flavor, detected from the discriminator.
using AnySolenoidPoint = std::variant<solenoid::Point, solenoid::DilatedPoint>;
AnySolenoidPoint any_solenoid_from_json(const json& j);

} // namespace heis::io
