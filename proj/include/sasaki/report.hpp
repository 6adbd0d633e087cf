#pragma once

// JSON and CSV serialization of computation results. JSON objects keep a
// fixed key order; CSV numbers use 17 significant digits, independent of
// the locale.

#include "sasaki/extremal.hpp"
#include "sasaki/futaki.hpp"
#include "sasaki/quadrature.hpp"
#include "sasaki/structures.hpp"

#include <json.hpp>

#include <ostream>
#include <string>

namespace sasaki {

using Json = nlohmann::ordered_json;

std::string format_number(double v);  // %.17g without locale

Json to_json(const Weight& w);
Json to_json(const FrameResiduals& r);
Json to_json(const ScalarReport& r);
Json to_json(const VolumeReport& r);
Json to_json(const ClassifyReport& r);
Json to_json(const BasicProfile& p);
Json to_json(const FlowReport& r);

// Header line plus one row per entry.
void write_profile_csv(std::ostream& out, const std::vector<ProfileRow>& rows);
void write_csv_row(std::ostream& out, const std::vector<double>& values);

}  // namespace sasaki
