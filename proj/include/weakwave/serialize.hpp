#pragma once

#include <ostream>
#include <string>

#include "json.hpp"
#include "weakwave/ch.hpp"
#include "weakwave/coefficient.hpp"
#include "weakwave/nvw.hpp"
#include "weakwave/profile.hpp"
#include "weakwave/residual.hpp"

namespace weakwave {

using nlohmann::json;

// Numbers that may be infinite are written as "inf" / "-inf".
json number_json(double v);
double number_from_json(const json& j);
json slope_json(const Slope& s);

json to_json(const CoefficientSpec& spec);
CoefficientSpec coefficient_from_json(const json& j);

json to_json(const Tolerances& t);
json to_json(const Constants& c);
json to_json(const Segment& seg);
json to_json(const GluePoint& g);
json to_json(const Profile& p);
// Rebuilds a profile from the plan stored in its JSON form.
Profile profile_from_json(const json& j);

json to_json(const nvw::SpeedRegime& r);
json to_json(const nvw::GlueCandidate& c);
json to_json(const ch::CubicAnalysis& a);
json to_json(const ch::Taxonomy& t);

json to_json(const verify::ResidualResult& r);
json to_json(const verify::JumpEntry& j);
json to_json(const verify::ResidualReport& r);

// "%.17g" formatting.
std::string format_double(double v);
void write_csv(std::ostream& os, const std::vector<SampleRow>& rows);

}  // namespace weakwave
