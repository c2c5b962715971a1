#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "compop/extspec.hpp"
#include "compop/verify.hpp"

namespace compop {

using json = nlohmann::ordered_json;

/// "x", "yi", "x+yi", "x-yi", "i", "-i"; scientific notation allowed, no spaces.
/// "cis(t)" or "cis(p/q)" is exp(2 pi i t).
/// Throws Error(ParseError).
cplx parse_complex(std::string_view text);

/// "a,b,c,d" with complex literals. Throws ParseError or DegenerateMap.
LinearFractionalMap parse_lft(std::string_view text);

/// Shortest round-trip decimal form, e.g. "0.5-2i".
std::string format_complex(cplx z);

json complex_to_json(cplx z);  // [re, im]
cplx complex_from_json(const json& j);

json series_to_json(const PowerSeries& p);
PowerSeries series_from_json(const json& j);

json space_to_json(const SpaceSpec& s);
SpaceSpec space_from_json(const json& j);

json matrix_to_json(const OperatorMatrix& a);
OperatorMatrix matrix_from_json(const json& j);
/// Coordinate format, 1-based, nonzero entries only.
std::string matrix_market(const OperatorMatrix& a);

json classification_to_json(const LinearFractionalMap& phi);
json grid_to_json(const GridSpec& g);
json predicted_to_json(const PredictedExt& p);
json scan_to_json(const ExtScanReport& r);
/// Columns re, im, ratio_distance, sylvester_min_sv (empty when skipped), flagged.
std::string scan_csv(const ExtScanReport& r);
json extcheck_to_json(const ExtCheckResult& r);
json verify_to_json(const VerifyReport& r);
json lemma_to_json(const LemmaReport& r);

}  // namespace compop
