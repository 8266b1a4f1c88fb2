#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "cellmatch/cell_complex.hpp"
#include "cellmatch/homology.hpp"
#include "cellmatch/matching.hpp"
#include "cellmatch/subdivision.hpp"
#include "cellmatch/transverse_flow.hpp"

/// JSON file formats. Every document carries a "format" tag; readers reject
/// mismatched tags and malformed content with invalid_input errors.
namespace cellmatch::io {

using json = nlohmann::ordered_json;

inline constexpr const char* complex_format = "cellmatch-complex-v1";
inline constexpr const char* sub_format = "cellmatch-sub-v1";
inline constexpr const char* loop_format = "cellmatch-loop-v1";
inline constexpr const char* matching_format = "cellmatch-matching-v1";
inline constexpr const char* certificate_format = "cellmatch-certificate-v1";
inline constexpr const char* betti_format = "cellmatch-betti-v1";
inline constexpr const char* subdivision_format = "cellmatch-subdiv-v1";
inline constexpr const char* orbit_format = "cellmatch-orbits-v1";
inline constexpr const char* filtration_format = "cellmatch-filtration-v1";
inline constexpr const char* flow_format = "cellmatch-flow-v1";
inline constexpr const char* degeneracy_format = "cellmatch-degeneracy-v1";

/// Simplicial complexes are written as their maximal simplices, cw complexes
/// as explicit cell records. Coordinates are "p/q" strings.
json complex_to_json(const CellComplex& complex);
CellComplex complex_from_json(const json& doc);

struct SubcomplexSpec {
  std::vector<CellId> cells;
  bool closure = false;
};
json sub_to_json(const SubcomplexSpec& sub);
SubcomplexSpec sub_from_json(const json& doc);
SubcomplexPair pair_from_spec(const ComplexPtr& complex, const SubcomplexSpec& sub);

json loop_to_json(const DualLoop& loop);
DualLoop loop_from_json(const json& doc);

json matching_to_json(const Matching& m);
Matching matching_from_json(const json& doc);

json certificate_to_json(const HallCertificate& cert);
HallCertificate certificate_from_json(const json& doc);

json betti_to_json(const BettiVector& betti);
BettiVector betti_from_json(const json& doc);

json subdivision_to_json(const SubdivisionMap& map);
SubdivisionMap subdivision_from_json(const ComplexPtr& source, const ComplexPtr& subdivided,
                                     const json& doc);

json orbit_to_json(const OrbitReport& report);
json filtration_to_json(const Filtration& filtration);
json degeneracy_to_json(const DegeneracyReport& report);
json flow_to_json(const FlowStructure& fs);

json read_json(const std::filesystem::path& path);
/// Writes through a temporary file in the same directory and renames it.
void write_json(const std::filesystem::path& path, const json& doc);
std::string dump(const json& doc);

}  // namespace cellmatch::io
