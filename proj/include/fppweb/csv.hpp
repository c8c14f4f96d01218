#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "fppweb/fpp.hpp"
#include "fppweb/harness.hpp"
#include "fppweb/journeys.hpp"
#include "fppweb/metrics.hpp"
#include "fppweb/path.hpp"

namespace fppweb {

/// Shortest round-trip decimal; "inf" / "-inf" for infinities.
std::string format_number(double v);
double parse_number(const std::string& text);

/// "start_time,dt" header row, its values, then "value" and one value per row.
std::string path_csv(const Path& p);
Path parse_path_csv(const std::string& text);

/// Rows t,position,distance in lattice units, t ascending then position.
std::string frontier_csv(const DistanceFrontier& f);

/// t,G,S,R,Rext,I,E,base_walk; S/R/I/base_walk empty before the last jump.
std::string bundle_csv(const ReflectionBundle& b);

/// u1,u2,v1,v2,value with "inf" for infinity.
std::string distance_sample_csv(const DistanceSample& s);
DistanceSample parse_distance_sample_csv(const std::string& text);

/// n,journey_endpoint,epigraph
std::string convergence_csv(const std::vector<ConvergenceRow>& rows);

void write_text(const std::filesystem::path& file, const std::string& text);
std::string read_text(const std::filesystem::path& file);

}  // namespace fppweb
