#pragma once

#include <nlohmann/json.hpp>

#include <iosfwd>
#include <string>

#include "linkpack/burnside.hpp"
#include "linkpack/certify.hpp"
#include "linkpack/diagrams.hpp"
#include "linkpack/geometry.hpp"
#include "linkpack/grid.hpp"
#include "linkpack/packing.hpp"

namespace linkpack::io {

using Json = nlohmann::ordered_json;

// Link: {"name", "components": [{"label", "vertices": [[x,y,z], ...]}],
//        "constraints": [{"a", "b", "min_dist"}]}
Json to_json(const PLLink& link);
PLLink link_from_json(const Json& j);

// Certificate: bit vectors are strings of '0'/'1', L is a list of row strings.
Json to_json(const Certificate& c);
Certificate certificate_from_json(const Json& j);

// Colouring, run-length encoded over the linear cell index:
// {"dims": [n,n,n], "h", "palette": [...], "runs": [[color, length], ...]}
Json to_json(const Coloring& c);
Coloring coloring_from_json(const Json& j);

Json to_json(const Packing& p);
Packing packing_from_json(const Json& j);
Json to_json(const PackingReport& r);

Json to_json(const BoundReport& r);
Json to_json(const MuResult& r);
Json to_json(const DensityFit& f);

/// Columns: epsilon,generation,count,min_pair_distance
void write_density_csv(std::ostream& out, const std::vector<Packing>& packings);

std::string read_file(const std::string& path);
Json read_json(const std::string& path);
/// Writes `text` to `path`, or to stdout when path is empty or "-".
void write_output(const std::string& path, const std::string& text);

std::string to_bits(const Z2Vector& v);
Z2Vector from_bits(const std::string& s);

}  // namespace linkpack::io
