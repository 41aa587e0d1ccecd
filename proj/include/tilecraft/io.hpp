#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tilecraft/assign.hpp"
#include "tilecraft/geom.hpp"
#include "tilecraft/partition.hpp"

namespace tilecraft {

enum class IngestFormat { TsvMbr, TsvWkt };

// tsv-mbr lines: id<TAB>min_x<TAB>min_y<TAB>max_x<TAB>max_y
// tsv-wkt lines: id<TAB>wkt; the WKT text is scanned for coordinate extrema
// (POINT, LINESTRING, POLYGON, MULTIPOLYGON and their MULTI/collection
// nestings all reduce to a number-pair scan) and kept as payload_text.
// Malformed lines and duplicate ids raise errors naming the line or id.
Dataset ingest(const std::string& path, IngestFormat format);

Dataset parse_dataset(const std::string& text, IngestFormat format);

// Extrema scan of one WKT geometry; throws on malformed text.
Rect wkt_mbr(const std::string& wkt);

// Shortest round-trip decimal form of a double.
std::string format_double(double v);

std::string write_dataset_tsv(const Dataset& data);
std::string write_layout_tsv(const PartitionLayout& layout);
std::string write_assignment_tsv(const Assignment& assignment);

PartitionLayout read_layout_tsv(const std::string& text);
Assignment read_assignment_tsv(const std::string& text);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace tilecraft
