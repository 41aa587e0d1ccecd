#include "tilecraft/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace tilecraft {

namespace {

std::vector<std::string_view> split_tabs(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t tab = line.find('\t', start);
        if (tab == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, tab - start));
        start = tab + 1;
    }
}

double parse_double(std::string_view text, const char* what) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw std::invalid_argument(std::string("bad ") + what + " '" + std::string(text) + "'");
    }
    return v;
}

std::uint64_t parse_u64(std::string_view text, const char* what) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw std::invalid_argument(std::string("bad ") + what + " '" + std::string(text) + "'");
    }
    return v;
}

// Applies fn(line_number, line) to every non-empty line.
template <typename Fn>
void for_lines(const std::string& text, Fn&& fn) {
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t nl = text.find('\n', start);
        std::size_t end = nl == std::string::npos ? text.size() : nl;
        ++line_no;
        std::string_view line(text.data() + start, end - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (!line.empty()) fn(line_no, line);
        if (nl == std::string::npos) break;
        start = nl + 1;
    }
}

bool wkt_tag_accepted(std::string_view wkt, std::size_t& tag_end) {
    std::size_t i = 0;
    while (i < wkt.size() && std::isspace(static_cast<unsigned char>(wkt[i]))) ++i;
    std::size_t start = i;
    while (i < wkt.size() && std::isalpha(static_cast<unsigned char>(wkt[i]))) ++i;
    std::string tag(wkt.substr(start, i - start));
    std::transform(tag.begin(), tag.end(), tag.begin(),
                   [](unsigned char c) { return std::toupper(c); });
    tag_end = i;
    return tag == "POINT" || tag == "LINESTRING" || tag == "POLYGON" || tag == "MULTIPOLYGON";
}

}  // namespace

Rect wkt_mbr(const std::string& wkt) {
    std::size_t pos = 0;
    if (!wkt_tag_accepted(wkt, pos)) {
        throw std::invalid_argument("unsupported WKT geometry: " + wkt.substr(0, 32));
    }

    // extrema scan: read the coordinate numbers in order, alternating x/y
    bool have_any = false;
    bool expect_x = true;
    Rect mbr;
    std::size_t i = pos;
    while (i < wkt.size()) {
        char c = wkt[i];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '.') {
            double v = 0.0;
            auto [ptr, ec] = std::from_chars(wkt.data() + i, wkt.data() + wkt.size(), v);
            if (ec != std::errc{}) throw std::invalid_argument("bad number in WKT");
            if (expect_x) {
                if (!have_any) {
                    mbr.min_x = mbr.max_x = v;
                } else {
                    mbr.min_x = std::min(mbr.min_x, v);
                    mbr.max_x = std::max(mbr.max_x, v);
                }
            } else {
                if (!have_any) {
                    mbr.min_y = mbr.max_y = v;
                } else {
                    mbr.min_y = std::min(mbr.min_y, v);
                    mbr.max_y = std::max(mbr.max_y, v);
                }
                have_any = true;
            }
            expect_x = !expect_x;
            i = static_cast<std::size_t>(ptr - wkt.data());
        } else if (c == '(' || c == ')' || c == ',' || std::isspace(static_cast<unsigned char>(c))) {
            ++i;
        } else {
            throw std::invalid_argument(std::string("unexpected character '") + c + "' in WKT");
        }
    }
    if (!have_any || !expect_x) {
        throw std::invalid_argument("WKT has no complete coordinate pair");
    }
    return mbr;
}

Dataset parse_dataset(const std::string& text, IngestFormat format) {
    std::vector<SpatialObject> objects;
    for_lines(text, [&](std::size_t line_no, std::string_view line) {
        try {
            auto fields = split_tabs(line);
            if (format == IngestFormat::TsvMbr) {
                if (fields.size() != 5) throw std::invalid_argument("expected 5 tab-separated fields");
                SpatialObject obj;
                obj.id = parse_u64(fields[0], "id");
                obj.mbr = Rect{parse_double(fields[1], "min_x"), parse_double(fields[2], "min_y"),
                               parse_double(fields[3], "max_x"), parse_double(fields[4], "max_y")};
                if (!rect_valid(obj.mbr)) throw std::invalid_argument("invalid MBR");
                objects.push_back(std::move(obj));
            } else {
                if (fields.size() != 2) throw std::invalid_argument("expected 2 tab-separated fields");
                SpatialObject obj;
                obj.id = parse_u64(fields[0], "id");
                obj.payload_text = std::string(fields[1]);
                obj.mbr = wkt_mbr(obj.payload_text);
                objects.push_back(std::move(obj));
            }
        } catch (const std::exception& e) {
            throw std::invalid_argument("line " + std::to_string(line_no) + ": " + e.what());
        }
    });
    if (objects.empty()) throw std::invalid_argument("empty dataset");
    return make_dataset(std::move(objects));
}

Dataset ingest(const std::string& path, IngestFormat format) {
    try {
        return parse_dataset(read_file(path), format);
    } catch (const std::exception& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
}

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

std::string write_dataset_tsv(const Dataset& data) {
    std::string out;
    for (const auto& obj : data.objects) {
        out += std::to_string(obj.id);
        out += '\t';
        out += format_double(obj.mbr.min_x);
        out += '\t';
        out += format_double(obj.mbr.min_y);
        out += '\t';
        out += format_double(obj.mbr.max_x);
        out += '\t';
        out += format_double(obj.mbr.max_y);
        out += '\n';
    }
    return out;
}

std::string write_layout_tsv(const PartitionLayout& layout) {
    std::string out;
    for (const auto& p : layout.partitions) {
        out += std::to_string(p.id);
        out += '\t';
        out += format_double(p.boundary.min_x);
        out += '\t';
        out += format_double(p.boundary.min_y);
        out += '\t';
        out += format_double(p.boundary.max_x);
        out += '\t';
        out += format_double(p.boundary.max_y);
        out += '\t';
        out += std::to_string(p.build_count);
        out += '\n';
    }
    return out;
}

std::string write_assignment_tsv(const Assignment& assignment) {
    std::string out;
    for (const auto& e : assignment.entries) {
        out += std::to_string(e.partition_id);
        out += '\t';
        out += std::to_string(e.object_id);
        out += '\t';
        out += e.is_replica ? '1' : '0';
        out += '\n';
    }
    return out;
}

PartitionLayout read_layout_tsv(const std::string& text) {
    PartitionLayout layout;
    for_lines(text, [&](std::size_t line_no, std::string_view line) {
        try {
            auto fields = split_tabs(line);
            if (fields.size() != 6) throw std::invalid_argument("expected 6 tab-separated fields");
            Partition p;
            p.id = static_cast<std::uint32_t>(parse_u64(fields[0], "partition id"));
            p.boundary = Rect{parse_double(fields[1], "min_x"), parse_double(fields[2], "min_y"),
                              parse_double(fields[3], "max_x"), parse_double(fields[4], "max_y")};
            p.build_count = parse_u64(fields[5], "build count");
            if (p.id != layout.partitions.size()) {
                throw std::invalid_argument("partition ids must be 0..k-1 in order");
            }
            layout.partitions.push_back(p);
        } catch (const std::exception& e) {
            throw std::invalid_argument("line " + std::to_string(line_no) + ": " + e.what());
        }
    });
    if (layout.partitions.empty()) throw std::invalid_argument("empty layout");
    return layout;
}

Assignment read_assignment_tsv(const std::string& text) {
    Assignment assignment;
    for_lines(text, [&](std::size_t line_no, std::string_view line) {
        try {
            auto fields = split_tabs(line);
            if (fields.size() != 3) throw std::invalid_argument("expected 3 tab-separated fields");
            AssignmentEntry e;
            e.partition_id = static_cast<std::uint32_t>(parse_u64(fields[0], "partition id"));
            e.object_id = parse_u64(fields[1], "object id");
            if (fields[2] == "0") {
                e.is_replica = false;
            } else if (fields[2] == "1") {
                e.is_replica = true;
            } else {
                throw std::invalid_argument("replica flag must be 0 or 1");
            }
            assignment.entries.push_back(e);
        } catch (const std::exception& e) {
            throw std::invalid_argument("line " + std::to_string(line_no) + ": " + e.what());
        }
    });
    return assignment;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return std::move(buf).str();
}

}  // namespace tilecraft
