#ifndef GRAPHENE_NDR_CSV_HPP
#define GRAPHENE_NDR_CSV_HPP

// Plain RFC-4180-style tables: comma separated, LF line endings, '.' decimal
// separator, doubles printed with 17 significant digits.

#include <filesystem>
#include <string>
#include <vector>

#include "graphene_ndr/landauer.hpp"

namespace graphene_ndr::csv {

/// Shortest-safe round-trip text for a double ("%.17g").
std::string format_double(double value);

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::string str() const;
};

Table iv_table(const IVCurve& curve);

/// Reads a table written by iv_table. Throws Error(MalformedData) naming the
/// offending line.
std::vector<IVPoint> parse_iv(const std::string& text);
std::vector<IVPoint> read_iv(const std::filesystem::path& path);

}  // namespace graphene_ndr::csv

#endif
