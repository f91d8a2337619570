#include "graphene_ndr/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "graphene_ndr/error.hpp"

namespace graphene_ndr::csv {

namespace {

constexpr const char* kIvHeader = "V_mV,I_norm,est_error,n_evals";

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        fields.push_back(line.substr(start, comma - start));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return fields;
}

[[noreturn]] void bad_line(std::size_t line_no, const std::string& why) {
    throw Error(Errc::MalformedData, "line " + std::to_string(line_no) + ": " + why);
}

template <typename T>
T parse_field(const std::string& field, std::size_t line_no, const char* name) {
    T value{};
    const char* first = field.data();
    const char* last = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || field.empty()) {
        bad_line(line_no, std::string("cannot parse ") + name + " from '" + field + "'");
    }
    return value;
}

}  // namespace

std::string format_double(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

std::string Table::str() const {
    std::ostringstream os;
    auto emit = [&os](const std::vector<std::string>& fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i) os << ',';
            os << fields[i];
        }
        os << '\n';
    };
    emit(header);
    for (const auto& row : rows) emit(row);
    return os.str();
}

Table iv_table(const IVCurve& curve) {
    Table table;
    table.header = split(kIvHeader);
    for (const auto& p : curve.points) {
        table.rows.push_back({format_double(p.bias_mV), format_double(p.current), format_double(p.est_error),
                              std::to_string(p.evaluations)});
    }
    return table;
}

std::vector<IVPoint> parse_iv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    std::vector<IVPoint> points;

    if (!std::getline(in, line)) bad_line(1, "empty file");
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kIvHeader) bad_line(line_no, std::string("expected header '") + kIvHeader + "'");

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split(line);
        if (fields.size() != 4) bad_line(line_no, "expected 4 fields, got " + std::to_string(fields.size()));
        IVPoint p;
        p.bias_mV = parse_field<double>(fields[0], line_no, "V_mV");
        p.current = parse_field<double>(fields[1], line_no, "I_norm");
        p.est_error = parse_field<double>(fields[2], line_no, "est_error");
        p.evaluations = parse_field<long>(fields[3], line_no, "n_evals");
        if (!points.empty() && !(p.bias_mV > points.back().bias_mV)) {
            bad_line(line_no, "bias values must be strictly increasing");
        }
        points.push_back(p);
    }
    return points;
}

std::vector<IVPoint> read_iv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::Io, "cannot open " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    return parse_iv(text.str());
}

}  // namespace graphene_ndr::csv
