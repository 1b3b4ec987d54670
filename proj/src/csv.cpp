#include "lindblad/csv.hpp"

#include <cstdio>

namespace lindblad::csv {

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

std::string escape_field(const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(std::uint64_t value) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(value));
    return buf;
}

void Writer::comment(const std::vector<std::pair<std::string, std::string>>& kv) {
    out_ << "#";
    bool first = true;
    for (const auto& [key, value] : kv) {
        out_ << (first ? " " : ",") << key << "=" << value;
        first = false;
    }
    out_ << "\n";
}

void Writer::header(const std::vector<std::string>& names) { row(names); }

void Writer::row(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out_ << ",";
        out_ << escape_field(fields[i]);
    }
    out_ << "\n";
}

} // namespace lindblad::csv
