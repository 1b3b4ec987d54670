#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lindblad::csv {

/// 17 significant digits, '.' decimal separator, independent of locale.
std::string format_double(double value);

/// RFC 4180: quote when the field contains a comma, a quote or a newline.
std::string escape_field(const std::string& field);

std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t value);

/// Emits one `# key=value,...` comment line, a header row, then data rows.
class Writer {
public:
    explicit Writer(std::ostream& out) : out_(out) {}

    void comment(const std::vector<std::pair<std::string, std::string>>& kv);
    void header(const std::vector<std::string>& names);
    void row(const std::vector<std::string>& fields);

private:
    std::ostream& out_;
};

} // namespace lindblad::csv
