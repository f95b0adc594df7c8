#include "gviews/graph/csv.hpp"

namespace gviews::csv {

bool split_line(std::string_view line, std::vector<std::string>& fields) {
    fields.clear();
    std::string current;
    bool quoted = false;
    bool field_started_quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    current.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                current.push_back(c);
            }
        } else if (c == '"' && current.empty() && !field_started_quoted) {
            quoted = true;
            field_started_quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(current));
            current.clear();
            field_started_quoted = false;
        } else {
            current.push_back(c);
        }
    }
    if (quoted) return false;
    fields.push_back(std::move(current));
    return true;
}

std::string quote(std::string_view field) {
    const bool needs = field.find_first_of(",\"\n") != std::string_view::npos ||
                       (!field.empty() && field.front() == '#');
    if (!needs) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

}  // namespace gviews::csv
