#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace gviews::csv {

/// Splits one CSV line. Fields may be double-quoted; `""` inside quotes is a
/// literal quote. Returns false on an unterminated quote.
bool split_line(std::string_view line, std::vector<std::string>& fields);

/// Quotes a field if it contains a comma, quote, or leading `#`.
std::string quote(std::string_view field);

/// Iterates over logical lines, dropping `\r`, blank lines and `#` comments.
/// The callback receives the 1-based physical line number.
template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (!line.empty() && line.front() != '#') fn(line_no, line);
        if (end == text.size()) break;
        pos = end + 1;
    }
}

}  // namespace gviews::csv
