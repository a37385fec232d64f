#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace uatk::cli {

using Cell = std::variant<double, std::int64_t, std::string>;

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<Cell>> rows;
};

// Header row first; reals as %.17g; strings quoted when they contain a comma,
// quote or line break (quotes doubled).
std::string to_csv(const Table& table);

std::string format_real(double v);

} // namespace uatk::cli
