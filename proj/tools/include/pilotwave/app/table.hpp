#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace pilotwave::app {

using Cell = std::variant<std::int64_t, double, std::string, bool>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row);
};

/// %.17g, with nan / inf / -inf spelled out.
[[nodiscard]] std::string format_real(double x);

/// Header line then one line per row, LF endings, no quoting (cells never
/// contain commas).
void write_csv(std::ostream& out, const Table& table);

/// Array of row objects; non-finite reals become null.
[[nodiscard]] nlohmann::ordered_json to_json(const Table& table);

/// Non-finite values become null so the document stays valid JSON.
[[nodiscard]] nlohmann::ordered_json json_real(double x);

}  // namespace pilotwave::app
