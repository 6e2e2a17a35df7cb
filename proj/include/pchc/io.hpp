#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "pchc/ec_graph.hpp"

namespace pchc {

/// Malformed graph or certificate input. `line` and `column` are 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what);
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Graph text format:
//   n k
//   c(0,1) c(0,2) ... c(0,n-1)
//   c(1,2) ... c(1,n-1)
//   ...
//   c(n-2,n-1)
void write_graph(std::ostream& out, const ColouredComplete& g);
ColouredComplete read_graph(std::istream& in);
ColouredComplete read_graph_file(const std::string& path);
void write_graph_file(const std::string& path, const ColouredComplete& g);

nlohmann::json to_json(const Certificate& cert);
/// Throws ParseError (line/column 0) on schema violations.
Certificate certificate_from_json(const nlohmann::json& j);

}  // namespace pchc
