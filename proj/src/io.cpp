#include "pchc/io.hpp"

#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace pchc {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& what)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

void write_graph(std::ostream& out, const ColouredComplete& g) {
  const std::size_t n = g.order();
  out << n << ' ' << g.colour_count() << '\n';
  for (Vertex u = 0; u + 1 < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (v > u + 1) out << ' ';
      out << g(u, v);
    }
    out << '\n';
  }
}

namespace {

struct Token {
  unsigned long long value = 0;
  std::size_t column = 0;
};

// Splits one line into unsigned integers, reporting the column of any junk.
std::vector<Token> tokenize(const std::string& text, std::size_t line_no) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
      throw ParseError(line_no, start + 1, "expected a nonnegative integer");
    }
    unsigned long long value = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      value = value * 10 + static_cast<unsigned>(text[i] - '0');
      if (value > 0xffffffffULL) throw ParseError(line_no, start + 1, "integer too large");
      ++i;
    }
    if (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) {
      throw ParseError(line_no, i + 1, "unexpected character");
    }
    tokens.push_back({value, start + 1});
  }
  return tokens;
}

}  // namespace

ColouredComplete read_graph(std::istream& in) {
  std::string text;
  std::size_t line_no = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, text)) {
      ++line_no;
      if (text.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };

  if (!next_line()) throw ParseError(1, 1, "empty input, expected header `n k`");
  auto header = tokenize(text, line_no);
  if (header.size() != 2) throw ParseError(line_no, 1, "header must be `n k`");
  const std::size_t n = header[0].value;
  const std::size_t k = header[1].value;
  if (n == 0) throw ParseError(line_no, header[0].column, "n must be at least 1");
  if (k == 0) throw ParseError(line_no, header[1].column, "colour count must be at least 1");

  std::vector<Colour> table;
  table.reserve(n * (n - 1) / 2);
  for (std::size_t u = 0; u + 1 < n; ++u) {
    if (!next_line()) {
      throw ParseError(line_no + 1, 1, "missing row for vertex " + std::to_string(u));
    }
    auto row = tokenize(text, line_no);
    const std::size_t expected = n - 1 - u;
    if (row.size() != expected) {
      const std::size_t col = row.size() > expected ? row[expected].column : text.size() + 1;
      throw ParseError(line_no, col,
                       "row for vertex " + std::to_string(u) + " needs " +
                           std::to_string(expected) + " colours, got " +
                           std::to_string(row.size()));
    }
    for (const auto& t : row) {
      if (t.value >= k) {
        throw ParseError(line_no, t.column,
                         "colour " + std::to_string(t.value) + " not below k = " +
                             std::to_string(k));
      }
      table.push_back(static_cast<Colour>(t.value));
    }
  }
  if (next_line()) throw ParseError(line_no, 1, "trailing data after last row");
  return ColouredComplete(n, k, std::move(table));
}

ColouredComplete read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_graph(in);
}

void write_graph_file(const std::string& path, const ColouredComplete& g) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_graph(out, g);
}

nlohmann::json to_json(const Certificate& cert) {
  nlohmann::json j;
  j["kind"] = to_string(cert.kind);
  j["cycles"] = cert.cycles;
  j["path"] = cert.path;
  j["verdict"] = cert.verdict.valid ? "Valid" : "Invalid";
  if (!cert.verdict.valid) j["reason"] = cert.verdict.reason;
  return j;
}

Certificate certificate_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError(0, 0, "certificate must be a JSON object");
  Certificate cert;
  try {
    auto kind = parse_certificate_kind(j.at("kind").get<std::string>());
    if (!kind) throw ParseError(0, 0, "unknown certificate kind");
    cert.kind = *kind;
    if (j.contains("cycles")) cert.cycles = j.at("cycles").get<std::vector<std::vector<Vertex>>>();
    if (j.contains("path")) cert.path = j.at("path").get<std::vector<Vertex>>();
    if (j.contains("verdict")) cert.verdict.valid = j.at("verdict").get<std::string>() == "Valid";
    if (j.contains("reason")) cert.verdict.reason = j.at("reason").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, 0, std::string("bad certificate: ") + e.what());
  }
  return cert;
}

}  // namespace pchc
