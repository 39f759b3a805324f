#include <charconv>

#include "cminer/error.hpp"
#include "cminer/graph.hpp"

namespace cminer {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

std::string row_location(std::size_t line) { return "line " + std::to_string(line); }

}  // namespace

ParsedGraph ingest_invocation_log(std::string_view csv_text) {
  GraphBuilder builder(/*implicit_elements=*/true);
  bool have_header = false;
  bool with_count = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;

  while (pos <= csv_text.size()) {
    const auto nl = csv_text.find('\n', pos);
    const std::string_view raw =
        csv_text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? csv_text.size() + 1 : nl + 1;
    ++line_no;

    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    const auto fields = split_fields(line);
    const std::string where = row_location(line_no);

    if (!have_header) {
      if (fields.size() < 2 || fields.size() > 3 || fields[0] != "caller" ||
          fields[1] != "callee" || (fields.size() == 3 && fields[2] != "count")) {
        throw ParseError("missing header 'caller,callee[,count]'", where);
      }
      have_header = true;
      with_count = fields.size() == 3;
      continue;
    }

    const std::size_t expected = with_count ? 3 : 2;
    if (fields.size() != expected && !(with_count && fields.size() == 2)) {
      throw ParseError("expected " + std::to_string(expected) + " fields, found " +
                           std::to_string(fields.size()),
                       where);
    }
    if (fields[0].empty()) throw ParseError("empty caller field", where);
    if (fields[1].empty()) throw ParseError("empty callee field", where);

    Weight count = 1;
    if (fields.size() == 3 && !fields[2].empty()) {
      const char* begin = fields[2].data();
      const char* end = begin + fields[2].size();
      auto [ptr, ec] = std::from_chars(begin, end, count);
      if (ec != std::errc{} || ptr != end) {
        throw ParseError("count '" + std::string(fields[2]) + "' is not an integer", where);
      }
    }
    builder.add_edge(ElementId(std::string(fields[0])), ElementId(std::string(fields[1])),
                     count, where);
  }
  if (!have_header) throw ParseError("missing header 'caller,callee[,count]'", "line 1");

  ParsedGraph parsed;
  parsed.warnings = builder.warnings();
  parsed.graph = std::move(builder).build();
  return parsed;
}

std::string to_invocation_log(const DependencyGraph& graph) {
  std::string out = "caller,callee,count\n";
  for (const auto& e : graph.edges()) {
    out += graph.id(e.source).str() + "," + graph.id(e.target).str() + "," +
           std::to_string(e.weight) + "\n";
  }
  return out;
}

}  // namespace cminer
