#include <cctype>
#include <charconv>
#include <map>
#include <optional>
#include <sstream>

#include "cminer/error.hpp"
#include "cminer/graph.hpp"

namespace cminer {

namespace {

enum class Tok { id, quoted, arrow, undirected_arrow, lbrace, rbrace, lbracket, rbracket, equals,
                 semicolon, comma, end };

struct Token {
  Tok kind = Tok::end;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

bool is_bare_char(unsigned char c) {
  return std::isalnum(c) || c == '_' || c == '.' || c == ':' || c >= 0x80;
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_blank();
    Token tok;
    tok.line = line_;
    tok.column = column_;
    if (pos_ >= text_.size()) return tok;

    const char c = text_[pos_];
    auto single = [&](Tok kind) {
      tok.kind = kind;
      tok.text = std::string(1, c);
      advance();
      return tok;
    };
    switch (c) {
      case '{': return single(Tok::lbrace);
      case '}': return single(Tok::rbrace);
      case '[': return single(Tok::lbracket);
      case ']': return single(Tok::rbracket);
      case '=': return single(Tok::equals);
      case ';': return single(Tok::semicolon);
      case ',': return single(Tok::comma);
      case '"': return quoted(tok);
      default: break;
    }
    if (c == '-' && pos_ + 1 < text_.size() && (text_[pos_ + 1] == '>' || text_[pos_ + 1] == '-')) {
      tok.kind = text_[pos_ + 1] == '>' ? Tok::arrow : Tok::undirected_arrow;
      tok.text = std::string(text_.substr(pos_, 2));
      advance();
      advance();
      return tok;
    }
    if (is_bare_char(static_cast<unsigned char>(c)) || c == '-') {
      tok.kind = Tok::id;
      tok.text.push_back(c);
      advance();
      while (pos_ < text_.size() && is_bare_char(static_cast<unsigned char>(text_[pos_]))) {
        tok.text.push_back(text_[pos_]);
        advance();
      }
      return tok;
    }
    throw ParseError(std::string("unexpected character '") + c + "'",
                     format_location(tok.line, tok.column));
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_blank() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '#' && column_ == 1) {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (text_.substr(pos_, 2) == "//") {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (text_.substr(pos_, 2) == "/*") {
        const std::string where = format_location(line_, column_);
        advance();
        advance();
        while (pos_ < text_.size() && text_.substr(pos_, 2) != "*/") advance();
        if (pos_ >= text_.size()) throw ParseError("unterminated comment", where);
        advance();
        advance();
      } else {
        break;
      }
    }
  }

  Token quoted(Token tok) {
    tok.kind = Tok::quoted;
    advance();  // opening quote
    while (true) {
      if (pos_ >= text_.size()) {
        throw ParseError("unterminated string", format_location(tok.line, tok.column));
      }
      const char c = text_[pos_];
      if (c == '"') {
        advance();
        return tok;
      }
      if (c == '\\' && pos_ + 1 < text_.size() &&
          (text_[pos_ + 1] == '"' || text_[pos_ + 1] == '\\')) {
        advance();
        tok.text.push_back(text_[pos_]);
        advance();
        continue;
      }
      tok.text.push_back(c);
      advance();
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

bool keyword_is(const Token& tok, std::string_view word) {
  if (tok.kind != Tok::id || tok.text.size() != word.size()) return false;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(tok.text[i])) != word[i]) return false;
  }
  return true;
}

std::string where(const Token& tok) { return format_location(tok.line, tok.column); }

struct Attribute {
  std::string key;
  std::string value;
  Token at;
};

struct NodeInfo {
  std::optional<std::string> container;
  std::vector<std::string> methods;
  Token at;
};

struct EdgeStatement {
  std::vector<Token> chain;
  Weight weight = 1;
};

std::vector<std::string> split_methods(const std::string& value) {
  std::vector<std::string> out;
  if (value.empty()) return out;
  std::string item;
  std::istringstream in(value);
  while (std::getline(in, item, ',')) out.push_back(item);
  if (value.back() == ',') out.emplace_back();
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : lexer_(text) { shift(); }

  ParsedGraph parse() {
    if (keyword_is(tok_, "strict")) {
      warn(tok_, "'strict' ignored");
      shift();
    }
    if (keyword_is(tok_, "graph")) {
      throw ParseError("undirected 'graph' is not supported, use 'digraph'", where(tok_));
    }
    if (!keyword_is(tok_, "digraph")) {
      throw ParseError("expected 'digraph'", where(tok_));
    }
    shift();
    if (tok_.kind == Tok::id || tok_.kind == Tok::quoted) shift();  // graph name
    expect(Tok::lbrace, "'{'");
    while (tok_.kind != Tok::rbrace) {
      if (tok_.kind == Tok::end) throw ParseError("expected '}'", where(tok_));
      statement();
    }
    shift();
    if (tok_.kind != Tok::end) {
      throw ParseError("unexpected content after closing '}'", where(tok_));
    }
    return build();
  }

 private:
  void shift() { tok_ = lexer_.next(); }

  Token expect(Tok kind, const char* what) {
    if (tok_.kind != kind) {
      throw ParseError(std::string("expected ") + what, where(tok_));
    }
    Token t = tok_;
    shift();
    return t;
  }

  Token identifier() {
    if (tok_.kind != Tok::id && tok_.kind != Tok::quoted) {
      throw ParseError("expected an identifier", where(tok_));
    }
    Token t = tok_;
    shift();
    return t;
  }

  void warn(const Token& at, const std::string& message) {
    warnings_.push_back(where(at) + ": " + message);
  }

  std::vector<Attribute> attribute_lists() {
    std::vector<Attribute> attrs;
    while (tok_.kind == Tok::lbracket) {
      shift();
      while (tok_.kind != Tok::rbracket) {
        Token key = identifier();
        expect(Tok::equals, "'='");
        Token value = identifier();
        attrs.push_back({key.text, value.text, key});
        if (tok_.kind == Tok::comma || tok_.kind == Tok::semicolon) shift();
      }
      shift();
    }
    return attrs;
  }

  void statement() {
    if (keyword_is(tok_, "subgraph") || tok_.kind == Tok::lbrace) {
      throw ParseError("subgraphs are not supported", where(tok_));
    }
    if (tok_.kind == Tok::id &&
        (keyword_is(tok_, "graph") || keyword_is(tok_, "node") || keyword_is(tok_, "edge"))) {
      Token kw = tok_;
      shift();
      if (tok_.kind != Tok::lbracket) {
        throw ParseError("expected '[' after '" + kw.text + "'", where(tok_));
      }
      attribute_lists();
      warn(kw, "default '" + kw.text + "' attributes ignored");
      end_statement();
      return;
    }

    Token first = identifier();
    if (tok_.kind == Tok::equals) {
      shift();
      identifier();
      warn(first, "graph attribute '" + first.text + "' ignored");
      end_statement();
      return;
    }
    if (tok_.kind == Tok::undirected_arrow) {
      throw ParseError("undirected edge '--' in a digraph", where(tok_));
    }
    if (tok_.kind == Tok::arrow) {
      EdgeStatement edge;
      edge.chain.push_back(first);
      while (tok_.kind == Tok::arrow) {
        shift();
        edge.chain.push_back(identifier());
      }
      if (tok_.kind == Tok::undirected_arrow) {
        throw ParseError("undirected edge '--' in a digraph", where(tok_));
      }
      for (const auto& attr : attribute_lists()) {
        if (attr.key == "weight") {
          edge.weight = parse_weight(attr);
        } else {
          warn(attr.at, "edge attribute '" + attr.key + "' ignored");
        }
      }
      edges_.push_back(std::move(edge));
      end_statement();
      return;
    }

    NodeInfo& node = node_slot(first);
    for (const auto& attr : attribute_lists()) {
      if (attr.key == "container") {
        node.container = attr.value;
      } else if (attr.key == "methods") {
        node.methods = split_methods(attr.value);
      } else {
        warn(attr.at, "node attribute '" + attr.key + "' ignored");
      }
    }
    end_statement();
  }

  void end_statement() {
    if (tok_.kind == Tok::semicolon) shift();
  }

  Weight parse_weight(const Attribute& attr) {
    Weight value = 0;
    const char* begin = attr.value.data();
    const char* end = begin + attr.value.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc{} || ptr != end) {
      throw ParseError("weight '" + attr.value + "' is not an integer", where(attr.at));
    }
    return value;
  }

  NodeInfo& node_slot(const Token& id) {
    auto [it, inserted] = nodes_.try_emplace(id.text);
    if (inserted) {
      it->second.at = id;
      order_.push_back(id.text);
    }
    return it->second;
  }

  ElementId make_id(const Token& tok) {
    try {
      return ElementId(tok.text);
    } catch (const ValidationError& e) {
      throw ParseError(e.what(), where(tok));
    }
  }

  ParsedGraph build() {
    GraphBuilder builder(/*implicit_elements=*/true);
    for (const auto& name : order_) {
      const NodeInfo& info = nodes_.at(name);
      try {
        builder.add_element(Element{make_id(info.at), info.container, info.methods});
      } catch (const ValidationError& e) {
        throw ValidationError(where(info.at) + ": " + e.what());
      }
    }
    for (const auto& edge : edges_) {
      for (std::size_t i = 0; i + 1 < edge.chain.size(); ++i) {
        builder.add_edge(make_id(edge.chain[i]), make_id(edge.chain[i + 1]), edge.weight,
                         where(edge.chain[i]));
      }
    }
    ParsedGraph parsed;
    parsed.warnings = std::move(warnings_);
    parsed.warnings.insert(parsed.warnings.end(), builder.warnings().begin(),
                           builder.warnings().end());
    parsed.graph = std::move(builder).build();
    return parsed;
  }

  Lexer lexer_;
  Token tok_;
  std::map<std::string, NodeInfo> nodes_;
  std::vector<std::string> order_;
  std::vector<EdgeStatement> edges_;
  std::vector<std::string> warnings_;
};

std::string quote(std::string_view text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace

ParsedGraph parse_dot_graph(std::string_view text) { return Parser(text).parse(); }

std::string to_dot_graph(const DependencyGraph& graph) {
  std::string out = "digraph depgraph {\n";
  for (const auto& e : graph.elements()) {
    out += "  " + quote(e.id.str());
    std::vector<std::string> attrs;
    if (e.container) attrs.push_back("container=" + quote(*e.container));
    if (!e.method_names.empty()) {
      std::string joined;
      for (std::size_t i = 0; i < e.method_names.size(); ++i) {
        if (i) joined += ',';
        joined += e.method_names[i];
      }
      attrs.push_back("methods=" + quote(joined));
    }
    if (!attrs.empty()) {
      out += " [";
      for (std::size_t i = 0; i < attrs.size(); ++i) {
        if (i) out += ", ";
        out += attrs[i];
      }
      out += "]";
    }
    out += ";\n";
  }
  for (const auto& e : graph.edges()) {
    out += "  " + quote(graph.id(e.source).str()) + " -> " + quote(graph.id(e.target).str()) +
           " [weight=" + std::to_string(e.weight) + "];\n";
  }
  out += "}\n";
  return out;
}

}  // namespace cminer
