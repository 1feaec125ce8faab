#include "emt/instance_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "emt/errors.hpp"

namespace emt {

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::string upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::toupper(c); });
  return s;
}

// Whitespace tokenizer that remembers the line each token came from.
class TokenStream {
 public:
  explicit TokenStream(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      lines_.push_back(line);
      std::istringstream ls(line);
      std::string tok;
      while (ls >> tok) tokens_.push_back({tok, lineno});
    }
  }

  bool done() const { return pos_ >= tokens_.size(); }
  std::size_t line() const { return done() ? (tokens_.empty() ? 0 : tokens_.back().line) : tokens_[pos_].line; }
  const std::string& peek() const {
    if (done()) throw ParseError("unexpected end of file", 0);
    return tokens_[pos_].text;
  }
  std::string next() {
    const auto& t = peek();
    ++pos_;
    return t;
  }

  double next_double() {
    const auto ln = line();
    const auto tok = next();
    double v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size())
      throw ParseError("non-numeric token '" + tok + "'", ln);
    return v;
  }

  std::int64_t next_int() {
    const auto ln = line();
    const auto tok = next();
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size())
      throw ParseError("non-integer token '" + tok + "'", ln);
    return v;
  }

 private:
  struct Token {
    std::string text;
    std::size_t line;
  };
  std::vector<std::string> lines_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

bool is_integer_token(const std::string& s) {
  std::int64_t v;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  return ec == std::errc() && p == s.data() + s.size();
}

// TSPLIB-style "KEY : VALUE" header followed by named sections.
struct TsplibDocument {
  std::map<std::string, std::string> header;
  std::map<std::string, std::vector<std::pair<std::size_t, std::string>>> sections;  // line, text
};

bool is_section_keyword(const std::string& key) {
  return key.size() > 8 && key.compare(key.size() - 8, 8, "_SECTION") == 0;
}

TsplibDocument read_tsplib_document(std::istream& in) {
  TsplibDocument doc;
  std::string line;
  std::size_t lineno = 0;
  std::string current;
  while (std::getline(in, line)) {
    ++lineno;
    const auto t = trim(line);
    if (t.empty()) continue;
    if (upper(t) == "EOF") break;
    const auto colon = t.find(':');
    std::string first_word = upper(t.substr(0, t.find_first_of(" \t:")));
    if (is_section_keyword(first_word)) {
      current = first_word;
      doc.sections[current];
      continue;
    }
    if (current.empty()) {
      if (colon == std::string::npos)
        throw ParseError("malformed header line '" + t + "'", lineno);
      doc.header[upper(trim(t.substr(0, colon)))] = trim(t.substr(colon + 1));
    } else {
      doc.sections[current].emplace_back(lineno, t);
    }
  }
  return doc;
}

std::int64_t header_int(const TsplibDocument& doc, const std::string& key) {
  auto it = doc.header.find(key);
  if (it == doc.header.end()) throw ParseError("missing header field " + key, 0);
  std::int64_t v = 0;
  const auto& s = it->second;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    throw ParseError("header field " + key + " is not an integer: '" + s + "'", 0);
  return v;
}

void require_euc2d(const TsplibDocument& doc) {
  auto it = doc.header.find("EDGE_WEIGHT_TYPE");
  if (it == doc.header.end()) throw ParseError("missing header field EDGE_WEIGHT_TYPE", 0);
  if (upper(it->second) != "EUC_2D")
    throw UnsupportedFormatError("unsupported EDGE_WEIGHT_TYPE " + it->second + " (only EUC_2D)");
}

// Parses "id v1 v2 ..." rows of a section; returns values indexed by id-1.
std::vector<std::vector<double>> section_rows(const TsplibDocument& doc, const std::string& name,
                                              std::size_t count, std::size_t arity) {
  auto it = doc.sections.find(name);
  if (it == doc.sections.end()) throw ParseError("missing " + name, 0);
  std::vector<std::vector<double>> rows(count);
  std::vector<bool> filled(count, false);
  for (const auto& [lineno, text] : it->second) {
    std::istringstream ls(text);
    std::vector<std::string> toks;
    std::string tok;
    while (ls >> tok) toks.push_back(tok);
    if (toks.size() != arity + 1)
      throw ParseError(name + " row must have " + std::to_string(arity + 1) + " fields", lineno);
    std::int64_t id = 0;
    auto [p, ec] = std::from_chars(toks[0].data(), toks[0].data() + toks[0].size(), id);
    if (ec != std::errc() || p != toks[0].data() + toks[0].size())
      throw ParseError("non-numeric token '" + toks[0] + "'", lineno);
    if (id < 1 || static_cast<std::size_t>(id) > count)
      throw ParseError("node id " + toks[0] + " out of range", lineno);
    std::vector<double> vals;
    for (std::size_t k = 1; k < toks.size(); ++k) {
      double v = 0;
      auto [q, ec2] = std::from_chars(toks[k].data(), toks[k].data() + toks[k].size(), v);
      if (ec2 != std::errc() || q != toks[k].data() + toks[k].size())
        throw ParseError("non-numeric token '" + toks[k] + "'", lineno);
      vals.push_back(v);
    }
    rows[id - 1] = std::move(vals);
    filled[id - 1] = true;
  }
  for (std::size_t i = 0; i < count; ++i)
    if (!filled[i]) throw ParseError(name + " is missing node " + std::to_string(i + 1), 0);
  return rows;
}

std::string doc_name(const TsplibDocument& doc, const std::string& fallback) {
  auto it = doc.header.find("NAME");
  return it != doc.header.end() && !it->second.empty() ? it->second : fallback;
}

TaskDefinition load_tsp(std::istream& in, const std::string& name) {
  const auto doc = read_tsplib_document(in);
  require_euc2d(doc);
  const auto dim = header_int(doc, "DIMENSION");
  if (dim < 1) throw ParseError("DIMENSION must be positive", 0);
  const auto rows = section_rows(doc, "NODE_COORD_SECTION", dim, 2);
  std::vector<Point> coords;
  coords.reserve(dim);
  for (const auto& r : rows) coords.push_back({r[0], r[1]});
  return TaskDefinition(doc_name(doc, name), TspPayload::from_coords(std::move(coords)));
}

TaskDefinition load_cvrp(std::istream& in, const std::string& name) {
  const auto doc = read_tsplib_document(in);
  require_euc2d(doc);
  const auto dim = header_int(doc, "DIMENSION");
  if (dim < 2) throw ParseError("CVRP DIMENSION must include the depot and a customer", 0);
  const auto capacity = header_int(doc, "CAPACITY");
  const auto coords = section_rows(doc, "NODE_COORD_SECTION", dim, 2);
  const auto demands = section_rows(doc, "DEMAND_SECTION", dim, 1);

  std::size_t depot = 1;
  if (auto it = doc.sections.find("DEPOT_SECTION"); it != doc.sections.end() && !it->second.empty()) {
    const auto& [lineno, text] = it->second.front();
    std::istringstream ls(text);
    std::int64_t id = 0;
    if (!(ls >> id) || id < 1 || id > dim) throw ParseError("invalid depot id", lineno);
    depot = static_cast<std::size_t>(id);
  }

  std::vector<Point> customers;
  std::vector<std::int64_t> dem;
  for (std::size_t i = 1; i <= static_cast<std::size_t>(dim); ++i) {
    if (i == depot) continue;
    customers.push_back({coords[i - 1][0], coords[i - 1][1]});
    dem.push_back(static_cast<std::int64_t>(demands[i - 1][0]));
  }
  const Point dp{coords[depot - 1][0], coords[depot - 1][1]};
  return TaskDefinition(doc_name(doc, name),
                        CvrpPayload::from_data(dp, std::move(customers), std::move(dem), capacity));
}

SquareMatrix read_matrix(TokenStream& ts, std::size_t n, const char* what) {
  SquareMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (ts.done())
        throw ParseError(std::string("truncated ") + what + " matrix (row " + std::to_string(i + 1) + ")", ts.line());
      m(i, j) = ts.next_int();
    }
  return m;
}

TaskDefinition load_qap(std::istream& in, const std::string& name) {
  TokenStream ts(in);
  if (ts.done()) throw ParseError("empty QAPLIB file", 0);
  const auto ln = ts.line();
  const auto n = ts.next_int();
  if (n < 1) throw ParseError("QAP size must be positive", ln);
  auto flow = read_matrix(ts, n, "flow");
  auto dist = read_matrix(ts, n, "distance");
  if (!ts.done()) throw ParseError("trailing data after QAP matrices", ts.line());
  return TaskDefinition(name, QapPayload{std::move(flow), std::move(dist)});
}

TaskDefinition load_lop(std::istream& in, const std::string& name) {
  TokenStream ts(in);
  std::string found_name = name;
  // Skip a leading non-numeric name line.
  std::string header;
  while (!ts.done() && !is_integer_token(ts.peek())) {
    const auto ln = ts.line();
    header.clear();
    while (!ts.done() && ts.line() == ln) header += (header.empty() ? "" : " ") + ts.next();
  }
  if (ts.done()) throw ParseError("missing LOP matrix size", 0);
  if (found_name.empty() && !header.empty()) found_name = header;
  const auto ln = ts.line();
  const auto n = ts.next_int();
  if (n < 1) throw ParseError("LOP size must be positive", ln);
  auto w = read_matrix(ts, n, "weight");
  if (!ts.done()) throw ParseError("trailing data after LOP matrix", ts.line());
  return TaskDefinition(found_name, LopPayload{std::move(w)});
}

}  // namespace

TaskDefinition load_instance(Family family, std::istream& source, const std::string& name) {
  switch (family) {
    case Family::TSP: return load_tsp(source, name);
    case Family::CVRP: return load_cvrp(source, name);
    case Family::QAP: return load_qap(source, name);
    case Family::LOP: return load_lop(source, name);
  }
  throw std::invalid_argument("unknown family");
}

TaskDefinition load_instance_file(Family family, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instance file " + path.string());
  try {
    return load_instance(family, in, path.stem().string());
  } catch (const ParseError& e) {
    throw e.with_context(path.string());
  }
}

std::vector<int> read_tsplib_tour(std::istream& source) {
  const auto doc = read_tsplib_document(source);
  auto it = doc.sections.find("TOUR_SECTION");
  if (it == doc.sections.end()) throw ParseError("missing TOUR_SECTION", 0);
  std::vector<int> tour;
  for (const auto& [lineno, text] : it->second) {
    std::istringstream ls(text);
    std::string tok;
    while (ls >> tok) {
      if (!is_integer_token(tok)) throw ParseError("non-numeric token '" + tok + "'", lineno);
      const int v = std::stoi(tok);
      if (v == -1) return tour;
      tour.push_back(v);
    }
  }
  return tour;
}

std::vector<int> read_qaplib_solution(std::istream& source) {
  TokenStream ts(source);
  const auto n = ts.next_int();
  ts.next_int();  // objective value
  std::vector<int> perm;
  for (std::int64_t i = 0; i < n; ++i) {
    if (ts.done()) throw ParseError("truncated QAPLIB solution", ts.line());
    perm.push_back(static_cast<int>(ts.next_int()));
  }
  return perm;
}

std::vector<std::vector<int>> read_cvrp_solution(std::istream& source) {
  std::vector<std::vector<int>> routes;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(source, line)) {
    ++lineno;
    const auto t = trim(line);
    if (upper(t.substr(0, 5)) != "ROUTE") continue;
    const auto colon = t.find(':');
    if (colon == std::string::npos) throw ParseError("route line without ':'", lineno);
    std::istringstream ls(t.substr(colon + 1));
    std::vector<int> r;
    std::string tok;
    while (ls >> tok) {
      if (!is_integer_token(tok)) throw ParseError("non-numeric token '" + tok + "'", lineno);
      r.push_back(std::stoi(tok));
    }
    routes.push_back(std::move(r));
  }
  if (routes.empty()) throw ParseError("no routes found", 0);
  return routes;
}

std::vector<int> read_ordering(std::istream& source) {
  TokenStream ts(source);
  while (!ts.done() && !is_integer_token(ts.peek())) ts.next();
  std::vector<int> out;
  while (!ts.done()) out.push_back(static_cast<int>(ts.next_int()));
  return out;
}

}  // namespace emt
