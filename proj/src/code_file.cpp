#include "zpr/code_file.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace zpr {

namespace {

using json = nlohmann::ordered_json;

CodeKind parse_kind(const std::string& s, const std::string& where, std::size_t line, std::size_t col) {
  if (s == "block") return CodeKind::block;
  if (s == "convolutional") return CodeKind::convolutional;
  throw ParseError(where + ": kind must be 'block' or 'convolutional', got '" + s + "'", line, col);
}

MatrixRole parse_role(const std::string& s, const std::string& where, std::size_t line, std::size_t col) {
  if (s == "generator") return MatrixRole::generator;
  if (s == "p-encoder") return MatrixRole::p_encoder;
  throw ParseError(where + ": role must be 'generator' or 'p-encoder', got '" + s + "'", line, col);
}

std::string at(std::size_t line, std::size_t col) {
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

// Shared checks once the header and cells are known.
CodeFile assemble(Scalar p, int r, CodeKind kind, MatrixRole role, std::size_t cols,
                  const std::vector<std::vector<Poly>>& cells) {
  const RingParams ring(p, r);
  CodeFile f;
  f.kind = kind;
  f.role = role;
  f.matrix = PolyMatrix::from_entries(ring, cells, cols);
  return f;
}

RingParams make_ring(long long p, long long r, const std::string& where, std::size_t line) {
  try {
    if (r < 1 || r > 62) throw InvalidArgument("r must be between 1 and 62");
    return RingParams(p, static_cast<int>(r));
  } catch (const InvalidArgument& e) {
    throw ParseError(where + ": " + e.what(), line, 1);
  }
}

void check_cell(const RingParams& ring, CodeKind kind, const Poly& cell, const std::string& name, std::size_t line,
                std::size_t col) {
  if (cell.empty()) throw ParseError(name + " is empty; write [0] for the zero polynomial", line, col);
  for (Scalar c : cell) {
    if (c < 0 || c >= ring.modulus()) {
      throw ParseError(name + ": entry " + std::to_string(c) + " is not in [0, " + std::to_string(ring.modulus()) +
                           ")",
                       line, col);
    }
  }
  if (kind == CodeKind::block) {
    for (std::size_t t = 1; t < cell.size(); ++t) {
      if (cell[t] != 0) throw ParseError(name + ": block codes only allow constant cells", line, col);
    }
  }
}

class LineReader {
 public:
  explicit LineReader(const std::string& text) {
    std::istringstream in(text);
    std::string s;
    std::size_t n = 0;
    while (std::getline(in, s)) {
      ++n;
      if (!s.empty() && s.back() == '\r') s.pop_back();
      if (const auto hash = s.find('#'); hash != std::string::npos) s.erase(hash);
      if (s.find_first_not_of(" \t") == std::string::npos) continue;
      lines_.push_back({n, s});
    }
  }

  std::size_t last_line() const noexcept { return lines_.empty() ? 1 : lines_.back().first; }

  const std::pair<std::size_t, std::string>& next(const std::string& expecting) {
    if (next_ >= lines_.size()) throw ParseError("unexpected end of file, expected " + expecting, last_line() + 1, 1);
    return lines_[next_++];
  }

  bool more() const noexcept { return next_ < lines_.size(); }

 private:
  std::vector<std::pair<std::size_t, std::string>> lines_;
  std::size_t next_ = 0;
};

std::pair<std::string, std::size_t> word(const std::string& s, std::size_t& pos) {
  while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
  const std::size_t start = pos;
  while (pos < s.size() && s[pos] != ' ' && s[pos] != '\t') ++pos;
  return {s.substr(start, pos - start), start + 1};
}

// "key value" header line; returns the value and its column.
std::pair<std::string, std::size_t> header(LineReader& in, const std::string& key, std::size_t& line) {
  const auto& [n, s] = in.next("'" + key + "'");
  line = n;
  std::size_t pos = 0;
  const auto [k, kcol] = word(s, pos);
  if (k != key) throw ParseError(at(n, kcol) + ": expected '" + key + "', got '" + k + "'", n, kcol);
  const auto [v, vcol] = word(s, pos);
  if (v.empty()) throw ParseError(at(n, pos + 1) + ": missing value for '" + key + "'", n, pos + 1);
  const auto [extra, ecol] = word(s, pos);
  if (!extra.empty()) throw ParseError(at(n, ecol) + ": unexpected '" + extra + "'", n, ecol);
  return {v, vcol};
}

long long integer(const std::string& s, const std::string& what, std::size_t line, std::size_t col) {
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError(at(line, col) + ": " + what + " must be an integer, got '" + s + "'", line, col);
  }
  return v;
}

std::size_t dimension(const std::string& s, const std::string& what, std::size_t line, std::size_t col) {
  const long long v = integer(s, what, line, col);
  if (v < 1) throw ParseError(at(line, col) + ": " + what + " must be positive", line, col);
  return static_cast<std::size_t>(v);
}

std::string cell_name(std::size_t i, std::size_t j) {
  return "cell (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
}

std::string poly_text(const Poly& p) {
  std::string s = "[";
  if (p.empty()) s += "0";
  for (std::size_t t = 0; t < p.size(); ++t) s += (t ? "," : "") + std::to_string(p[t]);
  return s + "]";
}

}  // namespace

std::string to_string(CodeKind kind) { return kind == CodeKind::block ? "block" : "convolutional"; }
std::string to_string(MatrixRole role) { return role == MatrixRole::generator ? "generator" : "p-encoder"; }

CodeFile parse_code_text(const std::string& text) {
  LineReader in(text);
  std::size_t line = 0;
  {
    const auto& [n, s] = in.next("the 'zpr-code' header");
    std::size_t pos = 0;
    const auto [magic, mcol] = word(s, pos);
    if (magic != "zpr-code") throw ParseError(at(n, mcol) + ": expected 'zpr-code' header", n, mcol);
    const auto [ver, vcol] = word(s, pos);
    if (integer(ver, "format version", n, vcol) != code_file_version) {
      throw ParseError(at(n, vcol) + ": unsupported format version " + ver, n, vcol);
    }
  }
  const auto [ps, pcol] = header(in, "p", line);
  const long long p = integer(ps, "p", line, pcol);
  const std::size_t p_line = line;
  const auto [rs, rcol] = header(in, "r", line);
  const RingParams ring = make_ring(p, integer(rs, "r", line, rcol), at(p_line, pcol), p_line);
  const auto [ks, kcol] = header(in, "kind", line);
  const CodeKind kind = parse_kind(ks, at(line, kcol), line, kcol);
  const auto [ros, rocol] = header(in, "role", line);
  const MatrixRole role = parse_role(ros, at(line, rocol), line, rocol);
  const auto [rows_s, rows_col] = header(in, "rows", line);
  const std::size_t rows = dimension(rows_s, "rows", line, rows_col);
  const auto [cols_s, cols_col] = header(in, "cols", line);
  const std::size_t cols = dimension(cols_s, "cols", line, cols_col);

  std::vector<std::vector<Poly>> cells(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    const auto& [n, s] = in.next("matrix row " + std::to_string(i + 1));
    std::size_t pos = 0;
    for (std::size_t j = 0; j < cols; ++j) {
      while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
      const std::string name = at(n, pos + 1) + ": " + cell_name(i, j);
      if (pos >= s.size()) throw ParseError(name + " is missing (expected " + std::to_string(cols) + " cells)", n, pos + 1);
      if (s[pos] != '[') throw ParseError(name + " must start with '['", n, pos + 1);
      const std::size_t close = s.find(']', pos);
      if (close == std::string::npos) throw ParseError(name + " has no closing ']'", n, pos + 1);
      Poly cell;
      std::size_t q = pos + 1;
      while (q <= close) {
        std::size_t end = s.find_first_of(",]", q);
        std::string tok = s.substr(q, end - q);
        const std::size_t lead = tok.find_first_not_of(" \t");
        const std::size_t tcol = q + (lead == std::string::npos ? 0 : lead) + 1;
        tok = lead == std::string::npos ? "" : tok.substr(lead, tok.find_last_not_of(" \t") - lead + 1);
        if (tok.empty()) throw ParseError(at(n, tcol) + ": " + cell_name(i, j) + " has an empty coefficient", n, tcol);
        cell.push_back(integer(tok, cell_name(i, j) + " coefficient", n, tcol));
        q = end + 1;
      }
      check_cell(ring, kind, cell, name, n, pos + 1);
      cells[i].push_back(std::move(cell));
      pos = close + 1;
    }
    const auto [extra, ecol] = word(s, pos);
    if (!extra.empty()) {
      throw ParseError(at(n, ecol) + ": row " + std::to_string(i + 1) + " has more than " + std::to_string(cols) +
                           " cells",
                       n, ecol);
    }
  }
  if (in.more()) {
    const auto& [n, s] = in.next("");
    throw ParseError(at(n, 1) + ": unexpected content after " + std::to_string(rows) + " rows: '" + s + "'", n, 1);
  }
  return assemble(ring.p(), ring.r(), kind, role, cols, cells);
}

std::string write_code_text(const CodeFile& f) {
  const PolyMatrix& m = f.matrix;
  std::ostringstream out;
  out << "zpr-code " << code_file_version << "\n"
      << "p " << m.ring().p() << "\n"
      << "r " << m.ring().r() << "\n"
      << "kind " << to_string(f.kind) << "\n"
      << "role " << to_string(f.role) << "\n"
      << "rows " << m.rows() << "\n"
      << "cols " << m.cols() << "\n";
  for (const auto& row : m.row_list()) {
    for (std::size_t j = 0; j < m.cols(); ++j) out << (j ? " " : "") << poly_text(row.entry(j));
    out << "\n";
  }
  return out.str();
}

CodeFile parse_code_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), 0, e.byte);
  }
  auto field = [&](const char* key) -> const json& {
    if (!doc.is_object() || !doc.contains(key)) throw ParseError(std::string("missing field '") + key + "'", 0, 0);
    return doc.at(key);
  };
  auto number = [&](const char* key) {
    const json& v = field(key);
    if (!v.is_number_integer()) throw ParseError(std::string("field '") + key + "' must be an integer", 0, 0);
    return v.get<long long>();
  };
  auto text_field = [&](const char* key) {
    const json& v = field(key);
    if (!v.is_string()) throw ParseError(std::string("field '") + key + "' must be a string", 0, 0);
    return v.get<std::string>();
  };
  if (text_field("format") != "zpr-code") throw ParseError("field 'format' must be \"zpr-code\"", 0, 0);
  if (number("version") != code_file_version) throw ParseError("unsupported format version", 0, 0);
  const RingParams ring = make_ring(number("p"), number("r"), "field 'p'/'r'", 0);
  const CodeKind kind = parse_kind(text_field("kind"), "field 'kind'", 0, 0);
  const MatrixRole role = parse_role(text_field("role"), "field 'role'", 0, 0);
  const long long rows = number("rows"), cols = number("cols");
  if (rows < 1 || cols < 1) throw ParseError("fields 'rows' and 'cols' must be positive", 0, 0);
  const json& m = field("matrix");
  if (!m.is_array() || m.size() != static_cast<std::size_t>(rows)) {
    throw ParseError("field 'matrix' must be an array of " + std::to_string(rows) + " rows", 0, 0);
  }
  std::vector<std::vector<Poly>> cells(static_cast<std::size_t>(rows));
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const std::string rname = "matrix[" + std::to_string(i) + "]";
    if (!m[i].is_array() || m[i].size() != static_cast<std::size_t>(cols)) {
      throw ParseError(rname + " must be an array of " + std::to_string(cols) + " cells", 0, 0);
    }
    for (std::size_t j = 0; j < m[i].size(); ++j) {
      const std::string name = rname + "[" + std::to_string(j) + "] " + cell_name(i, j);
      const json& c = m[i][j];
      if (!c.is_array()) throw ParseError(name + " must be an array of coefficients", 0, 0);
      Poly cell;
      for (const json& x : c) {
        if (!x.is_number_integer()) throw ParseError(name + " has a non-integer coefficient", 0, 0);
        cell.push_back(x.get<Scalar>());
      }
      check_cell(ring, kind, cell, name, 0, 0);
      cells[i].push_back(std::move(cell));
    }
  }
  return assemble(ring.p(), ring.r(), kind, role, static_cast<std::size_t>(cols), cells);
}

std::string write_code_json(const CodeFile& f) {
  const PolyMatrix& m = f.matrix;
  json rows = json::array();
  for (const auto& row : m.row_list()) {
    json cells = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) {
      Poly e = row.entry(j);
      if (e.empty()) e.push_back(0);
      cells.push_back(e);
    }
    rows.push_back(std::move(cells));
  }
  json doc = {{"format", "zpr-code"},      {"version", code_file_version}, {"p", m.ring().p()},
              {"r", m.ring().r()},         {"kind", to_string(f.kind)},    {"role", to_string(f.role)},
              {"rows", m.rows()},          {"cols", m.cols()},             {"matrix", std::move(rows)}};
  return doc.dump(2) + "\n";
}

namespace {
bool is_json_path(const std::string& path) {
  return path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
}
}  // namespace

CodeFile read_code_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return is_json_path(path) ? parse_code_json(buf.str()) : parse_code_text(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what(), e.line(), e.column());
  }
}

void write_code_file(const std::string& path, const CodeFile& f) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write '" + path + "'");
  out << (is_json_path(path) ? write_code_json(f) : write_code_text(f));
}

}  // namespace zpr
