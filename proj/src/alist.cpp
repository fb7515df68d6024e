#include "lpdec/alist.hpp"

#include <fstream>
#include <sstream>
#include <vector>

namespace lpdec {

namespace {

struct Line {
  int number;  // 1-based
  std::vector<long long> tokens;
};

std::vector<Line> tokenize(std::istream& in) {
  std::vector<Line> lines;
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    std::istringstream ss(raw);
    Line line{number, {}};
    std::string tok;
    while (ss >> tok) {
      try {
        std::size_t pos = 0;
        const long long v = std::stoll(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument(tok);
        line.tokens.push_back(v);
      } catch (...) {
        throw AlistError(number, "expected an integer, got '" + tok + "'");
      }
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

// Reads one adjacency row: nonzero entries must be unique, in [1, limit],
// and exactly `degree` many; zeros are padding.
std::vector<int> read_row(const Line& line, int degree, int max_degree, int limit,
                          const char* what) {
  if (static_cast<int>(line.tokens.size()) > max_degree)
    throw AlistError(line.number, std::string(what) + " row has more entries than the declared maximum degree");
  std::vector<int> out;
  for (long long v : line.tokens) {
    if (v == 0) continue;
    if (v < 1 || v > limit)
      throw AlistError(line.number, std::string(what) + " index " + std::to_string(v) +
                                        " out of range [1, " + std::to_string(limit) + "]");
    out.push_back(static_cast<int>(v - 1));
  }
  std::vector<int> sorted = out;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw AlistError(line.number, std::string(what) + " row contains a duplicate index");
  if (static_cast<int>(out.size()) != degree)
    throw AlistError(line.number, std::string(what) + " row has " + std::to_string(out.size()) +
                                      " entries but degree " + std::to_string(degree) +
                                      " was declared");
  return sorted;
}

}  // namespace

TannerCode parse_alist(std::istream& in) {
  const std::vector<Line> lines = tokenize(in);
  std::size_t at = 0;
  auto next_line = [&](const char* what) -> const Line& {
    if (at >= lines.size())
      throw AlistError(lines.empty() ? 1 : lines.back().number + 1,
                       std::string("unexpected end of file, expected ") + what);
    return lines[at++];
  };

  const Line& header = next_line("'n m' header");
  if (header.tokens.size() != 2)
    throw AlistError(header.number, "header must be exactly 'n m'");
  const long long n = header.tokens[0], m = header.tokens[1];
  if (n < 1 || m < 1) throw AlistError(header.number, "n and m must be >= 1");

  const Line& maxima = next_line("'max_var_deg max_chk_deg' line");
  if (maxima.tokens.size() != 2)
    throw AlistError(maxima.number, "expected exactly 'max_var_deg max_chk_deg'");
  const long long max_var_deg = maxima.tokens[0], max_chk_deg = maxima.tokens[1];
  if (max_var_deg < 0 || max_chk_deg < 1)
    throw AlistError(maxima.number, "invalid maximum degrees");

  const Line& var_deg_line = next_line("variable degree list");
  if (static_cast<long long>(var_deg_line.tokens.size()) != n)
    throw AlistError(var_deg_line.number, "expected " + std::to_string(n) + " variable degrees");
  const Line& chk_deg_line = next_line("check degree list");
  if (static_cast<long long>(chk_deg_line.tokens.size()) != m)
    throw AlistError(chk_deg_line.number, "expected " + std::to_string(m) + " check degrees");

  auto check_degrees = [](const Line& line, long long cap, const char* what) {
    std::vector<int> degs;
    for (long long v : line.tokens) {
      if (v < 0 || v > cap)
        throw AlistError(line.number, std::string(what) + " degree " + std::to_string(v) +
                                          " exceeds the declared maximum " + std::to_string(cap));
      degs.push_back(static_cast<int>(v));
    }
    return degs;
  };
  const std::vector<int> var_degs = check_degrees(var_deg_line, max_var_deg, "variable");
  const std::vector<int> chk_degs = check_degrees(chk_deg_line, max_chk_deg, "check");

  std::vector<std::vector<int>> var_rows(n);
  for (long long i = 0; i < n; ++i) {
    const Line& line = next_line("per-variable check list");
    var_rows[i] = read_row(line, var_degs[i], static_cast<int>(max_var_deg),
                           static_cast<int>(m), "check");
  }
  std::vector<std::vector<int>> chk_rows(m);
  std::vector<int> chk_row_line(m);
  for (long long j = 0; j < m; ++j) {
    const Line& line = next_line("per-check variable list");
    chk_row_line[j] = line.number;
    chk_rows[j] = read_row(line, chk_degs[j], static_cast<int>(max_chk_deg),
                           static_cast<int>(n), "variable");
  }
  if (at != lines.size())
    throw AlistError(lines[at].number, "trailing content after the adjacency lists");

  // The two halves must describe one bipartite graph.
  std::vector<std::vector<int>> from_vars(m);
  for (long long i = 0; i < n; ++i)
    for (int j : var_rows[i]) from_vars[j].push_back(static_cast<int>(i));
  for (long long j = 0; j < m; ++j)
    if (from_vars[j] != chk_rows[j])
      throw AlistError(chk_row_line[j],
                       "check " + std::to_string(j + 1) +
                           " disagrees with the per-variable lists (degree/row mismatch)");

  return TannerCode::from_check_neighbors(static_cast<int>(n), std::move(chk_rows));
}

TannerCode parse_alist(const std::string& text) {
  std::istringstream in(text);
  return parse_alist(in);
}

TannerCode parse_alist_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open alist file: " + path);
  return parse_alist(in);
}

std::string write_alist(const TannerCode& code) {
  std::ostringstream out;
  const int n = code.num_vars(), m = code.num_checks();
  out << n << " " << m << "\n";
  out << code.max_var_degree() << " " << code.max_check_degree() << "\n";
  for (int i = 0; i < n; ++i)
    out << code.var_neighbors(i).size() << (i + 1 < n ? " " : "\n");
  for (int j = 0; j < m; ++j)
    out << code.check_neighbors(j).size() << (j + 1 < m ? " " : "\n");
  for (int i = 0; i < n; ++i) {
    const auto& row = code.var_neighbors(i);
    if (row.empty()) out << 0;  // keep the line non-blank for degree-0 variables
    for (std::size_t t = 0; t < row.size(); ++t)
      out << row[t] + 1 << (t + 1 < row.size() ? " " : "");
    out << "\n";
  }
  for (int j = 0; j < m; ++j) {
    const auto& row = code.check_neighbors(j);
    for (std::size_t t = 0; t < row.size(); ++t)
      out << row[t] + 1 << (t + 1 < row.size() ? " " : "");
    out << "\n";
  }
  return out.str();
}

}  // namespace lpdec
