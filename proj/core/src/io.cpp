#include "slbracket/io.hpp"

#include <fstream>
#include <optional>
#include <sstream>

#include <json.hpp>

namespace slb {

namespace {

struct LineReader {
  std::istream& in;
  int line_no = 0;

  // next content line, with blank and comment lines skipped
  std::optional<std::string> next() {
    std::string s;
    while (std::getline(in, s)) {
      ++line_no;
      auto first = s.find_first_not_of(" \t\r");
      if (first == std::string::npos) continue;
      if (s[first] == '#') continue;
      if (!s.empty() && s.back() == '\r') s.pop_back();
      return s;
    }
    return std::nullopt;
  }

  std::string demand(const char* what) {
    auto s = next();
    if (!s) throw parse_error(std::string("unexpected end of input, expected ") + what,
                              line_no + 1);
    return *s;
  }
};

std::vector<std::string> tokens_of(const std::string& s) {
  std::vector<std::string> toks;
  std::istringstream is(s);
  std::string t;
  while (is >> t) toks.push_back(t);
  return toks;
}

Field read_field_line(LineReader& r) {
  std::string line = r.demand("a field descriptor");
  try {
    return FieldSpec::parse(line);
  } catch (const error& e) {
    throw parse_error(e.what(), r.line_no);
  }
}

int read_dimension_line(LineReader& r) {
  std::string line = r.demand("a matrix dimension");
  auto toks = tokens_of(line);
  if (toks.size() != 1) throw parse_error("dimension line wants a single integer", r.line_no);
  int n = 0;
  try {
    std::size_t used = 0;
    n = std::stoi(toks[0], &used);
    if (used != toks[0].size()) throw std::invalid_argument("");
  } catch (...) {
    throw parse_error("bad matrix dimension '" + toks[0] + "'", r.line_no);
  }
  if (n < 1 || n > 64) throw parse_error("matrix dimension out of range", r.line_no);
  return n;
}

Mat read_rows(LineReader& r, const Field& f, int n) {
  Mat m(f, n);
  for (int i = 0; i < n; ++i) {
    std::string line = r.demand("a matrix row");
    auto toks = tokens_of(line);
    if (static_cast<int>(toks.size()) != n)
      throw parse_error("row wants " + std::to_string(n) + " entries, got " +
                            std::to_string(toks.size()),
                        r.line_no);
    for (int j = 0; j < n; ++j) {
      try {
        m.at(i, j) = f->parse_scalar(toks[j]);
      } catch (const error& e) {
        throw parse_error(e.what(), r.line_no);
      }
    }
  }
  return m;
}

Mat read_matrix_from(LineReader& r) {
  Field f = read_field_line(r);
  int n = read_dimension_line(r);
  return read_rows(r, f, n);
}

nlohmann::json matrix_rows_json(const Mat& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < m.dim(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < m.dim(); ++j) row.push_back(m.field()->format(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

Mat read_matrix(std::istream& in) {
  LineReader r{in};
  return read_matrix_from(r);
}

Instance read_instance(std::istream& in) {
  LineReader r{in};
  Field f = read_field_line(r);
  int n = read_dimension_line(r);
  Mat a = read_rows(r, f, n);
  Mat b = read_rows(r, f, n);
  return Instance{std::move(a), std::move(b)};
}

std::pair<Mat, Mat> read_pair(std::istream& in) {
  LineReader r{in};
  Mat first = read_matrix_from(r);
  int at = r.line_no;
  Mat second = read_matrix_from(r);
  if (!first.field()->same_field(*second.field()))
    throw parse_error("the two matrices live over different fields", at + 1);
  if (first.dim() != second.dim())
    throw parse_error("the two matrices have different dimensions", at + 1);
  return {std::move(first), std::move(second)};
}

namespace {

template <typename T>
T read_from_file(const std::string& path, T (*reader)(std::istream&)) {
  std::ifstream in(path);
  if (!in) throw error("cannot open '" + path + "'");
  return reader(in);
}

}  // namespace

Mat read_matrix_file(const std::string& path) { return read_from_file(path, read_matrix); }
Instance read_instance_file(const std::string& path) {
  return read_from_file(path, read_instance);
}
std::pair<Mat, Mat> read_pair_file(const std::string& path) {
  return read_from_file(path, read_pair);
}

void write_matrix(std::ostream& out, const Mat& m) {
  out << m.field()->descriptor() << "\n" << m.dim() << "\n" << m.str() << "\n";
}

void write_instance(std::ostream& out, const Mat& a, const Mat& b) {
  out << a.field()->descriptor() << "\n" << a.dim() << "\n\n" << a.str() << "\n\n" << b.str()
      << "\n";
}

void write_pair(std::ostream& out, const Mat& first, const Mat& second) {
  write_matrix(out, first);
  out << "\n";
  write_matrix(out, second);
}

std::string sweep_report_to_json(const SweepReport& rep) {
  nlohmann::json j;
  j["field"] = rep.config.field->descriptor();
  j["n"] = rep.config.n;
  j["count"] = rep.config.count;
  j["successes"] = rep.successes;
  nlohmann::json hist = nlohmann::json::object();
  for (const auto& [name, cnt] : rep.strategy_histogram) hist[name] = cnt;
  j["strategy_histogram"] = std::move(hist);
  nlohmann::json fails = nlohmann::json::array();
  for (const SweepFailure& fl : rep.failures) {
    nlohmann::json one;
    one["index"] = fl.index;
    one["a"] = matrix_rows_json(fl.a);
    one["b"] = matrix_rows_json(fl.b);
    one["status"] = solve_status_name(fl.status);
    fails.push_back(std::move(one));
  }
  j["failures"] = std::move(fails);
  j["seed"] = rep.config.seed;
  j["elapsed_ms"] = rep.elapsed_ms;
  return j.dump();
}

}  // namespace slb
