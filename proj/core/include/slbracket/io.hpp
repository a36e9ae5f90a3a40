#pragma once

#include <iosfwd>
#include <string>
#include <utility>

#include "slbracket/oracle.hpp"

namespace slb {

// Parse failure with the 1-based line it was noticed on.
class parse_error : public error {
 public:
  parse_error(const std::string& what, int line)
      : error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// All readers share one line discipline: blank lines and lines whose first
// nonblank character is '#' are skipped anywhere, and the block structure is
// fixed by counts, not by separators.
//
// matrix    :=  field descriptor line, dimension line, n rows of n literals
// instance  :=  field, dimension, n rows of A, n rows of the normal B
// pair      :=  two matrix blocks (same field and dimension)

Mat read_matrix(std::istream& in);
struct Instance {
  Mat a;
  Mat b;  // hyperplane normal
};
Instance read_instance(std::istream& in);
std::pair<Mat, Mat> read_pair(std::istream& in);

Mat read_matrix_file(const std::string& path);
Instance read_instance_file(const std::string& path);
std::pair<Mat, Mat> read_pair_file(const std::string& path);

void write_matrix(std::ostream& out, const Mat& m);
void write_instance(std::ostream& out, const Mat& a, const Mat& b);
void write_pair(std::ostream& out, const Mat& first, const Mat& second);

// Compact JSON for a sweep: keys field, n, count, successes,
// strategy_histogram, failures, seed, elapsed_ms.
std::string sweep_report_to_json(const SweepReport& rep);

}  // namespace slb
