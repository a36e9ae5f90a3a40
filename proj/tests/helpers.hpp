#pragma once

#include <initializer_list>
#include <vector>

#include "slbracket/matrix.hpp"

// Builders used across the test files: integer literals lifted into a field.
namespace testutil {

inline slb::Mat mk(const slb::Field& f, std::initializer_list<std::initializer_list<int>> rows) {
  std::vector<std::vector<slb::Scalar>> out;
  for (const auto& r : rows) {
    std::vector<slb::Scalar> row;
    for (int v : r) row.push_back(f->from_int(v));
    out.push_back(std::move(row));
  }
  return slb::Mat::from_rows(f, out);
}

inline slb::Vec vk(const slb::Field& f, std::initializer_list<int> entries) {
  std::vector<slb::Scalar> v;
  for (int e : entries) v.push_back(f->from_int(e));
  return slb::Vec(f, std::move(v));
}

}  // namespace testutil
