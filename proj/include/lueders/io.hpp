// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lueders/oracle.hpp"
#include "lueders/sampler.hpp"

namespace lueders::io {

/// File missing or unreadable/unwritable (CLI exit code 2).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or invalid file content (CLI exit code 1).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Streaming JSON writer with caller-controlled field order. Floats are
/// printed with 17 significant digits so equal reports are equal byte for
/// byte.
class JsonWriter {
 public:
  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();
  JsonWriter& key(std::string_view k);
  JsonWriter& value(double v);
  JsonWriter& value(long long v);
  JsonWriter& value(std::uint64_t v);
  JsonWriter& value(int v) { return value(static_cast<long long>(v)); }
  JsonWriter& value(bool v);
  JsonWriter& value(std::string_view v);
  JsonWriter& value(const char* v) { return value(std::string_view(v)); }
  JsonWriter& value_null();

  const std::string& str() const { return out_; }

 private:
  void prepare_slot();
  std::string out_;
  // One flag per open scope: has the scope already emitted an element?
  std::vector<bool> scope_has_element_;
  bool pending_key_ = false;
};

std::string format_double(double v);

// Matrix format: {"dim": d, "entries": [[[re, im], ...], ...]} row-major.
// A bare number is accepted as a real entry.
ComplexMatrix parse_matrix_string(const std::string& text);
ComplexMatrix parse_matrix_file(const std::string& path);
void write_matrix(JsonWriter& w, const ComplexMatrix& m);
std::string matrix_to_json(const ComplexMatrix& m);

DensityOperator parse_state_file(const std::string& path);

// An observable file holds either a Hermitian matrix (decomposed with
// cluster_tol) or {"eigenvalues": [...], "projectors": [matrix, ...]}
// (validated as given). A {"observable": ...} wrapper, as produced by the
// decompose report, is unwrapped first.
Observable parse_observable_file(const std::string& path, double cluster_tol);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace lueders::io
