// SPDX-License-Identifier: Apache-2.0
#include "lueders/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace lueders::io {

namespace {

using nlohmann::json;

void escape_into(std::string& out, std::string_view s) {
  for (char c : s) {
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\r':
        out += "\\r";
        break;
      case '\t':
        out += "\\t";
        break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
}

}  // namespace

void JsonWriter::prepare_slot() {
  if (pending_key_) {
    pending_key_ = false;
    return;
  }
  if (!scope_has_element_.empty()) {
    if (scope_has_element_.back()) {
      out_ += ',';
    }
    scope_has_element_.back() = true;
  }
}

JsonWriter& JsonWriter::begin_object() {
  prepare_slot();
  out_ += '{';
  scope_has_element_.push_back(false);
  return *this;
}

JsonWriter& JsonWriter::end_object() {
  scope_has_element_.pop_back();
  out_ += '}';
  return *this;
}

JsonWriter& JsonWriter::begin_array() {
  prepare_slot();
  out_ += '[';
  scope_has_element_.push_back(false);
  return *this;
}

JsonWriter& JsonWriter::end_array() {
  scope_has_element_.pop_back();
  out_ += ']';
  return *this;
}

JsonWriter& JsonWriter::key(std::string_view k) {
  if (!scope_has_element_.empty() && scope_has_element_.back()) {
    out_ += ',';
  }
  if (!scope_has_element_.empty()) {
    scope_has_element_.back() = true;
  }
  out_ += '"';
  escape_into(out_, k);
  out_ += "\":";
  pending_key_ = true;
  return *this;
}

JsonWriter& JsonWriter::value(double v) {
  prepare_slot();
  out_ += format_double(v);
  return *this;
}

JsonWriter& JsonWriter::value(long long v) {
  prepare_slot();
  out_ += std::to_string(v);
  return *this;
}

JsonWriter& JsonWriter::value(std::uint64_t v) {
  prepare_slot();
  out_ += std::to_string(v);
  return *this;
}

JsonWriter& JsonWriter::value(bool v) {
  prepare_slot();
  out_ += v ? "true" : "false";
  return *this;
}

JsonWriter& JsonWriter::value(std::string_view v) {
  prepare_slot();
  out_ += '"';
  escape_into(out_, v);
  out_ += '"';
  return *this;
}

JsonWriter& JsonWriter::value_null() {
  prepare_slot();
  out_ += "null";
  return *this;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open file: " + path);
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) {
    throw IoError("read failure: " + path);
  }
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot open file for writing: " + path);
  }
  out << content;
  out.flush();
  if (!out) {
    throw IoError("write failure: " + path);
  }
}

namespace {

Complex parse_entry(const json& entry, Eigen::Index row, Eigen::Index col) {
  if (entry.is_number()) {
    return Complex(entry.get<double>(), 0.0);
  }
  if (entry.is_array() && entry.size() == 2 && entry[0].is_number() &&
      entry[1].is_number()) {
    return Complex(entry[0].get<double>(), entry[1].get<double>());
  }
  throw ParseError("matrix entry at row " + std::to_string(row) +
                   ", column " + std::to_string(col) +
                   " is not a number or [re, im] pair");
}

ComplexMatrix parse_matrix_json(const json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("entries")) {
    throw ParseError("matrix object must carry \"dim\" and \"entries\"");
  }
  if (!j["dim"].is_number_integer() || j["dim"].get<long long>() < 1) {
    throw ParseError("matrix \"dim\" must be a positive integer");
  }
  const Eigen::Index dim = j["dim"].get<Eigen::Index>();
  const json& rows = j["entries"];
  if (!rows.is_array() || rows.size() != static_cast<std::size_t>(dim)) {
    throw ParseError("matrix \"entries\" must hold " + std::to_string(dim) +
                     " rows");
  }
  Eigen::MatrixXcd m(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    const json& row = rows[static_cast<std::size_t>(r)];
    if (!row.is_array() || row.size() != static_cast<std::size_t>(dim)) {
      throw ParseError("matrix row " + std::to_string(r) + " has " +
                       std::to_string(row.is_array() ? row.size() : 0) +
                       " entries, expected " + std::to_string(dim));
    }
    for (Eigen::Index c = 0; c < dim; ++c) {
      m(r, c) = parse_entry(row[static_cast<std::size_t>(c)], r, c);
    }
  }
  if (!m.allFinite()) {
    throw ParseError("matrix has a non-finite entry");
  }
  return ComplexMatrix(std::move(m));
}

json parse_json_text(const std::string& text, const std::string& what) {
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) {
    throw ParseError("malformed JSON in " + what);
  }
  return j;
}

}  // namespace

ComplexMatrix parse_matrix_string(const std::string& text) {
  return parse_matrix_json(parse_json_text(text, "matrix"));
}

ComplexMatrix parse_matrix_file(const std::string& path) {
  try {
    return parse_matrix_json(parse_json_text(read_file(path), path));
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_matrix(JsonWriter& w, const ComplexMatrix& m) {
  w.begin_object();
  w.key("dim").value(static_cast<long long>(m.dim()));
  w.key("entries").begin_array();
  for (Eigen::Index r = 0; r < m.dim(); ++r) {
    w.begin_array();
    for (Eigen::Index c = 0; c < m.dim(); ++c) {
      const Complex v = m(r, c);
      w.begin_array();
      w.value(v.real());
      w.value(v.imag());
      w.end_array();
    }
    w.end_array();
  }
  w.end_array();
  w.end_object();
}

std::string matrix_to_json(const ComplexMatrix& m) {
  JsonWriter w;
  write_matrix(w, m);
  return w.str();
}

DensityOperator parse_state_file(const std::string& path) {
  const ComplexMatrix m = parse_matrix_file(path);
  try {
    return make_density(m);
  } catch (const std::invalid_argument& e) {
    throw ParseError(path + ": not a density operator: " + e.what());
  }
}

Observable parse_observable_file(const std::string& path, double cluster_tol) {
  json j = parse_json_text(read_file(path), path);
  if (j.is_object() && j.contains("observable")) {
    j = j["observable"];
  }
  try {
    if (j.is_object() && j.contains("eigenvalues")) {
      if (!j.contains("projectors") || !j["eigenvalues"].is_array() ||
          !j["projectors"].is_array()) {
        throw ParseError(
            "observable needs \"eigenvalues\" and \"projectors\" arrays");
      }
      std::vector<double> values;
      for (const json& v : j["eigenvalues"]) {
        if (!v.is_number()) {
          throw ParseError("observable eigenvalues must be numbers");
        }
        values.push_back(v.get<double>());
      }
      std::vector<ComplexMatrix> projectors;
      for (const json& p : j["projectors"]) {
        projectors.push_back(parse_matrix_json(p));
      }
      return Observable::create(std::move(values), std::move(projectors),
                                cluster_tol);
    }
    return spectral_decompose(parse_matrix_json(j), cluster_tol);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(path + ": invalid observable: " + e.what());
  }
}

}  // namespace lueders::io
