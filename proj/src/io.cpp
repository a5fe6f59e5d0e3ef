#include "psplit/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace psplit::io {

namespace {

using nlohmann::json;

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

enum class Field { Real, Complex };
enum class Symmetry { General, Symmetric, SkewSymmetric, Hermitian };

// Next non-comment, non-blank line.
bool next_data_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '%') continue;
    return true;
  }
  return false;
}

Complex read_value(std::istringstream& ss, Field field, const std::string& line) {
  double re = 0.0;
  double im = 0.0;
  if (!(ss >> re)) parse_error("bad numeric entry: '" + line + "'");
  if (field == Field::Complex && !(ss >> im)) parse_error("missing imaginary part: '" + line + "'");
  return {re, im};
}

void place(ComplexMatrix& a, Index i, Index j, Complex value, Symmetry sym, bool accumulate) {
  if (accumulate) {
    a(i, j) += value;
  } else {
    a(i, j) = value;
  }
  if (i == j) return;
  Complex mirrored = value;
  switch (sym) {
    case Symmetry::General: return;
    case Symmetry::Symmetric: break;
    case Symmetry::SkewSymmetric: mirrored = -value; break;
    case Symmetry::Hermitian: mirrored = std::conj(value); break;
  }
  if (accumulate) {
    a(j, i) += mirrored;
  } else {
    a(j, i) = mirrored;
  }
}

void write_double(std::ostream& out, double v) {
  if (!std::isfinite(v)) {
    out << "null";
    return;
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s(buf);
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  out << s;
}

void write_json(std::ostream& out, const json& j, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(2 * depth), ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out << "{}";
        return;
      }
      out << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out << ",\n";
        first = false;
        out << pad << json(it.key()).dump() << ": ";
        write_json(out, it.value(), depth + 1);
      }
      out << "\n" << close_pad << "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out << "[]";
        return;
      }
      const bool scalars = std::all_of(j.begin(), j.end(), [](const json& e) { return e.is_primitive(); });
      if (scalars) {
        out << "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out << ", ";
          write_json(out, j[i], depth + 1);
        }
        out << "]";
        return;
      }
      out << "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out << ",\n";
        out << pad;
        write_json(out, j[i], depth + 1);
      }
      out << "\n" << close_pad << "]";
      return;
    }
    case json::value_t::number_float:
      write_double(out, j.get<double>());
      return;
    default:
      out << j.dump();
      return;
  }
}

}  // namespace

ComplexMatrix read_matrix_market(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) parse_error("empty Matrix Market stream");
  std::istringstream hs(header);
  std::string banner, object, format, field_name, symmetry_name;
  hs >> banner >> object >> format >> field_name >> symmetry_name;
  if (banner != "%%MatrixMarket" || lower(object) != "matrix") parse_error("missing %%MatrixMarket matrix banner");
  format = lower(format);
  field_name = lower(field_name);
  symmetry_name = lower(symmetry_name);

  Field field;
  if (field_name == "complex") {
    field = Field::Complex;
  } else if (field_name == "real" || field_name == "integer" || field_name == "double") {
    field = Field::Real;
  } else {
    parse_error("unsupported Matrix Market field '" + field_name + "'");
  }
  Symmetry sym;
  if (symmetry_name == "general") {
    sym = Symmetry::General;
  } else if (symmetry_name == "symmetric") {
    sym = Symmetry::Symmetric;
  } else if (symmetry_name == "skew-symmetric") {
    sym = Symmetry::SkewSymmetric;
  } else if (symmetry_name == "hermitian") {
    sym = Symmetry::Hermitian;
  } else {
    parse_error("unsupported Matrix Market symmetry '" + symmetry_name + "'");
  }
  if (format != "array" && format != "coordinate") parse_error("unsupported Matrix Market format '" + format + "'");

  std::string line;
  if (!next_data_line(in, line)) parse_error("missing size line");
  std::istringstream size_line(line);
  long long rows = -1, cols = -1, nnz = -1;
  size_line >> rows >> cols;
  if (format == "coordinate") size_line >> nnz;
  if (rows < 0 || cols < 0 || (format == "coordinate" && nnz < 0)) parse_error("bad size line: '" + line + "'");
  if (sym != Symmetry::General && rows != cols) parse_error("symmetric storage requires a square matrix");

  ComplexMatrix a = ComplexMatrix::Zero(rows, cols);
  if (format == "array") {
    for (Index j = 0; j < cols; ++j) {
      const Index first_row = sym == Symmetry::General ? 0 : (sym == Symmetry::SkewSymmetric ? j + 1 : j);
      for (Index i = first_row; i < rows; ++i) {
        if (!next_data_line(in, line)) parse_error("array data ends early");
        std::istringstream ss(line);
        place(a, i, j, read_value(ss, field, line), sym, false);
      }
    }
  } else {
    for (long long k = 0; k < nnz; ++k) {
      if (!next_data_line(in, line)) parse_error("coordinate data ends early");
      std::istringstream ss(line);
      long long i = 0, j = 0;
      if (!(ss >> i >> j)) parse_error("bad coordinate entry: '" + line + "'");
      if (i < 1 || j < 1 || i > rows || j > cols) parse_error("coordinate index out of range: '" + line + "'");
      place(a, static_cast<Index>(i - 1), static_cast<Index>(j - 1), read_value(ss, field, line), sym, true);
    }
  }
  if (!a.allFinite()) parse_error("matrix has non-finite entries");
  return a;
}

ComplexMatrix read_matrix_market_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) parse_error("cannot open " + path.string());
  return read_matrix_market(in);
}

void write_matrix_market(std::ostream& out, const ComplexMatrix& a) {
  out << "%%MatrixMarket matrix array complex general\n" << a.rows() << " " << a.cols() << "\n";
  char buf[96];
  for (Index j = 0; j < a.cols(); ++j) {
    for (Index i = 0; i < a.rows(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g %.17g\n", a(i, j).real(), a(i, j).imag());
      out << buf;
    }
  }
}

ComplexMatrix matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("re")) {
    parse_error("matrix JSON needs rows, cols and re");
  }
  try {
    const auto rows = j.at("rows").get<long long>();
    const auto cols = j.at("cols").get<long long>();
    const auto re = j.at("re").get<std::vector<double>>();
    const auto im = j.contains("im") ? j.at("im").get<std::vector<double>>() : std::vector<double>(re.size(), 0.0);
    if (rows < 0 || cols < 0) parse_error("matrix JSON has negative dimensions");
    const auto count = static_cast<std::size_t>(rows * cols);
    if (re.size() != count || im.size() != count) {
      parse_error("matrix JSON entry count does not match rows*cols");
    }
    ComplexMatrix a(rows, cols);
    for (Index r = 0; r < rows; ++r) {
      for (Index c = 0; c < cols; ++c) {
        const auto k = static_cast<std::size_t>(r * cols + c);
        a(r, c) = Complex(re[k], im[k]);
      }
    }
    if (!a.allFinite()) parse_error("matrix JSON has non-finite entries");
    return a;
  } catch (const json::exception& e) {
    parse_error(std::string("malformed matrix JSON: ") + e.what());
  }
}

json matrix_to_json(const ComplexMatrix& a) {
  std::vector<double> re, im;
  re.reserve(static_cast<std::size_t>(a.size()));
  im.reserve(static_cast<std::size_t>(a.size()));
  for (Index r = 0; r < a.rows(); ++r) {
    for (Index c = 0; c < a.cols(); ++c) {
      re.push_back(a(r, c).real());
      im.push_back(a(r, c).imag());
    }
  }
  return json{{"rows", a.rows()}, {"cols", a.cols()}, {"re", re}, {"im", im}};
}

ComplexMatrix load_matrix(const json& source, const std::filesystem::path& base_dir) {
  if (source.is_object()) return matrix_from_json(source);
  if (!source.is_string()) parse_error("matrix source must be an inline matrix or a file path");
  std::filesystem::path path = source.get<std::string>();
  if (path.is_relative()) path = base_dir / path;
  if (!std::filesystem::exists(path)) parse_error("matrix file not found: " + path.string());
  if (lower(path.extension().string()) == ".json") {
    std::ifstream in(path);
    try {
      return matrix_from_json(json::parse(in));
    } catch (const json::parse_error& e) {
      parse_error("invalid JSON in " + path.string() + ": " + e.what());
    }
  }
  return read_matrix_market_file(path);
}

std::string serialize(const json& j) {
  std::ostringstream out;
  write_json(out, j, 0);
  out << "\n";
  return out.str();
}

}  // namespace psplit::io
