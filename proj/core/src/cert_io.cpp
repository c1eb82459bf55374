#include "spherebound/cert_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace spherebound {

namespace {

using json = nlohmann::json;

std::pair<int, int> line_column(std::string_view text, std::size_t offset) {
  int line = 1, column = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

class Reader {
 public:
  Reader(std::string_view text, bool allow_decimal) : text_(text), allow_decimal_(allow_decimal) {}

  [[noreturn]] void fail(const std::string& key, const std::string& what) const {
    auto pos = text_.find("\"" + key + "\"");
    if (pos == std::string_view::npos) throw ParseError(what);
    auto [line, column] = line_column(text_, pos);
    throw ParseError(what, line, column);
  }

  const json& field(const json& doc, const std::string& key) const {
    auto it = doc.find(key);
    if (it == doc.end()) throw ParseError("missing field '" + key + "'");
    return *it;
  }

  int integer(const json& doc, const std::string& key) const {
    const json& v = field(doc, key);
    if (!v.is_number_integer()) fail(key, "field '" + key + "' must be an integer");
    return v.get<int>();
  }

  std::string string(const json& doc, const std::string& key) const {
    const json& v = field(doc, key);
    if (!v.is_string()) fail(key, "field '" + key + "' must be a string");
    return v.get<std::string>();
  }

  Rational parse_value(const std::string& key, const std::string& value) {
    try {
      if (value.find_first_of(".eE") != std::string::npos) used_decimal_ = true;
      return parse_rational(value, allow_decimal_);
    } catch (const ParseError& e) {
      fail(key, "field '" + key + "': " + e.what());
    }
  }

  Rational rational(const json& doc, const std::string& key) { return parse_value(key, string(doc, key)); }

  RationalPoly poly(const json& doc, const std::string& key) const {
    std::string s = string(doc, key);
    try {
      return parse_poly(s);
    } catch (const ParseError& e) {
      fail(key, "field '" + key + "': " + e.what());
    }
  }

  IntervalSet intervals(const json& doc, const std::string& key) const {
    std::string s = string(doc, key);
    try {
      return IntervalSet::parse(s);
    } catch (const Error& e) {
      fail(key, "field '" + key + "': " + e.what());
    }
  }

  bool used_decimal() const { return used_decimal_; }

 private:
  std::string_view text_;
  bool allow_decimal_;
  bool used_decimal_ = false;
};

}  // namespace

Certificate parse_certificate(std::string_view text, bool allow_decimal, bool* used_decimal) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    auto [line, column] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
    throw ParseError("malformed certificate JSON", line, column);
  }
  if (!doc.is_object()) throw ParseError("certificate must be a JSON object", 1, 1);

  Reader r(text, allow_decimal);
  Certificate cert;
  cert.dim = r.integer(doc, "dim");
  cert.degree = r.integer(doc, "degree");
  if (cert.dim < 2) r.fail("dim", "dim must be at least 2");
  if (cert.degree < 0) r.fail("degree", "degree must be nonnegative");
  cert.f0 = r.rational(doc, "f0");
  cert.cos_theta = r.rational(doc, "theta_cos");
  const bool has_sep = doc.contains("separable_g");
  const bool has_mat = doc.contains("matrices");
  if (has_sep == has_mat) throw ParseError("exactly one of 'separable_g' and 'matrices' is required");
  if (has_sep) {
    cert.form = SeparableForm{r.poly(doc, "separable_g")};
  } else {
    const json& ms = doc["matrices"];
    if (!ms.is_array()) r.fail("matrices", "field 'matrices' must be an array");
    MatrixForm form{cert.dim, cert.degree, {}};
    if (ms.size() != static_cast<std::size_t>(cert.degree + 1)) {
      r.fail("matrices", "expected " + std::to_string(cert.degree + 1) + " matrices for degree " +
                             std::to_string(cert.degree));
    }
    for (std::size_t k = 0; k < ms.size(); ++k) {
      const std::size_t size = static_cast<std::size_t>(cert.degree + 1) - k;
      const json& m = ms[k];
      if (!m.is_array() || m.size() != size) {
        r.fail("matrices", "M_" + std::to_string(k) + " must have " + std::to_string(size) + " rows");
      }
      RationalMatrix block;
      for (const json& row : m) {
        if (!row.is_array() || row.size() != size) {
          r.fail("matrices", "M_" + std::to_string(k) + " rows must have " + std::to_string(size) + " entries");
        }
        std::vector<Rational> values;
        for (const json& v : row) {
          if (!v.is_string()) r.fail("matrices", "matrix entries must be rational strings");
          values.push_back(r.parse_value("matrices", v.get<std::string>()));
        }
        block.push_back(std::move(values));
      }
      if (!is_symmetric(block)) r.fail("matrices", "M_" + std::to_string(k) + " is not symmetric");
      form.blocks.push_back(std::move(block));
    }
    cert.form = std::move(form);
  }
  cert.B = r.rational(doc, "B");
  cert.T = r.intervals(doc, "T");
  cert.g = r.poly(doc, "g");
  if (used_decimal != nullptr) *used_decimal = r.used_decimal();
  return cert;
}

Certificate read_certificate_file(const std::string& path, bool allow_decimal, bool* used_decimal) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open certificate file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_certificate(buffer.str(), allow_decimal, used_decimal);
}

std::string emit_certificate(const Certificate& cert) {
  auto quote = [](const std::string& s) { return json(s).dump(); };
  std::ostringstream out;
  out << "{\n";
  out << "  \"dim\": " << cert.dim << ",\n";
  out << "  \"degree\": " << cert.degree << ",\n";
  out << "  \"f0\": " << quote(to_string(cert.f0)) << ",\n";
  out << "  \"theta_cos\": " << quote(to_string(cert.cos_theta)) << ",\n";
  if (const auto* s = std::get_if<SeparableForm>(&cert.form)) {
    out << "  \"separable_g\": " << quote(to_string(s->s)) << ",\n";
  } else {
    const auto& form = std::get<MatrixForm>(cert.form);
    out << "  \"matrices\": [\n";
    for (std::size_t k = 0; k < form.blocks.size(); ++k) {
      out << "    [";
      for (std::size_t i = 0; i < form.blocks[k].size(); ++i) {
        out << (i ? ", [" : "[");
        for (std::size_t j = 0; j < form.blocks[k][i].size(); ++j) {
          out << (j ? ", " : "") << quote(to_string(form.blocks[k][i][j]));
        }
        out << "]";
      }
      out << "]" << (k + 1 < form.blocks.size() ? "," : "") << "\n";
    }
    out << "  ],\n";
  }
  out << "  \"B\": " << quote(to_string(cert.B)) << ",\n";
  out << "  \"T\": " << quote(cert.T.to_string()) << ",\n";
  out << "  \"g\": " << quote(to_string(cert.g)) << "\n";
  out << "}\n";
  return out.str();
}

}  // namespace spherebound
