#include <cctype>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "spherebound/codes.hpp"

namespace spherebound {

namespace {

std::vector<std::pair<std::string, int>> tokens_of(const std::string& line) {
  std::vector<std::pair<std::string, int>> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (std::isspace(static_cast<unsigned char>(line[i])) || line[i] == ',')) ++i;
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) && line[i] != ',') ++i;
    if (i > start) out.emplace_back(line.substr(start, i - start), static_cast<int>(start) + 1);
  }
  return out;
}

}  // namespace

SphericalCode read_code(std::istream& in) {
  std::string line;
  int line_no = 0;
  int dim = 0;
  std::size_t count = 0;
  CodeMode mode = CodeMode::Exact;
  bool have_header = false;
  std::vector<std::vector<Rational>> exact_pts;
  std::vector<std::vector<double>> float_pts;
  while (std::getline(in, line)) {
    ++line_no;
    auto toks = tokens_of(line);
    if (toks.empty() || toks.front().first.front() == '#') continue;
    if (!have_header) {
      if (toks.size() != 3) throw ParseError("code header must be 'dim N mode'", line_no, 1);
      try {
        dim = std::stoi(toks[0].first);
        count = static_cast<std::size_t>(std::stoul(toks[1].first));
      } catch (const std::exception&) {
        throw ParseError("code header must start with two integers", line_no, 1);
      }
      if (toks[2].first == "exact") {
        mode = CodeMode::Exact;
      } else if (toks[2].first == "float") {
        mode = CodeMode::Float;
      } else {
        throw ParseError("code mode must be 'exact' or 'float'", line_no, toks[2].second);
      }
      have_header = true;
      continue;
    }
    if (mode == CodeMode::Exact) {
      std::vector<Rational> p;
      for (const auto& [tok, col] : toks) {
        try {
          p.push_back(parse_rational(tok));
        } catch (const ParseError& e) {
          throw ParseError(e.what(), line_no, col);
        }
      }
      exact_pts.push_back(std::move(p));
    } else {
      std::vector<double> p;
      for (const auto& [tok, col] : toks) {
        try {
          std::size_t used = 0;
          p.push_back(std::stod(tok, &used));
          if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
          throw ParseError("malformed float coordinate '" + tok + "'", line_no, col);
        }
      }
      float_pts.push_back(std::move(p));
    }
  }
  if (!have_header) throw ParseError("empty code file");
  const std::size_t got = mode == CodeMode::Exact ? exact_pts.size() : float_pts.size();
  if (got != count) {
    throw ParseError("header announces " + std::to_string(count) + " points but file has " + std::to_string(got));
  }
  if (mode == CodeMode::Exact) return SphericalCode::exact(dim, std::move(exact_pts));
  return SphericalCode::floating(dim, std::move(float_pts));
}

SphericalCode read_code_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open code file '" + path + "'");
  return read_code(in);
}

void write_code(std::ostream& out, const SphericalCode& code) {
  out << code.dim() << ' ' << code.size() << ' ' << (code.mode() == CodeMode::Exact ? "exact" : "float") << '\n';
  if (code.mode() == CodeMode::Exact) {
    for (const auto& p : code.exact_points()) {
      for (std::size_t k = 0; k < p.size(); ++k) out << (k ? " " : "") << to_string(p[k]);
      out << '\n';
    }
    return;
  }
  std::ostringstream buf;
  buf << std::setprecision(17);
  for (const auto& p : code.float_points()) {
    for (std::size_t k = 0; k < p.size(); ++k) buf << (k ? " " : "") << p[k];
    buf << '\n';
  }
  out << buf.str();
}

}  // namespace spherebound
