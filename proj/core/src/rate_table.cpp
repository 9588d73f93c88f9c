#include "cascade/rate_table.hpp"

#include <charconv>
#include <fstream>
#include <string>
#include <vector>

#include "cascade/csv.hpp"

namespace cascade {

namespace {

std::string at_line(const std::filesystem::path& path, int line) {
  return path.string() + ":" + std::to_string(line);
}

// Strict numeric parsing: the whole token must be consumed.
double parse_double(const std::string& tok, const std::filesystem::path& path, int line,
                    const char* what) {
  double value = 0.0;
  const char* begin = tok.data();
  const char* end = tok.data() + tok.size();
  const auto res = std::from_chars(begin, end, value);
  if (res.ec != std::errc{} || res.ptr != end)
    throw ParseError(at_line(path, line) + ": malformed " + std::string(what) + " '" + tok + "'");
  return value;
}

int parse_index(const std::string& tok, const std::filesystem::path& path, int line,
                const char* what) {
  int value = 0;
  const char* begin = tok.data();
  const char* end = tok.data() + tok.size();
  const auto res = std::from_chars(begin, end, value);
  if (res.ec != std::errc{} || res.ptr != end)
    throw ParseError(at_line(path, line) + ": malformed " + std::string(what) + " '" + tok + "'");
  return value;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  size_t start = 0;
  while (true) {
    const size_t pos = s.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(s.substr(start));
      break;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

// Header fields come in a fixed order: # N=.. mode=.. gamma_in=.. gamma_out=..
std::string header_value(const std::string& tok, const char* key,
                         const std::filesystem::path& path) {
  const std::string prefix = std::string(key) + "=";
  if (tok.rfind(prefix, 0) != 0)
    throw ParseError(at_line(path, 1) + ": expected '" + std::string(key) +
                     "=...' in header, got '" + tok + "'");
  return tok.substr(prefix.size());
}

}  // namespace

RateSet load_rate_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open rate table '" + path.string() + "'");

  std::string line;
  if (!std::getline(in, line))
    throw ParseError(at_line(path, 1) + ": empty file, header expected");

  // Header
  std::vector<std::string> tok;
  for (const auto& piece : split(line, ' '))
    if (!piece.empty()) tok.push_back(piece);
  if (tok.size() != 5 || tok[0] != "#")
    throw ParseError(at_line(path, 1) +
                     ": header must be '# N=<int> mode=<uni|rec> gamma_in=<float> gamma_out=<float>'");
  const int n = parse_index(header_value(tok[1], "N", path), path, 1, "N");
  if (n < 1) throw ParseError(at_line(path, 1) + ": N must be >= 1");
  const std::string mode_tok = header_value(tok[2], "mode", path);
  CouplingMode mode;
  if (mode_tok == "uni") {
    mode = CouplingMode::unidirectional;
  } else if (mode_tok == "rec") {
    mode = CouplingMode::reciprocal;
  } else {
    throw ParseError(at_line(path, 1) + ": mode must be 'uni' or 'rec', got '" + mode_tok + "'");
  }
  const double gamma_in = parse_double(header_value(tok[3], "gamma_in", path), path, 1, "gamma_in");
  const double gamma_out = parse_double(header_value(tok[4], "gamma_out", path), path, 1, "gamma_out");

  RateSet rs;
  rs.n_atoms = n;
  rs.gamma = RealMatrix::Zero(n, n);
  rs.g = RealMatrix::Zero(n, n);
  rs.gamma_in = gamma_in;
  rs.gamma_out = gamma_out;
  rs.mode = mode;

  std::vector<std::vector<bool>> seen(static_cast<size_t>(n), std::vector<bool>(static_cast<size_t>(n), false));
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    if (fields.size() != 4)
      throw ParseError(at_line(path, line_no) + ": expected 'i,j,gamma,g', got " +
                       std::to_string(fields.size()) + " fields");
    const int i = parse_index(fields[0], path, line_no, "row index i");
    const int j = parse_index(fields[1], path, line_no, "column index j");
    if (i < 1 || i > n || j < 1 || j > n)
      throw ParseError(at_line(path, line_no) + ": index (" + std::to_string(i) + "," +
                       std::to_string(j) + ") outside N=" + std::to_string(n));
    if (seen[static_cast<size_t>(i - 1)][static_cast<size_t>(j - 1)])
      throw ParseError(at_line(path, line_no) + ": duplicate entry (" + std::to_string(i) + "," +
                       std::to_string(j) + ")");
    seen[static_cast<size_t>(i - 1)][static_cast<size_t>(j - 1)] = true;

    const double gamma_v = parse_double(fields[2], path, line_no, "gamma");
    const double g_v = parse_double(fields[3], path, line_no, "g");
    if (i == j) {
      if (!(gamma_v > 0.0))
        throw ParseError(at_line(path, line_no) + ": local decay gamma(" + std::to_string(i) +
                         "," + std::to_string(i) + ") must be > 0, got " + fields[2]);
      if (g_v != 0.0)
        throw ParseError(at_line(path, line_no) + ": diagonal rows must have g=0, got " + fields[3]);
    }
    rs.gamma(i - 1, j - 1) = gamma_v;
    rs.g(i - 1, j - 1) = g_v;
  }

  for (int i = 0; i < n; ++i)
    if (!seen[static_cast<size_t>(i)][static_cast<size_t>(i)])
      throw ParseError(path.string() + ": missing diagonal entry (" + std::to_string(i + 1) +
                       "," + std::to_string(i + 1) + ")");

  if (mode == CouplingMode::unidirectional) {
    // Bias is implied by which triangle the file populates.
    bool upper = false, lower = false;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i == j || (rs.gamma(i, j) == 0.0 && rs.g(i, j) == 0.0)) continue;
        (i < j ? upper : lower) = true;
      }
    }
    if (upper && lower)
      throw ParseError(path.string() +
                       ": unidirectional table populates both triangles; one propagation direction only");
    rs.bias = lower ? BiasDirection::upstream : BiasDirection::downstream;
  } else {
    const double asym = (rs.gamma - rs.gamma.transpose()).cwiseAbs().maxCoeff() +
                        (rs.g - rs.g.transpose()).cwiseAbs().maxCoeff();
    if (asym > 0.0)
      throw ParseError(path.string() +
                       ": reciprocal table is asymmetric; list both (i,j) and (j,i) with equal rates");
  }

  rs.validate_shape();
  return rs;
}

void save_rate_table(const RateSet& rates, const std::filesystem::path& path) {
  rates.validate_shape();
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");

  out << "# N=" << rates.n_atoms
      << " mode=" << (rates.mode == CouplingMode::unidirectional ? "uni" : "rec")
      << " gamma_in=" << format_double(rates.gamma_in)
      << " gamma_out=" << format_double(rates.gamma_out) << "\n";

  for (int i = 0; i < rates.n_atoms; ++i) {
    for (int j = 0; j < rates.n_atoms; ++j) {
      const bool keep = i == j || rates.gamma(i, j) != 0.0 || rates.g(i, j) != 0.0;
      if (!keep) continue;
      out << (i + 1) << ',' << (j + 1) << ',' << format_double(rates.gamma(i, j)) << ','
          << format_double(rates.g(i, j)) << "\n";
    }
  }
  if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
}

}  // namespace cascade
