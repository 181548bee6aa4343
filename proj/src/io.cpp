#include "rankone/io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "rankone/errors.hpp"

namespace rankone {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void write_pointset(std::ostream& os, const PointSet& P,
                    const std::vector<std::string>& comments) {
  for (const auto& c : comments) os << "# " << c << "\n";
  os << P.d << " " << P.size() << "\n";
  for (const auto& row : P.points) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) os << " ";
      os << format_double(row[j]);
    }
    os << "\n";
  }
}

void write_pointset_file(const std::string& path, const PointSet& P,
                         const std::vector<std::string>& comments) {
  std::ofstream os(path);
  if (!os) throw ResourceError("cannot open for writing: " + path);
  write_pointset(os, P, comments);
  if (!os) throw ResourceError("write failed: " + path);
}

std::string detector_header(const SmoothnessClass& cls, double eps,
                            const DetectorParams& params) {
  std::ostringstream os;
  os << "regime=" << to_string(params.regime) << " r=" << cls.r
     << " M=" << format_double(cls.M) << " d=" << cls.d
     << " eps=" << format_double(eps) << " params=";
  os << "rho=" << format_double(params.rho);
  switch (params.regime) {
    case Regime::Moderate:
      os << ",delta=" << format_double(params.delta)
         << ",c_delta=" << format_double(params.c_delta_value)
         << ",d0=" << params.d0;
      break;
    case Regime::Small:
      os << ",gamma=" << format_double(params.gamma);
      break;
    case Regime::Large:
      break;
  }
  os << ",target_dispersion=" << format_double(params.target_dispersion);
  return os.str();
}

PointSet read_pointset(std::istream& is) {
  PointSet P;
  std::string line;
  long lineno = 0;
  long n = -1;
  std::vector<std::string> comments;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::size_t start = line.find_first_not_of(" \t", 1);
      comments.push_back(start == std::string::npos ? "" : line.substr(start));
      continue;
    }
    std::istringstream row(line);
    if (n < 0) {
      if (!(row >> P.d >> n) || P.d < 1 || n < 0)
        throw UsageError("pointset parse error at line " +
                         std::to_string(lineno) + ": expected \"d n\" header");
      std::string extra;
      if (row >> extra)
        throw UsageError("pointset parse error at line " +
                         std::to_string(lineno) + ": trailing tokens");
      P.points.reserve(std::size_t(n));
      continue;
    }
    std::vector<double> x(std::size_t(P.d));
    for (int j = 0; j < P.d; ++j)
      if (!(row >> x[std::size_t(j)]))
        throw UsageError("pointset parse error at line " +
                         std::to_string(lineno) + ": expected " +
                         std::to_string(P.d) + " coordinates");
    std::string extra;
    if (row >> extra)
      throw UsageError("pointset parse error at line " +
                       std::to_string(lineno) + ": trailing tokens");
    P.points.push_back(std::move(x));
  }
  if (n < 0) throw UsageError("pointset parse error: missing \"d n\" header");
  if (long(P.points.size()) != n)
    throw UsageError("pointset parse error: header says " + std::to_string(n) +
                     " points, file has " + std::to_string(P.points.size()));
  for (std::size_t i = 0; i < comments.size(); ++i) {
    if (i) P.provenance += "\n";
    P.provenance += comments[i];
  }
  return P;
}

PointSet read_pointset_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ResourceError("cannot open: " + path);
  return read_pointset(is);
}

}  // namespace rankone
