#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "rankone/detectors.hpp"
#include "rankone/pointset.hpp"
#include "rankone/smoothness.hpp"

namespace rankone {

// Shortest round-trip decimal with up to 17 significant digits.
std::string format_double(double x);

// Text format: optional '#' comment lines, then "d n", then n rows of d
// space-separated coordinates.
void write_pointset(std::ostream& os, const PointSet& P,
                    const std::vector<std::string>& comments = {});
void write_pointset_file(const std::string& path, const PointSet& P,
                         const std::vector<std::string>& comments = {});

// "# regime=... r=... M=... d=... eps=... params=..." header for detector
// files.
std::string detector_header(const SmoothnessClass& cls, double eps,
                            const DetectorParams& params);

// Parses the text format; comment lines are collected into provenance.
// Malformed input raises UsageError with a line diagnostic.
PointSet read_pointset(std::istream& is);
PointSet read_pointset_file(const std::string& path);

}  // namespace rankone
