#pragma once

// Primitive polynomials and initial direction numbers for the base-2 digital
// sequence, dimensions 2..32.  Values are the first 31 rows of the
// Joe--Kuo table "new-joe-kuo-6.21201":
//   S. Joe and F. Y. Kuo, Constructing Sobol sequences with better
//   two-dimensional projections, SIAM J. Sci. Comput. 30, 2635-2654 (2008).
//   https://web.maths.unsw.edu.au/~fkuo/sobol/
// poly is the binary-encoded primitive polynomial (including leading and
// trailing 1), m are the initial odd direction integers m_1..m_s.

#include <cstdint>

namespace rankone::detail {

inline constexpr int kSobolMaxDim = 32;

struct SobolRow {
  std::uint32_t poly;
  int degree;
  std::uint32_t m[7];
};

inline constexpr SobolRow kSobolRows[31] = {
    {3, 1, {1, 0, 0, 0, 0, 0, 0}},
    {7, 2, {1, 3, 0, 0, 0, 0, 0}},
    {11, 3, {1, 3, 1, 0, 0, 0, 0}},
    {13, 3, {1, 1, 1, 0, 0, 0, 0}},
    {19, 4, {1, 1, 3, 3, 0, 0, 0}},
    {25, 4, {1, 3, 5, 13, 0, 0, 0}},
    {37, 5, {1, 1, 5, 5, 17, 0, 0}},
    {41, 5, {1, 1, 5, 5, 5, 0, 0}},
    {47, 5, {1, 1, 7, 11, 19, 0, 0}},
    {55, 5, {1, 1, 5, 1, 1, 0, 0}},
    {59, 5, {1, 1, 1, 3, 11, 0, 0}},
    {61, 5, {1, 3, 5, 5, 31, 0, 0}},
    {67, 6, {1, 3, 3, 9, 7, 49, 0}},
    {91, 6, {1, 1, 1, 15, 21, 21, 0}},
    {97, 6, {1, 3, 1, 13, 27, 49, 0}},
    {103, 6, {1, 1, 1, 15, 7, 5, 0}},
    {109, 6, {1, 3, 1, 15, 13, 25, 0}},
    {115, 6, {1, 1, 5, 5, 19, 61, 0}},
    {131, 7, {1, 3, 7, 11, 23, 15, 103}},
    {137, 7, {1, 3, 7, 13, 13, 15, 69}},
    {143, 7, {1, 1, 3, 13, 7, 35, 63}},
    {145, 7, {1, 3, 5, 9, 1, 25, 53}},
    {157, 7, {1, 3, 1, 13, 9, 35, 107}},
    {167, 7, {1, 3, 1, 5, 27, 61, 31}},
    {171, 7, {1, 1, 5, 11, 19, 41, 61}},
    {185, 7, {1, 3, 5, 3, 3, 13, 69}},
    {191, 7, {1, 1, 7, 13, 1, 19, 1}},
    {193, 7, {1, 3, 7, 5, 13, 19, 59}},
    {203, 7, {1, 1, 3, 9, 25, 29, 41}},
    {211, 7, {1, 3, 5, 13, 23, 1, 55}},
    {213, 7, {1, 3, 7, 3, 13, 59, 17}},
};

}  // namespace rankone::detail
