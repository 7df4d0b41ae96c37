#pragma once

#include <array>
#include <cstdint>
#include <string_view>
#include <utility>

namespace published {

// kappa_d for d = 2..51 as printed, digit groups separated by '.
// The d = 16 entry carries irregular grouping in print.
inline constexpr std::array<std::pair<std::uint64_t, std::string_view>, 50> kKappaTable = {{
    {2, "227'950"},         {3, "762'120"},         {4, "1'910'900"},
    {5, "3'705'990"},       {6, "6'414'480"},       {7, "9'506'770"},
    {8, "15'169'800"},      {9, "21'580'650"},      {10, "29'582'750"},
    {11, "34'729'310"},     {12, "51'059'232"},     {13, "64'900'550"},
    {14, "81'031'650"},     {15, "93'549'750"},     {16, "12'0877'440"},
    {17, "144'970'050"},    {18, "172'052'550"},    {19, "190'261'896"},
    {20, "208'224'480"},    {21, "272'127'030"},    {22, "313'911'312"},
    {23, "337'307'880"},    {24, "407'477'400"},    {25, "460'516'250"},
    {26, "486'298'150"},    {27, "545'455'944"},    {28, "646'820'300"},
    {29, "675'761'016"},    {30, "795'443'250"},    {31, "825'322'920"},
    {32, "965'248'800"},    {33, "1'058'536'050"},  {34, "1'157'648'150"},
    {35, "1'110'432'750"},  {36, "1'373'988'960"},  {37, "1'491'697'550"},
    {38, "1'425'958'094"},  {39, "1'642'680'936"},  {40, "1'884'442'560"},
    {41, "2'022'423'810"},  {42, "2'181'407'550"},  {43, "2'201'405'640"},
    {44, "2'507'943'900"},  {45, "2'682'771'750"},  {46, "2'865'437'520"},
    {47, "2'874'316'584"},  {48, "3'255'610'800"},  {49, "3'463'263'650"},
    {50, "3'679'563'750"},  {51, "3'665'785'650"},
}};

/// Strips the separators.
inline std::uint64_t normalize(std::string_view printed) {
  std::uint64_t v = 0;
  for (const char c : printed) {
    if (c >= '0' && c <= '9') v = v * 10 + static_cast<std::uint64_t>(c - '0');
  }
  return v;
}

}  // namespace published
