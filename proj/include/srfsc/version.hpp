#pragma once

namespace srfsc {

inline constexpr const char* library_version = "1.0.0";
// identity of the bundled reliability order (3GPP NR polar sequence, N = 1024)
inline constexpr const char* reliability_asset_version = "nr-1024/r1";

}
