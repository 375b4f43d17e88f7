#pragma once

namespace qcurve {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace qcurve
