#pragma once

#include <ostream>
#include <string>

#include <json.hpp>

namespace qcurve::cli {

enum class Format { Json, Csv, Plain };

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitUsage = 2;

/// Serializes a report. JSON keys are sorted; csv and plain flatten nested
/// keys as a.b[0].c.
std::string render(const nlohmann::json& report, Format format);

/// Entry point of the qcurve tool. Results go to `out`; usage text, warnings
/// and the timing record go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qcurve::cli
