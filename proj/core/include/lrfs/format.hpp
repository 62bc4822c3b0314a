#pragma once

#include <string>

namespace lrfs {

/// Shortest round-trippable decimal text for a double ("inf", "-inf", "nan"
/// for non-finite values).
[[nodiscard]] std::string fmt_double(double v);

}  // namespace lrfs
