#pragma once

#include <functional>
#include <string>

namespace catamp {

using WarningSink = std::function<void(const std::string&)>;

/// Emit a non-fatal diagnostic (e.g. truncation tail above tolerance).
/// The default sink writes to stderr; thread safe.
void warn(const std::string& message);

/// Replace the sink. Passing an empty function restores the default.
void set_warning_sink(WarningSink sink);

/// Number of warnings emitted since start-up.
long warning_count();

}  // namespace catamp
