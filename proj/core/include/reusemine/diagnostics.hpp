#pragma once

#include <string>
#include <vector>

namespace reusemine {

struct Diagnostic {
    enum class Level { Warning, Error };
    Level level = Level::Warning;
    std::string message;

    bool operator==(const Diagnostic&) const = default;
};

using DiagnosticLog = std::vector<Diagnostic>;

inline void warn(DiagnosticLog& log, std::string message) {
    log.push_back({Diagnostic::Level::Warning, std::move(message)});
}

inline const char* level_name(Diagnostic::Level level) {
    return level == Diagnostic::Level::Error ? "error" : "warning";
}

} // namespace reusemine
