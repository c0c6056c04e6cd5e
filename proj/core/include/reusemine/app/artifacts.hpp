#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace reusemine::app {

std::string sha256_hex(std::string_view data);

// Writes `text` to output_dir/relative_path, creating parent directories.
void write_artifact(const std::string& output_dir, const std::string& relative_path, std::string_view text);

// Every regular file under `dir` (relative, '/'-separated, sorted), leaving
// out the manifest itself.
std::vector<std::string> list_artifacts(const std::string& dir);

inline constexpr std::string_view kManifestName = "manifest.txt";

// Plain-text manifest: the command, the effective config as one JSON line,
// then one `sha256  bytes  path` line per artifact.
std::string render_manifest(const std::string& output_dir, std::string_view command, std::string_view config_json);
void write_manifest(const std::string& output_dir, std::string_view command, std::string_view config_json);

struct ManifestEntry {
    std::string sha256;
    std::size_t bytes = 0;
    std::string path;
};

// Re-hashes every listed file and returns the paths whose content changed
// or disappeared.
std::vector<std::string> verify_manifest(const std::string& output_dir);
std::vector<ManifestEntry> read_manifest_entries(const std::string& manifest_text);

// Line chart of y against x with min/max axis labels.
std::string render_series_svg(const std::string& title, const std::vector<double>& x, const std::vector<double>& y,
                              const std::string& x_label, const std::string& y_label);

} // namespace reusemine::app
