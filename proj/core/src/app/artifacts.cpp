#include "reusemine/app/artifacts.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <memory>
#include <sstream>

#include <openssl/evp.h>

#include "reusemine/csv.hpp"
#include "reusemine/errors.hpp"

namespace reusemine::app {

namespace fs = std::filesystem;

std::string sha256_hex(std::string_view data) {
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 ||
        EVP_DigestFinal_ex(ctx.get(), digest, &length) != 1) {
        throw Error("SHA-256 computation failed");
    }
    std::ostringstream out;
    out << std::hex << std::setfill('0');
    for (unsigned int i = 0; i < length; ++i) out << std::setw(2) << static_cast<int>(digest[i]);
    return out.str();
}

void write_artifact(const std::string& output_dir, const std::string& relative_path, std::string_view text) {
    const fs::path path = fs::path(output_dir) / relative_path;
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    if (ec) throw ConfigError("cannot create directory '" + path.parent_path().string() + "': " + ec.message());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write '" + path.string() + "'");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw ConfigError("write to '" + path.string() + "' failed");
}

std::vector<std::string> list_artifacts(const std::string& dir) {
    std::vector<std::string> out;
    if (!fs::is_directory(dir)) return out;
    for (const auto& entry : fs::recursive_directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        const std::string rel = fs::relative(entry.path(), dir).generic_string();
        if (rel == kManifestName) continue;
        out.push_back(rel);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string render_manifest(const std::string& output_dir, std::string_view command, std::string_view config_json) {
    std::ostringstream out;
    out << "reusemine manifest 1\n";
    out << "command " << command << "\n";
    out << "config " << config_json << "\n";
    const auto files = list_artifacts(output_dir);
    out << "files " << files.size() << "\n";
    for (const std::string& rel : files) {
        const std::string text = read_text_file((fs::path(output_dir) / rel).string());
        out << sha256_hex(text) << "  " << text.size() << "  " << rel << "\n";
    }
    return out.str();
}

void write_manifest(const std::string& output_dir, std::string_view command, std::string_view config_json) {
    write_artifact(output_dir, std::string(kManifestName), render_manifest(output_dir, command, config_json));
}

std::vector<ManifestEntry> read_manifest_entries(const std::string& manifest_text) {
    std::vector<ManifestEntry> entries;
    std::istringstream in(manifest_text);
    std::string line;
    bool in_files = false;
    while (std::getline(in, line)) {
        if (!in_files) {
            in_files = line.rfind("files ", 0) == 0;
            continue;
        }
        std::istringstream fields(line);
        ManifestEntry e;
        fields >> e.sha256 >> e.bytes;
        fields >> std::ws;
        std::getline(fields, e.path);
        if (!e.path.empty()) entries.push_back(std::move(e));
    }
    return entries;
}

std::vector<std::string> verify_manifest(const std::string& output_dir) {
    const std::string text = read_text_file((fs::path(output_dir) / kManifestName).string());
    std::vector<std::string> bad;
    for (const ManifestEntry& e : read_manifest_entries(text)) {
        const fs::path p = fs::path(output_dir) / e.path;
        if (!fs::is_regular_file(p) || sha256_hex(read_text_file(p.string())) != e.sha256) bad.push_back(e.path);
    }
    return bad;
}

namespace {

std::string xml_escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&':
            out += "&amp;";
            break;
        case '<':
            out += "&lt;";
            break;
        case '>':
            out += "&gt;";
            break;
        case '"':
            out += "&quot;";
            break;
        default:
            out += c;
        }
    }
    return out;
}

std::string fixed(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

} // namespace

std::string render_series_svg(const std::string& title, const std::vector<double>& x, const std::vector<double>& y,
                              const std::string& x_label, const std::string& y_label) {
    constexpr double width = 640, height = 360;
    constexpr double left = 70, right = 20, top = 40, bottom = 50;
    const double plot_w = width - left - right;
    const double plot_h = height - top - bottom;

    double x_min = 0, x_max = 1, y_min = 0, y_max = 1;
    if (!x.empty()) {
        x_min = *std::min_element(x.begin(), x.end());
        x_max = *std::max_element(x.begin(), x.end());
        y_min = *std::min_element(y.begin(), y.end());
        y_max = *std::max_element(y.begin(), y.end());
    }
    if (x_max == x_min) x_max = x_min + 1;
    if (y_max == y_min) {
        y_min -= 0.5;
        y_max += 0.5;
    }
    auto px = [&](double v) { return left + (v - x_min) / (x_max - x_min) * plot_w; };
    auto py = [&](double v) { return top + plot_h - (v - y_min) / (y_max - y_min) * plot_h; };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << width / 2 << "\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">"
        << xml_escape(title) << "</text>\n";
    out << "<line x1=\"" << left << "\" y1=\"" << top + plot_h << "\" x2=\"" << left + plot_w << "\" y2=\""
        << top + plot_h << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << top + plot_h
        << "\" stroke=\"black\"/>\n";
    auto label = [&](double lx, double ly, const char* anchor, const std::string& text) {
        out << "<text x=\"" << fixed(lx) << "\" y=\"" << fixed(ly) << "\" text-anchor=\"" << anchor
            << "\" font-family=\"sans-serif\" font-size=\"11\">" << xml_escape(text) << "</text>\n";
    };
    label(left - 6, top + plot_h + 4, "end", format_number(y_min));
    label(left - 6, top + 8, "end", format_number(y_max));
    label(left, top + plot_h + 16, "middle", format_number(x_min));
    label(left + plot_w, top + plot_h + 16, "middle", format_number(x_max));
    label(left + plot_w / 2, height - 12, "middle", x_label);
    out << "<text x=\"16\" y=\"" << fixed(top + plot_h / 2) << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        << "font-size=\"11\" transform=\"rotate(-90 16 " << fixed(top + plot_h / 2) << ")\">" << xml_escape(y_label)
        << "</text>\n";
    if (!x.empty()) {
        out << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (i) out << ' ';
            out << fixed(px(x[i])) << ',' << fixed(py(y[i]));
        }
        out << "\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

} // namespace reusemine::app
