#include "reusemine/git_repository.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>

#include "process.hpp"
#include "reusemine/errors.hpp"

namespace reusemine {

namespace {

std::string trim(std::string s) {
    while (!s.empty() && (s.back() == '\n' || s.back() == '\r' || s.back() == ' ')) s.pop_back();
    return s;
}

std::size_t parse_count(std::string_view text) {
    std::size_t value = 0;
    std::from_chars(text.data(), text.data() + text.size(), value);
    return value;
}

bool ends_with(std::string_view s, std::string_view suffix) {
    return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

} // namespace

GitRepository::GitRepository(std::string path) : path_(std::move(path)) {
    std::error_code ec;
    if (!std::filesystem::is_directory(path_, ec)) {
        throw RepoAccessError("repository path '" + path_ + "' is not a directory");
    }
    const auto r = detail::run_process({"git", "-C", path_, "rev-parse", "--git-dir"});
    if (r.exit_status != 0) {
        throw RepoAccessError("'" + path_ + "' is not a git repository: " + trim(r.err));
    }
}

std::string GitRepository::run(const std::vector<std::string>& args, const std::string& input) const {
    std::vector<std::string> argv{"git", "-C", path_, "-c", "core.quotePath=false", "-c", "log.showSignature=false"};
    argv.insert(argv.end(), args.begin(), args.end());
    auto r = detail::run_process(argv, input);
    if (r.exit_status != 0) {
        std::string cmd = "git";
        for (const std::string& a : args) cmd += " " + a;
        throw RepoAccessError("'" + cmd + "' failed in " + path_ + ": " + trim(r.err));
    }
    return std::move(r.out);
}

std::optional<std::string> GitRepository::resolve(const std::string& revision) const {
    const auto r = detail::run_process(
        {"git", "-C", path_, "rev-parse", "--verify", "--quiet", "--end-of-options", revision + "^{commit}"});
    if (r.exit_status != 0) return std::nullopt;
    return trim(r.out);
}

bool GitRepository::has_commits() const {
    const auto r = detail::run_process({"git", "-C", path_, "rev-list", "--all", "--max-count=1"});
    return r.exit_status == 0 && !trim(r.out).empty();
}

std::vector<RawCommit> GitRepository::first_parent_log(const std::string& revision,
                                                       const std::optional<std::string>& exclude) const {
    std::vector<std::string> args{"log",          "--first-parent", "--reverse",   "--no-renames",
                                  "--no-color",   "--no-ext-diff",  "--numstat",   "--diff-merges=first-parent",
                                  "-z",           "--format=%x01%H%x02%ct"};
    args.push_back(exclude ? *exclude + ".." + revision : revision);
    args.push_back("--");
    const std::string out = run(args);

    std::vector<RawCommit> commits;
    std::size_t pos = 0;
    while ((pos = out.find('\x01', pos)) != std::string::npos) {
        const std::size_t next = out.find('\x01', pos + 1);
        const std::string_view chunk = std::string_view(out).substr(pos + 1, next == std::string::npos ? std::string::npos : next - pos - 1);
        pos = next == std::string::npos ? out.size() : next;

        const std::size_t header_end = chunk.find('\0');
        const std::string_view header = chunk.substr(0, header_end);
        const std::size_t sep = header.find('\x02');
        RawCommit c;
        c.id = std::string(header.substr(0, sep));
        if (sep != std::string_view::npos) {
            const std::string_view ts = header.substr(sep + 1);
            std::from_chars(ts.data(), ts.data() + ts.size(), c.timestamp);
        }

        std::string_view rest = header_end == std::string_view::npos ? std::string_view() : chunk.substr(header_end + 1);
        while (!rest.empty()) {
            const std::size_t end = rest.find('\0');
            std::string_view entry = rest.substr(0, end);
            rest = end == std::string_view::npos ? std::string_view() : rest.substr(end + 1);
            while (!entry.empty() && entry.front() == '\n') entry.remove_prefix(1);
            if (entry.empty()) continue;
            const std::size_t t1 = entry.find('\t');
            const std::size_t t2 = t1 == std::string_view::npos ? t1 : entry.find('\t', t1 + 1);
            if (t2 == std::string_view::npos) continue;
            FileDelta d;
            const std::string_view added = entry.substr(0, t1);
            const std::string_view deleted = entry.substr(t1 + 1, t2 - t1 - 1);
            d.path = std::string(entry.substr(t2 + 1));
            d.binary = added == "-" || deleted == "-";
            if (!d.binary) {
                d.added = parse_count(added);
                d.deleted = parse_count(deleted);
            }
            c.deltas.push_back(std::move(d));
        }
        commits.push_back(std::move(c));
    }
    return commits;
}

std::vector<TreeBlob> GitRepository::list_tree(const std::string& commit, const std::string& suffix) const {
    const std::string out = run({"ls-tree", "-r", "-z", "--full-tree", commit});
    std::vector<TreeBlob> blobs;
    std::size_t pos = 0;
    while (pos < out.size()) {
        std::size_t end = out.find('\0', pos);
        if (end == std::string::npos) end = out.size();
        const std::string_view entry = std::string_view(out).substr(pos, end - pos);
        pos = end + 1;
        // "<mode> SP <type> SP <object> TAB <path>"
        const std::size_t tab = entry.find('\t');
        if (tab == std::string_view::npos) continue;
        const std::string_view meta = entry.substr(0, tab);
        const std::size_t s1 = meta.find(' ');
        const std::size_t s2 = meta.find(' ', s1 + 1);
        if (s1 == std::string_view::npos || s2 == std::string_view::npos) continue;
        if (meta.substr(s1 + 1, s2 - s1 - 1) != "blob") continue;
        const std::string_view path = entry.substr(tab + 1);
        if (!ends_with(path, suffix)) continue;
        blobs.push_back({std::string(path), std::string(meta.substr(s2 + 1))});
    }
    std::sort(blobs.begin(), blobs.end(), [](const TreeBlob& a, const TreeBlob& b) { return a.path < b.path; });
    return blobs;
}

std::map<std::string, std::string> GitRepository::read_blobs(const std::vector<std::string>& blob_ids) const {
    std::map<std::string, std::string> contents;
    if (blob_ids.empty()) return contents;
    std::string request;
    for (const std::string& id : blob_ids) request += id + "\n";
    const std::string out = run({"cat-file", "--batch"}, request);

    std::size_t pos = 0;
    for (const std::string& id : blob_ids) {
        const std::size_t eol = out.find('\n', pos);
        if (eol == std::string::npos) break;
        const std::string_view header = std::string_view(out).substr(pos, eol - pos);
        pos = eol + 1;
        // "<object> SP <type> SP <size>" or "<object> SP missing"
        const std::size_t last_space = header.rfind(' ');
        if (header.ends_with(" missing") || last_space == std::string_view::npos) continue;
        const std::size_t size = parse_count(header.substr(last_space + 1));
        contents[id] = out.substr(pos, size);
        pos += size + 1;
    }
    return contents;
}

} // namespace reusemine
