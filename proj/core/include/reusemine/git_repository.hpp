#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace reusemine {

struct FileDelta {
    std::string path;
    std::size_t added = 0;
    std::size_t deleted = 0;
    bool binary = false;

    bool operator==(const FileDelta&) const = default;
};

struct RawCommit {
    std::string id;
    std::int64_t timestamp = 0;  // committer time, seconds since the epoch
    std::vector<FileDelta> deltas;
};

struct TreeBlob {
    std::string path;
    std::string blob_id;
};

// Read-only access to a git repository through the git command-line client.
class GitRepository {
public:
    // Throws RepoAccessError when `path` is not inside a git work tree or
    // bare repository.
    explicit GitRepository(std::string path);

    const std::string& path() const { return path_; }

    // Full commit id for a revision, or nullopt when it does not resolve.
    std::optional<std::string> resolve(const std::string& revision) const;
    bool has_commits() const;

    // First-parent history of `revision` (optionally excluding everything
    // reachable from `exclude`), oldest first. Merge commits carry their
    // diff against the first parent.
    std::vector<RawCommit> first_parent_log(const std::string& revision, const std::optional<std::string>& exclude) const;

    // Blobs of the commit's tree whose path ends in `suffix`, sorted by path.
    std::vector<TreeBlob> list_tree(const std::string& commit, const std::string& suffix) const;

    // Contents of the given blobs.
    std::map<std::string, std::string> read_blobs(const std::vector<std::string>& blob_ids) const;

private:
    std::string run(const std::vector<std::string>& args, const std::string& input = {}) const;

    std::string path_;
};

} // namespace reusemine
