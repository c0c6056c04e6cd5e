#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace reusemine::testing {

// A scratch directory removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag);
    ~TempDir();
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::string& path() const { return path_; }
    std::string operator/(const std::string& rel) const { return path_ + "/" + rel; }

private:
    std::string path_;
};

// Runs git in `dir` with a fixed identity, no user or system config and
// the given author/committer time. Returns stdout; throws on failure.
std::string git(const std::string& dir, const std::string& args, std::int64_t timestamp = 1700000000);

void write_file(const std::string& path, const std::string& text);

// Builds a repository one commit at a time. Java files are kept as a
// header, a body and a closing brace so that edits are pure line inserts
// or deletions, and the expected numstat follows from the script alone.
class ScriptedRepo {
public:
    explicit ScriptedRepo(std::string dir);

    void add_java(const std::string& path, std::vector<std::string> header, std::vector<std::string> body);
    void append(const std::string& path, const std::vector<std::string>& lines);
    void drop_last(const std::string& path, std::size_t count);
    void remove(const std::string& path);
    void write_other(const std::string& path, const std::string& text);

    // Commits the pending edits and returns the commit id.
    std::string commit(const std::string& message, std::int64_t timestamp);

    std::size_t pending_java_added() const { return added_; }
    std::size_t pending_java_deleted() const { return deleted_; }
    const std::string& dir() const { return dir_; }

private:
    struct JavaFile {
        std::vector<std::string> header;
        std::vector<std::string> body;
    };
    void flush(const std::string& path);

    std::string dir_;
    std::map<std::string, JavaFile> java_;
    std::size_t added_ = 0;
    std::size_t deleted_ = 0;
};

// The 20-commit history shared by the mining tests and the acceptance run.
struct MiningScenario {
    std::vector<std::string> commits;           // oldest first
    std::vector<std::size_t> java_added;        // per commit, from the script
    std::vector<std::size_t> java_deleted;
    std::string ledger_csv;                     // three bugs

    // Worked out by hand from the script and the ledger intervals.
    std::vector<std::size_t> hand_active;       // per commit
    std::vector<std::string> hand_labels;       // per consecutive pair
    std::vector<std::size_t> hand_churn;        // per consecutive pair
};

MiningScenario build_mining_scenario(const std::string& dir);

} // namespace reusemine::testing
