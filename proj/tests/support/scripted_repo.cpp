#include "scripted_repo.hpp"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <unistd.h>

namespace reusemine::testing {

namespace fs = std::filesystem;

TempDir::TempDir(const std::string& tag) {
    static int counter = 0;
    const fs::path p = fs::temp_directory_path() /
                       ("reusemine-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(++counter));
    fs::remove_all(p);
    fs::create_directories(p);
    path_ = p.string();
}

TempDir::~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
}

std::string git(const std::string& dir, const std::string& args, std::int64_t timestamp) {
    const std::string date = std::to_string(timestamp) + " +0000";
    const std::string cmd = "cd '" + dir + "' && GIT_CONFIG_NOSYSTEM=1 GIT_CONFIG_GLOBAL=/dev/null HOME=/nonexistent " +
                            "GIT_AUTHOR_DATE='" + date + "' GIT_COMMITTER_DATE='" + date + "' " +
                            "git -c user.name=Scripted -c user.email=scripted@example.invalid -c commit.gpgsign=false " +
                            "-c init.defaultBranch=main " + args + " 2>&1";
    FILE* pipe = ::popen(cmd.c_str(), "r");
    if (!pipe) throw std::runtime_error("cannot run git");
    std::string out;
    std::array<char, 4096> buf{};
    while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
    const int status = ::pclose(pipe);
    if (status != 0) throw std::runtime_error("git " + args + " failed: " + out);
    return out;
}

void write_file(const std::string& path, const std::string& text) {
    fs::create_directories(fs::path(path).parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << text;
}

ScriptedRepo::ScriptedRepo(std::string dir) : dir_(std::move(dir)) {
    fs::create_directories(dir_);
    git(dir_, "init -q");
}

void ScriptedRepo::flush(const std::string& path) {
    const JavaFile& f = java_.at(path);
    std::string text;
    for (const auto& l : f.header) text += l + "\n";
    for (const auto& l : f.body) text += l + "\n";
    text += "}\n";
    write_file(dir_ + "/" + path, text);
}

void ScriptedRepo::add_java(const std::string& path, std::vector<std::string> header, std::vector<std::string> body) {
    added_ += header.size() + body.size() + 1;
    java_[path] = JavaFile{std::move(header), std::move(body)};
    flush(path);
}

void ScriptedRepo::append(const std::string& path, const std::vector<std::string>& lines) {
    auto& body = java_.at(path).body;
    body.insert(body.end(), lines.begin(), lines.end());
    added_ += lines.size();
    flush(path);
}

void ScriptedRepo::drop_last(const std::string& path, std::size_t count) {
    auto& body = java_.at(path).body;
    if (count > body.size()) throw std::logic_error("drop_last beyond body");
    body.resize(body.size() - count);
    deleted_ += count;
    flush(path);
}

void ScriptedRepo::remove(const std::string& path) {
    const JavaFile& f = java_.at(path);
    deleted_ += f.header.size() + f.body.size() + 1;
    java_.erase(path);
    fs::remove(dir_ + "/" + path);
}

void ScriptedRepo::write_other(const std::string& path, const std::string& text) { write_file(dir_ + "/" + path, text); }

std::string ScriptedRepo::commit(const std::string& message, std::int64_t timestamp) {
    git(dir_, "add -A", timestamp);
    git(dir_, "commit -q --allow-empty -m '" + message + "'", timestamp);
    added_ = 0;
    deleted_ = 0;
    std::string id = git(dir_, "rev-parse HEAD", timestamp);
    while (!id.empty() && (id.back() == '\n' || id.back() == '\r')) id.pop_back();
    return id;
}

MiningScenario build_mining_scenario(const std::string& dir) {
    ScriptedRepo repo(dir);
    MiningScenario s;
    std::int64_t t = 1700000000;
    auto done = [&](const std::string& msg) {
        s.java_added.push_back(repo.pending_java_added());
        s.java_deleted.push_back(repo.pending_java_deleted());
        s.commits.push_back(repo.commit(msg, t));
        t += 60;
    };

    // 0
    repo.add_java("app/Base.java", {"package app;", "public class Base {"},
                  {"    public void a() {}", "    public void b() {}"});
    repo.add_java("app/Engine.java", {"package app;", "public class Engine {"}, {"    public void start() {}"});
    repo.write_other("README.md", "scripted\n");
    done("base and engine");
    // 1
    repo.add_java("app/Worker.java", {"package app;", "public class Worker extends Base {"}, {"    void run() { a(); }"});
    done("worker");
    // 2
    repo.append("app/Worker.java", {"    void more() { b(); }"});
    repo.write_other("README.md", "scripted\nmore\n");
    done("worker calls b");
    // 3
    repo.add_java("app/Shape.java", {"package app;", "public interface Shape {"}, {});
    repo.add_java("app/Circle.java", {"package app;", "public class Circle implements Shape {"},
                  {"    private Engine engine = new Engine();", "    void spin() { engine.start(); }"});
    done("shape and circle");
    // 4
    repo.append("app/Base.java", {"    public void c() {}", "    public void d() {}"});
    done("base grows");
    // 5
    repo.drop_last("app/Worker.java", 1);
    repo.append("app/Worker.java", {"    void other() { c(); d(); }"});
    done("worker switches calls");
    // 6
    repo.write_other("README.md", "scripted\nmore\ndocs only\n");
    done("docs only");
    // 7
    repo.add_java("app/Helper.java", {"package app;", "public class Helper {"}, {"    public void help() {}"});
    done("helper");
    // 8
    repo.append("app/Circle.java", {"    private Helper helper = new Helper();", "    void assist() { helper.help(); }"});
    done("circle delegates to helper");
    // 9
    repo.drop_last("app/Base.java", 1);
    done("base shrinks");
    // 10
    repo.add_java("app/Broken.java", {"package app;", "class Broken {"}, {"    void x( {"});
    done("broken file");
    // 11
    repo.remove("app/Broken.java");
    done("remove broken file");
    // 12
    repo.append("app/Engine.java", {"    public void stop() {}"});
    done("engine stop");
    // 13
    repo.append("app/Circle.java", {"    void halt() { engine.stop(); }"});
    done("circle halts");
    // 14
    repo.write_other("docs/notes.txt", "notes\n");
    repo.add_java("app/Square.java", {"package app;", "public class Square implements Shape {"}, {});
    done("square");
    // 15
    repo.append("app/Square.java", {"    void area() {}", "    void perimeter() {}", "    void scale() {}"});
    done("square methods");
    // 16
    repo.drop_last("app/Square.java", 2);
    done("square trims");
    // 17
    repo.append("app/Worker.java", {"    void third() { a(); b(); }"});
    done("worker third");
    // 18
    repo.remove("app/Helper.java");
    done("drop helper");
    // 19
    repo.append("app/Base.java", {"    public void e() {}"});
    repo.drop_last("app/Circle.java", 1);
    done("base e, circle loses halt");

    // BUG-1 lives on [3, 8), BUG-2 on [5, 12) with abbreviated ids, BUG-3
    // is active from the start and fixed at 6.
    s.ledger_csv = "bug_id,introducing_commit,fixing_commit\n";
    s.ledger_csv += "BUG-1," + s.commits[3] + "," + s.commits[8] + "\n";
    s.ledger_csv += "BUG-2," + s.commits[5].substr(0, 10) + "," + s.commits[12].substr(0, 10) + "\n";
    s.ledger_csv += "BUG-3,," + s.commits[6] + "\n";

    s.hand_active = {1, 1, 1, 2, 2, 3, 2, 2, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0};
    s.hand_labels = {"stable",   "stable", "increase", "stable", "increase", "decrease", "stable",
                     "decrease", "stable", "stable",   "stable", "decrease", "stable",   "stable",
                     "stable",   "stable", "stable",   "stable", "stable"};
    s.hand_churn = {4, 1, 8, 2, 2, 0, 4, 2, 1, 4, 4, 1, 1, 3, 3, 2, 1, 4, 2};
    return s;
}

} // namespace reusemine::testing
