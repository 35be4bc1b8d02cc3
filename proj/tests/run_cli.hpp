#pragma once

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace pa::testing {

struct CliRun {
    int code = -1;
    std::string out;
};

// Runs the CLI through the shell from the data directory; stderr merged when asked.
inline CliRun run_cli(const std::string& args, bool merge_stderr = false) {
    const std::string cmd = std::string("cd '") + PA_DATA_DIR + "' && '" + PA_CLI + "' " + args +
                            (merge_stderr ? " 2>&1" : " 2>/dev/null");
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) throw std::runtime_error("popen failed for: " + cmd);
    CliRun r;
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

inline std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

inline std::string golden(const std::string& name) { return read_text(std::string(PA_GOLDEN_DIR) + "/" + name); }

}  // namespace pa::testing
