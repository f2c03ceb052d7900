#pragma once

// Runs the k3lat executable on the recorded command lines under golden/cases
// and compares a transcript (stdout, stderr, exit status) byte for byte.
// Setting K3LAT_UPDATE_GOLDEN=1 rewrites the expected files instead.

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace k3lat::golden {

namespace fs = std::filesystem;

struct Case {
  std::string name;
  std::string command;  // arguments after the program name, shell syntax
  fs::path expected;
};

// keeps gtest from dumping the raw bytes of a Case into test names
inline void PrintTo(const Case& c, std::ostream* os) { *os << c.name; }

inline std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::vector<Case> list_cases(const fs::path& dir) {
  std::vector<Case> out;
  for (const auto& entry : fs::directory_iterator(dir / "cases")) {
    if (entry.path().extension() != ".cmd") continue;
    std::string cmd = read_file(entry.path());
    while (!cmd.empty() && (cmd.back() == '\n' || cmd.back() == '\r')) cmd.pop_back();
    fs::path expected = entry.path();
    expected.replace_extension(".expected");
    out.push_back({entry.path().stem().string(), cmd, expected});
  }
  std::sort(out.begin(), out.end(), [](const Case& a, const Case& b) { return a.name < b.name; });
  return out;
}

inline std::string quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

inline std::string transcript(const std::string& binary, const fs::path& inputs, const Case& c) {
  const fs::path err_file =
      fs::temp_directory_path() / ("k3lat-golden-" + std::to_string(::getpid()) + "-" + c.name + ".err");
  const std::string shell =
      "cd " + quote(inputs.string()) + " && " + quote(binary) + " " + c.command + " 2>" + quote(err_file.string());
  FILE* pipe = ::popen(shell.c_str(), "r");
  if (!pipe) throw std::runtime_error("cannot start " + binary);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  const int status = ::pclose(pipe);
  const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  const std::string err = read_file(err_file);
  fs::remove(err_file);
  if (!err.empty()) out += "[stderr]\n" + err;
  out += "[exit " + std::to_string(code) + "]\n";
  return out;
}

inline bool update_requested() {
  const char* v = std::getenv("K3LAT_UPDATE_GOLDEN");
  return v && std::string(v) == "1";
}

/// Returns an empty string on a match, otherwise the actual transcript.
inline std::string check(const std::string& binary, const fs::path& dir, const Case& c, bool* matched) {
  const std::string actual = transcript(binary, dir / "inputs", c);
  if (update_requested()) {
    std::ofstream(c.expected, std::ios::binary) << actual;
    *matched = true;
    return {};
  }
  *matched = fs::exists(c.expected) && read_file(c.expected) == actual;
  return *matched ? std::string{} : actual;
}

}  // namespace k3lat::golden
