#pragma once

#include <array>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include <sys/wait.h>

namespace testsupport {

struct CmdResult {
  int exit_code = -1;
  std::string out;
};

/// Runs a shell command capturing stdout (stderr discarded).
inline CmdResult run_command(const std::string& command) {
  CmdResult result;
  FILE* pipe = popen((command + " 2>/dev/null").c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed for: " + command);
  std::array<char, 4096> buffer{};
  std::size_t n = 0;
  while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
    result.out.append(buffer.data(), n);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

/// Path of the CLI binary under test, exported by CTest.
inline std::string cli_binary() {
  const char* path = std::getenv("MCVULN_BIN");
  if (!path || !*path)
    throw std::runtime_error("MCVULN_BIN is not set; run under ctest");
  return std::string("\"") + path + "\"";
}

}  // namespace testsupport
