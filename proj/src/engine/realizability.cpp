#include "agc/engine/realizability.hpp"

#include "agc/error.hpp"
#include "agc/ltl/transform.hpp"

#include <algorithm>
#include <cerrno>
#include <csignal>
#include <cstdio>
#include <cstdlib>
#include <fcntl.h>
#include <poll.h>
#include <regex>
#include <sys/wait.h>
#include <unistd.h>

namespace agc::engine {

std::string_view realizability_name(Realizability r) noexcept {
  switch (r) {
  case Realizability::Realizable:
    return "REALIZABLE";
  case Realizability::Unrealizable:
    return "UNREALIZABLE";
  case Realizability::ToolError:
    return "TOOL_ERROR";
  }
  return "unknown";
}

std::optional<Realizability> parse_verdict(const std::string &output) {
  static const std::regex word(R"(\b(UN)?REALIZABLE\b)");
  std::smatch m;
  if (!std::regex_search(output, m, word)) return std::nullopt;
  return m[1].matched ? Realizability::Unrealizable : Realizability::Realizable;
}

namespace {

std::string substitute(std::string cmd, const std::string &path) {
  const std::string key = "{input}";
  for (auto pos = cmd.find(key); pos != std::string::npos;
       pos = cmd.find(key, pos + path.size())) {
    cmd.replace(pos, key.size(), path);
  }
  return cmd;
}

} // namespace

SynthAdapter::RunResult SynthAdapter::run(const std::string &input_text) {
  std::lock_guard lock(mutex_);
  RunResult r;

  char path[] = "/tmp/agc-synth-XXXXXX";
  const int fd = mkstemp(path);
  if (fd < 0) {
    r.output = "cannot create the adapter input file";
    return r;
  }
  {
    std::size_t off = 0;
    while (off < input_text.size()) {
      const ssize_t n = ::write(fd, input_text.data() + off, input_text.size() - off);
      if (n <= 0) break;
      off += static_cast<std::size_t>(n);
    }
    ::close(fd);
  }
  const std::string cmd = substitute(config_.command, path);

  int pipefd[2];
  if (pipe(pipefd) != 0) {
    std::remove(path);
    r.output = "cannot create a pipe";
    return r;
  }
  const pid_t pid = fork();
  if (pid < 0) {
    ::close(pipefd[0]);
    ::close(pipefd[1]);
    std::remove(path);
    r.output = "cannot fork";
    return r;
  }
  if (pid == 0) {
    setpgid(0, 0);
    dup2(pipefd[1], STDOUT_FILENO);
    dup2(pipefd[1], STDERR_FILENO);
    ::close(pipefd[0]);
    ::close(pipefd[1]);
    execl("/bin/sh", "sh", "-c", cmd.c_str(), static_cast<char *>(nullptr));
    _exit(127);
  }
  ::close(pipefd[1]);

  const auto deadline = std::chrono::steady_clock::now() + config_.timeout;
  bool timed_out = false;
  char buf[4096];
  while (true) {
    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
        deadline - std::chrono::steady_clock::now());
    if (left.count() <= 0) {
      timed_out = true;
      break;
    }
    pollfd p{pipefd[0], POLLIN, 0};
    const int ready = poll(&p, 1, static_cast<int>(std::min<long long>(left.count(), 1000)));
    if (ready < 0 && errno != EINTR) break;
    if (ready <= 0) continue;
    const ssize_t n = ::read(pipefd[0], buf, sizeof buf);
    if (n <= 0) break;
    r.output.append(buf, static_cast<std::size_t>(n));
  }
  ::close(pipefd[0]);
  if (timed_out) kill(-pid, SIGKILL);
  int status = 0;
  waitpid(pid, &status, 0);
  std::remove(path);
  if (timed_out) {
    r.output += "\n[timed out after " + std::to_string(config_.timeout.count()) + " s]";
    return r;
  }
  r.finished = true;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

RealizabilityResult check_realizability(const contract::Contract &c,
                                        const world::WorldModel &w,
                                        SynthAdapter *adapter,
                                        const std::vector<std::string> &inputs,
                                        const std::vector<std::string> &outputs,
                                        const contract::Context &ctx) {
  RealizabilityResult res;
  const auto side = [&](const ltl::Formula &f) {
    return w.in_context(f, ctx.adjacency);
  };
  res.formula = ltl::simplify(
      ltl::implies(side(c.assumptions()), side(c.guarantees())));

  const ltl::ApSet in_set(inputs.begin(), inputs.end());
  ltl::ApSet out_set(outputs.begin(), outputs.end());
  for (const auto &a : ltl::atoms(res.formula)) {
    if (!in_set.count(a)) out_set.insert(a);
  }
  for (const auto &o : out_set) {
    if (in_set.count(o)) throw Error("'" + o + "' is both an input and an output");
  }
  res.inputs.assign(in_set.begin(), in_set.end());
  res.outputs.assign(out_set.begin(), out_set.end());
  auto join = [](const std::vector<std::string> &v) {
    std::string s;
    for (const auto &x : v) s += " " + x;
    return s;
  };
  res.input_file = "INPUTS:" + join(res.inputs) + "\nOUTPUTS:" +
                   join(res.outputs) + "\nFORMULA: " + ltl::print(res.formula) +
                   "\n";

  sat::Solver &solver = ctx.solver ? *ctx.solver : sat::default_solver();
  try {
    if (solver.is_valid(res.formula)) {
      res.verdict = Realizability::Realizable;
      res.decided_locally = true;
      res.message = "the formula is valid";
      return res;
    }
    const bool sat = solver.is_satisfiable(res.formula);
    if (!sat) {
      res.verdict = Realizability::Unrealizable;
      res.decided_locally = true;
      res.message = "the formula is unsatisfiable";
      return res;
    }
    if (res.inputs.empty()) {
      // Without inputs a machine just emits one word; any lasso model will do.
      res.verdict = Realizability::Realizable;
      res.decided_locally = true;
      res.message = "no inputs and the formula is satisfiable";
      return res;
    }
  } catch (const ApCapExceeded &) {
    // too large to decide locally; the tool gets it
  }

  if (!adapter) {
    res.verdict = Realizability::ToolError;
    res.message = "no adapter";
    return res;
  }
  const auto run = adapter->run(res.input_file);
  res.message = run.output;
  if (!run.finished) {
    res.verdict = Realizability::ToolError;
    return res;
  }
  const auto v = parse_verdict(run.output);
  res.verdict = v ? *v : Realizability::ToolError;
  return res;
}

} // namespace agc::engine
