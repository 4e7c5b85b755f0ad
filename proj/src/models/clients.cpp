// Copyright 2026 The Metamorph Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include <atomic>
#include <cerrno>
#include <chrono>
#include <cstring>
#include <mutex>

#include <httplib.h>

#include "metamorph/models.hpp"

namespace metamorph {

namespace {

class BaselineClient final : public PredictionClient {
 public:
  BaselineClient(BaselineIndex index, std::size_t k) : index_(std::move(index)), k_(k) {}

  PredictResult predict(std::string_view source) override {
    try {
      return baseline_predict(index_, source, k_);
    } catch (const std::exception& e) {
      return ModelUnavailable{e.what()};
    }
  }

 private:
  BaselineIndex index_;
  std::size_t k_;
};

// Speaks one JSON object per line over the child's stdin/stdout. A child that
// times out, exits or answers with garbage is killed and restarted on the
// next request.
class SubprocessClient final : public PredictionClient {
 public:
  SubprocessClient(std::string command, std::size_t k, int timeout_ms)
      : command_(std::move(command)), k_(k), timeout_ms_(timeout_ms) {
    ::signal(SIGPIPE, SIG_IGN);
  }
  ~SubprocessClient() override { stop(); }

  PredictResult predict(std::string_view source) override {
    std::lock_guard<std::mutex> lock(mu_);
    try {
      if (pid_ <= 0) start();
      const std::uint64_t id = next_id_++;
      std::string line = encode_request(id, k_, source);
      line.push_back('\n');
      write_all(line);
      const std::string reply = read_line();
      PredictResult r = decode_response(reply, id, k_);
      if (std::holds_alternative<ModelUnavailable>(r)) stop();
      return r;
    } catch (const std::exception& e) {
      stop();
      return ModelUnavailable{e.what()};
    }
  }

 private:
  void start() {
    int in[2];
    int out[2];
    if (::pipe2(in, O_CLOEXEC) != 0) throw std::runtime_error(std::string("pipe: ") + std::strerror(errno));
    if (::pipe2(out, O_CLOEXEC) != 0) {
      ::close(in[0]);
      ::close(in[1]);
      throw std::runtime_error(std::string("pipe: ") + std::strerror(errno));
    }
    const pid_t pid = ::fork();
    if (pid < 0) {
      for (int fd : {in[0], in[1], out[0], out[1]}) ::close(fd);
      throw std::runtime_error(std::string("fork: ") + std::strerror(errno));
    }
    if (pid == 0) {
      // Own process group, so a kill also reaches whatever the shell spawned.
      ::setpgid(0, 0);
      ::dup2(in[0], STDIN_FILENO);
      ::dup2(out[1], STDOUT_FILENO);
      for (int fd : {in[0], in[1], out[0], out[1]}) ::close(fd);
      ::execl("/bin/sh", "sh", "-c", command_.c_str(), static_cast<char*>(nullptr));
      ::_exit(127);
    }
    ::setpgid(pid, pid);
    ::close(in[0]);
    ::close(out[1]);
    pid_ = pid;
    to_child_ = in[1];
    from_child_ = out[0];
    buffer_.clear();
  }

  void stop() {
    if (to_child_ >= 0) ::close(to_child_);
    if (from_child_ >= 0) ::close(from_child_);
    to_child_ = from_child_ = -1;
    if (pid_ > 0) {
      ::kill(-pid_, SIGKILL);
      ::waitpid(pid_, nullptr, 0);
    }
    pid_ = -1;
    buffer_.clear();
  }

  void write_all(std::string_view data) {
    while (!data.empty()) {
      const ssize_t n = ::write(to_child_, data.data(), data.size());
      if (n < 0) {
        if (errno == EINTR) continue;
        throw std::runtime_error(std::string("model process write failed: ") + std::strerror(errno));
      }
      data.remove_prefix(static_cast<std::size_t>(n));
    }
  }

  std::string read_line() {
    using Clock = std::chrono::steady_clock;
    const auto deadline = Clock::now() + std::chrono::milliseconds(timeout_ms_);
    for (;;) {
      const auto nl = buffer_.find('\n');
      if (nl != std::string::npos) {
        std::string line = buffer_.substr(0, nl);
        buffer_.erase(0, nl + 1);
        return line;
      }
      const auto left =
          std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now()).count();
      if (left <= 0) throw std::runtime_error("model process timed out");
      pollfd pfd{from_child_, POLLIN, 0};
      const int ready = ::poll(&pfd, 1, static_cast<int>(left));
      if (ready < 0) {
        if (errno == EINTR) continue;
        throw std::runtime_error(std::string("poll: ") + std::strerror(errno));
      }
      if (ready == 0) continue;
      char chunk[4096];
      const ssize_t n = ::read(from_child_, chunk, sizeof chunk);
      if (n < 0) {
        if (errno == EINTR) continue;
        throw std::runtime_error(std::string("model process read failed: ") + std::strerror(errno));
      }
      if (n == 0) throw std::runtime_error("model process closed its output");
      buffer_.append(chunk, static_cast<std::size_t>(n));
    }
  }

  std::string command_;
  std::size_t k_;
  int timeout_ms_;
  std::mutex mu_;
  pid_t pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  std::string buffer_;
  std::uint64_t next_id_ = 1;
};

class HttpClient final : public PredictionClient {
 public:
  HttpClient(const std::string& url, std::size_t k, int timeout_ms) : k_(k) {
    const std::string rest = url.substr(std::strlen("http://"));
    const auto slash = rest.find('/');
    host_ = "http://" + rest.substr(0, slash);
    path_ = slash == std::string::npos || slash + 1 == rest.size() ? "/predict" : rest.substr(slash);
    timeout_ms_ = timeout_ms;
  }

  PredictResult predict(std::string_view source) override {
    const std::uint64_t id = next_id_.fetch_add(1);
    try {
      httplib::Client client(host_);
      const auto timeout = std::chrono::milliseconds(timeout_ms_);
      client.set_connection_timeout(timeout);
      client.set_read_timeout(timeout);
      client.set_write_timeout(timeout);
      auto res = client.Post(path_, encode_request(id, k_, source), "application/json");
      if (!res) return ModelUnavailable{"http request failed: " + httplib::to_string(res.error())};
      if (res->status != 200) {
        return ModelUnavailable{"http status " + std::to_string(res->status)};
      }
      return decode_response(res->body, id, k_);
    } catch (const std::exception& e) {
      return ModelUnavailable{e.what()};
    }
  }

 private:
  std::string host_;
  std::string path_;
  std::size_t k_;
  int timeout_ms_ = 10000;
  std::atomic<std::uint64_t> next_id_{1};
};

}  // namespace

std::unique_ptr<PredictionClient> make_client(const ModelEndpoint& endpoint) {
  switch (endpoint.kind) {
    case EndpointKind::BuiltinToken:
    case EndpointKind::BuiltinStructure: {
      BaselineIndex index = BaselineIndex::load(endpoint.address);
      const FeatureMode want = endpoint.kind == EndpointKind::BuiltinToken ? FeatureMode::Token
                                                                           : FeatureMode::Structure;
      if (index.mode() != want) {
        throw IndexError("index " + endpoint.address + " was built in " +
                         std::string(to_string(index.mode())) + " mode");
      }
      return std::make_unique<BaselineClient>(std::move(index), endpoint.topk);
    }
    case EndpointKind::Subprocess:
      return std::make_unique<SubprocessClient>(endpoint.address, endpoint.topk,
                                                endpoint.timeout_ms);
    case EndpointKind::Http:
      return std::make_unique<HttpClient>(endpoint.address, endpoint.topk, endpoint.timeout_ms);
  }
  throw std::invalid_argument("unknown endpoint kind");
}

}  // namespace metamorph
