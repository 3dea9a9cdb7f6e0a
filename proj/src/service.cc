#include "reseg/service.h"

#include <cerrno>
#include <cstring>
#include <thread>

#include <netdb.h>
#include <poll.h>
#include <signal.h>
#include <spawn.h>
#include <sys/socket.h>
#include <sys/wait.h>
#include <unistd.h>

#include "json.hpp"
#include "reseg/error.h"

extern char** environ;

namespace reseg {

namespace {

using json = nlohmann::json;

class FdChannel : public LineChannel {
 public:
  FdChannel(int fd, pid_t child) : fd_(fd), child_(child) {}
  FdChannel(const FdChannel&) = delete;
  FdChannel& operator=(const FdChannel&) = delete;

  ~FdChannel() override {
    ::shutdown(fd_, SHUT_WR);
    if (child_ > 0) reap();
    ::close(fd_);
  }

  void send_line(std::string_view line) override {
    std::string data(line);
    data += '\n';
    std::size_t sent = 0;
    while (sent < data.size()) {
      const ssize_t n = ::send(fd_, data.data() + sent, data.size() - sent, MSG_NOSIGNAL);
      if (n < 0) {
        if (errno == EINTR) continue;
        throw TransportError(std::string("send failed: ") + std::strerror(errno));
      }
      sent += static_cast<std::size_t>(n);
    }
  }

  std::optional<std::string> recv_line(std::chrono::milliseconds timeout) override {
    const auto deadline = std::chrono::steady_clock::now() + timeout;
    for (;;) {
      if (auto nl = buffer_.find('\n'); nl != std::string::npos) {
        std::string line = buffer_.substr(0, nl);
        buffer_.erase(0, nl + 1);
        return line;
      }
      if (eof_) {
        if (buffer_.empty()) return std::nullopt;
        return std::exchange(buffer_, {});
      }
      const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
          deadline - std::chrono::steady_clock::now());
      if (left.count() <= 0) throw TransportError("timed out waiting for the service");
      pollfd pfd{fd_, POLLIN, 0};
      const int ready = ::poll(&pfd, 1, static_cast<int>(left.count()));
      if (ready < 0) {
        if (errno == EINTR) continue;
        throw TransportError(std::string("poll failed: ") + std::strerror(errno));
      }
      if (ready == 0) continue;
      char chunk[4096];
      const ssize_t n = ::recv(fd_, chunk, sizeof chunk, 0);
      if (n < 0) {
        if (errno == EINTR) continue;
        if (errno == ECONNRESET) {
          eof_ = true;
          continue;
        }
        throw TransportError(std::string("recv failed: ") + std::strerror(errno));
      }
      if (n == 0)
        eof_ = true;
      else
        buffer_.append(chunk, static_cast<std::size_t>(n));
    }
  }

 private:
  void reap() {
    using namespace std::chrono_literals;
    for (int attempt = 0; attempt < 200; ++attempt) {
      if (::waitpid(child_, nullptr, WNOHANG) != 0) return;
      std::this_thread::sleep_for(10ms);
    }
    ::kill(child_, SIGTERM);
    for (int attempt = 0; attempt < 100; ++attempt) {
      if (::waitpid(child_, nullptr, WNOHANG) != 0) return;
      std::this_thread::sleep_for(10ms);
    }
    ::kill(child_, SIGKILL);
    ::waitpid(child_, nullptr, 0);
  }

  int fd_;
  pid_t child_;
  std::string buffer_;
  bool eof_ = false;
};

json parse_response(const std::string& line, const std::string& id) {
  json msg;
  try {
    msg = json::parse(line);
  } catch (const json::parse_error& e) {
    throw ProtocolError("malformed response to request " + id + ": " + e.what());
  }
  if (!msg.is_object() || !msg.contains("id") || !msg["id"].is_string())
    throw ProtocolError("response to request " + id + " carries no id");
  if (msg["id"].get<std::string>() != id)
    throw ProtocolError("response id " + msg["id"].get<std::string>() + " does not match request " +
                        id);
  if (msg.contains("error")) {
    const json& err = msg["error"];
    throw ServiceError("service error for request " + id + ": " +
                       (err.is_string() ? err.get<std::string>() : err.dump()));
  }
  return msg;
}

}  // namespace

std::unique_ptr<LineChannel> spawn_process(const std::string& command) {
  int sv[2];
  if (::socketpair(AF_UNIX, SOCK_STREAM | SOCK_CLOEXEC, 0, sv) != 0)
    throw TransportError(std::string("socketpair failed: ") + std::strerror(errno));

  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_adddup2(&actions, sv[1], STDIN_FILENO);
  posix_spawn_file_actions_adddup2(&actions, sv[1], STDOUT_FILENO);

  std::string shell = "/bin/sh", flag = "-c", cmd = command;
  char* argv[] = {shell.data(), flag.data(), cmd.data(), nullptr};
  pid_t pid = 0;
  const int rc = ::posix_spawn(&pid, "/bin/sh", &actions, nullptr, argv, environ);
  posix_spawn_file_actions_destroy(&actions);
  ::close(sv[1]);
  if (rc != 0) {
    ::close(sv[0]);
    throw TransportError("cannot start service '" + command + "': " + std::strerror(rc));
  }
  return std::make_unique<FdChannel>(sv[0], pid);
}

std::unique_ptr<LineChannel> connect_tcp(const std::string& host, std::uint16_t port) {
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* res = nullptr;
  const std::string port_str = std::to_string(port);
  if (int rc = ::getaddrinfo(host.c_str(), port_str.c_str(), &hints, &res); rc != 0)
    throw TransportError("cannot resolve " + host + ": " + ::gai_strerror(rc));
  int fd = -1;
  for (addrinfo* ai = res; ai; ai = ai->ai_next) {
    fd = ::socket(ai->ai_family, ai->ai_socktype | SOCK_CLOEXEC, ai->ai_protocol);
    if (fd < 0) continue;
    if (::connect(fd, ai->ai_addr, ai->ai_addrlen) == 0) break;
    ::close(fd);
    fd = -1;
  }
  ::freeaddrinfo(res);
  if (fd < 0) throw TransportError("cannot connect to " + host + ":" + port_str);
  return std::make_unique<FdChannel>(fd, -1);
}

std::unique_ptr<LineChannel> open_endpoint(const std::string& endpoint) {
  if (endpoint.starts_with("exec:")) return spawn_process(endpoint.substr(5));
  if (endpoint.starts_with("tcp:")) {
    const std::string rest = endpoint.substr(4);
    const auto colon = rest.rfind(':');
    if (colon == std::string::npos) throw DataError("tcp endpoint needs host:port: " + endpoint);
    int port = 0;
    try {
      port = std::stoi(rest.substr(colon + 1));
    } catch (const std::exception&) {
      port = -1;
    }
    if (port <= 0 || port > 65535) throw DataError("invalid port in endpoint: " + endpoint);
    return connect_tcp(rest.substr(0, colon), static_cast<std::uint16_t>(port));
  }
  throw DataError("unknown endpoint scheme (expected exec: or tcp:): " + endpoint);
}

ServiceClient::ServiceClient(std::unique_ptr<LineChannel> channel, std::chrono::milliseconds timeout)
    : channel_(std::move(channel)), timeout_(timeout) {}

std::string ServiceClient::next_id() { return std::to_string(++counter_); }

std::string ServiceClient::exchange(const std::string& id, const std::string& request) {
  try {
    channel_->send_line(request);
    auto line = channel_->recv_line(timeout_);
    if (!line) throw TransportError("service closed the stream", id);
    return *line;
  } catch (const TransportError& e) {
    if (!e.request_id().empty()) throw;
    throw TransportError(e.what(), id);
  }
}

AlignmentLinkSet ServiceClient::align(std::span<const Token> src, std::span<const Token> tgt) {
  if (src.empty() || tgt.empty()) return {};
  const std::string id = next_id();
  const json request = {{"id", id},
                        {"op", "align"},
                        {"src", std::vector<Token>(src.begin(), src.end())},
                        {"tgt", std::vector<Token>(tgt.begin(), tgt.end())}};
  const json msg = parse_response(exchange(id, request.dump()), id);
  if (!msg.contains("links") || !msg["links"].is_array())
    throw ProtocolError("align response " + id + " has no links array");

  std::vector<Link> links;
  for (const json& pair : msg["links"]) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_integer() ||
        !pair[1].is_number_integer())
      throw ProtocolError("align response " + id + ": link is not an [i, j] integer pair");
    const auto i = pair[0].get<std::int64_t>();
    const auto j = pair[1].get<std::int64_t>();
    if (i < 0 || j < 0)
      throw LinkBoundsError("align response " + id + ": negative link index");
    links.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(j)});
  }
  AlignmentLinkSet result(std::move(links));
  try {
    result.validate(src.size(), tgt.size());
  } catch (const LinkBoundsError& e) {
    throw LinkBoundsError("align response " + id + ": " + e.what());
  }
  return result;
}

std::vector<std::vector<double>> ServiceClient::embed(const std::vector<TokenList>& sentences) {
  const std::string id = next_id();
  const json request = {{"id", id}, {"op", "embed"}, {"sentences", sentences}};
  const json msg = parse_response(exchange(id, request.dump()), id);
  if (!msg.contains("vectors") || !msg["vectors"].is_array())
    throw ProtocolError("embed response " + id + " has no vectors array");
  if (msg["vectors"].size() != sentences.size())
    throw ProtocolError("embed response " + id + ": expected " + std::to_string(sentences.size()) +
                        " vectors, got " + std::to_string(msg["vectors"].size()));
  std::vector<std::vector<double>> out;
  for (const json& vec : msg["vectors"]) {
    if (!vec.is_array()) throw ProtocolError("embed response " + id + ": vector is not an array");
    std::vector<double> v;
    for (const json& x : vec) {
      if (!x.is_number()) throw ProtocolError("embed response " + id + ": non-numeric component");
      v.push_back(x.get<double>());
    }
    if (!out.empty() && v.size() != out.front().size())
      throw ProtocolError("embed response " + id + ": vectors differ in dimension");
    out.push_back(std::move(v));
  }
  return out;
}

AlignmentLinkSet service_align(std::span<const Token> src, std::span<const Token> tgt,
                               ServiceClient& endpoint) {
  return endpoint.align(src, tgt);
}

AlignmentLinkSet ServiceAligner::align(std::span<const Token> src, std::span<const Token> tgt) {
  return client_->align(src, tgt);
}

std::vector<double> ServiceEmbedder::embed(const TokenList& sentence) {
  auto vectors = client_->embed({sentence});
  std::vector<double> v = std::move(vectors.front());
  if (v.empty()) throw ProtocolError("service returned an empty embedding");
  if (dimension_ == 0)
    dimension_ = v.size();
  else if (v.size() != dimension_)
    throw ProtocolError("embedding dimension changed from " + std::to_string(dimension_) + " to " +
                        std::to_string(v.size()));
  return v;
}

}  // namespace reseg
