#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "reseg/alignment.h"
#include "reseg/embedding.h"

namespace reseg {

// Bidirectional line-oriented transport. One message per LF-terminated line.
class LineChannel {
 public:
  virtual ~LineChannel() = default;
  // Throws TransportError if the peer is gone.
  virtual void send_line(std::string_view line) = 0;
  // std::nullopt on end of stream. Throws TransportError on timeout.
  virtual std::optional<std::string> recv_line(std::chrono::milliseconds timeout) = 0;
};

// Runs `command` through /bin/sh with its stdin/stdout connected to the
// returned channel. The child is terminated when the channel is destroyed.
std::unique_ptr<LineChannel> spawn_process(const std::string& command);

std::unique_ptr<LineChannel> connect_tcp(const std::string& host, std::uint16_t port);

// Endpoint syntax: "exec:<shell command>" or "tcp:<host>:<port>".
std::unique_ptr<LineChannel> open_endpoint(const std::string& endpoint);

// Environment variable consulted for a default endpoint.
inline constexpr const char* kEndpointEnvVar = "RESEG_SERVICE";

// Client for the newline-delimited JSON aligner/embedding protocol:
//   {"id":str,"op":"align","src":[...],"tgt":[...]}  -> {"id":str,"links":[[i,j],...]}
//   {"id":str,"op":"embed","sentences":[[...],...]}  -> {"id":str,"vectors":[[...],...]}
//   any failure                                      -> {"id":str,"error":str}
// One request is in flight at a time.
class ServiceClient {
 public:
  explicit ServiceClient(std::unique_ptr<LineChannel> channel,
                         std::chrono::milliseconds timeout = std::chrono::seconds(60));

  AlignmentLinkSet align(std::span<const Token> src, std::span<const Token> tgt);
  std::vector<std::vector<double>> embed(const std::vector<TokenList>& sentences);

 private:
  std::string next_id();
  // Sends one request line and returns the raw response line.
  std::string exchange(const std::string& id, const std::string& request);

  std::unique_ptr<LineChannel> channel_;
  std::chrono::milliseconds timeout_;
  std::uint64_t counter_ = 0;
};

AlignmentLinkSet service_align(std::span<const Token> src, std::span<const Token> tgt,
                               ServiceClient& endpoint);

class ServiceAligner : public WordAligner {
 public:
  explicit ServiceAligner(std::shared_ptr<ServiceClient> client) : client_(std::move(client)) {}
  AlignmentLinkSet align(std::span<const Token> src, std::span<const Token> tgt) override;

 private:
  std::shared_ptr<ServiceClient> client_;
};

// Embedding provider backed by the service. The dimension is fixed by the
// first response; later responses must match it.
class ServiceEmbedder : public EmbeddingProvider {
 public:
  explicit ServiceEmbedder(std::shared_ptr<ServiceClient> client) : client_(std::move(client)) {}
  std::size_t dimension() const override { return dimension_; }
  std::vector<double> embed(const TokenList& sentence) override;

 private:
  std::shared_ptr<ServiceClient> client_;
  std::size_t dimension_ = 0;
};

}  // namespace reseg
