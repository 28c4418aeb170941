#pragma once

// Message transport between the two parties. Every send() is one message;
// byte-stream transports prefix it with its length (u32, little-endian).

#include <condition_variable>
#include <cstdint>
#include <deque>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace projgc::proto {

struct ChannelStats {
  uint64_t bytes_sent = 0;
  uint64_t bytes_received = 0;
  uint64_t messages_sent = 0;
  uint64_t messages_received = 0;
};

class Channel {
 public:
  virtual ~Channel() = default;
  void send(std::span<const uint8_t> message);
  // Throws ProtocolError when the peer has gone away.
  std::vector<uint8_t> recv();
  const ChannelStats& stats() const { return stats_; }
  void reset_stats() { stats_ = {}; }

 protected:
  virtual void do_send(std::span<const uint8_t> message) = 0;
  virtual std::vector<uint8_t> do_recv() = 0;

 private:
  ChannelStats stats_;
};

// Two connected in-process endpoints.
std::pair<std::unique_ptr<Channel>, std::unique_ptr<Channel>> memory_channel_pair();

// TCP byte stream. `address` is host:port; port 0 picks a free port when listening.
class TcpListener {
 public:
  explicit TcpListener(const std::string& address);
  ~TcpListener();
  TcpListener(const TcpListener&) = delete;
  TcpListener& operator=(const TcpListener&) = delete;
  uint16_t port() const { return port_; }
  std::unique_ptr<Channel> accept();

 private:
  int fd_ = -1;
  uint16_t port_ = 0;
};

// Retries refused connections until `timeout_ms` has passed.
std::unique_ptr<Channel> tcp_connect(const std::string& address, int timeout_ms = 5000);

// A loopback TCP pair inside one process: (listener side, connecting side).
std::pair<std::unique_ptr<Channel>, std::unique_ptr<Channel>> loopback_tcp_pair();

}  // namespace projgc::proto
