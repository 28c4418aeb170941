#include "projgc/proto/channel.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstring>
#include <future>
#include <thread>

#include "projgc/error.hpp"

namespace projgc::proto {

void Channel::send(std::span<const uint8_t> message) {
  do_send(message);
  stats_.bytes_sent += message.size();
  ++stats_.messages_sent;
}

std::vector<uint8_t> Channel::recv() {
  auto m = do_recv();
  stats_.bytes_received += m.size();
  ++stats_.messages_received;
  return m;
}

namespace {

struct Queue {
  std::mutex mu;
  std::condition_variable cv;
  std::deque<std::vector<uint8_t>> items;
  bool closed = false;
};

class MemoryChannel : public Channel {
 public:
  MemoryChannel(std::shared_ptr<Queue> in, std::shared_ptr<Queue> out) : in_(std::move(in)), out_(std::move(out)) {}
  ~MemoryChannel() override {
    std::lock_guard lk(out_->mu);
    out_->closed = true;
    out_->cv.notify_all();
  }

 protected:
  void do_send(std::span<const uint8_t> m) override {
    std::lock_guard lk(out_->mu);
    if (out_->closed) throw ProtocolError("peer closed the channel");
    out_->items.emplace_back(m.begin(), m.end());
    out_->cv.notify_all();
  }
  std::vector<uint8_t> do_recv() override {
    std::unique_lock lk(in_->mu);
    in_->cv.wait(lk, [&] { return !in_->items.empty() || in_->closed; });
    if (in_->items.empty()) throw ProtocolError("peer closed the channel");
    auto m = std::move(in_->items.front());
    in_->items.pop_front();
    return m;
  }

 private:
  std::shared_ptr<Queue> in_, out_;
};

class SocketChannel : public Channel {
 public:
  explicit SocketChannel(int fd) : fd_(fd) {
    int one = 1;
    setsockopt(fd_, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
  }
  ~SocketChannel() override { ::close(fd_); }

 protected:
  void do_send(std::span<const uint8_t> m) override {
    uint8_t len[4];
    for (int i = 0; i < 4; ++i) len[i] = uint8_t(m.size() >> (8 * i));
    write_all(len, 4);
    write_all(m.data(), m.size());
  }
  std::vector<uint8_t> do_recv() override {
    uint8_t len[4];
    read_all(len, 4);
    uint32_t n = uint32_t(len[0]) | uint32_t(len[1]) << 8 | uint32_t(len[2]) << 16 | uint32_t(len[3]) << 24;
    std::vector<uint8_t> m(n);
    read_all(m.data(), n);
    return m;
  }

 private:
  void write_all(const uint8_t* p, size_t n) {
    while (n) {
      ssize_t k = ::send(fd_, p, n, MSG_NOSIGNAL);
      if (k < 0 && errno == EINTR) continue;
      if (k <= 0) throw ProtocolError(std::string("socket send failed: ") + std::strerror(errno));
      p += k;
      n -= size_t(k);
    }
  }
  void read_all(uint8_t* p, size_t n) {
    while (n) {
      ssize_t k = ::recv(fd_, p, n, 0);
      if (k < 0 && errno == EINTR) continue;
      if (k == 0) throw ProtocolError("peer closed the connection");
      if (k < 0) throw ProtocolError(std::string("socket recv failed: ") + std::strerror(errno));
      p += k;
      n -= size_t(k);
    }
  }

  int fd_;
};

std::pair<std::string, std::string> split_address(const std::string& a) {
  auto colon = a.rfind(':');
  if (colon == std::string::npos) throw Error("address must be host:port, got '" + a + "'");
  return {a.substr(0, colon), a.substr(colon + 1)};
}

addrinfo* resolve(const std::string& address, bool passive) {
  auto [host, port] = split_address(address);
  addrinfo hints{};
  hints.ai_family = AF_INET;
  hints.ai_socktype = SOCK_STREAM;
  if (passive) hints.ai_flags = AI_PASSIVE;
  addrinfo* res = nullptr;
  int rc = getaddrinfo(host.empty() ? nullptr : host.c_str(), port.c_str(), &hints, &res);
  if (rc != 0) throw ProtocolError("cannot resolve " + address + ": " + gai_strerror(rc));
  return res;
}

}  // namespace

std::pair<std::unique_ptr<Channel>, std::unique_ptr<Channel>> memory_channel_pair() {
  auto a = std::make_shared<Queue>(), b = std::make_shared<Queue>();
  return {std::make_unique<MemoryChannel>(a, b), std::make_unique<MemoryChannel>(b, a)};
}

TcpListener::TcpListener(const std::string& address) {
  addrinfo* res = resolve(address, true);
  fd_ = ::socket(res->ai_family, res->ai_socktype, res->ai_protocol);
  if (fd_ < 0) {
    freeaddrinfo(res);
    throw ProtocolError("socket() failed");
  }
  int one = 1;
  setsockopt(fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
  if (::bind(fd_, res->ai_addr, res->ai_addrlen) != 0 || ::listen(fd_, 4) != 0) {
    freeaddrinfo(res);
    ::close(fd_);
    throw ProtocolError("cannot listen on " + address + ": " + std::strerror(errno));
  }
  freeaddrinfo(res);
  sockaddr_in sa{};
  socklen_t len = sizeof sa;
  getsockname(fd_, reinterpret_cast<sockaddr*>(&sa), &len);
  port_ = ntohs(sa.sin_port);
}

TcpListener::~TcpListener() {
  if (fd_ >= 0) ::close(fd_);
}

std::unique_ptr<Channel> TcpListener::accept() {
  int c = ::accept(fd_, nullptr, nullptr);
  if (c < 0) throw ProtocolError(std::string("accept failed: ") + std::strerror(errno));
  return std::make_unique<SocketChannel>(c);
}

std::unique_ptr<Channel> tcp_connect(const std::string& address, int timeout_ms) {
  const auto deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(timeout_ms);
  for (;;) {
    addrinfo* res = resolve(address, false);
    int fd = ::socket(res->ai_family, res->ai_socktype, res->ai_protocol);
    int rc = fd < 0 ? -1 : ::connect(fd, res->ai_addr, res->ai_addrlen);
    int err = errno;
    freeaddrinfo(res);
    if (rc == 0) return std::make_unique<SocketChannel>(fd);
    if (fd >= 0) ::close(fd);
    if (std::chrono::steady_clock::now() >= deadline)
      throw ProtocolError("cannot connect to " + address + ": " + std::strerror(err));
    std::this_thread::sleep_for(std::chrono::milliseconds(50));
  }
}

std::pair<std::unique_ptr<Channel>, std::unique_ptr<Channel>> loopback_tcp_pair() {
  TcpListener l("127.0.0.1:0");
  auto accepted = std::async(std::launch::async, [&] { return l.accept(); });
  auto c = tcp_connect("127.0.0.1:" + std::to_string(l.port()));
  return {accepted.get(), std::move(c)};
}

}  // namespace projgc::proto
