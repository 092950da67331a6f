#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace skx {

struct Endpoint {
    std::string host;
    std::uint16_t port = 0;
};

// "host:port"; throws ParseError.
Endpoint parse_endpoint(std::string_view text);

// Blocking TCP stream, RAII over the fd. Movable, not copyable.
class Socket {
public:
    Socket() = default;
    explicit Socket(int fd) : fd_(fd) {}
    Socket(Socket&& other) noexcept;
    Socket& operator=(Socket&& other) noexcept;
    Socket(const Socket&) = delete;
    Socket& operator=(const Socket&) = delete;
    ~Socket();

    static Socket connect_to(const Endpoint& where);

    bool valid() const { return fd_ >= 0; }
    int fd() const { return fd_; }

    // Returns bytes read; 0 means orderly EOF. Throws Error on failure.
    std::size_t read_some(std::span<std::uint8_t> buf);

    void write_all(std::span<const std::uint8_t> data);

    // Half-close of the send direction; the peer sees EOF.
    void shutdown_send();

    void close();

private:
    int fd_ = -1;
};

class Listener {
public:
    // port 0 binds an ephemeral port; port() reports the actual one.
    static Listener bind_on(const Endpoint& where);

    Listener(Listener&&) noexcept = default;
    Listener& operator=(Listener&&) noexcept = default;

    std::uint16_t port() const { return port_; }
    Socket accept_one();

private:
    Listener(Socket fd, std::uint16_t port) : sock_(std::move(fd)), port_(port) {}

    Socket sock_;
    std::uint16_t port_;
};

}  // namespace skx
