#include "skx/net.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <charconv>
#include <cstring>
#include <stdexcept>

#include "skx/errors.hpp"

namespace skx {
namespace {

[[noreturn]] void throw_errno(const std::string& what) {
    throw Error(what + ": " + std::strerror(errno));
}

sockaddr_in make_addr(const Endpoint& where) {
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_port = htons(where.port);
    if (inet_pton(AF_INET, where.host.c_str(), &addr.sin_addr) != 1) {
        throw ValidationError("not an IPv4 address: '" + where.host + "'");
    }
    return addr;
}

}  // namespace

Endpoint parse_endpoint(std::string_view text) {
    const std::size_t colon = text.rfind(':');
    if (colon == std::string_view::npos || colon == 0 || colon + 1 == text.size()) {
        throw ParseError("expected host:port, got '" + std::string(text) + "'");
    }
    const std::string_view port_text = text.substr(colon + 1);
    std::uint16_t port = 0;
    const auto [ptr, ec] =
        std::from_chars(port_text.data(), port_text.data() + port_text.size(), port);
    if (ec != std::errc{} || ptr != port_text.data() + port_text.size()) {
        throw ParseError("bad port in '" + std::string(text) + "'");
    }
    return Endpoint{std::string(text.substr(0, colon)), port};
}

Socket::Socket(Socket&& other) noexcept : fd_(other.fd_) { other.fd_ = -1; }

Socket& Socket::operator=(Socket&& other) noexcept {
    if (this != &other) {
        close();
        fd_ = other.fd_;
        other.fd_ = -1;
    }
    return *this;
}

Socket::~Socket() { close(); }

Socket Socket::connect_to(const Endpoint& where) {
    const sockaddr_in addr = make_addr(where);
    const int fd = ::socket(AF_INET, SOCK_STREAM, 0);
    if (fd < 0) {
        throw_errno("socket");
    }
    Socket s(fd);
    if (::connect(fd, reinterpret_cast<const sockaddr*>(&addr), sizeof(addr)) != 0) {
        throw_errno("connect to " + where.host + ":" + std::to_string(where.port));
    }
    return s;
}

std::size_t Socket::read_some(std::span<std::uint8_t> buf) {
    while (true) {
        const ssize_t n = ::recv(fd_, buf.data(), buf.size(), 0);
        if (n >= 0) {
            return static_cast<std::size_t>(n);
        }
        if (errno == EINTR) {
            continue;
        }
        throw_errno("recv");
    }
}

void Socket::write_all(std::span<const std::uint8_t> data) {
    std::size_t off = 0;
    while (off < data.size()) {
        const ssize_t n =
            ::send(fd_, data.data() + off, data.size() - off, MSG_NOSIGNAL);
        if (n < 0) {
            if (errno == EINTR) {
                continue;
            }
            throw_errno("send");
        }
        off += static_cast<std::size_t>(n);
    }
}

void Socket::shutdown_send() {
    if (fd_ >= 0) {
        ::shutdown(fd_, SHUT_WR);
    }
}

void Socket::close() {
    if (fd_ >= 0) {
        ::close(fd_);
        fd_ = -1;
    }
}

Listener Listener::bind_on(const Endpoint& where) {
    sockaddr_in addr = make_addr(where);
    const int fd = ::socket(AF_INET, SOCK_STREAM, 0);
    if (fd < 0) {
        throw_errno("socket");
    }
    Socket s(fd);
    const int yes = 1;
    ::setsockopt(fd, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
    if (::bind(fd, reinterpret_cast<const sockaddr*>(&addr), sizeof(addr)) != 0) {
        throw_errno("bind " + where.host + ":" + std::to_string(where.port));
    }
    if (::listen(fd, 4) != 0) {
        throw_errno("listen");
    }
    sockaddr_in bound{};
    socklen_t len = sizeof(bound);
    if (::getsockname(fd, reinterpret_cast<sockaddr*>(&bound), &len) != 0) {
        throw_errno("getsockname");
    }
    return Listener(std::move(s), ntohs(bound.sin_port));
}

Socket Listener::accept_one() {
    while (true) {
        const int fd = ::accept(sock_.fd(), nullptr, nullptr);
        if (fd >= 0) {
            return Socket(fd);
        }
        if (errno == EINTR) {
            continue;
        }
        throw_errno("accept");
    }
}

}  // namespace skx
