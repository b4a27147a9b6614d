#ifndef COL_SERVER_HPP
#define COL_SERVER_HPP

#include <memory>
#include <string>

#include "col/session.hpp"

namespace col {

// HTTP front end for a SessionStore.
class HttpServer {
 public:
  explicit HttpServer(SessionStore& store);
  ~HttpServer();

  // Returns the bound port, or -1. Pass port 0 for any free port.
  int Bind(const std::string& host, int port);
  // Blocks until Stop().
  bool ListenAfterBind();
  void Stop();
  bool running() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace col

#endif  // COL_SERVER_HPP
