#pragma once

#include <stdexcept>
#include <string>

namespace refl1d {

// Error categories map 1:1 onto CLI exit codes.
enum class ErrKind {
  config,   // exit 64: bad key, bad value, malformed file
  physics,  // exit 2:  precondition on the data (w=0, determinism, vacuum)
  solver,   // exit 1:  non-convergence, branch lost, containment abort
  io,       // exit 3:  file integrity / filesystem
};

class Error : public std::runtime_error {
 public:
  Error(ErrKind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
  ErrKind kind() const { return kind_; }

 private:
  ErrKind kind_;
};

[[noreturn]] inline void fail(ErrKind kind, const std::string& msg) { throw Error(kind, msg); }

inline int exit_code(ErrKind kind) {
  switch (kind) {
    case ErrKind::config: return 64;
    case ErrKind::physics: return 2;
    case ErrKind::solver: return 1;
    case ErrKind::io: return 3;
  }
  return 1;
}

inline const char* kind_name(ErrKind kind) {
  switch (kind) {
    case ErrKind::config: return "config";
    case ErrKind::physics: return "physics";
    case ErrKind::solver: return "solver";
    case ErrKind::io: return "io";
  }
  return "unknown";
}

}  // namespace refl1d
