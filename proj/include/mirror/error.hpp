#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mirror {

enum class ErrorKind {
  invalid_input,
  mode_mismatch,
  tangential_crossing,
  degenerate_endpoint,
  degenerate_structure,
  triple_intersection,
  non_unimodular,
  non_termination,
  not_expressible,
  truncated_input,
};

std::string_view to_string(ErrorKind kind);

class MirrorError : public std::runtime_error {
 public:
  MirrorError(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace mirror
