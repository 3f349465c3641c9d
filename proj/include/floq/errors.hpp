#pragma once

#include <stdexcept>
#include <string>

namespace floq {

/// Problem size exceeds what a dense oracle is allowed to materialize.
class LimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rejected configuration; key_path points at the offending entry ("adapt.lambda").
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string key_path, const std::string& what)
      : std::invalid_argument(key_path.empty() ? what : key_path + ": " + what),
        key_path_(std::move(key_path)) {}

  const std::string& key_path() const { return key_path_; }

 private:
  std::string key_path_;
};

}  // namespace floq
