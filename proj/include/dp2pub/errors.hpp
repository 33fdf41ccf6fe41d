#ifndef DP2PUB_ERRORS_HPP
#define DP2PUB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dp2pub {

// Raised when the input data (files, categories, domains) is unusable.
// The CLI maps this to exit code 2.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Raised for bad command-line / configuration values. CLI exit code 1.
class UsageError : public std::runtime_error {
 public:
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace dp2pub

#endif  // DP2PUB_ERRORS_HPP
