#include "gsqg/errors.hpp"

#include <utility>

namespace gsqg {
namespace {
std::string join(const std::vector<std::string>& items) {
  std::string out = "invalid configuration";
  for (const auto& item : items) out += "; " + item;
  return out;
}
}  // namespace

ValidationError::ValidationError(std::vector<std::string> violations)
    : Error(join(violations)), violations_(std::move(violations)) {}

}  // namespace gsqg
