#include "mobnbody/errors.hpp"

namespace mobnbody {

const char* to_string(SingularKind kind) noexcept {
  return kind == SingularKind::Collision ? "collision" : "antipodal";
}

SingularPair::SingularPair(SingularKind kind, std::size_t first, std::size_t second)
    : DomainError(std::string("singular pair (") + to_string(kind) + ") between bodies " +
                  std::to_string(first) + " and " + std::to_string(second)),
      kind_(kind),
      first_(first),
      second_(second) {}

SingularPair::SingularPair(SingularKind kind, const std::string& context)
    : DomainError(std::string("singular pair (") + to_string(kind) + "): " + context), kind_(kind) {}

}  // namespace mobnbody
