#include "dtn/bundle.hpp"

namespace dtn {

std::string BundleId::str() const {
  return source + "#" + std::to_string(creation_ts) + "#" + std::to_string(creation_seq);
}

BundleId id_of(const Bundle& b) {
  return BundleId{b.source.text(), b.creation_ts, b.creation_seq};
}

}  // namespace dtn
