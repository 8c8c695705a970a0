#include "dtn/node.hpp"

#include <string>

#include "dtn/errors.hpp"
#include "dtn/wire.hpp"

namespace dtn {

const char* to_string(Disposition disposition) {
  switch (disposition) {
    case Disposition::delivered: return "delivered";
    case Disposition::delivered_corrupt_undetected:
      return "delivered_corrupt_undetected";
    case Disposition::queued: return "queued";
    case Disposition::dropped_expired: return "dropped_expired";
    case Disposition::dropped_invalid_timestamp:
      return "dropped_invalid_timestamp";
    case Disposition::dropped_integrity: return "dropped_integrity";
    case Disposition::dropped_storage_full: return "dropped_storage_full";
    case Disposition::dropped_decode_error: return "dropped_decode_error";
  }
  return "?";
}

namespace {

Bytes* block_body(Bundle& bundle, std::uint8_t block_type) {
  switch (block_type) {
    case kBlockPayload:
      return &bundle.payload;
    case kBlockIntegrity:
      return bundle.integrity ? &bundle.integrity->result : nullptr;
    default:
      for (RawBlock& ext : bundle.extensions)
        if (ext.block_type == block_type) return &ext.body;
      return nullptr;
  }
}

}  // namespace

Bundle mutate_in_transit(Bundle bundle, const Mutation& mutation) {
  switch (mutation.kind) {
    case Mutation::Kind::set_lifetime:
      bundle.lifetime_s = mutation.lifetime_s;
      return bundle;
    case Mutation::Kind::edit_block_body: {
      Bytes* body = block_body(bundle, mutation.block_type);
      if (!body)
        throw Error(Error::Kind::target_absent,
                    "no block of type " + std::to_string(mutation.block_type));
      if (mutation.body_offset >= body->size())
        throw Error(Error::Kind::target_absent,
                    "offset " + std::to_string(mutation.body_offset) +
                        " outside block body of " + std::to_string(body->size()) +
                        " bytes");
      (*body)[mutation.body_offset] ^= mutation.xor_mask;
      return bundle;
    }
  }
  return bundle;
}

}  // namespace dtn
