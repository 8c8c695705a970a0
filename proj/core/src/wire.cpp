#include "dtn/wire.hpp"

#include <string>

#include "dtn/sdnv.hpp"

namespace dtn {

namespace {

// Cursor over untrusted input. Every read reports how far it got so decode
// errors carry a useful offset.
struct Reader {
  ByteSpan data;
  std::size_t pos = 0;

  std::size_t remaining() const { return data.size() - pos; }
  bool eof() const { return pos == data.size(); }

  Result<std::uint8_t> byte(const char* what) {
    if (eof())
      return DecodeError{DecodeErrc::truncated, pos, std::string("missing ") + what};
    return data[pos++];
  }

  Result<std::uint64_t> sdnv(const char* what) {
    auto r = decode_sdnv(data.subspan(pos));
    if (!r.ok()) {
      DecodeError e = r.error();
      e.offset += pos;
      e.detail = std::string(what) + ": " + e.detail;
      return e;
    }
    pos += r.value().consumed;
    return r.value().value;
  }

  Result<ByteSpan> bytes(std::uint64_t len, const char* what) {
    if (len > remaining())
      return DecodeError{DecodeErrc::truncated, data.size(),
                         std::string(what) + " runs past end of image"};
    ByteSpan out = data.subspan(pos, static_cast<std::size_t>(len));
    pos += static_cast<std::size_t>(len);
    return out;
  }
};

void append_eid(Bytes& out, const EndpointId& eid) {
  append_sdnv(out, eid.text().size());
  out.insert(out.end(), eid.text().begin(), eid.text().end());
}

void append_block_header(Bytes& out, std::uint8_t type, std::uint64_t flags,
                         std::uint64_t body_len) {
  out.push_back(type);
  append_sdnv(out, flags);
  append_sdnv(out, body_len);
}

Bytes integrity_body(const IntegrityBlock& ib) {
  Bytes body;
  append_sdnv(body, ib.suite_id);
  append_sdnv(body, ib.coverage);
  body.insert(body.end(), ib.result.begin(), ib.result.end());
  return body;
}

constexpr std::size_t kResultLenCrc32 = 4;
constexpr std::size_t kResultLenHmac = 32;

Result<IntegrityBlock> parse_integrity_body(ByteSpan body, std::size_t at) {
  Reader r{body};
  auto suite = r.sdnv("integrity suite id");
  if (!suite.ok()) return suite.error();
  auto coverage = r.sdnv("integrity coverage");
  if (!coverage.ok()) return coverage.error();

  auto fail = [&](const std::string& why) {
    return DecodeError{DecodeErrc::bad_block, at, "integrity block: " + why};
  };
  if (suite.value() != kSuiteCrc32 && suite.value() != kSuiteHmacSha256)
    return fail("unknown suite " + std::to_string(suite.value()));
  std::uint64_t cover = coverage.value();
  if (cover == 0 || cover > (kCoverPrimary | kCoverPayload))
    return fail("coverage bits " + std::to_string(cover) + " out of range");

  std::size_t want =
      suite.value() == kSuiteCrc32 ? kResultLenCrc32 : kResultLenHmac;
  if (r.remaining() != want)
    return fail("result length " + std::to_string(r.remaining()) + ", expected " +
                std::to_string(want));

  IntegrityBlock ib;
  ib.suite_id = static_cast<std::uint8_t>(suite.value());
  ib.coverage = static_cast<std::uint8_t>(cover);
  ByteSpan result = body.subspan(r.pos);
  ib.result.assign(result.begin(), result.end());
  return ib;
}

Result<std::uint64_t> parse_age_body(ByteSpan body, std::size_t at) {
  auto r = decode_sdnv(body);
  if (!r.ok()) {
    DecodeError e = r.error();
    e.offset += at;
    e.detail = "age block: " + e.detail;
    return e;
  }
  if (r.value().consumed != body.size())
    return DecodeError{DecodeErrc::bad_block, at, "age block body has trailing bytes"};
  return r.value().value;
}

}  // namespace

Bytes encode_primary_fields(const Bundle& bundle) {
  Bytes out;
  append_eid(out, bundle.destination);
  append_eid(out, bundle.source);
  append_sdnv(out, bundle.creation_ts);
  append_sdnv(out, bundle.creation_seq);
  append_sdnv(out, bundle.lifetime_s);
  return out;
}

Bytes encode_bundle(const Bundle& bundle, PayloadRegion* region) {
  Bytes out;
  out.push_back(kWireVersion);
  append_sdnv(out, 0);  // processing flags, reserved
  Bytes primary = encode_primary_fields(bundle);
  out.insert(out.end(), primary.begin(), primary.end());

  if (bundle.integrity) {
    Bytes body = integrity_body(*bundle.integrity);
    append_block_header(out, kBlockIntegrity, 0, body.size());
    out.insert(out.end(), body.begin(), body.end());
  }
  if (bundle.age_ms) {
    Bytes body = encode_sdnv(*bundle.age_ms);
    append_block_header(out, kBlockAge, 0, body.size());
    out.insert(out.end(), body.begin(), body.end());
  }
  for (const RawBlock& ext : bundle.extensions) {
    append_block_header(out, ext.block_type, ext.flags & ~kBlockFlagLast,
                        ext.body.size());
    out.insert(out.end(), ext.body.begin(), ext.body.end());
  }

  append_block_header(out, kBlockPayload, kBlockFlagLast, bundle.payload.size());
  if (region) *region = PayloadRegion{out.size(), bundle.payload.size()};
  out.insert(out.end(), bundle.payload.begin(), bundle.payload.end());
  return out;
}

Result<DecodedBundle> decode_bundle_ex(ByteSpan image) {
  Reader r{image};

  auto version = r.byte("version byte");
  if (!version.ok()) return version.error();
  if (version.value() != kWireVersion) {
    const std::uint8_t v = version.value();
    return DecodeError{DecodeErrc::bad_version, 0,
                       "version byte 0x" + to_hex(ByteSpan(&v, 1))};
  }

  auto flags = r.sdnv("processing flags");
  if (!flags.ok()) return flags.error();

  DecodedBundle out;
  Bundle& b = out.bundle;

  for (EndpointId* eid : {&b.destination, &b.source}) {
    const char* what = eid == &b.destination ? "destination" : "source";
    auto len = r.sdnv(what);
    if (!len.ok()) return len.error();
    std::size_t at = r.pos;
    auto text = r.bytes(len.value(), what);
    if (!text.ok()) return text.error();
    auto parsed = EndpointId::parse(std::string_view(
        reinterpret_cast<const char*>(text.value().data()), text.value().size()));
    if (!parsed.ok()) {
      DecodeError e = parsed.error();
      e.offset = at;
      return e;
    }
    *eid = parsed.value();
  }

  auto ts = r.sdnv("creation timestamp");
  if (!ts.ok()) return ts.error();
  b.creation_ts = ts.value();
  auto seq = r.sdnv("creation sequence");
  if (!seq.ok()) return seq.error();
  b.creation_seq = seq.value();
  auto lifetime = r.sdnv("lifetime");
  if (!lifetime.ok()) return lifetime.error();
  b.lifetime_s = lifetime.value();

  bool have_payload = false, have_age = false, have_integrity = false;
  for (;;) {
    if (r.eof())
      return DecodeError{DecodeErrc::truncated, r.pos,
                         "image ended before a last-block flag"};
    std::size_t block_at = r.pos;
    auto type = r.byte("block type");
    if (!type.ok()) return type.error();
    auto bflags = r.sdnv("block flags");
    if (!bflags.ok()) return bflags.error();
    auto blen = r.sdnv("block body length");
    if (!blen.ok()) return blen.error();
    std::size_t body_at = r.pos;
    auto body = r.bytes(blen.value(), "block body");
    if (!body.ok()) return body.error();

    auto duplicate = [&](const char* what) {
      return DecodeError{DecodeErrc::duplicate_block, block_at,
                         std::string("second ") + what + " block"};
    };

    switch (type.value()) {
      case kBlockPayload: {
        if (have_payload) return duplicate("payload");
        have_payload = true;
        b.payload.assign(body.value().begin(), body.value().end());
        out.payload = PayloadRegion{body_at, body.value().size()};
        break;
      }
      case kBlockAge: {
        if (have_age) return duplicate("age");
        have_age = true;
        auto age = parse_age_body(body.value(), body_at);
        if (!age.ok()) return age.error();
        b.age_ms = age.value();
        break;
      }
      case kBlockIntegrity: {
        if (have_integrity) return duplicate("integrity");
        have_integrity = true;
        auto ib = parse_integrity_body(body.value(), body_at);
        if (!ib.ok()) return ib.error();
        b.integrity = ib.value();
        break;
      }
      default: {
        RawBlock ext;
        ext.block_type = type.value();
        ext.flags = bflags.value() & ~kBlockFlagLast;
        ext.body.assign(body.value().begin(), body.value().end());
        b.extensions.push_back(std::move(ext));
        break;
      }
    }

    if (bflags.value() & kBlockFlagLast) break;
  }

  if (!r.eof())
    return DecodeError{DecodeErrc::trailing_garbage, r.pos,
                       std::to_string(r.remaining()) + " bytes after the last block"};
  if (!have_payload)
    return DecodeError{DecodeErrc::missing_payload, r.pos, "no payload block"};
  return out;
}

Result<Bundle> decode_bundle(ByteSpan image) {
  auto r = decode_bundle_ex(image);
  if (!r.ok()) return r.error();
  return std::move(r.value().bundle);
}

const char* to_string(DecodeErrc code) {
  switch (code) {
    case DecodeErrc::truncated: return "truncated";
    case DecodeErrc::overflow: return "overflow";
    case DecodeErrc::non_minimal: return "non_minimal";
    case DecodeErrc::bad_version: return "bad_version";
    case DecodeErrc::trailing_garbage: return "trailing_garbage";
    case DecodeErrc::missing_payload: return "missing_payload";
    case DecodeErrc::duplicate_block: return "duplicate_block";
    case DecodeErrc::bad_endpoint: return "bad_endpoint";
    case DecodeErrc::bad_block: return "bad_block";
  }
  return "?";
}

}  // namespace dtn
