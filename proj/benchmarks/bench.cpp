#include <benchmark/benchmark.h>

#include <cstdint>

#include "dtn/crc32.hpp"
#include "dtn/fault.hpp"
#include "dtn/hmac_sha256.hpp"
#include "dtn/integrity.hpp"
#include "dtn/sdnv.hpp"
#include "dtn/wire.hpp"

namespace {

using namespace dtn;

Bundle sample_bundle(std::size_t payload_bytes) {
  Bundle b;
  b.source = EndpointId::parse("dtn:ground-station-01/telemetry").value();
  b.destination = EndpointId::parse("dtn:orbiter-relay/downlink").value();
  b.creation_ts = 820000000;
  b.creation_seq = 42;
  b.lifetime_s = 86400;
  b.payload.resize(payload_bytes);
  Rng rng(7);
  for (auto& byte : b.payload) byte = static_cast<std::uint8_t>(rng.next());
  return b;
}

const Bytes kKey = from_hex("000102030405060708090a0b0c0d0e0f");

void bm_sdnv_encode(benchmark::State& state) {
  std::uint64_t v = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(encode_sdnv(v));
    v = v * 6364136223846793005ull + 1442695040888963407ull;
  }
}
BENCHMARK(bm_sdnv_encode);

void bm_sdnv_decode(benchmark::State& state) {
  Bytes buf = encode_sdnv(0xDEADBEEFCAFEull);
  for (auto _ : state) benchmark::DoNotOptimize(decode_sdnv(as_span(buf)));
}
BENCHMARK(bm_sdnv_decode);

void bm_bundle_encode(benchmark::State& state) {
  Bundle b = sample_bundle(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(encode_bundle(b));
  state.SetBytesProcessed(state.iterations() * state.range(0));
}
BENCHMARK(bm_bundle_encode)->Arg(512)->Arg(10240)->Arg(1 << 20);

void bm_bundle_decode(benchmark::State& state) {
  Bytes image = encode_bundle(sample_bundle(static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(decode_bundle(as_span(image)));
  state.SetBytesProcessed(state.iterations() * state.range(0));
}
BENCHMARK(bm_bundle_decode)->Arg(512)->Arg(10240)->Arg(1 << 20);

void bm_attach_crc32(benchmark::State& state) {
  Bundle b = sample_bundle(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    b.integrity.reset();
    b = attach_integrity(std::move(b), kSuiteCrc32, kCoverPrimary | kCoverPayload);
    benchmark::DoNotOptimize(b);
  }
  state.SetBytesProcessed(state.iterations() * state.range(0));
}
BENCHMARK(bm_attach_crc32)->Arg(10240)->Arg(1 << 20);

void bm_attach_hmac(benchmark::State& state) {
  Bundle b = sample_bundle(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    b.integrity.reset();
    b = attach_integrity(std::move(b), kSuiteHmacSha256,
                         kCoverPrimary | kCoverPayload, kKey);
    benchmark::DoNotOptimize(b);
  }
  state.SetBytesProcessed(state.iterations() * state.range(0));
}
BENCHMARK(bm_attach_hmac)->Arg(10240)->Arg(1 << 20);

void bm_verify_crc32(benchmark::State& state) {
  Bundle b = attach_integrity(sample_bundle(static_cast<std::size_t>(state.range(0))),
                              kSuiteCrc32, kCoverPrimary | kCoverPayload);
  VerificationPolicy policy{PolicyMode::reliability, std::nullopt};
  for (auto _ : state) benchmark::DoNotOptimize(verify(b, policy));
  state.SetBytesProcessed(state.iterations() * state.range(0));
}
BENCHMARK(bm_verify_crc32)->Arg(10240)->Arg(1 << 20);

void bm_verify_hmac(benchmark::State& state) {
  Bundle b = attach_integrity(sample_bundle(static_cast<std::size_t>(state.range(0))),
                              kSuiteHmacSha256, kCoverPrimary | kCoverPayload, kKey);
  VerificationPolicy policy{PolicyMode::authenticated, kKey};
  for (auto _ : state) benchmark::DoNotOptimize(verify(b, policy));
  state.SetBytesProcessed(state.iterations() * state.range(0));
}
BENCHMARK(bm_verify_hmac)->Arg(10240)->Arg(1 << 20);

void bm_corrupt_transit(benchmark::State& state) {
  Bytes image = encode_bundle(sample_bundle(10240));
  Rng rng(1);
  for (auto _ : state)
    benchmark::DoNotOptimize(corrupt_transit(as_span(image), 1e-5, rng));
  state.SetBytesProcessed(state.iterations() * image.size());
}
BENCHMARK(bm_corrupt_transit);

}  // namespace

BENCHMARK_MAIN();
