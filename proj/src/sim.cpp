#include "pcfec/sim.hpp"

#include <atomic>
#include <cstring>
#include <stdexcept>
#include <thread>
#include <vector>

namespace pcfec {
namespace {

std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

void fill_random_bits(std::span<std::uint8_t> bits, std::mt19937_64& rng) {
  std::uint64_t word = 0;
  int left = 0;
  for (auto& b : bits) {
    if (left == 0) {
      word = rng();
      left = 64;
    }
    b = std::uint8_t(word & 1u);
    word >>= 1;
    --left;
  }
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t index) {
  return mix64(mix64(master_seed) ^ index);
}

Simulator::Simulator(SimConfig cfg) : cfg_(cfg), code_(cfg.shorten) {
  if (cfg_.min_frames < 1) throw std::invalid_argument("SimConfig: min_frames >= 1");
  if (cfg_.max_frames < cfg_.min_frames)
    throw std::invalid_argument("SimConfig: max_frames < min_frames");
  if (cfg_.channel.kind == ChannelConfig::Kind::Bsc) {
    if (cfg_.channel.p < 0.0 || cfg_.channel.p > 0.5)
      throw std::invalid_argument("SimConfig: BSC p outside [0, 0.5]");
  } else if (!(cfg_.channel.noise_std > 0.0)) {
    throw std::invalid_argument("SimConfig: noise_std must be positive");
  }
}

TrialResult Simulator::run_trial(std::uint64_t index) const {
  std::mt19937_64 rng(trial_seed(cfg_.master_seed, index));
  const int k = code_.k();

  std::vector<std::uint8_t> info(std::size_t(k) * std::size_t(k));
  fill_random_bits(info, rng);
  ProductMatrix tx = code_.encode(info);
  ProductMatrix rx = tx;

  TrialResult res;
  if (cfg_.channel.kind == ChannelConfig::Kind::Bsc) {
    res.pre_fec_bit_errors =
        std::uint32_t(bsc_transmit(rx.bits, cfg_.channel.p, rng));
  } else {
    // n*n is odd for this code; pad one bit to fill the last symbol and drop
    // it again after detection.
    std::vector<std::uint8_t> line(rx.bits);
    if (line.size() % 2) line.push_back(0);
    pam4_chain(line, cfg_.channel.noise_std, rng);
    std::uint32_t pre = 0;
    for (std::size_t i = 0; i < rx.bits.size(); ++i) {
      pre += std::uint32_t(line[i] != tx.bits[i]);
      rx.bits[i] = line[i];
    }
    res.pre_fec_bit_errors = pre;
  }

  DecodeReport rep = code_.decode(std::move(rx), cfg_.decoder);
  res.decoder_success = rep.success;
  res.pp_applied = rep.pp_applied;
  res.pp_iteration_run = rep.pp_iteration_run;

  auto decoded = code_.extract_info(rep.matrix);
  if (std::memcmp(decoded.data(), info.data(), info.size()) != 0) {
    std::uint32_t post = 0;
    for (std::size_t i = 0; i < info.size(); ++i)
      post += std::uint32_t(decoded[i] != info[i]);
    res.post_fec_bit_errors = post;
    res.frame_error = true;
  }
  return res;
}

SimStats Simulator::run(unsigned workers) const {
  SimStats st;
  st.n = code_.n();
  st.k = code_.k();

  constexpr std::uint64_t kChunk = 256;
  std::vector<TrialResult> results(kChunk);
  std::uint64_t base = 0;
  bool done = false;

  while (!done && base < cfg_.max_frames) {
    const std::uint64_t count = std::min(kChunk, cfg_.max_frames - base);
    if (workers <= 1) {
      for (std::uint64_t i = 0; i < count; ++i) results[i] = run_trial(base + i);
    } else {
      std::atomic<std::uint64_t> next{0};
      auto work = [&] {
        for (std::uint64_t i = next.fetch_add(1); i < count; i = next.fetch_add(1))
          results[i] = run_trial(base + i);
      };
      std::vector<std::thread> pool;
      const unsigned spawn = unsigned(std::min<std::uint64_t>(workers, count));
      pool.reserve(spawn);
      for (unsigned w = 0; w < spawn; ++w) pool.emplace_back(work);
      for (auto& t : pool) t.join();
    }
    // Fold in index order and stop exactly where a serial run would.
    for (std::uint64_t i = 0; i < count; ++i) {
      st.add(results[i]);
      if ((st.frames >= cfg_.min_frames && st.frame_errors >= cfg_.min_frame_errors) ||
          st.frames >= cfg_.max_frames) {
        done = true;
        break;
      }
    }
    base += count;
  }
  return st;
}

}  // namespace pcfec
