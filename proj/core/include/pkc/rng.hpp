#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace pkc {

/// One step of SplitMix64; advances `state`.
std::uint64_t splitmix64(std::uint64_t& state);

/// Counter-mode seed expansion: the seed of stream `index` under `master`.
/// Distinct indices give statistically independent generators.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// Named sub-streams of a session seed. Branch sampling never shares a
/// stream with anything else, so heuristic changes do not shift it.
enum class Stream : std::uint64_t { kBranch = 0x42, kTieBreak = 0x54, kWorkload = 0x57 };

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  Rng(std::uint64_t master, Stream stream) : engine_(derive_seed(master, static_cast<std::uint64_t>(stream))) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound);
  bool bernoulli(double p1) { return uniform01() < p1; }

 private:
  std::mt19937_64 engine_;
};

/// Source of the Boolean draws made at decision vertices. A draw with
/// p1 == 0 or p1 == 1 is forced and must not consume randomness.
class BranchSampler {
 public:
  virtual ~BranchSampler() = default;
  bool sample(double p1) {
    if (p1 <= 0.0) return false;
    if (p1 >= 1.0) return true;
    return draw(p1);
  }

 protected:
  virtual bool draw(double p1) = 0;
};

class RandomBranchSampler final : public BranchSampler {
 public:
  explicit RandomBranchSampler(std::uint64_t session_seed) : rng_(session_seed, Stream::kBranch) {}

 protected:
  bool draw(double p1) override { return rng_.bernoulli(p1); }

 private:
  Rng rng_;
};

class ScriptExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Replays a fixed sequence of branch outcomes (test and replay hook).
class ScriptedBranchSampler final : public BranchSampler {
 public:
  explicit ScriptedBranchSampler(std::vector<bool> script) : script_(std::move(script)) {}
  std::size_t consumed() const { return next_; }

 protected:
  bool draw(double) override {
    if (next_ >= script_.size()) throw ScriptExhausted("scripted branch sequence exhausted");
    return script_[next_++];
  }

 private:
  std::vector<bool> script_;
  std::size_t next_ = 0;
};

}  // namespace pkc
