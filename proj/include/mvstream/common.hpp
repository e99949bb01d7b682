#ifndef MVSTREAM_COMMON_HPP
#define MVSTREAM_COMMON_HPP

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace mvstream {

// Rates, budgets and storage totals are integer kbps end to end. Config
// surfaces accept Mbps and convert on load.
using Kbps = std::int64_t;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RateOutOfDomain : Error { using Error::Error; };
struct ViewOrderViolation : Error { using Error::Error; };
struct EmptyIntersection : Error { using Error::Error; };
struct Infeasible : Error { using Error::Error; };
struct UnspannableWindow : Error { using Error::Error; };
struct InstanceTooLarge : Error { using Error::Error; };
struct SpacingInvalid : Error { using Error::Error; };
struct UnknownScenario : Error { using Error::Error; };
struct ConfigInvalid : Error { using Error::Error; };
struct TraceExhausted : Error { using Error::Error; };
struct MissingSetFile : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

// Fitted quality curves can overshoot [0,1] slightly at extreme rates; they
// are clamped and the event counted instead of raised.
std::atomic<std::uint64_t>& quality_clamp_count();

enum class LogLevel { quiet = 0, info = 1, debug = 2 };

// Level comes from the MVSTREAM_LOG env var: quiet | info | debug.
LogLevel log_level();
void log_info(const std::string& msg);
void log_debug(const std::string& msg);

// splitmix64; used to derive independent per-stream seeds from one root seed.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Uniform double in [0,1) from a 64-bit draw; keeps sampling identical across
// standard library implementations.
template <class Rng>
double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, n); rejection-free modulo is fine here, determinism
// matters more than the negligible bias.
template <class Rng>
std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
    return n == 0 ? 0 : rng() % n;
}

// FNV-1a 64, used for config hashes in run manifests.
inline std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline constexpr const char* kVersion = "0.1.0";

}  // namespace mvstream

#endif
