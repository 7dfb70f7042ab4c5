// util.hpp - errors, deterministic RNG helpers, small string utilities
#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace minifab {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input-file errors. `line` is 1-based, 0 when unknown.
struct ParseError : Error {
    int line;
    ParseError(const std::string &msg, int line_ = 0)
        : Error(line_ > 0 ? "line " + std::to_string(line_) + ": " + msg : msg), line(line_) {}
};

// Wrapper around mt19937_64 with explicit reductions. std::uniform_int_distribution
// is implementation-defined, so anything that ends up in golden files avoids it.
class Rng {
  public:
    explicit Rng(uint64_t seed) : gen_(seed) {}

    uint64_t next() { return gen_(); }

    // uniform in [0, n)
    uint64_t below(uint64_t n) {
        uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        uint64_t v;
        do {
            v = gen_();
        } while (v >= limit);
        return v % n;
    }

    // uniform in [lo, hi] inclusive
    int64_t range(int64_t lo, int64_t hi) { return lo + (int64_t)below((uint64_t)(hi - lo + 1)); }

    bool coin() { return (gen_() & 1) != 0; }

  private:
    std::mt19937_64 gen_;
};

std::vector<std::string> split_ws(std::string_view s);
std::vector<std::string> split_on(std::string_view s, char sep);
std::string trim(std::string_view s);
bool starts_with(std::string_view s, std::string_view prefix);

std::string read_text_file(const std::string &path);
void write_text_file(const std::string &path, const std::string &text);
std::vector<uint8_t> read_binary_file(const std::string &path);
void write_binary_file(const std::string &path, const std::vector<uint8_t> &data);

} // namespace minifab
