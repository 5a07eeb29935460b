#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace arkvoc {

/// Mask over `d` (decimal digit), `e` (betanumeric) and an optional final
/// `k` (check character).
class MinterTemplate {
 public:
  /// Throws Error(invalid_template).
  explicit MinterTemplate(std::string mask);

  const std::string& mask() const noexcept { return mask_; }
  bool has_check() const noexcept { return !mask_.empty() && mask_.back() == 'k'; }
  /// Product of per-position radices; `k` contributes 1.
  std::uint64_t capacity() const noexcept { return capacity_; }

  friend bool operator==(const MinterTemplate&, const MinterTemplate&) = default;

 private:
  std::string mask_;
  std::uint64_t capacity_ = 1;
};

inline std::uint64_t capacity(const MinterTemplate& t) noexcept { return t.capacity(); }

/// Mixed-radix encoding, most significant position first. When the template
/// ends in `k`, the check character of `check_prefix + name` is appended.
/// Throws Error(index_out_of_range).
std::string encode(const MinterTemplate& t, std::uint64_t index,
                   std::string_view check_prefix = {});

enum class MintMode { sequential, quasi_random };

std::string_view mint_mode_name(MintMode mode) noexcept;

struct MinterState {
  MinterTemplate tmpl{"eedddddk"};
  std::string prefix;
  MintMode mode = MintMode::sequential;
  std::uint64_t counter = 0;
  std::uint64_t multiplier = 1;
  std::uint64_t offset = 0;

  friend bool operator==(const MinterState&, const MinterState&) = default;

  static MinterState sequential(MinterTemplate t, std::string prefix);
  /// Multiplier: smallest prime above capacity/2 coprime to capacity.
  /// Offset: seed mod capacity.
  static MinterState quasi_random(MinterTemplate t, std::string prefix, std::uint64_t seed);

  /// Throws Error(invalid_template) when the invariants do not hold.
  void validate() const;
};

struct Minted {
  std::string name;
  MinterState next;
};

/// Throws Error(minter_exhausted).
Minted mint(const MinterState& state);

/// In-place convenience used by batch callers.
std::string mint_next(MinterState& state);

std::uint64_t default_multiplier(std::uint64_t capacity);
bool is_prime(std::uint64_t n) noexcept;

std::string serialize_state(const MinterState& state);
/// Throws Error(corrupt_state_file).
MinterState parse_state(std::string_view text);

/// Throws Error(missing_state_file), Error(corrupt_state_file), Error(io_failure).
MinterState load_state(const std::filesystem::path& path);
/// Write to a sibling temporary, then rename over `path`.
void save_state(const MinterState& state, const std::filesystem::path& path);

/// Exclusive advisory lock on `<path>.lock` for load-mint-save cycles.
class StateLock {
 public:
  explicit StateLock(const std::filesystem::path& state_path);
  ~StateLock();
  StateLock(const StateLock&) = delete;
  StateLock& operator=(const StateLock&) = delete;

 private:
  int fd_ = -1;
};

}  // namespace arkvoc
