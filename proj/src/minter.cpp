#include "arkvoc/minter.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <charconv>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include "arkvoc/anvl.hpp"
#include "arkvoc/ark.hpp"
#include "arkvoc/error.hpp"

namespace arkvoc {

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

std::uint64_t parse_u64(std::string_view s, std::string_view key) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
    throw Error(Errc::corrupt_state_file, "bad " + std::string(key) + " value '" + std::string(s) + "'");
  return value;
}

}  // namespace

MinterTemplate::MinterTemplate(std::string mask) : mask_(std::move(mask)) {
  if (mask_.empty()) throw Error(Errc::invalid_template, "empty mask");
  for (std::size_t i = 0; i < mask_.size(); ++i) {
    std::uint64_t radix = 1;
    switch (mask_[i]) {
      case 'd': radix = 10; break;
      case 'e': radix = kRadix; break;
      case 'k':
        if (i + 1 != mask_.size()) throw Error(Errc::invalid_template, "'k' must be the final position in '" + mask_ + "'");
        if (mask_.size() == 1) throw Error(Errc::invalid_template, "mask '" + mask_ + "' has no name positions");
        break;
      default:
        throw Error(Errc::invalid_template, "unknown mask character '" + std::string(1, mask_[i]) + "'");
    }
    if (capacity_ > std::numeric_limits<std::uint64_t>::max() / 2 / radix)
      throw Error(Errc::invalid_template, "capacity of '" + mask_ + "' exceeds 63 bits");
    capacity_ *= radix;
  }
}

std::string encode(const MinterTemplate& t, std::uint64_t index, std::string_view check_prefix) {
  if (index >= t.capacity())
    throw Error(Errc::index_out_of_range, std::to_string(index) + " >= " + std::to_string(t.capacity()));
  const auto& mask = t.mask();
  const std::size_t width = t.has_check() ? mask.size() - 1 : mask.size();
  std::string name(width, '0');
  for (std::size_t i = width; i-- > 0;) {
    const std::uint64_t radix = mask[i] == 'd' ? 10 : kRadix;
    name[i] = kBetanumeric[index % radix];
    index /= radix;
  }
  if (t.has_check()) {
    std::string keyed(check_prefix);
    keyed += name;
    name += check_char(keyed);
  }
  return name;
}

std::string_view mint_mode_name(MintMode mode) noexcept {
  return mode == MintMode::sequential ? "sequential" : "quasi_random";
}

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  // Deterministic for all 64-bit inputs with these bases.
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < r; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t default_multiplier(std::uint64_t capacity) {
  std::uint64_t candidate = capacity / 2 + 1;
  while (!is_prime(candidate) || std::gcd(candidate, capacity) != 1) ++candidate;
  return candidate;
}

MinterState MinterState::sequential(MinterTemplate t, std::string prefix) {
  MinterState s;
  s.tmpl = std::move(t);
  s.prefix = std::move(prefix);
  return s;
}

MinterState MinterState::quasi_random(MinterTemplate t, std::string prefix, std::uint64_t seed) {
  MinterState s;
  s.mode = MintMode::quasi_random;
  s.multiplier = default_multiplier(t.capacity());
  s.offset = seed % t.capacity();
  s.tmpl = std::move(t);
  s.prefix = std::move(prefix);
  return s;
}

void MinterState::validate() const {
  const auto cap = tmpl.capacity();
  if (counter > cap) throw Error(Errc::invalid_template, "counter exceeds capacity");
  if (mode == MintMode::quasi_random) {
    if (multiplier == 0 || std::gcd(multiplier, cap) != 1)
      throw Error(Errc::invalid_template, "multiplier " + std::to_string(multiplier) + " not coprime to capacity " + std::to_string(cap));
    if (offset >= cap) throw Error(Errc::invalid_template, "offset exceeds capacity");
  }
}

Minted mint(const MinterState& state) {
  const auto cap = state.tmpl.capacity();
  if (state.counter >= cap)
    throw Error(Errc::minter_exhausted, "all " + std::to_string(cap) + " names of '" + state.tmpl.mask() + "' used");
  std::uint64_t index = state.counter;
  if (state.mode == MintMode::quasi_random)
    index = static_cast<std::uint64_t>((static_cast<u128>(state.counter) * state.multiplier + state.offset) % cap);
  Minted out{encode(state.tmpl, index, state.prefix), state};
  ++out.next.counter;
  return out;
}

std::string mint_next(MinterState& state) {
  auto minted = mint(state);
  state = std::move(minted.next);
  return std::move(minted.name);
}

std::string serialize_state(const MinterState& state) {
  anvl::Record r;
  r.add("template", state.tmpl.mask());
  r.add("prefix", state.prefix);
  r.add("mode", std::string(mint_mode_name(state.mode)));
  r.add("counter", std::to_string(state.counter));
  r.add("multiplier", std::to_string(state.multiplier));
  r.add("offset", std::to_string(state.offset));
  return anvl::to_string(r);
}

MinterState parse_state(std::string_view text) {
  const auto records = anvl::parse(text);
  if (records.size() != 1) throw Error(Errc::corrupt_state_file, "expected exactly one record");
  const auto& r = records.front();
  auto required = [&](std::string_view key) {
    auto v = r.get(key);
    if (!v) throw Error(Errc::corrupt_state_file, "missing '" + std::string(key) + "'");
    return *v;
  };

  MinterState s;
  try {
    s.tmpl = MinterTemplate(required("template"));
  } catch (const Error& e) {
    throw Error(Errc::corrupt_state_file, e.what());
  }
  s.prefix = r.get("prefix").value_or("");
  const auto mode = required("mode");
  if (mode == "sequential") {
    s.mode = MintMode::sequential;
  } else if (mode == "quasi_random") {
    s.mode = MintMode::quasi_random;
  } else {
    throw Error(Errc::corrupt_state_file, "unknown mode '" + mode + "'");
  }
  s.counter = parse_u64(required("counter"), "counter");
  s.multiplier = parse_u64(required("multiplier"), "multiplier");
  s.offset = parse_u64(required("offset"), "offset");
  try {
    s.validate();
  } catch (const Error& e) {
    throw Error(Errc::corrupt_state_file, e.what());
  }
  return s;
}

MinterState load_state(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) throw Error(Errc::missing_state_file, path.string());
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io_failure, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_state(buf.str());
}

void save_state(const MinterState& state, const std::filesystem::path& path) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::io_failure, "cannot write " + tmp.string());
    out << serialize_state(state);
    out.flush();
    if (!out) throw Error(Errc::io_failure, "short write to " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(Errc::io_failure, "rename to " + path.string() + ": " + ec.message());
}

StateLock::StateLock(const std::filesystem::path& state_path) {
  auto lock_path = state_path;
  lock_path += ".lock";
  fd_ = ::open(lock_path.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644);
  if (fd_ < 0) throw Error(Errc::io_failure, "cannot open " + lock_path.string());
  if (::flock(fd_, LOCK_EX) != 0) {
    ::close(fd_);
    throw Error(Errc::io_failure, "cannot lock " + lock_path.string());
  }
}

StateLock::~StateLock() {
  if (fd_ >= 0) {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
}

}  // namespace arkvoc
