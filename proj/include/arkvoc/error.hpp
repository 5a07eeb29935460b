#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace arkvoc {

enum class Errc {
  // ark-core
  malformed_label,
  empty_naan,
  non_digit_naan,
  illegal_character,
  missing_name,
  empty_input,
  // minter
  invalid_template,
  index_out_of_range,
  minter_exhausted,
  corrupt_state_file,
  missing_state_file,
  io_failure,
  // registry
  duplicate_naan,
  malformed_block,
  bad_url,
  // vocabulary
  duplicate_pref_label,
  duplicate_explicit_name,
  invalid_name,
  invalid_document,
  minter_required,
  // publisher
  collision,
  // resolver
  naan_unknown,
  term_unknown,
  invalid_config,
};

/// Stable kebab-case name used in diagnostics and tests.
std::string_view errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail)
      : std::runtime_error(std::string(errc_name(code)) + ": " + detail),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace arkvoc
