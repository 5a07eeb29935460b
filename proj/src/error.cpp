#include "arkvoc/error.hpp"

namespace arkvoc {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::malformed_label: return "malformed-label";
    case Errc::empty_naan: return "empty-naan";
    case Errc::non_digit_naan: return "non-digit-naan";
    case Errc::illegal_character: return "illegal-character";
    case Errc::missing_name: return "missing-name";
    case Errc::empty_input: return "empty-input";
    case Errc::invalid_template: return "invalid-template";
    case Errc::index_out_of_range: return "index-out-of-range";
    case Errc::minter_exhausted: return "minter-exhausted";
    case Errc::corrupt_state_file: return "corrupt-state-file";
    case Errc::missing_state_file: return "missing-state-file";
    case Errc::io_failure: return "io-failure";
    case Errc::duplicate_naan: return "duplicate-naan";
    case Errc::malformed_block: return "malformed-block";
    case Errc::bad_url: return "bad-url";
    case Errc::duplicate_pref_label: return "duplicate-pref-label";
    case Errc::duplicate_explicit_name: return "duplicate-explicit-name";
    case Errc::invalid_name: return "invalid-name";
    case Errc::invalid_document: return "invalid-document";
    case Errc::minter_required: return "minter-required";
    case Errc::collision: return "collision";
    case Errc::naan_unknown: return "naan-unknown";
    case Errc::term_unknown: return "term-unknown";
    case Errc::invalid_config: return "invalid-config";
  }
  return "unknown";
}

}  // namespace arkvoc
