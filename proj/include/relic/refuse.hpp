#pragma once
// Refusals: an input is outside the fragment an operation handles.
//
// A refusal is not a library failure and not a claim about the input's truth;
// it says which gate the input missed.  `reason` is a stable machine-readable
// slug (the CLI surfaces it verbatim); `detail` elaborates for humans.

#include <stdexcept>
#include <string>
#include <utility>

namespace relic {

struct RefuseError : std::runtime_error {
  std::string reason;
  std::string detail;
  RefuseError(std::string reason_slug, std::string detail_text)
      : std::runtime_error(detail_text.empty()
                               ? reason_slug
                               : reason_slug + ": " + detail_text),
        reason(std::move(reason_slug)),
        detail(std::move(detail_text)) {}
};

}  // namespace relic
